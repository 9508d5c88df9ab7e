#include "oml/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "oml/calculus.hpp"
#include "oml/checker.hpp"
#include "oml/dtd.hpp"
#include "oml/interop.hpp"
#include "oml/styles.hpp"
#include "oml/xmlio.hpp"

namespace oml::cli {

namespace {

/// Usage or I/O problem: exit code 2.
struct Failure {
  std::string message;
};

struct Common {
  std::vector<std::string> maps;
  std::string format = "text";
  bool strict = false;
  bool lenient = false;
  bool higherOrder = false;
  std::string output;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeArtifact(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Failure{"cannot write '" + path + "'"};
  file << text;
  if (!file) throw Failure{"cannot write '" + path + "'"};
}

Diagnostic fromError(const Error& e, const std::string& document) {
  std::string message = std::string(toString(e.code())) + ": " + e.detail();
  if (e.rule()) message += " [rule " + std::to_string(e.rule()) + "]";
  return {Severity::Error, e.code() == ErrorCode::SyntaxError ? "XML001" : "OML001",
          std::move(message), document, e.location()};
}

class Session {
 public:
  Session(const Common& common, std::ostream& out, std::ostream& err)
      : common_(common), out_(out), err_(err) {
    for (const auto& m : common.maps) {
      auto eq = m.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Failure{"--map expects URI=PATH, got '" + m + "'"};
      paths_[m.substr(0, eq)] = m.substr(eq + 1);
    }
  }

  Resolution mode() const {
    if (common_.strict) return Resolution::Strict;
    if (common_.lenient) return Resolution::Lenient;
    const char* env = std::getenv("OML_STRICT");
    return env && std::string(env) == "1" ? Resolution::Strict : Resolution::Lenient;
  }

  ParseOptions parseOptions() const { return {common_.higherOrder}; }

  ImportResolver resolver() {
    return [this](const std::string& uri) -> std::optional<std::string> {
      if (auto it = texts_.find(uri); it != texts_.end()) return it->second;
      if (auto it = paths_.find(uri); it != paths_.end()) return readFile(it->second);
      return std::nullopt;
    };
  }

  OmlDocument parse(const std::string& path) {
    std::string text = readFile(path);
    OmlDocument doc = parseOml(text, path, parseOptions());
    if (doc.isOntology()) {
      if (doc.ontology().uri().empty()) doc.ontology().setUri(path);
      texts_.emplace(doc.ontology().uri(), text);
      paths_.emplace(path, path);
    } else {
      doc.collection().document = path;
    }
    return doc;
  }

  Ontology ontology(const std::string& path) {
    OmlDocument doc = parse(path);
    if (!doc.isOntology()) throw Failure{"'" + path + "' is not an ontology"};
    LoadOptions options{parseOptions(), std::nullopt};
    return loadExtends(doc, resolver(), options).ontology;
  }

  /// Knowledge bases from a mix of ontology and collection files: every
  /// ontology with the collections that name it (or all collections when
  /// there is exactly one ontology).
  std::vector<KnowledgeBase> knowledgeBases(const std::vector<std::string>& files) {
    std::vector<OmlDocument> ontologies, collections;
    for (const auto& f : files) {
      OmlDocument doc = parse(f);
      (doc.isOntology() ? ontologies : collections).push_back(std::move(doc));
    }
    std::vector<KnowledgeBase> out;
    LoadOptions options{parseOptions(), std::nullopt};
    for (const auto& o : ontologies) out.push_back(loadExtends(o, resolver(), options));
    for (auto& c : collections) {
      const auto& coll = c.collection();
      KnowledgeBase* home = nullptr;
      if (ontologies.size() == 1) home = &out[0];
      for (auto& kb : out)
        if (!home && coll.ontology && *coll.ontology == kb.ontology.uri()) home = &kb;
      if (home) {
        home->collections.push_back(coll);
        continue;
      }
      out.push_back(loadExtends(c, resolver(), options));
    }
    for (auto& kb : out) kb.higherOrder = common_.higherOrder;
    return out;
  }

  /// Print diagnostics; exit code 1 when any is an error.
  int report(std::vector<Diagnostic> diagnostics) {
    sortDiagnostics(diagnostics);
    if (common_.format == "json") {
      nlohmann::json list = nlohmann::json::array();
      std::size_t errors = 0, warnings = 0;
      for (const auto& d : diagnostics) {
        errors += d.severity == Severity::Error;
        warnings += d.severity == Severity::Warning;
        list.push_back({{"severity", std::string(toString(d.severity))},
                        {"code", d.code},
                        {"message", d.message},
                        {"document", d.document},
                        {"line", d.loc.line},
                        {"column", d.loc.column}});
      }
      nlohmann::json doc = {
          {"diagnostics", list}, {"errors", errors}, {"warnings", warnings}};
      out_ << doc.dump() << '\n';
    } else {
      err_ << formatDiagnostics(diagnostics);
    }
    return hasErrors(diagnostics) ? kDiagnosticErrors : kOk;
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  const Common& common() const { return common_; }

 private:
  const Common& common_;
  std::ostream& out_;
  std::ostream& err_;
  std::map<std::string, std::string> paths_;
  std::map<std::string, std::string> texts_;
};

std::string joinExtension(const PairSet& pairs) {
  std::string out;
  for (const auto& [a, b] : pairs) out += a + "\t" + b + "\n";
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"OML central core toolkit", "omlc"};
  app.require_subcommand(1);
  Common common;

  auto addCommon = [&](CLI::App* sub, bool modes) {
    sub->add_option("--map", common.maps, "Resolve ontology URI to a file (URI=PATH)")
        ->allow_extra_args(false);
    sub->add_flag("--higher-order", common.higherOrder, "Enable the higher-order extension");
    sub->add_option("--format", common.format, "Diagnostic format")
        ->check(CLI::IsMember({"text", "json"}));
    if (modes) {
      auto* s = sub->add_flag("--strict", common.strict, "Unresolved references are errors");
      auto* l = sub->add_flag("--lenient", common.lenient, "Unresolved references are warnings");
      s->excludes(l);
    }
  };

  std::vector<std::string> files;
  std::string first;  // single-file commands; appended to files after parsing
  std::string second, expression, collectionOut, context;
  bool completion = false, extended = false, lenientCompose = false;

  auto* parseCmd = app.add_subcommand("parse", "Syntax check and canonical echo");
  parseCmd->add_option("file", first, "OML document")->required();
  parseCmd->add_option("-o,--output", common.output, "Output file");
  addCommon(parseCmd, false);

  auto* checkCmd = app.add_subcommand("check", "Run all checker passes");
  checkCmd->add_option("files", files, "Ontology and collection documents")->required();
  checkCmd->add_flag("--completion", completion, "Infer missing classifications (lenient)");
  addCommon(checkCmd, true);

  auto* dtdCmd = app.add_subcommand("compile-dtd", "Ontology to domain-specific DTD");
  dtdCmd->add_option("ontology", first, "Ontology document")->required();
  dtdCmd->add_option("-o,--output", common.output, "Output file");
  addCommon(dtdCmd, false);

  auto* specCmd = app.add_subcommand("to-specific", "Generic collection to specific style");
  specCmd->add_option("ontology", first, "Ontology document")->required();
  specCmd->add_option("collection", second, "Generic collection")->required();
  specCmd->add_option("-o,--output", common.output, "Output file");
  addCommon(specCmd, false);

  auto* genCmd = app.add_subcommand("to-generic", "Specific-style document to generic style");
  genCmd->add_option("ontology", first, "Ontology document")->required();
  genCmd->add_option("document", second, "Specific-style document")->required();
  genCmd->add_option("-o,--output", common.output, "Output file");
  addCommon(genCmd, false);

  auto* valCmd = app.add_subcommand("validate-dtd", "Validate a document against a DTD");
  valCmd->add_option("dtd", first, "DTD file")->required();
  valCmd->add_option("document", second, "XML document")->required();
  addCommon(valCmd, false);

  auto* exRdf = app.add_subcommand("export-rdf", "Knowledge base to RDF/S triples");
  exRdf->add_option("files", files, "Ontology and collection documents")->required();
  exRdf->add_option("-o,--output", common.output, "Output file");
  addCommon(exRdf, false);

  auto* imRdf = app.add_subcommand("import-rdf", "RDF/S triples to OML");
  imRdf->add_option("triples", first, "Triple file")->required();
  imRdf->add_option("-o,--output", common.output, "Ontology output file");
  imRdf->add_option("--collection-out", collectionOut, "Collection output file");
  addCommon(imRdf, false);

  auto* exXol = app.add_subcommand("export-xol", "Knowledge base to an XOL module");
  exXol->add_option("files", files, "Ontology and collection documents")->required();
  exXol->add_option("-o,--output", common.output, "Output file");
  exXol->add_flag("--extended", extended, "Emit documentation and slot-inverse");
  addCommon(exXol, false);

  auto* imXol = app.add_subcommand("import-xol", "XOL module to OML");
  imXol->add_option("module", first, "XOL file")->required();
  imXol->add_option("-o,--output", common.output, "Ontology output file");
  imXol->add_option("--collection-out", collectionOut, "Collection output file");
  imXol->add_option("--context", context, "Ontology deciding which slots are functions");
  addCommon(imXol, false);

  auto* lintCmd = app.add_subcommand("lint", "Inclusion-implies-subtype suggestions");
  lintCmd->add_option("files", files, "Ontology and collection documents")->required();
  addCommon(lintCmd, false);

  auto* calcCmd = app.add_subcommand("calc", "Evaluate a relation expression");
  calcCmd->add_option("expression", expression, "e.g. compose(genre, transpose(genre))")
      ->required();
  calcCmd->add_option("files", files, "Ontology and collection documents")->required();
  calcCmd->add_flag("--lenient-compose", lenientCompose,
                    "Allow composition when the target is a subtype of the source");
  addCommon(calcCmd, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!first.empty()) files.insert(files.begin(), first);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "omlc: " << e.what() << "\n";
    return kUsage;
  }

  std::string current;  // file being processed, for diagnostics
  try {
    Session s(common, out, err);
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();

    if (name == "parse") {
      current = files[0];
      OmlDocument doc = s.parse(current);
      // json: the (empty) report owns stdout, so the echo needs -o
      if (common.format == "json") {
        if (!common.output.empty()) writeArtifact(common.output, serializeGeneric(doc), out);
        return s.report({});
      }
      writeArtifact(common.output, serializeGeneric(doc), out);
      return kOk;
    }
    if (name == "check") {
      CheckOptions options;
      options.mode = s.mode();
      options.completion = completion;
      options.higherOrder = common.higherOrder;
      std::vector<Diagnostic> all;
      for (auto& kb : s.knowledgeBases(files)) {
        auto d = runChecks(kb, options);
        all.insert(all.end(), d.begin(), d.end());
      }
      return s.report(std::move(all));
    }
    if (name == "compile-dtd") {
      current = files[0];
      Ontology ont = s.ontology(current);
      writeArtifact(common.output, dtd::renderDtd(dtd::compileDtd(ont)), out);
      return kOk;
    }
    if (name == "to-specific") {
      auto kbs = s.knowledgeBases({files[0], second});
      current = second;
      if (kbs.size() != 1 || kbs[0].collections.size() != 1)
        throw Failure{"'" + second + "' does not belong to '" + files[0] + "'"};
      writeArtifact(common.output, toSpecific(kbs[0]), out);
      return kOk;
    }
    if (name == "to-generic") {
      current = files[0];
      Ontology ont = s.ontology(current);
      current = second;
      Collection coll = toGeneric(readFile(second), ont, second, s.parseOptions());
      writeArtifact(common.output, serializeGeneric(coll), out);
      return kOk;
    }
    if (name == "validate-dtd") {
      current = files[0];
      dtd::DtdDocument d = dtd::parseDtd(readFile(current));
      current = second;
      dtd::ValidateOptions options;
      options.document = second;
      return s.report(dtd::validateAgainstDtd(d, readFile(second), options));
    }
    if (name == "export-rdf" || name == "export-xol") {
      auto kbs = s.knowledgeBases(files);
      if (kbs.size() != 1) throw Failure{"expected exactly one ontology"};
      std::string text = name == "export-rdf"
                             ? rdf::serializeTriples(rdf::exportRdfs(kbs[0]))
                             : xol::exportXol(kbs[0], {extended});
      writeArtifact(common.output, text, out);
      return kOk;
    }
    if (name == "import-rdf" || name == "import-xol") {
      current = files[0];
      KnowledgeBase kb;
      std::vector<Diagnostic> warnings;
      if (name == "import-rdf") {
        auto result = rdf::importRdfs(rdf::parseTriples(readFile(current)), current);
        kb = std::move(result.kb);
        warnings = std::move(result.warnings);
      } else {
        std::optional<Ontology> ctx;
        if (!context.empty()) ctx = s.ontology(context);
        current = files[0];
        kb = xol::importXol(readFile(current), ctx ? &*ctx : nullptr);
      }
      writeArtifact(common.output, serializeGeneric(kb.ontology), out);
      if (!kb.collections.empty()) {
        if (collectionOut.empty()) {
          warnings.push_back({Severity::Warning, "OML001",
                              "instances dropped; pass --collection-out to keep them",
                              current, {}});
        } else {
          Collection merged = kb.collections.front();
          if (merged.ontology == std::nullopt && !kb.ontology.uri().empty())
            merged.ontology = kb.ontology.uri();
          writeArtifact(collectionOut, serializeGeneric(merged), out);
        }
      }
      if (!warnings.empty()) {
        sortDiagnostics(warnings);
        err << formatDiagnostics(warnings);
      }
      return kOk;
    }
    if (name == "lint") {
      std::vector<Diagnostic> all;
      for (auto& kb : s.knowledgeBases(files)) {
        auto d = lintInclusionImpliesSubtype(kb);
        all.insert(all.end(), d.begin(), d.end());
      }
      return s.report(std::move(all));
    }
    if (name == "calc") {
      auto kbs = s.knowledgeBases(files);
      if (kbs.size() != 1) throw Failure{"expected exactly one ontology"};
      CalculusOptions options{lenientCompose};
      DerivedRelationType type =
          parseRelationExpression(kbs[0].ontology, expression, options);
      TypeUniverse universe(kbs[0].ontology);
      out << "# " << normalize(type).toString(universe) << " : "
          << universe.nameFor(type.source()) << " -> "
          << universe.nameFor(type.target()) << "\n";
      out << joinExtension(relationExtension(kbs[0], type));
      return kOk;
    }
    throw Failure{"unknown command '" + name + "'"};
  } catch (const Failure& f) {
    err << "omlc: " << f.message << "\n";
    return kUsage;
  } catch (const Error& e) {
    Session s(common, out, err);
    return s.report({fromError(e, current)});
  }
}

}  // namespace oml::cli
