#include <map>
#include <set>
#include <sstream>

#include "oml/interop.hpp"
#include "oml/xml.hpp"
#include "oml/xmlio.hpp"

namespace oml::rdf {

namespace {

constexpr std::string_view kType = "rdf:type";
constexpr std::string_view kClass = "rdfs:Class";
constexpr std::string_view kProperty = "rdf:Property";
constexpr std::string_view kSubClassOf = "rdfs:subClassOf";
constexpr std::string_view kSubPropertyOf = "rdfs:subPropertyOf";
constexpr std::string_view kDomain = "rdfs:domain";
constexpr std::string_view kRange = "rdfs:range";
constexpr std::string_view kResource = "rdfs:Resource";
constexpr std::string_view kComment = "rdfs:comment";
constexpr std::string_view kOntology = "oml:ontology";
constexpr std::string_view kUri = "oml:uri";
constexpr std::string_view kFunction = "oml:Function";
constexpr std::string_view kRelation = "oml:BinaryRelation";
constexpr std::string_view kAbout = "oml:about";
constexpr std::string_view kDisjointWith = "oml:disjointWith";
constexpr std::string_view kIncoherent = "oml:Incoherent";
constexpr std::string_view kInverseOf = "oml:inverseOf";

std::string escapeLiteral(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

TripleDoc parseTriples(std::string_view text) {
  TripleDoc doc;
  std::size_t pos = 0;
  int lineNo = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::SyntaxError, "triples: " + msg,
                  {lineNo, static_cast<int>(i) + 1});
    };
    auto skip = [&] {
      while (i < line.size() && isSpace(line[i])) ++i;
    };
    skip();
    if (i == line.size() || line[i] == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::vector<Term> terms;
    while (terms.size() < 3) {
      skip();
      if (i == line.size()) fail("expected three terms");
      if (line[i] == '"') {
        std::string value;
        ++i;
        for (;;) {
          if (i == line.size()) fail("unterminated literal");
          char c = line[i++];
          if (c == '"') break;
          if (c != '\\') {
            value += c;
            continue;
          }
          if (i == line.size()) fail("dangling escape");
          char e = line[i++];
          switch (e) {
            case 'n': value += '\n'; break;
            case 'r': value += '\r'; break;
            case 't': value += '\t'; break;
            case '"': value += '"'; break;
            case '\\': value += '\\'; break;
            default: fail(std::string("unknown escape \\") + e);
          }
        }
        terms.push_back(Term::literal(std::move(value)));
      } else {
        std::size_t start = i;
        while (i < line.size() && !isSpace(line[i])) ++i;
        terms.push_back(Term::name(std::string(line.substr(start, i - start))));
      }
    }
    skip();
    if (i < line.size() && line[i] == '.') {
      ++i;
      skip();
    }
    if (i < line.size() && line[i] != '#') fail("unexpected text after the object");
    if (terms[0].isLiteral()) fail("a literal cannot be a subject");
    if (terms[1].isLiteral()) fail("a literal cannot be a predicate");
    doc.triples.push_back({terms[0], terms[1], terms[2]});
    if (end == text.size()) break;
  }
  return doc;
}

std::string serializeTriples(const TripleDoc& doc) {
  std::ostringstream out;
  auto term = [&](const Term& t) {
    if (t.isLiteral()) out << '"' << escapeLiteral(t.value) << '"';
    else out << t.value;
  };
  for (const auto& t : doc.triples) {
    term(t.subject);
    out << ' ';
    term(t.predicate);
    out << ' ';
    term(t.object);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

TripleDoc exportRdfs(const KnowledgeBase& kb) {
  const Ontology& ont = kb.ontology;
  if (!ont.imports().empty())
    throw Error(ErrorCode::UnsupportedConstruct,
                "extends imports have no RDF/S counterpart; export each ontology");
  if (!ont.higherOrder().empty())
    throw Error(ErrorCode::HigherOrderUnsupported,
                "higher-order assertions have no RDF/S counterpart");
  TypeUniverse universe(ont);
  TripleDoc doc;
  auto add = [&](Term s, std::string_view p, Term o) {
    doc.triples.push_back({std::move(s), Term::name(std::string(p)), std::move(o)});
  };
  auto name = [](std::string_view s) { return Term::name(std::string(s)); };

  if (!ont.uri().empty()) add(name(kOntology), kUri, Term::literal(ont.uri()));
  for (const auto& decl : ont.types()) {
    const Term t = name(decl.name);
    switch (decl.kind) {
      case TypeKind::Data:
        throw Error(ErrorCode::DataTypeUnsupported,
                    "data type '" + decl.name + "' has no RDF/S counterpart", decl.loc);
      case TypeKind::Object: add(t, kType, name(kClass)); break;
      case TypeKind::BinaryRelation:
      case TypeKind::Function:
        add(t, kType, name(kProperty));
        if (decl.kind == TypeKind::Function) add(t, kType, name(kFunction));
        add(t, kDomain, name(decl.source));
        add(t, kRange, name(decl.target));
        break;
    }
    if (decl.comment) add(t, kComment, Term::literal(*decl.comment));
  }
  for (const auto& axiom : ont.axioms()) {
    std::optional<TypeKind> kind;
    if (auto ref = ont.tryResolve(axiom.specific)) kind = ont.kindOf(*ref);
    if (!kind && axiom.generic)
      if (auto ref = ont.tryResolve(*axiom.generic)) kind = ont.kindOf(*ref);
    const bool relation = kind && isRelationKind(*kind);
    add(name(axiom.specific), relation ? kSubPropertyOf : kSubClassOf,
        name(axiom.generic ? *axiom.generic
                           : std::string(relation ? kRelation : kResource)));
  }
  for (const auto& [a, b] : ont.disjointness()) add(name(a), kDisjointWith, name(b));
  for (const auto& t : ont.incoherent()) add(name(t), kType, name(kIncoherent));
  for (const auto& [n, of] : ont.inverses()) add(name(n), kInverseOf, name(of));

  // subjects first, so targets can name anonymous objects' blank nodes
  std::map<InstanceRef, Term> subjects;
  std::size_t blank = 0;
  for (std::size_t c = 0; c < kb.collections.size(); ++c)
    for (std::size_t o = 0; o < kb.collections[c].objects().size(); ++o) {
      const auto& obj = kb.collections[c].objects()[o];
      subjects[{c, o}] =
          obj.id ? name(*obj.id) : name("_:b" + std::to_string(++blank));
    }

  for (std::size_t c = 0; c < kb.collections.size(); ++c) {
    const auto& coll = kb.collections[c];
    auto targetTerm = [&](const std::string& text,
                          const std::vector<std::string>& classes) {
      ResolvedTarget r = kb.resolveTarget(c, text, classes, universe);
      if (r.kind == TargetKind::Type)
        throw Error(ErrorCode::HigherOrderUnsupported,
                    "relation target '" + text + "' names a type");
      if (r.instance) return subjects.at(*r.instance);
      return Term::literal(text);
    };
    for (std::size_t o = 0; o < coll.objects().size(); ++o) {
      const auto& obj = coll.objects()[o];
      const Term& s = subjects.at({c, o});
      if (obj.about) add(s, kAbout, Term::literal(*obj.about));
      for (const auto& cls : obj.classifications) add(s, kType, name(cls));
      if (obj.classifications.empty()) add(s, kType, name(kResource));
      for (const auto& f : obj.functions) {
        Term target = targetTerm(f.target, f.classifications);
        for (const auto& cls : f.classifications) add(s, cls, target);
        if (f.classifications.empty()) add(s, kFunction, target);
      }
      for (const auto& r : obj.relations) {
        Term owner = s;
        if (r.source && r.source != obj.id) {
          auto ref = kb.findInstance(*r.source, c);
          owner = ref ? subjects.at(*ref) : name(*r.source);
        }
        Term target = targetTerm(r.target, r.classifications);
        for (const auto& cls : r.classifications) add(owner, cls, target);
        if (r.classifications.empty()) add(owner, kRelation, target);
      }
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------

namespace {

class Importer {
 public:
  Importer(const TripleDoc& doc, std::string_view document)
      : doc_(doc), document_(document) {}

  ImportResult run() {
    collectSchema();
    declareTypes();
    schemaTriples();
    instances();
    return {std::move(kb_), std::move(warnings_)};
  }

 private:
  void warn(std::size_t index, std::string message) {
    warnings_.push_back({Severity::Warning, "RDF001", std::move(message),
                         document_, {static_cast<int>(index) + 1, 0}});
  }

  void noteType(const std::string& subject, bool property) {
    if (classes_.count(subject) || properties_.count(subject)) return;
    (property ? properties_ : classes_).insert(subject);
    order_.push_back(subject);
  }

  void collectSchema() {
    for (const auto& t : doc_.triples) {
      const std::string& s = t.subject.value;
      const std::string& p = t.predicate.value;
      const std::string& o = t.object.value;
      if (p == kType && !t.object.isLiteral()) {
        if (o == kClass) noteType(s, false);
        else if (o == kProperty) noteType(s, true);
        else if (o == kFunction) {
          noteType(s, true);
          functions_.insert(s);
        }
      } else if (p == kDomain && !domain_.count(s)) {
        domain_[s] = o;
      } else if (p == kRange && !range_.count(s)) {
        range_[s] = o;
      }
    }
    for (std::size_t i = 0; i < doc_.triples.size(); ++i) {
      const auto& t = doc_.triples[i];
      const std::string& s = t.subject.value;
      const std::string& p = t.predicate.value;
      if ((p == kDomain || p == kRange || p == kSubPropertyOf) && !isSchema(s)) {
        warn(i, "'" + s + "' used as a property without rdf:type rdf:Property");
        noteType(s, true);
      } else if (p == kSubClassOf && !isSchema(s)) {
        warn(i, "'" + s + "' used as a class without rdf:type rdfs:Class");
        noteType(s, false);
      }
    }
  }

  bool isSchema(const std::string& s) const {
    return classes_.count(s) || properties_.count(s);
  }

  void declareTypes() {
    for (const auto& name : order_) {
      TypeDecl decl;
      decl.name = name;
      if (classes_.count(name)) {
        decl.kind = TypeKind::Object;
      } else {
        decl.kind = functions_.count(name) ? TypeKind::Function
                                           : TypeKind::BinaryRelation;
        auto end = [&](std::map<std::string, std::string>& m, const char* what) {
          if (auto it = m.find(name); it != m.end()) return it->second;
          warn(0, "property '" + name + "' has no " + what + "; using Entity");
          return std::string("Entity");
        };
        decl.source = end(domain_, "rdfs:domain");
        decl.target = end(range_, "rdfs:range");
      }
      try {
        kb_.ontology.declareType(std::move(decl));
      } catch (const Error& e) {
        warn(0, e.detail());
      }
    }
  }

  void schemaTriples() {
    for (std::size_t i = 0; i < doc_.triples.size(); ++i) {
      const auto& t = doc_.triples[i];
      const std::string& s = t.subject.value;
      const std::string& p = t.predicate.value;
      const std::string& o = t.object.value;
      if (s == kOntology) {
        if (p == kUri) kb_.ontology.setUri(o);
        else warn(i, "unknown ontology property '" + p + "'");
        continue;
      }
      try {
        if (p == kSubClassOf) {
          kb_.ontology.declareSubtype(s, o == kResource ? std::nullopt
                                                        : std::optional<std::string>(o));
        } else if (p == kSubPropertyOf) {
          kb_.ontology.declareSubtype(s, o == kRelation ? std::nullopt
                                                        : std::optional<std::string>(o));
        } else if (p == kDisjointWith) {
          kb_.ontology.declareDisjoint(s, o);
        } else if (p == kInverseOf) {
          kb_.ontology.registerInverse(s, o);
        } else if (p == kType && o == kIncoherent) {
          kb_.ontology.declareIncoherent(s);
        } else if (isSchema(s)) {
          if (p == kComment && t.object.isLiteral()) {
            kb_.ontology.setComment(s, o);
          } else if (p == kType && (o == kClass || o == kProperty || o == kFunction)) {
          } else if (p != kDomain && p != kRange) {
            warn(i, "'" + p + "' on schema resource '" + s + "' is not mapped");
          }
        }
      } catch (const Error& e) {
        warn(i, e.detail());
      }
    }
  }

  bool isSchemaTriple(const Triple& t) const {
    const std::string& s = t.subject.value;
    const std::string& p = t.predicate.value;
    if (s == kOntology || isSchema(s)) return true;
    if (p == kSubClassOf || p == kSubPropertyOf || p == kDisjointWith ||
        p == kInverseOf)
      return true;
    return p == kType && t.object.value == kIncoherent;
  }

  void instances() {
    Collection coll;
    std::map<std::string, std::size_t> index;
    std::set<std::string> typed;
    for (std::size_t i = 0; i < doc_.triples.size(); ++i) {
      const auto& t = doc_.triples[i];
      if (isSchemaTriple(t)) continue;
      const std::string& s = t.subject.value;
      auto it = index.find(s);
      if (it == index.end()) {
        ObjectInstance obj;
        if (s.rfind("_:", 0) != 0) {
          if (xml::isName(s)) obj.id = s;
          else obj.about = s;
        }
        obj.loc = {static_cast<int>(i) + 1, 0};
        it = index.emplace(s, coll.addObject(std::move(obj))).first;
      }
      ObjectInstance& obj = coll.object(it->second);
      const std::string& p = t.predicate.value;
      const std::string& o = t.object.value;
      try {
        if (p == kType) {
          typed.insert(s);
          if (o != kResource && std::find(obj.classifications.begin(),
                                          obj.classifications.end(),
                                          o) == obj.classifications.end())
            obj.classifications.push_back(o);
        } else if (p == kAbout) {
          obj.about = o;
        } else if (p == kFunction || functions_.count(p)) {
          FunctionInstance fn;
          fn.target = o;
          if (p != kFunction) fn.classifications.push_back(p);
          detail::mergeFunction(obj, std::move(fn));
        } else {
          RelationInstance rel;
          rel.target = o;
          if (p != kRelation) rel.classifications.push_back(p);
          if (p != kRelation && !properties_.count(p))
            warn(i, "predicate '" + p + "' is not a declared property");
          detail::mergeRelation(obj, std::move(rel));
        }
      } catch (const Error& e) {
        warn(i, e.detail());
      }
    }
    for (const auto& [s, idx] : index)
      if (!typed.count(s))
        warn(static_cast<std::size_t>(coll.objects()[idx].loc.line - 1), "resource '" + s + "' has no rdf:type; left unclassified");
    if (!coll.objects().empty()) {
      coll.document = document_;
      kb_.collections.push_back(std::move(coll));
    }
  }

  const TripleDoc& doc_;
  std::string document_;
  KnowledgeBase kb_;
  std::vector<Diagnostic> warnings_;
  std::set<std::string> classes_, properties_, functions_;
  std::vector<std::string> order_;
  std::map<std::string, std::string> domain_, range_;
};

}  // namespace

ImportResult importRdfs(const TripleDoc& doc, std::string_view document) {
  return Importer(doc, document).run();
}

}  // namespace oml::rdf
