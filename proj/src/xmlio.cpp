#include "oml/xmlio.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace oml {

namespace detail {

std::string canonicalTag(std::string_view tag, bool higherOrder) {
  if (tag.substr(0, 4) == "OML:") tag.remove_prefix(4);
  if (tag == "Type.Entity") return "Type.Object";
  if (tag == "Instance.Entity") return "Instance.Object";
  if (higherOrder) {
    if (tag == "Individual.Object" || tag == "Individual.Entity")
      return "Instance.Object";
    if (tag == "Individual.BinaryRelation") return "Instance.BinaryRelation";
    if (tag == "Individual.Function") return "Instance.Function";
  }
  return std::string(tag);
}

bool isTypeNSName(std::string_view s) {
  return xml::isName(s) && s.front() != ':' && s.back() != ':';
}

std::string encodeSidecarText(std::string_view text) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    bool dashRun = c == '-' && (i + 1 == text.size() || text[i + 1] == '-');
    if (c == '%' || c == '\n' || c == '\r' || dashRun) {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::string decodeSidecarText(std::string_view text) {
  auto value = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size() + 0 && value(text[i + 1]) >= 0 &&
        value(text[i + 2]) >= 0) {
      out += static_cast<char>(value(text[i + 1]) * 16 + value(text[i + 2]));
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace detail

namespace {

using detail::canonicalTag;
using detail::isTypeNSName;

void allowAttributes(const xml::Node& node,
                     std::initializer_list<std::string_view> allowed, int rule) {
  for (const auto& attr : node.attributes) {
    if (std::find(allowed.begin(), allowed.end(), attr.name) == allowed.end())
      grammarError(rule,
                   "attribute '" + attr.name + "' is not allowed on <" +
                       node.name + ">",
                   attr.loc);
  }
}

const std::string& required(const xml::Node& node, std::string_view attr,
                            int rule) {
  const xml::Attribute* a = node.attribute(attr);
  if (!a)
    grammarError(rule,
                 "<" + node.name + "> requires attribute '" +
                     std::string(attr) + "'",
                 node.loc);
  return a->value;
}

std::optional<std::string> optional(const xml::Node& node,
                                    std::string_view attr) {
  if (const xml::Attribute* a = node.attribute(attr)) return a->value;
  return std::nullopt;
}

std::string typeName(const xml::Node& node, std::string_view attr, int rule) {
  const std::string& value = required(node, attr, rule);
  if (!isTypeNSName(value))
    grammarError(26, "'" + value + "' is not a type namespace name",
                 node.attribute(attr)->loc);
  return value;
}

void checkName(const std::string& value, int rule, SourceLoc loc) {
  if (!xml::isName(value))
    grammarError(rule, "'" + value + "' is not a legal XML name", loc);
}

/// Text content must be whitespace; element children must be absent.
void requireEmpty(const xml::Node& node, int rule) {
  for (const auto& child : node.children) {
    if (child.kind == xml::Node::Kind::Element)
      grammarError(rule,
                   "<" + node.name + "> must be empty, found <" + child.name +
                       ">",
                   child.loc);
    if (child.kind == xml::Node::Kind::Text && !xml::isWhitespace(child.text))
      grammarError(rule, "character data is not allowed in <" + node.name + ">",
                   child.loc);
  }
}

void rejectText(const xml::Node& child, const xml::Node& parent, int rule) {
  if (child.kind == xml::Node::Kind::Text && !xml::isWhitespace(child.text))
    grammarError(rule, "character data is not allowed in <" + parent.name + ">",
                 child.loc);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> splitWords(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string word;
  while (is >> word) out.push_back(word);
  return out;
}

/// `<!-- OML-EXT directive: args -->` sidecar lines.
void applySidecar(const xml::Node& comment, Ontology& ontology) {
  std::string body = trim(comment.text);
  if (body.rfind("OML-EXT", 0) != 0) return;
  std::istringstream lines(body.substr(7));
  std::string line;
  while (std::getline(lines, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      grammarError(2, "malformed OML-EXT line '" + line + "'", comment.loc);
    std::string directive = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (directive == "comment") {
      auto space = rest.find(' ');
      std::string type = rest.substr(0, space);
      std::string text =
          space == std::string::npos ? "" : rest.substr(space + 1);
      TypeDecl* decl = ontology.findLocal(type);
      if (!decl)
        grammarError(2, "OML-EXT comment names undeclared type '" + type + "'",
                     comment.loc);
      decl->comment = detail::decodeSidecarText(text);
      continue;
    }
    auto words = splitWords(rest);
    if (directive == "disjoint" && words.size() == 2) {
      try {
        ontology.declareDisjoint(words[0], words[1]);
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), comment.loc);
      }
    } else if (directive == "incoherent" && words.size() == 1) {
      ontology.declareIncoherent(words[0]);
    } else if (directive == "inverse" && words.size() == 2) {
      ontology.registerInverse(words[0], words[1]);
    } else {
      grammarError(2, "unknown OML-EXT directive '" + line + "'", comment.loc);
    }
  }
}

void declare(Ontology& ontology, TypeDecl decl) {
  try {
    ontology.declareType(std::move(decl));
  } catch (const Error& e) {
    if (e.location().known()) throw;
    throw Error(e.code(), e.detail(), decl.loc);
  }
}

Ontology parseOntology(const xml::Node& node, const ParseOptions& options) {
  allowAttributes(node, {}, 2);
  Ontology ontology;
  std::vector<const xml::Node*> deferred;
  std::vector<const xml::Node*> comments;

  for (const auto& child : node.children) {
    rejectText(child, node, 2);
    if (child.kind == xml::Node::Kind::Comment) {
      comments.push_back(&child);
      continue;
    }
    if (child.kind != xml::Node::Kind::Element) continue;
    const std::string tag = canonicalTag(child.name, options.higherOrder);
    if (tag == "extends") {
      allowAttributes(child, {"ontology", "prefix"}, 3);
      requireEmpty(child, 3);
      Import imp;
      imp.uri = required(child, "ontology", 15);
      if (auto prefix = optional(child, "prefix")) {
        checkName(*prefix, 16, child.loc);
        imp.prefix = *prefix;
      }
      imp.loc = child.loc;
      ontology.addImport(std::move(imp));
    } else if (tag == "Type.Object" || tag == "Type.Data") {
      const int rule = tag == "Type.Object" ? 5 : 4;
      allowAttributes(child, {"name"}, rule);
      requireEmpty(child, rule);
      TypeDecl decl;
      decl.kind = tag == "Type.Object" ? TypeKind::Object : TypeKind::Data;
      decl.name = required(child, "name", 17);
      checkName(decl.name, 17, child.loc);
      decl.loc = child.loc;
      declare(ontology, std::move(decl));
    } else if (tag == "Type.BinaryRelation" || tag == "Type.Function") {
      const int rule = tag == "Type.BinaryRelation" ? 6 : 7;
      allowAttributes(child, {"name", "source.Type", "target.Type"}, rule);
      requireEmpty(child, rule);
      TypeDecl decl;
      decl.kind = tag == "Type.BinaryRelation" ? TypeKind::BinaryRelation
                                               : TypeKind::Function;
      decl.name = required(child, "name", 17);
      checkName(decl.name, 17, child.loc);
      decl.source = typeName(child, "source.Type", 18);
      decl.target = typeName(child, "target.Type", 19);
      decl.loc = child.loc;
      declare(ontology, std::move(decl));
    } else if (tag == "subtype") {
      allowAttributes(child, {"specific", "generic"}, 8);
      requireEmpty(child, 8);
      std::string specific = typeName(child, "specific", 20);
      std::optional<std::string> generic;
      if (child.attribute("generic")) generic = typeName(child, "generic", 21);
      try {
        ontology.declareSubtype(std::move(specific), std::move(generic),
                                child.loc);
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), child.loc);
      }
    } else if (options.higherOrder && tag == "classification") {
      allowAttributes(child, {"instance", "type"}, 8);
      requireEmpty(child, 8);
      if (!child.attribute("instance") || !child.attribute("type"))
        grammarError(8,
                     "extended axm rule: <classification> in an ontology "
                     "requires 'instance' and 'type'",
                     child.loc);
      ontology.addHigherOrder(TypeClassification{
          typeName(child, "instance", 8), typeName(child, "type", 22),
          child.loc});
    } else if (options.higherOrder && tag == "Instance.BinaryRelation") {
      allowAttributes(child, {"type", "source.Type", "target.Type"}, 8);
      requireEmpty(child, 8);
      if (!child.attribute("type") || !child.attribute("source.Type") ||
          !child.attribute("target.Type"))
        grammarError(8,
                     "extended axm rule: <Instance.BinaryRelation> in an "
                     "ontology requires 'type', 'source.Type' and "
                     "'target.Type'",
                     child.loc);
      ontology.addHigherOrder(OwnSlot{typeName(child, "type", 22),
                                      required(child, "source.Type", 18),
                                      required(child, "target.Type", 19),
                                      child.loc});
    } else if (options.higherOrder) {
      deferred.push_back(&child);
    } else {
      grammarError(2, "<" + child.name + "> is not allowed in an ontology",
                   child.loc);
    }
  }

  // Specific-style own slots: <argument source.Instance=".." target.Instance=".."/>
  for (const xml::Node* child : deferred) {
    const TypeDecl* decl = ontology.findLocal(child->name);
    if (!decl || !isRelationKind(decl->kind))
      grammarError(8,
                   "<" + child->name +
                       "> is neither a core tag nor a declared relation type",
                   child->loc);
    allowAttributes(*child, {"source.Instance", "target.Instance"}, 8);
    requireEmpty(*child, 8);
    ontology.addHigherOrder(OwnSlot{child->name,
                                    required(*child, "source.Instance", 8),
                                    required(*child, "target.Instance", 23),
                                    child->loc});
  }
  for (const xml::Node* comment : comments) applySidecar(*comment, ontology);
  return ontology;
}

std::vector<std::string> parseClassifications(const xml::Node& node,
                                              const ParseOptions& options,
                                              int rule) {
  std::vector<std::string> out;
  for (const auto& child : node.children) {
    rejectText(child, node, rule);
    if (!child.isElement()) continue;
    if (canonicalTag(child.name, options.higherOrder) != "classification")
      grammarError(rule,
                   "<" + node.name + "> may only contain <classification>",
                   child.loc);
    allowAttributes(child, {"type"}, 14);
    requireEmpty(child, 14);
    std::string type = typeName(child, "type", 22);
    if (std::find(out.begin(), out.end(), type) == out.end())
      out.push_back(std::move(type));
  }
  return out;
}

}  // namespace

namespace detail {

void mergeRelation(ObjectInstance& object, RelationInstance relation) {
  for (auto& existing : object.relations) {
    if (existing.target != relation.target || existing.source != relation.source)
      continue;
    for (auto& c : relation.classifications)
      if (std::find(existing.classifications.begin(),
                    existing.classifications.end(),
                    c) == existing.classifications.end())
        existing.classifications.push_back(std::move(c));
    return;
  }
  object.relations.push_back(std::move(relation));
}

void mergeFunction(ObjectInstance& object, FunctionInstance function) {
  for (const auto& c : function.classifications) {
    for (const auto& existing : object.functions) {
      if (std::find(existing.classifications.begin(),
                    existing.classifications.end(),
                    c) == existing.classifications.end())
        continue;
      if (existing.target != function.target)
        throw Error(ErrorCode::DuplicateFunctionValue,
                    "function '" + c + "' already has value '" +
                        existing.target + "' on '" +
                        object.id.value_or("<anonymous>") + "'",
                    function.loc);
    }
  }
  for (auto& existing : object.functions) {
    if (existing.target != function.target) continue;
    if (existing.classifications == function.classifications) return;
  }
  object.functions.push_back(std::move(function));
}

bool parseInstanceChild(const xml::Node& child, ObjectInstance& object,
                        const ParseOptions& options) {
  const std::string tag = canonicalTag(child.name, options.higherOrder);
  if (tag == "classification") {
    allowAttributes(child, {"type"}, 14);
    requireEmpty(child, 14);
    std::string type = typeName(child, "type", 22);
    if (std::find(object.classifications.begin(), object.classifications.end(),
                  type) == object.classifications.end())
      object.classifications.push_back(std::move(type));
    return true;
  }
  if (tag == "Instance.BinaryRelation") {
    allowAttributes(child, {"target.Instance", "source.Instance"}, 12);
    RelationInstance rel;
    rel.target = required(child, "target.Instance", 23);
    rel.source = optional(child, "source.Instance");
    rel.classifications = parseClassifications(child, options, 12);
    rel.loc = child.loc;
    mergeRelation(object, std::move(rel));
    return true;
  }
  if (tag == "Instance.Function") {
    allowAttributes(child, {"target.Instance"}, 13);
    FunctionInstance fn;
    fn.target = required(child, "target.Instance", 23);
    fn.classifications = parseClassifications(child, options, 13);
    fn.loc = child.loc;
    mergeFunction(object, std::move(fn));
    return true;
  }
  return false;
}

ObjectInstance parseObjectElement(const xml::Node& node,
                                  const ParseOptions& options) {
  allowAttributes(node, {"id", "about"}, 11);
  ObjectInstance object;
  object.loc = node.loc;
  if (auto id = optional(node, "id")) {
    checkName(*id, 24, node.attribute("id")->loc);
    object.id = *id;
  }
  object.about = optional(node, "about");
  for (const auto& child : node.children) {
    rejectText(child, node, 11);
    if (!child.isElement()) continue;
    if (!parseInstanceChild(child, object, options))
      grammarError(11,
                   "<" + child.name + "> is not allowed in <" + node.name + ">",
                   child.loc);
  }
  return object;
}

}  // namespace detail

namespace {

Collection parseCollection(const xml::Node& node, const ParseOptions& options) {
  allowAttributes(node, {"id", "ontology"}, 9);
  Collection collection;
  if (auto id = optional(node, "id")) {
    checkName(*id, 24, node.attribute("id")->loc);
    collection.id = *id;
  }
  collection.ontology = optional(node, "ontology");
  for (const auto& child : node.children) {
    rejectText(child, node, 9);
    if (!child.isElement()) continue;
    if (canonicalTag(child.name, options.higherOrder) != "Instance.Object")
      grammarError(10,
                   "<" + child.name + "> is not an object instance element",
                   child.loc);
    collection.addObject(detail::parseObjectElement(child, options));
  }
  return collection;
}

}  // namespace

OmlDocument parseOml(std::string_view text, std::string_view sourceName,
                     const ParseOptions& options) {
  xml::Document xdoc = xml::parse(text);
  const xml::Node& root = xdoc.root;
  if (canonicalTag(root.name, options.higherOrder) != "OML")
    grammarError(1, "document root must be <OML>, found <" + root.name + ">",
                 root.loc);
  allowAttributes(root, {}, 1);
  const xml::Node* body = nullptr;
  std::vector<const xml::Node*> comments;
  for (const auto& child : root.children) {
    rejectText(child, root, 1);
    if (child.kind == xml::Node::Kind::Comment) comments.push_back(&child);
    if (!child.isElement()) continue;
    if (body)
      grammarError(1, "<OML> contains more than one ontology or collection",
                   child.loc);
    body = &child;
  }
  if (!body)
    grammarError(1, "<OML> must contain an ontology or a collection", root.loc);

  OmlDocument doc;
  doc.sourceName = std::string(sourceName);
  const std::string tag = canonicalTag(body->name, options.higherOrder);
  if (tag == "Ontology") {
    Ontology ontology = parseOntology(*body, options);
    for (const xml::Node* c : comments) applySidecar(*c, ontology);
    ontology.setUri(doc.sourceName);
    doc.root = std::move(ontology);
  } else if (tag == "Collection") {
    Collection collection = parseCollection(*body, options);
    collection.document = doc.sourceName;
    doc.root = std::move(collection);
  } else {
    grammarError(1, "<" + body->name + "> is neither <Ontology> nor <Collection>",
                 body->loc);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

class Writer {
 public:
  void open(int depth, std::string_view tag,
            std::initializer_list<std::pair<std::string_view,
                                            const std::optional<std::string>*>>
                attrs,
            bool selfClose) {
    indent(depth);
    out_ << '<' << tag;
    for (const auto& [name, value] : attrs)
      if (value && *value)
        out_ << ' ' << name << "=\"" << xml::escapeAttribute(**value) << '"';
    out_ << (selfClose ? "/>\n" : ">\n");
  }
  void close(int depth, std::string_view tag) {
    indent(depth);
    out_ << "</" << tag << ">\n";
  }
  void comment(int depth, const std::string& text) {
    indent(depth);
    out_ << "<!--" << text << "-->\n";
  }
  std::string str() const { return out_.str(); }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }
  std::ostringstream out_;
};

using Opt = std::optional<std::string>;

void writeOntology(Writer& w, const Ontology& ont) {
  const bool empty = ont.imports().empty() && ont.types().empty() &&
                     ont.axioms().empty() && ont.higherOrder().empty() &&
                     ont.disjointness().empty() && ont.incoherent().empty() &&
                     ont.inverses().empty();
  if (empty) {
    w.open(1, "Ontology", {}, true);
    return;
  }
  w.open(1, "Ontology", {}, false);
  for (const auto& imp : ont.imports()) {
    Opt uri = imp.uri;
    Opt prefix = imp.prefix.empty() ? Opt{} : Opt{imp.prefix};
    w.open(2, "extends", {{"ontology", &uri}, {"prefix", &prefix}}, true);
  }
  for (const auto& decl : ont.types()) {
    Opt name = decl.name;
    switch (decl.kind) {
      case TypeKind::Object:
        w.open(2, "Type.Object", {{"name", &name}}, true);
        break;
      case TypeKind::Data:
        w.open(2, "Type.Data", {{"name", &name}}, true);
        break;
      case TypeKind::BinaryRelation:
      case TypeKind::Function: {
        Opt src = decl.source, tgt = decl.target;
        w.open(2,
               decl.kind == TypeKind::Function ? "Type.Function"
                                               : "Type.BinaryRelation",
               {{"name", &name}, {"source.Type", &src}, {"target.Type", &tgt}},
               true);
        break;
      }
    }
  }
  for (const auto& axiom : ont.axioms()) {
    Opt specific = axiom.specific;
    w.open(2, "subtype", {{"specific", &specific}, {"generic", &axiom.generic}},
           true);
  }
  for (const auto& assertion : ont.higherOrder()) {
    if (const auto* tc = std::get_if<TypeClassification>(&assertion)) {
      Opt inst = tc->instance, type = tc->type;
      w.open(2, "classification", {{"instance", &inst}, {"type", &type}}, true);
    } else {
      const auto& slot = std::get<OwnSlot>(assertion);
      Opt type = slot.relation, src = slot.source, tgt = slot.target;
      w.open(2, "Instance.BinaryRelation",
             {{"type", &type}, {"source.Type", &src}, {"target.Type", &tgt}},
             true);
    }
  }
  for (const auto& [a, b] : ont.disjointness())
    w.comment(2, " OML-EXT disjoint: " + a + " " + b + " ");
  for (const auto& t : ont.incoherent())
    w.comment(2, " OML-EXT incoherent: " + t + " ");
  for (const auto& [name, of] : ont.inverses())
    w.comment(2, " OML-EXT inverse: " + name + " " + of + " ");
  for (const auto& decl : ont.types())
    if (decl.comment)
      w.comment(2, " OML-EXT comment: " + decl.name + " " +
                       detail::encodeSidecarText(*decl.comment) + " ");
  w.close(1, "Ontology");
}

void writeClassifications(Writer& w, int depth,
                          const std::vector<std::string>& classes) {
  for (const auto& c : classes) {
    Opt type = c;
    w.open(depth, "classification", {{"type", &type}}, true);
  }
}

void writeCollection(Writer& w, const Collection& coll) {
  if (coll.objects().empty()) {
    w.open(1, "Collection", {{"id", &coll.id}, {"ontology", &coll.ontology}},
           true);
    return;
  }
  w.open(1, "Collection", {{"id", &coll.id}, {"ontology", &coll.ontology}},
         false);
  for (const auto& obj : coll.objects()) {
    const bool leaf = obj.classifications.empty() && obj.relations.empty() &&
                      obj.functions.empty();
    w.open(2, "Instance.Object", {{"id", &obj.id}, {"about", &obj.about}}, leaf);
    if (leaf) continue;
    writeClassifications(w, 3, obj.classifications);
    for (const auto& fn : obj.functions) {
      Opt target = fn.target;
      bool empty = fn.classifications.empty();
      w.open(3, "Instance.Function", {{"target.Instance", &target}}, empty);
      if (empty) continue;
      writeClassifications(w, 4, fn.classifications);
      w.close(3, "Instance.Function");
    }
    for (const auto& rel : obj.relations) {
      Opt target = rel.target;
      bool empty = rel.classifications.empty();
      w.open(3, "Instance.BinaryRelation",
             {{"target.Instance", &target}, {"source.Instance", &rel.source}},
             empty);
      if (empty) continue;
      writeClassifications(w, 4, rel.classifications);
      w.close(3, "Instance.BinaryRelation");
    }
    w.close(2, "Instance.Object");
  }
  w.close(1, "Collection");
}

}  // namespace

std::string serializeGeneric(const Ontology& ontology) {
  Writer w;
  w.open(0, "OML", {}, false);
  writeOntology(w, ontology);
  w.close(0, "OML");
  return w.str();
}

std::string serializeGeneric(const Collection& collection) {
  Writer w;
  w.open(0, "OML", {}, false);
  writeCollection(w, collection);
  w.close(0, "OML");
  return w.str();
}

std::string serializeGeneric(const OmlDocument& doc) {
  return doc.isOntology() ? serializeGeneric(doc.ontology())
                          : serializeGeneric(doc.collection());
}

// ---------------------------------------------------------------------------
// Import loading

namespace {

class ImportLoader {
 public:
  ImportLoader(const ImportResolver& resolver, const ParseOptions& options)
      : resolver_(resolver), options_(options) {}

  void loadImports(Ontology& ontology, std::vector<std::string>& stack) {
    for (std::size_t i = 0; i < ontology.imports().size(); ++i) {
      const Import& imp = ontology.imports()[i];
      ontology.bindImport(i, load(imp.uri, imp.loc, stack));
    }
  }

  std::shared_ptr<const Ontology> load(const std::string& uri, SourceLoc loc,
                                       std::vector<std::string>& stack) {
    if (std::find(stack.begin(), stack.end(), uri) != stack.end()) {
      std::string chain;
      for (const auto& s : stack) chain += s + " -> ";
      throw Error(ErrorCode::ImportCycle, "import cycle " + chain + uri, loc);
    }
    if (auto it = cache_.find(uri); it != cache_.end()) return it->second;
    Ontology ontology = parseUri(uri, loc);
    stack.push_back(uri);
    loadImports(ontology, stack);
    stack.pop_back();
    auto shared = std::make_shared<const Ontology>(std::move(ontology));
    cache_.emplace(uri, shared);
    return shared;
  }

  Ontology parseUri(const std::string& uri, SourceLoc loc) {
    std::optional<std::string> text = resolver_ ? resolver_(uri) : std::nullopt;
    if (!text)
      throw Error(ErrorCode::UnresolvableImport,
                  "cannot resolve ontology '" + uri + "'", loc);
    OmlDocument doc = parseOml(*text, uri, options_);
    if (!doc.isOntology())
      throw Error(ErrorCode::UnresolvableImport,
                  "'" + uri + "' is a collection, not an ontology", loc);
    return std::move(doc.ontology());
  }

 private:
  const ImportResolver& resolver_;
  const ParseOptions& options_;
  std::map<std::string, std::shared_ptr<const Ontology>> cache_;
};

}  // namespace

Ontology loadOntology(const std::string& uri, const ImportResolver& resolver,
                      const ParseOptions& options) {
  ImportLoader loader(resolver, options);
  Ontology ontology = loader.parseUri(uri, {});
  std::vector<std::string> stack{uri};
  loader.loadImports(ontology, stack);
  return ontology;
}

KnowledgeBase loadExtends(const OmlDocument& doc, const ImportResolver& resolver,
                          const LoadOptions& options) {
  KnowledgeBase kb;
  kb.higherOrder = options.parse.higherOrder;
  ImportLoader loader(resolver, options.parse);
  if (doc.isOntology()) {
    kb.ontology = doc.ontology();
    std::vector<std::string> stack{kb.ontology.uri()};
    loader.loadImports(kb.ontology, stack);
    return kb;
  }
  const Collection& coll = doc.collection();
  std::optional<std::string> uri = coll.ontology ? coll.ontology
                                                 : options.defaultOntology;
  if (uri) {
    kb.ontology = loader.parseUri(*uri, {});
    std::vector<std::string> stack{*uri};
    loader.loadImports(kb.ontology, stack);
  }
  kb.collections.push_back(coll);
  return kb;
}

}  // namespace oml
