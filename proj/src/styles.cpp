#include "oml/styles.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "oml/xml.hpp"

namespace oml {

std::vector<TypeRef> mostSpecificTypes(const std::vector<TypeRef>& types,
                                       const std::set<TypePair>& subtype) {
  std::set<TypeRef> unique(types.begin(), types.end());
  std::vector<TypeRef> out;
  for (const auto& t : unique) {
    bool minimal = true;
    for (const auto& u : unique) {
      if (u == t) continue;
      // u strictly below t
      if (subtype.count({u, t}) && !subtype.count({t, u})) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(t);
  }
  return out;
}

namespace {

struct SpecificRelation {
  std::string tag;
  std::string target;
};

std::string describe(const ObjectInstance& obj, std::size_t index) {
  if (obj.id) return "'" + *obj.id + "'";
  if (obj.about) return "'" + *obj.about + "'";
  return "object #" + std::to_string(index + 1);
}

}  // namespace

std::string toSpecific(const KnowledgeBase& kb, std::size_t collection) {
  TypeUniverse universe(kb.ontology);
  const auto subtype = subtypeClosure(universe);
  Collection empty;
  const Collection& coll =
      collection < kb.collections.size() ? kb.collections[collection] : empty;
  const auto& objects = coll.objects();

  std::set<std::string> referenced;
  for (const auto& obj : objects) {
    for (const auto& r : obj.relations) {
      referenced.insert(r.target);
      if (r.source) referenced.insert(*r.source);
    }
    for (const auto& f : obj.functions) referenced.insert(f.target);
  }

  // ids, generated where missing
  std::vector<std::string> ids(objects.size());
  std::size_t counter = 0;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& obj = objects[i];
    if (obj.id) {
      ids[i] = *obj.id;
      continue;
    }
    if (obj.about && referenced.count(*obj.about))
      throw Error(ErrorCode::UnnamedInstance,
                  "object " + describe(obj, i) +
                      " has no id but is referenced; the specific style needs one",
                  obj.loc);
    std::string id;
    do {
      id = "_g" + std::to_string(++counter);
    } while (coll.findById(id));
    ids[i] = id;
  }

  // relation elements, moved under their explicit source
  std::vector<std::vector<SpecificRelation>> children(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (const auto& r : objects[i].relations) {
      std::size_t owner = i;
      if (r.source && r.source != objects[i].id) {
        auto ref = kb.findInstance(*r.source, collection);
        if (!ref)
          throw Error(ErrorCode::UnresolvedInstanceRef,
                      "relation source '" + *r.source + "' names no object", r.loc);
        owner = ref->object;
      }
      if (r.classifications.empty())
        throw Error(ErrorCode::MissingClassification,
                    "relation instance to '" + r.target +
                        "' has no type and cannot become an element",
                    r.loc);
      for (const auto& c : r.classifications) {
        TypeRef ref = universe.resolve(c);
        auto kind = universe.kind(ref);
        if (!kind || !isRelationKind(*kind))
          throw Error(ErrorCode::MissingClassification,
                      "'" + c + "' is not a declared relation type", r.loc);
        children[owner].push_back({universe.nameFor(ref), r.target});
      }
    }
  }

  std::ostringstream out;
  out << "<!-- OML specific style; ontology: "
      << (coll.ontology ? *coll.ontology : kb.ontology.uri()) << " -->\n";
  out << "<Collection";
  if (coll.id) out << " id=\"" << xml::escapeAttribute(*coll.id) << '"';
  if (coll.ontology) out << " ontology=\"" << xml::escapeAttribute(*coll.ontology) << '"';
  if (objects.empty()) {
    out << "/>\n";
    return out.str();
  }
  out << ">\n";

  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& obj = objects[i];
    std::vector<TypeRef> entityTypes;
    for (const auto& c : obj.classifications) {
      TypeRef ref = universe.resolve(c);
      auto kind = universe.kind(ref);
      if (kind == TypeKind::Object) entityTypes.push_back(ref);
    }
    auto minimal = mostSpecificTypes(entityTypes, subtype);
    if (minimal.empty())
      throw Error(ErrorCode::MissingClassification,
                  "object " + describe(obj, i) + " has no declared object type",
                  obj.loc);
    if (minimal.size() > 1) {
      std::string names;
      for (const auto& t : minimal)
        names += (names.empty() ? "" : ", ") + universe.nameFor(t);
      throw Error(ErrorCode::AmbiguousClassification,
                  "object " + describe(obj, i) +
                      " has no single most specific type (" + names + ")",
                  obj.loc);
    }
    const std::string tag = universe.nameFor(minimal.front());
    out << "  <" << tag << " id=\"" << xml::escapeAttribute(ids[i]) << '"';
    std::set<std::string> attributes{"id"};
    for (const auto& f : obj.functions) {
      if (f.classifications.empty())
        throw Error(ErrorCode::MissingClassification,
                    "function instance to '" + f.target + "' on " + describe(obj, i) +
                        " has no type and cannot become an attribute",
                    f.loc);
      for (const auto& c : f.classifications) {
        TypeRef ref = universe.resolve(c);
        if (universe.kind(ref) != TypeKind::Function)
          throw Error(ErrorCode::MissingClassification,
                      "'" + c + "' is not a declared function type", f.loc);
        std::string name = universe.nameFor(ref);
        if (!attributes.insert(name).second)
          throw Error(ErrorCode::DuplicateFunctionValue,
                      "function '" + name + "' given twice on " + describe(obj, i),
                      f.loc);
        out << ' ' << name << "=\"" << xml::escapeAttribute(f.target) << '"';
      }
    }
    if (children[i].empty()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    for (const auto& r : children[i])
      out << "    <" << r.tag << " target.Instance=\""
          << xml::escapeAttribute(r.target) << "\"/>\n";
    out << "  </" << tag << ">\n";
  }
  out << "</Collection>\n";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

class SpecificReader {
 public:
  SpecificReader(const Ontology& ontology, const ParseOptions& options)
      : ontology_(ontology), options_(options) {}

  Collection read(const xml::Node& root, std::string_view document) {
    Collection coll;
    coll.document = std::string(document);
    const xml::Node* body = &root;
    if (detail::canonicalTag(root.name, options_.higherOrder) == "OML") {
      body = nullptr;
      for (const auto& child : root.children) {
        if (!child.isElement()) continue;
        if (body)
          grammarError(1, "<OML> contains more than one collection", child.loc);
        body = &child;
      }
      if (!body) grammarError(1, "<OML> is empty", root.loc);
    }
    if (detail::canonicalTag(body->name, options_.higherOrder) == "Collection") {
      for (const auto& attr : body->attributes) {
        if (attr.name == "id") coll.id = attr.value;
        else if (attr.name == "ontology") coll.ontology = attr.value;
        else
          throw Error(ErrorCode::UnknownAttribute,
                      "<Collection> has no attribute '" + attr.name + "'", attr.loc);
      }
      for (const auto& child : body->children) {
        rejectText(child, *body);
        if (child.isElement()) topLevel(child, coll);
      }
    } else {
      topLevel(*body, coll);
    }
    attachStandalone(coll);
    return coll;
  }

 private:
  struct Standalone {
    std::string source;
    RelationInstance relation;
  };

  void rejectText(const xml::Node& child, const xml::Node& parent) {
    if (child.kind == xml::Node::Kind::Text && !xml::isWhitespace(child.text))
      grammarError(10, "character data is not allowed in <" + parent.name + ">",
                   child.loc);
  }

  std::optional<TypeKind> kindOfTag(const std::string& tag) const {
    auto ref = ontology_.tryResolve(tag);
    return ref ? ontology_.kindOf(*ref) : std::nullopt;
  }

  void topLevel(const xml::Node& node, Collection& coll) {
    const std::string tag = detail::canonicalTag(node.name, options_.higherOrder);
    if (tag == "Instance.Object") {
      ObjectInstance obj;
      obj.loc = node.loc;
      for (const auto& attr : node.attributes) {
        if (attr.name == "id") obj.id = attr.value;
        else if (attr.name == "about") obj.about = attr.value;
        else
          throw Error(ErrorCode::UnknownAttribute,
                      "<" + node.name + "> has no attribute '" + attr.name + "'",
                      attr.loc);
      }
      children(node, obj);
      coll.addObject(std::move(obj));
      return;
    }
    if (tag == "Instance.BinaryRelation" ||
        kindOfTag(node.name) == TypeKind::BinaryRelation) {
      Standalone s;
      ObjectInstance holder;
      relationElement(node, holder);
      s.relation = std::move(holder.relations.front());
      if (!s.relation.source)
        throw Error(ErrorCode::UnresolvedInstanceRef,
                    "top-level <" + node.name + "> needs source.Instance", node.loc);
      s.source = *s.relation.source;
      s.relation.source.reset();
      standalone_.push_back(std::move(s));
      return;
    }
    if (kindOfTag(node.name) != TypeKind::Object)
      throw Error(ErrorCode::UnknownTag,
                  "<" + node.name + "> names no declared object type", node.loc);
    ObjectInstance obj;
    obj.loc = node.loc;
    obj.classifications.push_back(node.name);
    for (const auto& attr : node.attributes) {
      if (attr.name == "id") {
        obj.id = attr.value;
        continue;
      }
      if (attr.name == "about") {
        obj.about = attr.value;
        continue;
      }
      if (kindOfTag(attr.name) != TypeKind::Function)
        throw Error(ErrorCode::UnknownAttribute,
                    "'" + attr.name + "' on <" + node.name +
                        "> names no declared function type",
                    attr.loc);
      FunctionInstance fn;
      fn.target = attr.value;
      fn.classifications.push_back(attr.name);
      fn.loc = attr.loc;
      detail::mergeFunction(obj, std::move(fn));
    }
    children(node, obj);
    coll.addObject(std::move(obj));
  }

  void children(const xml::Node& node, ObjectInstance& obj) {
    for (const auto& child : node.children) {
      rejectText(child, node);
      if (!child.isElement()) continue;
      if (detail::parseInstanceChild(child, obj, options_)) continue;
      relationElement(child, obj);
    }
    for (auto& r : obj.relations)
      if (r.source && obj.id && *r.source == *obj.id) r.source.reset();
  }

  /// Specific `<genre target.Instance="..."/>` or an unabbreviated function
  /// element `<year target.Instance="1942"/>`.
  void relationElement(const xml::Node& node, ObjectInstance& obj) {
    auto kind = kindOfTag(node.name);
    if (!kind || !isRelationKind(*kind))
      throw Error(ErrorCode::UnknownTag,
                  "<" + node.name + "> names no declared relation or function type",
                  node.loc);
    std::optional<std::string> target, source;
    for (const auto& attr : node.attributes) {
      if (attr.name == "target.Instance") target = attr.value;
      else if (attr.name == "source.Instance" && kind == TypeKind::BinaryRelation)
        source = attr.value;
      else
        throw Error(ErrorCode::UnknownAttribute,
                    "<" + node.name + "> has no attribute '" + attr.name + "'",
                    attr.loc);
    }
    if (!target)
      grammarError(23, "<" + node.name + "> lacks target.Instance", node.loc);
    for (const auto& child : node.children)
      if (child.isElement() ||
          (child.kind == xml::Node::Kind::Text && !xml::isWhitespace(child.text)))
        grammarError(12, "<" + node.name + "> must be empty", child.loc);
    if (kind == TypeKind::Function) {
      FunctionInstance fn{*target, {node.name}, node.loc};
      detail::mergeFunction(obj, std::move(fn));
      return;
    }
    RelationInstance rel;
    rel.target = *target;
    rel.classifications.push_back(node.name);
    rel.source = source;
    rel.loc = node.loc;
    detail::mergeRelation(obj, std::move(rel));
  }

  void attachStandalone(Collection& coll) {
    for (auto& s : standalone_) {
      std::string id = s.source;
      if (auto hash = id.rfind('#'); hash != std::string::npos) id = id.substr(hash + 1);
      auto index = coll.findById(id);
      if (!index)
        throw Error(ErrorCode::UnresolvedInstanceRef,
                    "source.Instance '" + s.source + "' names no object",
                    s.relation.loc);
      detail::mergeRelation(coll.object(*index), std::move(s.relation));
    }
  }

  const Ontology& ontology_;
  const ParseOptions& options_;
  std::vector<Standalone> standalone_;
};

}  // namespace

Collection toGeneric(std::string_view text, const Ontology& ontology,
                     std::string_view document, const ParseOptions& options) {
  xml::Document doc = xml::parse(text);
  return SpecificReader(ontology, options).read(doc.root, document);
}

}  // namespace oml
