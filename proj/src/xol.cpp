#include <map>
#include <set>
#include <sstream>

#include "oml/interop.hpp"
#include "oml/xml.hpp"
#include "oml/xmlio.hpp"

namespace oml::xol {

std::string_view coreDtd() {
  static const std::string dtd =
      "<!ELEMENT module\n"
      "  (name, class*, slot*, individual*)\n"
      ">\n"
      "<!ELEMENT name (#PCDATA)>\n"
      "<!ELEMENT class\n"
      "  (name, (subclass-of | instance-of | slot-values)* )\n"
      ">\n"
      "<!ELEMENT slot\n"
      "  (name, (domain | slot-value-type | slot-values)* )\n"
      ">\n"
      "<!ELEMENT individual\n"
      "  (name, (instance-of | slot-values)* )\n"
      ">\n"
      "<!ELEMENT slot-values\n"
      "  (name, value*)\n"
      ">\n"
      "<!ELEMENT subclass-of (#PCDATA)>\n"
      "<!ELEMENT instance-of (#PCDATA)>\n"
      "<!ELEMENT domain (#PCDATA)>\n"
      "<!ELEMENT slot-value-type (#PCDATA)>\n"
      "<!ELEMENT value (#PCDATA)>\n";
  return dtd;
}

namespace {

constexpr std::string_view kThing = "thing";

[[noreturn]] void unsupported(const std::string& what, SourceLoc loc = {}) {
  throw Error(ErrorCode::UnsupportedConstruct, "XOL cannot express " + what, loc);
}

class Writer {
 public:
  void open(int depth, std::string_view tag) {
    indent(depth);
    out_ << '<' << tag << ">\n";
  }
  void close(int depth, std::string_view tag) {
    indent(depth);
    out_ << "</" << tag << ">\n";
  }
  void leaf(int depth, std::string_view tag, std::string_view text) {
    indent(depth);
    out_ << '<' << tag << '>' << xml::escapeText(text) << "</" << tag << ">\n";
  }
  void slotValues(int depth, const std::string& name,
                  const std::vector<std::string>& values) {
    open(depth, "slot-values");
    leaf(depth + 1, "name", name);
    for (const auto& v : values) leaf(depth + 1, "value", v);
    close(depth, "slot-values");
  }
  std::string str() const { return out_.str(); }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }
  std::ostringstream out_;
};

/// Own slots grouped by source, then by relation, in first-seen order.
using SlotGroups = std::vector<std::pair<std::string, std::vector<std::string>>>;

void addValue(SlotGroups& groups, const std::string& name, const std::string& value) {
  for (auto& [n, values] : groups)
    if (n == name) {
      if (std::find(values.begin(), values.end(), value) == values.end())
        values.push_back(value);
      return;
    }
  groups.push_back({name, {value}});
}

}  // namespace

std::string exportXol(const KnowledgeBase& kb, const XolOptions& options) {
  const Ontology& ont = kb.ontology;
  if (!ont.imports().empty()) unsupported("extends imports");
  TypeUniverse universe(ont);

  std::map<std::string, std::vector<std::string>> superclasses;
  for (const auto& axiom : ont.axioms()) {
    const TypeDecl* decl = ont.findLocal(axiom.specific);
    if (!decl) unsupported("a subtype axiom on undeclared type '" + axiom.specific + "'", axiom.loc);
    if (isRelationKind(decl->kind))
      unsupported("relation subtype '" + axiom.specific + "'", axiom.loc);
    superclasses[axiom.specific].push_back(axiom.generic ? *axiom.generic
                                                         : std::string(kThing));
  }

  std::map<std::string, std::vector<std::string>> metaclasses;
  std::map<std::string, SlotGroups> ownSlots;
  for (const auto& assertion : ont.higherOrder()) {
    if (const auto* tc = std::get_if<TypeClassification>(&assertion)) {
      auto k = universe.kind(universe.resolve(tc->instance));
      if (k && isRelationKind(*k))
        unsupported("relation-type classification of '" + tc->instance + "'", tc->loc);
      metaclasses[tc->instance].push_back(tc->type);
      continue;
    }
    const auto& slot = std::get<OwnSlot>(assertion);
    const TypeDecl* source = ont.findLocal(slot.source);
    if (!source || source->kind == TypeKind::Data)
      unsupported("own slot '" + slot.relation + "' sourced at '" + slot.source + "'",
                  slot.loc);
    addValue(ownSlots[slot.source], slot.relation, slot.target);
  }

  Writer w;
  w.open(0, "module");
  w.leaf(1, "name", ont.name());
  for (const auto& decl : ont.types()) {
    if (decl.kind != TypeKind::Object) continue;
    w.open(1, "class");
    w.leaf(2, "name", decl.name);
    if (options.extended && decl.comment) w.leaf(2, "documentation", *decl.comment);
    for (const auto& g : superclasses[decl.name]) w.leaf(2, "subclass-of", g);
    for (const auto& m : metaclasses[decl.name]) w.leaf(2, "instance-of", m);
    for (const auto& [name, values] : ownSlots[decl.name]) w.slotValues(2, name, values);
    w.close(1, "class");
  }
  for (const auto& decl : ont.types()) {
    if (decl.kind == TypeKind::Data)
      unsupported("declared data type '" + decl.name + "'", decl.loc);
    if (!isRelationKind(decl.kind)) continue;
    w.open(1, "slot");
    w.leaf(2, "name", decl.name);
    if (options.extended && decl.comment) w.leaf(2, "documentation", *decl.comment);
    w.leaf(2, "domain", decl.source);
    w.leaf(2, "slot-value-type", decl.target);
    if (options.extended)
      for (const auto& [name, of] : ont.inverses())
        if (name == decl.name) w.leaf(2, "slot-inverse", of);
    for (const auto& [name, values] : ownSlots[decl.name]) w.slotValues(2, name, values);
    w.close(1, "slot");
  }

  for (std::size_t c = 0; c < kb.collections.size(); ++c) {
    const auto& coll = kb.collections[c];
    std::vector<SlotGroups> values(coll.objects().size());
    auto valueOf = [&](const std::string& text,
                       const std::vector<std::string>& classes, SourceLoc loc) {
      ResolvedTarget r = kb.resolveTarget(c, text, classes, universe);
      if (r.kind == TargetKind::Unresolved)
        unsupported("unresolved target '" + text + "'", loc);
      return r.kind == TargetKind::Instance ? kb.instanceKey(*r.instance) : text;
    };
    for (std::size_t o = 0; o < coll.objects().size(); ++o) {
      const auto& obj = coll.objects()[o];
      if (!obj.id) unsupported("an individual without an id", obj.loc);
      for (const auto& f : obj.functions) {
        if (f.classifications.empty()) unsupported("an unclassified function value", f.loc);
        for (const auto& cls : f.classifications)
          addValue(values[o], cls, valueOf(f.target, f.classifications, f.loc));
      }
      for (const auto& r : obj.relations) {
        if (r.classifications.empty())
          unsupported("an unclassified relation instance", r.loc);
        std::size_t owner = o;
        if (r.source && r.source != obj.id) {
          auto ref = kb.findInstance(*r.source, c);
          if (!ref) unsupported("unresolved source '" + *r.source + "'", r.loc);
          owner = ref->object;
        }
        for (const auto& cls : r.classifications)
          addValue(values[owner], cls, valueOf(r.target, r.classifications, r.loc));
      }
    }
    for (std::size_t o = 0; o < coll.objects().size(); ++o) {
      const auto& obj = coll.objects()[o];
      w.open(1, "individual");
      w.leaf(2, "name", *obj.id);
      for (const auto& cls : obj.classifications) w.leaf(2, "instance-of", cls);
      for (const auto& [name, vals] : values[o]) w.slotValues(2, name, vals);
      w.close(1, "individual");
    }
  }
  w.close(0, "module");
  return w.str();
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void syntax(const std::string& message, SourceLoc loc) {
  throw Error(ErrorCode::XolSyntaxError, message, loc);
}

std::string trimmed(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::string textOf(const xml::Node& node) {
  for (const auto& child : node.children)
    if (child.isElement())
      syntax("<" + node.name + "> holds character data only", child.loc);
  return trimmed(node.textContent());
}

/// The leading name element and the remaining element children.
std::pair<std::string, std::vector<const xml::Node*>> split(const xml::Node& node) {
  std::vector<const xml::Node*> rest;
  std::optional<std::string> name;
  for (const auto& child : node.children) {
    if (child.kind == xml::Node::Kind::Text && !xml::isWhitespace(child.text))
      syntax("character data is not allowed in <" + node.name + ">", child.loc);
    if (!child.isElement()) continue;
    if (!name) {
      if (child.name != "name")
        syntax("<" + node.name + "> must start with <name>", child.loc);
      name = textOf(child);
      if (name->empty()) syntax("empty <name> in <" + node.name + ">", child.loc);
      continue;
    }
    rest.push_back(&child);
  }
  if (!name) syntax("<" + node.name + "> lacks <name>", node.loc);
  if (!node.attributes.empty())
    syntax("<" + node.name + "> takes no attributes", node.attributes.front().loc);
  return {*name, rest};
}

std::pair<std::string, std::vector<std::string>> slotValues(const xml::Node& node) {
  auto [name, rest] = split(node);
  std::vector<std::string> values;
  for (const auto* v : rest) {
    if (v->name != "value")
      syntax("<slot-values> holds <name> and <value> only", v->loc);
    values.push_back(textOf(*v));
  }
  return {name, values};
}

}  // namespace

KnowledgeBase importXol(std::string_view text, const Ontology* context) {
  xml::Document doc;
  try {
    doc = xml::parse(text);
  } catch (const Error& e) {
    syntax(e.detail(), e.location());
  }
  const xml::Node& root = doc.root;
  if (root.name != "module") syntax("root element must be <module>", root.loc);
  auto [moduleName, sections] = split(root);

  KnowledgeBase kb;
  kb.ontology.setUri(moduleName);
  std::vector<std::pair<const xml::Node*, std::string>> individuals;
  int stage = 0;  // class*, slot*, individual*

  auto isContextFunction = [&](const std::string& name) {
    if (!context) return false;
    const TypeDecl* d = context->findLocal(name);
    return d && d->kind == TypeKind::Function;
  };

  for (const xml::Node* section : sections) {
    const int order = section->name == "class"        ? 0
                      : section->name == "slot"       ? 1
                      : section->name == "individual" ? 2
                                                      : -1;
    if (order < 0) syntax("<module> cannot contain <" + section->name + ">", section->loc);
    if (order < stage)
      syntax("<" + section->name + "> out of order (class*, slot*, individual*)",
             section->loc);
    stage = order;
    auto [name, children] = split(*section);

    if (section->name == "class") {
      TypeDecl decl;
      decl.name = name;
      decl.loc = section->loc;
      std::vector<std::pair<std::string, const xml::Node*>> supers;
      for (const auto* c : children) {
        if (c->name == "subclass-of") {
          supers.emplace_back(textOf(*c), c);
        } else if (c->name == "instance-of") {
          kb.ontology.addHigherOrder(TypeClassification{name, textOf(*c), c->loc});
          kb.higherOrder = true;
        } else if (c->name == "slot-values") {
          auto [slot, values] = slotValues(*c);
          for (auto& v : values)
            kb.ontology.addHigherOrder(OwnSlot{slot, name, v, c->loc});
          kb.higherOrder = true;
        } else if (c->name == "documentation") {
          decl.comment = textOf(*c);
        } else {
          syntax("<class> cannot contain <" + c->name + ">", c->loc);
        }
      }
      kb.ontology.declareType(std::move(decl));
      for (const auto& [g, node] : supers)
        kb.ontology.declareSubtype(name, g == kThing ? std::nullopt
                                                     : std::optional<std::string>(g),
                                   node->loc);
    } else if (section->name == "slot") {
      TypeDecl decl;
      decl.name = name;
      decl.loc = section->loc;
      decl.kind = isContextFunction(name) ? TypeKind::Function : TypeKind::BinaryRelation;
      std::optional<std::string> domain, range;
      std::vector<std::string> inverses;
      for (const auto* c : children) {
        if (c->name == "domain" || c->name == "slot-value-type") {
          auto& into = c->name == "domain" ? domain : range;
          if (into) syntax("<slot> '" + name + "' repeats <" + c->name + ">", c->loc);
          into = textOf(*c);
        } else if (c->name == "slot-values") {
          auto [slot, values] = slotValues(*c);
          for (auto& v : values)
            kb.ontology.addHigherOrder(OwnSlot{slot, name, v, c->loc});
          kb.higherOrder = true;
        } else if (c->name == "documentation") {
          decl.comment = textOf(*c);
        } else if (c->name == "slot-inverse") {
          inverses.push_back(textOf(*c));
        } else {
          syntax("<slot> cannot contain <" + c->name + ">", c->loc);
        }
      }
      decl.source = domain.value_or("Entity");
      decl.target = range.value_or("Entity");
      kb.ontology.declareType(std::move(decl));
      for (auto& of : inverses) kb.ontology.registerInverse(name, std::move(of));
    } else {
      individuals.emplace_back(section, name);
    }
  }

  if (!individuals.empty()) {
    Collection coll;
    for (const auto& [node, name] : individuals) {
      ObjectInstance obj;
      if (!xml::isName(name)) syntax("individual name '" + name + "' is not a legal id", node->loc);
      obj.id = name;
      obj.loc = node->loc;
      for (const auto* c : split(*node).second) {
        if (c->name == "instance-of") {
          std::string type = textOf(*c);
          if (std::find(obj.classifications.begin(), obj.classifications.end(),
                        type) == obj.classifications.end())
            obj.classifications.push_back(std::move(type));
        } else if (c->name == "slot-values") {
          auto [slot, values] = slotValues(*c);
          const TypeDecl* d = kb.ontology.findLocal(slot);
          const bool function = d && d->kind == TypeKind::Function;
          for (auto& v : values) {
            if (function) {
              detail::mergeFunction(obj, FunctionInstance{v, {slot}, c->loc});
            } else {
              RelationInstance rel;
              rel.target = v;
              rel.classifications.push_back(slot);
              rel.loc = c->loc;
              detail::mergeRelation(obj, std::move(rel));
            }
          }
        } else {
          syntax("<individual> cannot contain <" + c->name + ">", c->loc);
        }
      }
      if (coll.findById(name)) syntax("individual '" + name + "' is defined twice", node->loc);
      coll.addObject(std::move(obj));
    }
    kb.collections.push_back(std::move(coll));
  }
  return kb;
}

}  // namespace oml::xol
