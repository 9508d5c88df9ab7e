#include "oml/equality.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "oml/checker.hpp"

namespace oml {

namespace {

struct OntologyView {
  std::map<std::string, std::tuple<std::string, std::string, std::string>> types;
  std::map<std::string, std::string> comments;
  std::set<std::pair<std::string, std::string>> axioms;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> higherOrder;
  std::set<std::pair<std::string, std::string>> disjoint;
  std::set<std::string> incoherent;
  std::set<std::pair<std::string, std::string>> inverses;
};

std::string nameOf(const TypeUniverse& u, std::string_view written) {
  TypeRef ref = u.resolve(written);
  return ref.isResolved() ? u.nameFor(ref) : std::string(written);
}

OntologyView viewOf(const Ontology& ontology, const EquivalenceOptions& options) {
  TypeUniverse u(ontology);
  OntologyView v;
  for (const auto& info : u.types()) {
    TypeKind kind = info.kind;
    if (options.functionsAsRelations && kind == TypeKind::Function)
      kind = TypeKind::BinaryRelation;
    std::string src, tgt;
    if (isRelationKind(info.kind)) {
      src = info.source ? u.nameFor(*info.source) : info.decl->source;
      tgt = info.target ? u.nameFor(*info.target) : info.decl->target;
    }
    v.types[info.name] = {std::string(toString(kind)), src, tgt};
    if (info.decl && info.decl->comment) v.comments[info.name] = *info.decl->comment;
  }
  for (const auto& a : u.axioms())
    v.axioms.emplace(u.nameFor(a.specific), u.nameFor(a.generic));
  for (const auto& a : ontology.axioms()) {
    // unresolved ones are missing from the universe
    TypeRef s = u.resolve(a.specific);
    if (s.isResolved() && (!a.generic || u.resolve(*a.generic).isResolved())) continue;
    v.axioms.emplace(nameOf(u, a.specific), a.generic ? nameOf(u, *a.generic) : "");
  }
  for (const auto& h : ontology.higherOrder()) {
    if (const auto* tc = std::get_if<TypeClassification>(&h))
      v.higherOrder.emplace("classification", nameOf(u, tc->instance),
                            nameOf(u, tc->type), "");
    else {
      const auto& s = std::get<OwnSlot>(h);
      v.higherOrder.emplace("slot", nameOf(u, s.relation), nameOf(u, s.source),
                            nameOf(u, s.target));
    }
  }
  for (const auto& [a, b] : u.disjoint()) {
    auto p = makeNamePair(u.nameFor(a), u.nameFor(b));
    v.disjoint.insert(p);
  }
  for (const auto& t : u.incoherent()) v.incoherent.insert(u.nameFor(t));
  for (const auto& [name, of] : ontology.inverses())
    v.inverses.emplace(nameOf(u, name), nameOf(u, of));
  return v;
}

template <class Map>
bool compareMaps(const Map& a, const Map& b, const char* what, std::string* why) {
  if (a == b) return true;
  if (why) {
    for (const auto& [k, val] : a) {
      auto it = b.find(k);
      if (it == b.end()) {
        *why = std::string(what) + " '" + k + "' only on the left";
        return false;
      }
      if (!(it->second == val)) {
        *why = std::string(what) + " '" + k + "' differs";
        return false;
      }
    }
    for (const auto& [k, val] : b)
      if (!a.count(k)) {
        *why = std::string(what) + " '" + k + "' only on the right";
        return false;
      }
  }
  return false;
}

template <class Set>
bool compareSets(const Set& a, const Set& b, const char* what, std::string* why) {
  if (a == b) return true;
  if (why) {
    std::size_t onlyLeft = 0, onlyRight = 0;
    for (const auto& x : a) onlyLeft += !b.count(x);
    for (const auto& x : b) onlyRight += !a.count(x);
    *why = std::string(what) + " differ (" + std::to_string(onlyLeft) +
           " only on the left, " + std::to_string(onlyRight) + " only on the right)";
  }
  return false;
}

bool equalViews(const OntologyView& a, const OntologyView& b,
                const EquivalenceOptions& options, std::string* why) {
  if (!compareMaps(a.types, b.types, "type", why)) return false;
  if (options.compareComments && !compareMaps(a.comments, b.comments, "comment on", why))
    return false;
  if (!compareSets(a.axioms, b.axioms, "subtype axioms", why)) return false;
  if (!compareSets(a.higherOrder, b.higherOrder, "higher-order assertions", why))
    return false;
  if (options.compareSidecar) {
    if (!compareSets(a.disjoint, b.disjoint, "disjointness declarations", why))
      return false;
    if (!compareSets(a.incoherent, b.incoherent, "incoherence declarations", why))
      return false;
    if (!compareSets(a.inverses, b.inverses, "inverse registrations", why))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct ObjectView {
  std::string about;
  std::set<std::string> classifications;
  std::set<std::pair<std::string, std::string>> functions;
  std::set<std::pair<std::string, std::string>> relations;

  auto tie() const { return std::tie(about, classifications, functions, relations); }
  friend bool operator==(const ObjectView& x, const ObjectView& y) {
    return x.tie() == y.tie();
  }
  friend bool operator<(const ObjectView& x, const ObjectView& y) {
    return x.tie() < y.tie();
  }
};

struct InstanceView {
  std::map<std::string, ObjectView> named;
  std::vector<ObjectView> anonymous;
  std::vector<std::pair<std::string, std::string>> collections;
};

InstanceView instancesOf(const KnowledgeBase& kb, const EquivalenceOptions& options) {
  TypeUniverse u(kb.ontology);
  std::set<TypePair> subtype;
  if (options.closeClassifications) subtype = subtypeClosure(u);

  std::set<InstanceRef> referenced;
  for (std::size_t c = 0; c < kb.collections.size(); ++c)
    for (const auto& obj : kb.collections[c].objects()) {
      auto note = [&](const std::string& name) {
        if (auto ref = kb.findInstance(name, c)) referenced.insert(*ref);
      };
      for (const auto& r : obj.relations) {
        note(r.target);
        if (r.source) note(*r.source);
      }
      for (const auto& f : obj.functions) note(f.target);
    }

  auto keyOf = [&](InstanceRef ref) -> std::optional<std::string> {
    const ObjectInstance& obj = kb.object(ref);
    std::string prefix = options.compareCollectionMetadata
                             ? std::to_string(ref.collection) + "/"
                             : std::string();
    if (obj.id && (!options.ignoreUnreferencedIds || referenced.count(ref)))
      return prefix + "id:" + *obj.id;
    if (obj.about) return prefix + "about:" + *obj.about;
    return std::nullopt;
  };
  auto names = [&](const std::vector<std::string>& written) {
    std::set<std::string> out;
    for (const auto& w : written) {
      TypeRef ref = u.resolve(w);
      if (!ref.isResolved()) {
        out.insert(w);
        continue;
      }
      out.insert(u.nameFor(ref));
      if (options.closeClassifications)
        for (const auto& [s, g] : subtype)
          if (s == ref) out.insert(u.nameFor(g));
    }
    return out;
  };

  InstanceView view;
  std::map<InstanceRef, ObjectView> objects;
  std::map<std::string, ObjectView> dangling;
  for (std::size_t c = 0; c < kb.collections.size(); ++c) {
    const auto& coll = kb.collections[c];
    if (options.compareCollectionMetadata)
      view.collections.emplace_back(coll.id.value_or(""), coll.ontology.value_or(""));
    for (std::size_t o = 0; o < coll.objects().size(); ++o) {
      const InstanceRef self{c, o};
      const auto& obj = coll.objects()[o];
      ObjectView& v = objects[self];
      if (obj.about && obj.id) v.about = *obj.about;
      v.classifications = names(obj.classifications);
      auto target = [&](const std::string& text) {
        if (auto ref = kb.findInstance(text, c))
          if (auto key = keyOf(*ref)) return "ref:" + *key;
        return "text:" + text;
      };
      for (const auto& f : obj.functions) {
        auto& into = options.functionsAsRelations ? v.relations : v.functions;
        for (const auto& n : names(f.classifications)) into.emplace(n, target(f.target));
      }
      for (const auto& r : obj.relations) {
        ObjectView* owner = &v;
        if (r.source && r.source != obj.id) {
          if (auto ref = kb.findInstance(*r.source, c)) owner = &objects[*ref];
          else owner = &dangling[*r.source];
        }
        auto n = names(r.classifications);
        if (n.empty()) owner->relations.emplace("", target(r.target));
        for (const auto& name : n) owner->relations.emplace(name, target(r.target));
      }
    }
  }
  for (auto& [ref, v] : objects) {
    if (auto key = keyOf(ref)) view.named[*key] = std::move(v);
    else view.anonymous.push_back(std::move(v));
  }
  for (auto& [name, v] : dangling) view.named["dangling:" + name] = std::move(v);
  std::sort(view.anonymous.begin(), view.anonymous.end());
  return view;
}

bool equalInstances(const KnowledgeBase& a, const KnowledgeBase& b,
                    const EquivalenceOptions& options, std::string* why) {
  InstanceView va = instancesOf(a, options), vb = instancesOf(b, options);
  if (va.collections != vb.collections) {
    if (why) *why = "collection metadata differs";
    return false;
  }
  if (!compareMaps(va.named, vb.named, "object", why)) return false;
  if (va.anonymous != vb.anonymous) {
    if (why)
      *why = "anonymous objects differ (" + std::to_string(va.anonymous.size()) +
             " vs " + std::to_string(vb.anonymous.size()) + ")";
    return false;
  }
  return true;
}

}  // namespace

bool semanticallyEqual(const Ontology& a, const Ontology& b,
                       const EquivalenceOptions& options, std::string* why) {
  return equalViews(viewOf(a, options), viewOf(b, options), options, why);
}

bool semanticallyEqual(const KnowledgeBase& a, const KnowledgeBase& b,
                       const EquivalenceOptions& options, std::string* why) {
  return semanticallyEqual(a.ontology, b.ontology, options, why) &&
         equalInstances(a, b, options, why);
}

bool semanticallyEqual(const Collection& a, const Collection& b,
                       const Ontology& ontology, const EquivalenceOptions& options,
                       std::string* why) {
  KnowledgeBase ka(ontology), kb(ontology);
  ka.collections.push_back(a);
  kb.collections.push_back(b);
  return equalInstances(ka, kb, options, why);
}

}  // namespace oml
