#include "oml/hot.hpp"

#include <map>

#include "oml/relations.hpp"

namespace oml {

void classifyType(Ontology& ontology, std::string type, std::string metatype,
                  Resolution mode) {
  std::optional<TypeRef> t, m;
  if (mode == Resolution::Strict) {
    t = ontology.resolveTypeName(type);
    m = ontology.resolveTypeName(metatype);
  } else {
    t = ontology.tryResolve(type);
    m = ontology.tryResolve(metatype);
  }
  if (t && m) {
    auto kt = ontology.kindOf(*t), km = ontology.kindOf(*m);
    if (kt && km && !sameFamily(*kt, *km))
      throw Error(ErrorCode::KindMismatch,
                  "'" + type + "' is a " + std::string(toString(*kt)) +
                      " type and cannot be classified by " +
                      std::string(toString(*km)) + " type '" + metatype + "'");
  }
  ontology.addHigherOrder(TypeClassification{std::move(type), std::move(metatype), {}});
}

namespace {

void requireRelation(const Ontology& ontology, const std::string& relation) {
  auto ref = ontology.tryResolve(relation);
  auto kind = ref ? ontology.kindOf(*ref) : std::nullopt;
  if (!kind || !isRelationKind(*kind))
    throw Error(ErrorCode::UnresolvedRef,
                "'" + relation + "' is not a declared relation type");
}

}  // namespace

void assertOwnSlot(Ontology& ontology, std::string relation, std::string source,
                   std::string target) {
  requireRelation(ontology, relation);
  for (const std::string* end : {&source, &target})
    if (!ontology.tryResolve(*end))
      throw Error(ErrorCode::UnresolvedRef, "'" + *end + "' names no type");
  ontology.addHigherOrder(
      OwnSlot{std::move(relation), std::move(source), std::move(target), {}});
}

void assertOwnSlot(KnowledgeBase& kb, std::string relation, std::string source,
                   std::string target) {
  requireRelation(kb.ontology, relation);
  auto known = [&](const std::string& name) {
    if (kb.ontology.tryResolve(name)) return true;
    for (std::size_t c = 0; c < kb.collections.size(); ++c)
      if (kb.findInstance(name, c)) return true;
    return false;
  };
  for (const std::string* end : {&source, &target})
    if (!known(*end))
      throw Error(ErrorCode::UnresolvedRef,
                  "'" + *end + "' names neither a type nor an individual");
  kb.ontology.addHigherOrder(
      OwnSlot{std::move(relation), std::move(source), std::move(target), {}});
}

std::set<TypePair> typeClassificationClosure(const TypeUniverse& universe) {
  std::set<TypePair> stored;
  for (const auto& info : universe.types()) {
    auto add = [&](const char* meta) {
      stored.emplace(info.ref, TypeRef::builtin(meta));
    };
    switch (info.kind) {
      case TypeKind::Object:
        add("Type.Object");
        add("Type.Entity");
        break;
      case TypeKind::Data:
        add("Type.Data");
        add("Type.Entity");
        break;
      case TypeKind::Function:
        add("Type.Function");
        [[fallthrough]];
      case TypeKind::BinaryRelation:
        add("Type.BinaryRelation");
        add("Type.Relation");
        break;
    }
  }
  for (const auto& assertion : universe.ontology().higherOrder()) {
    const auto* tc = std::get_if<TypeClassification>(&assertion);
    if (!tc) continue;
    TypeRef t = universe.resolve(tc->instance), m = universe.resolve(tc->type);
    if (t.isResolved() && m.isResolved()) stored.emplace(t, m);
  }
  std::set<TypeRef> nodes;
  rel::Relation<TypeRef, TypeRef> axioms;
  for (const auto& axiom : universe.axioms())
    axioms.emplace(axiom.specific, axiom.generic);
  auto lifted =
      rel::compose(stored, rel::reflexiveTransitiveClosure(nodes, axioms));
  lifted.insert(stored.begin(), stored.end());
  return lifted;
}

std::vector<Diagnostic> checkHigherOrderClassification(const Ontology& ontology) {
  std::vector<Diagnostic> out;
  TypeUniverse universe(ontology);
  const auto classified = typeClassificationClosure(universe);
  for (const auto& assertion : ontology.higherOrder()) {
    const auto* tc = std::get_if<TypeClassification>(&assertion);
    if (!tc) continue;
    const TypeInfo* sigma = universe.find(universe.resolve(tc->instance));
    const TypeInfo* rho = universe.find(universe.resolve(tc->type));
    if (!sigma || !rho || !isRelationKind(sigma->kind) ||
        !isRelationKind(rho->kind))
      continue;
    if (!sigma->source || !sigma->target || !rho->source || !rho->target)
      continue;
    const std::pair<const TypeRef*, const TypeRef*> ends[] = {
        {&*sigma->source, &*rho->source}, {&*sigma->target, &*rho->target}};
    for (const auto& [lower, upper] : ends) {
      if (classified.count({*lower, *upper})) continue;
      out.push_back({Severity::Warning, "HOT001",
                     "'" + tc->instance + "' ⊨ '" + tc->type + "' but '" +
                         universe.nameFor(*lower) + "' is not classified by '" +
                         universe.nameFor(*upper) + "'",
                     ontology.uri(), tc->loc});
    }
  }
  return out;
}

std::vector<Diagnostic> checkHigherOrder(const KnowledgeBase& kb,
                                         const CheckOptions& options) {
  std::vector<Diagnostic> out = checkHigherOrderClassification(kb.ontology);
  TypeUniverse universe(kb.ontology);
  const Severity sev =
      options.mode == Resolution::Strict ? Severity::Error : Severity::Warning;
  const std::string& doc = kb.ontology.uri();

  for (const auto& assertion : kb.ontology.higherOrder()) {
    if (const auto* tc = std::get_if<TypeClassification>(&assertion)) {
      TypeRef t = universe.resolve(tc->instance), m = universe.resolve(tc->type);
      for (const auto* r : {&t, &m})
        if (!r->isResolved())
          out.push_back({sev, "HOT003",
                         "classification names undeclared type '" + r->name + "'",
                         doc, tc->loc});
      auto kt = universe.kind(t), km = universe.kind(m);
      if (kt && km && !sameFamily(*kt, *km))
        out.push_back({Severity::Error, "HOT003",
                       "'" + tc->instance + "' and '" + tc->type +
                           "' lie in different dimensions",
                       doc, tc->loc});
    } else {
      const auto& slot = std::get<OwnSlot>(assertion);
      auto kind = universe.kind(universe.resolve(slot.relation));
      if (!kind || !isRelationKind(*kind))
        out.push_back({Severity::Error, "HOT003",
                       "own slot names '" + slot.relation +
                           "', which is not a relation type",
                       doc, slot.loc});
      for (const auto* end : {&slot.source, &slot.target})
        if (!universe.resolve(*end).isResolved())
          out.push_back({sev, "HOT003",
                         "own slot endpoint '" + *end + "' names no type", doc,
                         slot.loc});
    }
  }

  for (const auto& coll : kb.collections)
    for (const auto& obj : coll.objects())
      if (obj.id && kb.ontology.tryResolve(*obj.id))
        out.push_back({Severity::Error, "HOT002",
                       "'" + *obj.id + "' is both a type and an individual",
                       coll.document, obj.loc});
  return out;
}

}  // namespace oml
