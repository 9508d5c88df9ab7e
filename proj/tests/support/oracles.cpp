#include "oracles.hpp"

#include <vector>

namespace oml::testing {

std::set<TypePair> naiveSubtypeClosure(const TypeUniverse& universe) {
  std::set<TypeRef> nodes;
  for (const auto& info : universe.types()) nodes.insert(info.ref);
  std::set<TypePair> out;
  for (const auto& axiom : universe.axioms()) {
    nodes.insert(axiom.specific);
    nodes.insert(axiom.generic);
    out.emplace(axiom.specific, axiom.generic);
  }
  for (const auto& n : nodes) out.emplace(n, n);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<TypePair> snapshot(out.begin(), out.end());
    for (const auto& [a, b] : snapshot)
      for (const auto& [b2, c] : snapshot)
        if (b == b2) changed |= out.emplace(a, c).second;
  }
  return out;
}

std::set<std::pair<Individual, TypeRef>> joinEntityClassifications(
    const InstanceFacts& facts, const std::set<TypePair>& subtype) {
  std::set<std::pair<Individual, TypeRef>> out;
  for (const auto* list : {&facts.classifications, &facts.literals})
    for (const auto& f : *list) {
      out.emplace(f.key, f.type);
      for (const auto& [s, g] : subtype)
        if (s == f.type) out.emplace(f.key, g);
    }
  return out;
}

std::set<std::pair<InstancePair, TypeRef>> joinRelationClassifications(
    const InstanceFacts& facts, const std::set<TypePair>& subtype) {
  std::set<std::pair<InstancePair, TypeRef>> out;
  for (const auto& f : facts.pairs) {
    InstancePair p{f.source, f.target};
    out.emplace(p, f.type);
    for (const auto& [s, g] : subtype)
      if (s == f.type) out.emplace(p, g);
  }
  return out;
}

Incompatibility bruteForceIncompatibility(const TypeUniverse& universe,
                                          const std::set<TypePair>& subtype) {
  Incompatibility out;
  out.disjoint = universe.disjoint();
  out.incoherent = universe.incoherent();
  auto disjoint = [&](const TypeRef& a, const TypeRef& b) {
    return out.disjoint.count(makeTypePair(a, b)) > 0;
  };
  std::set<TypeRef> all;
  for (const auto& [s, g] : subtype) {
    all.insert(s);
    all.insert(g);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rho : universe.types()) {
      if (!isRelationKind(rho.kind) || !rho.source || !rho.target) continue;
      for (const auto& sigma : universe.types()) {
        if (!isRelationKind(sigma.kind) || !sigma.source || !sigma.target) continue;
        if (rho.ref == sigma.ref) continue;
        if (disjoint(*rho.source, *sigma.source) || disjoint(*rho.target, *sigma.target))
          changed |= out.disjoint.insert(makeTypePair(rho.ref, sigma.ref)).second;
      }
      if (out.incoherent.count(*rho.source) || out.incoherent.count(*rho.target))
        changed |= out.incoherent.insert(rho.ref).second;
    }
    for (const auto& tau : all)
      for (const auto& x : all) {
        if (!subtype.count({tau, x})) continue;
        if (x != tau && out.incoherent.count(x))
          changed |= out.incoherent.insert(tau).second;
        for (const auto& y : all)
          if (x != y && subtype.count({tau, y}) && disjoint(x, y))
            changed |= out.incoherent.insert(tau).second;
      }
  }
  return out;
}

PairSet bruteForceJoin(const PairSet& r, const PairSet& s) {
  PairSet out;
  for (const auto& [a, b] : r)
    for (const auto& [b2, c] : s)
      if (b == b2) out.emplace(a, c);
  return out;
}

PairSet bruteForceTranspose(const PairSet& r) {
  PairSet out;
  for (const auto& [a, b] : r) out.emplace(b, a);
  return out;
}

PairSet bruteForceDiagonal(const std::set<Individual>& xs) {
  PairSet out;
  for (const auto& x : xs) out.emplace(x, x);
  return out;
}

PairSet oracleExtension(const KnowledgeBase& kb, const DerivedRelationType& type) {
  using Op = DerivedRelationType::Op;
  switch (type.op()) {
    case Op::Named: {
      TypeUniverse universe(kb.ontology);
      auto facts = extractFacts(kb, universe);
      PairSet out;
      for (const auto& [pair, t] :
           joinRelationClassifications(facts, naiveSubtypeClosure(universe)))
        if (t == type.base()) out.insert(pair);
      return out;
    }
    case Op::Identity: {
      TypeUniverse universe(kb.ontology);
      auto facts = extractFacts(kb, universe);
      std::set<Individual> xs;
      for (const auto& [key, t] :
           joinEntityClassifications(facts, naiveSubtypeClosure(universe)))
        if (t == type.base()) xs.insert(key);
      return bruteForceDiagonal(xs);
    }
    case Op::Compose:
      return bruteForceJoin(oracleExtension(kb, type.left()),
                            oracleExtension(kb, type.right()));
    case Op::Transpose:
      return bruteForceTranspose(oracleExtension(kb, type.operand()));
  }
  return {};
}

}  // namespace oml::testing
