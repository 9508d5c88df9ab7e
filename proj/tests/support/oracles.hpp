#pragma once

#include <set>
#include <string>
#include <utility>

#include "oml/calculus.hpp"
#include "oml/checker.hpp"
#include "oml/model.hpp"

// Deliberately naive reference implementations. Everything here iterates
// to a fixpoint over all candidate tuples instead of walking graphs.

namespace oml::testing {

/// Reflexive pairs on the nodes, then repeat "add (a,c) for (a,b),(b,c)"
/// until nothing changes.
std::set<TypePair> naiveSubtypeClosure(const TypeUniverse& universe);

/// Every stored classification joined with every subtype pair.
std::set<std::pair<Individual, TypeRef>> joinEntityClassifications(
    const InstanceFacts& facts, const std::set<TypePair>& subtype);
std::set<std::pair<InstancePair, TypeRef>> joinRelationClassifications(
    const InstanceFacts& facts, const std::set<TypePair>& subtype);

/// The four incompatibility rules applied over all type tuples until stable.
Incompatibility bruteForceIncompatibility(const TypeUniverse& universe,
                                          const std::set<TypePair>& subtype);

/// {(a,c) | (a,b) in r, (b2,c) in s, b == b2} by nested loops.
PairSet bruteForceJoin(const PairSet& r, const PairSet& s);
PairSet bruteForceTranspose(const PairSet& r);
PairSet bruteForceDiagonal(const std::set<Individual>& xs);

/// Extension of a relation expression from the raw stored facts: named
/// types by scanning all pairs against the naive closures, compositions by
/// bruteForceJoin.
PairSet oracleExtension(const KnowledgeBase& kb, const DerivedRelationType& type);

}  // namespace oml::testing
