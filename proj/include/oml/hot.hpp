#pragma once

#include <set>
#include <string>
#include <vector>

#include "oml/checker.hpp"
#include "oml/diagnostic.hpp"
#include "oml/model.hpp"

// Higher-order types: types classified by metatypes, and own slots
// (relation instances whose endpoints are types) asserted in an ontology.

namespace oml {

/// Record `type ⊨ metatype`. Both names are resolved when possible; a
/// relation metatype for an entity type (or the reverse) is a KindMismatch.
/// Two relation types give relation-type classification.
void classifyType(Ontology& ontology, std::string type, std::string metatype,
                  Resolution mode = Resolution::Lenient);

/// Record an own slot `relation(source, target)` between types. Throws
/// UnresolvedRef when the relation is not a declared relation type or an
/// endpoint names no type.
void assertOwnSlot(Ontology& ontology, std::string relation, std::string source,
                   std::string target);
/// As above, but endpoints may also name individuals of the knowledge base.
void assertOwnSlot(KnowledgeBase& kb, std::string relation, std::string source,
                   std::string target);

/// Type classifications closed under subtype on the metatype side, plus the
/// implicit memberships of declared types in the core metatypes
/// (Type.Object, Type.Entity, Type.Data, Type.BinaryRelation, ...).
std::set<TypePair> typeClassificationClosure(const TypeUniverse& universe);

/// σ ⊨ ρ between relation types, σ:γ→δ and ρ:α→β, requires γ ⊨ α and δ ⊨ β.
std::vector<Diagnostic> checkHigherOrderClassification(const Ontology& ontology);

/// HOT001 plus malformed assertions (HOT003) and names that are both a type
/// and an individual (HOT002).
std::vector<Diagnostic> checkHigherOrder(const KnowledgeBase& kb,
                                         const CheckOptions& options = {});

}  // namespace oml
