#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oml/diagnostic.hpp"
#include "oml/model.hpp"

namespace oml {

using TypePair = std::pair<TypeRef, TypeRef>;
/// Instance key (id, about or blank key) or a literal's lexical form.
using Individual = std::string;
using InstancePair = std::pair<Individual, Individual>;

/// One relation or function instance, flattened: source, target and one of
/// its classifications.
struct PairFact {
  Individual source;
  Individual target;
  TargetKind targetKind = TargetKind::Unresolved;
  /// Written classification name and its resolution.
  std::string written;
  TypeRef type;
  bool function = false;
  /// True when the source was written explicitly and did not resolve.
  bool danglingSource = false;
  std::string document;
  SourceLoc loc;
};

struct ObjectFact {
  Individual key;
  std::string written;
  TypeRef type;
  std::string document;
  SourceLoc loc;
};

/// Instance-level facts of a knowledge base with names resolved.
struct InstanceFacts {
  std::vector<Individual> objects;
  std::vector<ObjectFact> classifications;
  /// Literal targets under the data type their relation expects.
  std::vector<ObjectFact> literals;
  std::vector<PairFact> pairs;
  /// Relation instances that carry no classification.
  std::vector<PairFact> unclassified;
};

/// Key of an object instance; collection-qualified when the knowledge base
/// holds several collections.
Individual individualKey(const KnowledgeBase& kb, InstanceRef ref);

InstanceFacts extractFacts(const KnowledgeBase& kb, const TypeUniverse& universe);

struct ClosureTables {
  std::set<TypePair> subtypePairs;
  /// Objects (and literals, under their data type) with entity types.
  std::set<std::pair<Individual, TypeRef>> entityClassifications;
  /// Relation and function instances with relation types.
  std::set<std::pair<InstancePair, TypeRef>> relationClassifications;
  std::set<TypePair> derivedDisjoint;
  std::set<TypeRef> derivedIncoherent;
};

/// Types the subtype closure ranges over: declared types plus every type an
/// axiom mentions.
std::set<TypeRef> subtypeNodes(const TypeUniverse& universe);

/// Least reflexive-transitive relation containing the subtype axioms.
std::set<TypePair> subtypeClosure(const TypeUniverse& universe);
std::set<TypePair> subtypeClosure(const Ontology& ontology);

/// Stored classifications composed with the subtype closure.
void classificationClosure(const InstanceFacts& facts,
                           const std::set<TypePair>& subtype,
                           ClosureTables& tables);

struct Incompatibility {
  /// Declared and derived, normalized pairs.
  std::set<TypePair> disjoint;
  std::set<TypeRef> incoherent;
};

/// Fixpoint of
///   disjoint(α,γ) or disjoint(β,δ)  =>  disjoint(ρ,σ)   for ρ:α→β, σ:γ→δ
///   α or β incoherent               =>  ρ incoherent
///   τ⊢x, τ⊢y, disjoint(x,y)          =>  τ incoherent
///   τ⊢x, x incoherent                =>  τ incoherent
Incompatibility deriveIncompatibleAndIncoherent(
    const TypeUniverse& universe, const std::set<TypePair>& subtype);

ClosureTables computeClosures(const KnowledgeBase& kb);

struct CheckOptions {
  Resolution mode = Resolution::Lenient;
  /// Lenient only: infer missing classifications instead of warning.
  bool completion = false;
  bool higherOrder = false;
};

std::vector<Diagnostic> checkReferences(const KnowledgeBase& kb,
                                        const CheckOptions& options = {});
std::vector<Diagnostic> checkPreservationOfClassification(
    const KnowledgeBase& kb, const CheckOptions& options = {});
std::vector<Diagnostic> checkPreservationOfEntailment(const Ontology& ontology);
/// INC001/INC002 for derived facts, INC003/DIS001 for instances violating
/// them.
std::vector<Diagnostic> checkIncompatibility(const KnowledgeBase& kb,
                                             const CheckOptions& options = {});
std::vector<Diagnostic> lintInclusionImpliesSubtype(const KnowledgeBase& kb);

/// Lenient completion: add every classification that preservation of
/// classification demands. Each addition is reported as info CLS002.
KnowledgeBase complete(const KnowledgeBase& kb,
                       std::vector<Diagnostic>* inferred = nullptr);

/// All passes, sorted. Higher-order checks run when options.higherOrder or
/// kb.higherOrder is set.
std::vector<Diagnostic> runChecks(const KnowledgeBase& kb,
                                  const CheckOptions& options = {});

}  // namespace oml
