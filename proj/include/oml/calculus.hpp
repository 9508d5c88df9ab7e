#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "oml/checker.hpp"
#include "oml/model.hpp"

// Identity, composition and transpose on binary relation types, evaluated
// extensionally against the classification closure of a knowledge base.

namespace oml {

class DerivedRelationType {
 public:
  enum class Op { Named, Identity, Compose, Transpose };

  Op op() const { return op_; }
  /// Named: the relation type. Identity: the entity type.
  const TypeRef& base() const { return base_; }
  const DerivedRelationType& left() const { return *left_; }
  const DerivedRelationType& right() const { return *right_; }
  /// Transpose operand.
  const DerivedRelationType& operand() const { return *left_; }

  const TypeRef& source() const { return source_; }
  const TypeRef& target() const { return target_; }

  /// Expression text, e.g. `compose(movie, transpose(genre))`.
  std::string toString(const TypeUniverse& universe) const;

  /// Structural equality of expression trees (not normalized).
  friend bool operator==(const DerivedRelationType& a,
                         const DerivedRelationType& b);

 private:
  friend DerivedRelationType relationType(const Ontology&, std::string_view);
  friend DerivedRelationType identityType(const Ontology&, std::string_view);
  friend DerivedRelationType composeUnchecked(const DerivedRelationType&,
                                              const DerivedRelationType&);
  friend DerivedRelationType transposeType(const DerivedRelationType&);
  friend DerivedRelationType normalize(const DerivedRelationType&);

  Op op_ = Op::Named;
  TypeRef base_;
  std::shared_ptr<const DerivedRelationType> left_, right_;
  TypeRef source_, target_;
};

struct CalculusOptions {
  /// Also allow ∂₁(ρ) ⊢ ∂₀(σ) when composing, not only equality.
  bool lenientComposition = false;
};

/// A declared binary relation or function type as an expression. Throws
/// UnresolvedTypeRef, KindMismatch for entity types.
DerivedRelationType relationType(const Ontology& ontology, std::string_view name);
/// ι_A. Throws KindMismatch for relation types.
DerivedRelationType identityType(const Ontology& ontology, std::string_view entity);
/// ρ ∘ σ (diagrammatic order: first ρ, then σ). Throws NotComposable.
DerivedRelationType composeTypes(const Ontology& ontology,
                                 const DerivedRelationType& rho,
                                 const DerivedRelationType& sigma,
                                 const CalculusOptions& options = {});
/// Composition without the composability check.
DerivedRelationType composeUnchecked(const DerivedRelationType& rho,
                                     const DerivedRelationType& sigma);
DerivedRelationType transposeType(const DerivedRelationType& rho);
/// Rewrite ρ†† to ρ and ι† to ι, bottom-up.
DerivedRelationType normalize(const DerivedRelationType& type);

/// Parse `name`, `identity(A)`, `compose(e1, e2, ...)` and `transpose(e)`.
DerivedRelationType parseRelationExpression(const Ontology& ontology,
                                            std::string_view text,
                                            const CalculusOptions& options = {});

using PairSet = std::set<InstancePair>;

/// Extensions over one knowledge base; closures are computed once.
class ExtensionEvaluator {
 public:
  explicit ExtensionEvaluator(const KnowledgeBase& kb);

  PairSet extension(const DerivedRelationType& type) const;
  PairSet extension(const TypeRef& relation) const;
  /// Objects and literals classified by an entity type.
  std::set<Individual> entityExtension(const TypeRef& entity) const;

  const ClosureTables& tables() const { return tables_; }

 private:
  ClosureTables tables_;
};

PairSet relationExtension(const KnowledgeBase& kb, const DerivedRelationType& type);

/// Declare a derived type as a named binary relation type with its computed
/// signature. A transpose of a named type is also registered as its inverse.
TypeRef registerDerived(Ontology& ontology, std::string name,
                        const DerivedRelationType& type);

}  // namespace oml
