#pragma once

#include <string>

#include "oml/model.hpp"

// Semantic (model-value) equality: order-insensitive, names compared as
// resolved against each side's own ontology.

namespace oml {

struct EquivalenceOptions {
  /// Compare classifications after closing them under the subtype relation.
  bool closeClassifications = false;
  /// Treat function types and function instances as binary relations.
  bool functionsAsRelations = false;
  /// Disjointness, incoherence and inverse registrations.
  bool compareSidecar = true;
  bool compareComments = true;
  /// Collection ids and ontology attributes; otherwise all collections of a
  /// knowledge base are merged.
  bool compareCollectionMetadata = false;
  /// Object ids nobody refers to are treated as anonymous.
  bool ignoreUnreferencedIds = false;
};

/// Set `why` (when given) to the first difference found.
bool semanticallyEqual(const Ontology& a, const Ontology& b,
                       const EquivalenceOptions& options = {},
                       std::string* why = nullptr);
bool semanticallyEqual(const KnowledgeBase& a, const KnowledgeBase& b,
                       const EquivalenceOptions& options = {},
                       std::string* why = nullptr);
/// Two collections read against one ontology.
bool semanticallyEqual(const Collection& a, const Collection& b,
                       const Ontology& ontology,
                       const EquivalenceOptions& options = {},
                       std::string* why = nullptr);

}  // namespace oml
