#pragma once

#include <random>
#include <string>
#include <string_view>

#include "oml/model.hpp"

// Seeded random inputs for the property suites.

namespace oml::testing {

std::string dataPath(std::string_view name);
std::string readFile(const std::string& path);
std::string readData(std::string_view name);

using Rng = std::mt19937;

int uniform(Rng& rng, int lo, int hi);
bool chance(Rng& rng, double p);
template <class V>
const auto& pick(Rng& rng, const V& values) {
  return values[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(values.size()) - 1))];
}

struct OntologyShape {
  int maxTypes = 8;
  int maxAxioms = 20;
  bool relations = true;
  bool sidecar = true;
};

/// Object types E0.., relation and function types r0.. over them, random
/// same-family axioms (cycles allowed), disjointness and incoherence.
Ontology randomOntology(Rng& rng, const OntologyShape& shape = {});

/// randomOntology plus one collection of classified objects and relation
/// instances (classifications are arbitrary, so constraints may fail).
KnowledgeBase randomPopulatedKb(Rng& rng, const OntologyShape& shape = {});

/// At most 6 relation types over a few object types and at most 30 objects,
/// completed so that every relation instance respects its signature.
KnowledgeBase randomCalculusKb(Rng& rng);

struct FirstOrderShape {
  bool relationSubtypes = true;
  bool anonymous = true;
  bool sidecar = true;
  bool comments = true;
};

/// Declared object types, relation and function types with Natno, String
/// or object targets, entity axioms, and one collection whose every object
/// is classified and every target resolves.
KnowledgeBase randomFirstOrderKb(Rng& rng, const FirstOrderShape& shape = {});

/// Generic-style document text with spelling variants (Type.Entity,
/// OML: prefixes, single quotes, entity references, comments, sidecar).
std::string randomDocument(Rng& rng);

}  // namespace oml::testing
