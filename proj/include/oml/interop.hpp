#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oml/diagnostic.hpp"
#include "oml/model.hpp"

// RDF/S and XOL adapters.
//
// Triple files hold one triple per line: three whitespace-separated terms,
// literals in double quotes (with \" \\ \n \r \t escapes), an optional
// trailing '.', '#' comment lines. Vocabulary: rdf:type, rdfs:Class,
// rdf:Property, rdfs:subClassOf, rdfs:subPropertyOf, rdfs:domain,
// rdfs:range, rdfs:Resource, rdfs:comment, plus oml:Ontology, oml:Function,
// oml:BinaryRelation, oml:about, oml:disjointWith, oml:Incoherent and
// oml:inverseOf for what RDF/S has no word for.

namespace oml::rdf {

struct Term {
  enum class Kind { Name, Literal };
  Kind kind = Kind::Name;
  std::string value;

  static Term name(std::string v) { return {Kind::Name, std::move(v)}; }
  static Term literal(std::string v) { return {Kind::Literal, std::move(v)}; }
  bool isLiteral() const { return kind == Kind::Literal; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleDoc {
  std::vector<Triple> triples;

  friend bool operator==(const TripleDoc&, const TripleDoc&) = default;
};

/// Throws SyntaxError with the line number.
TripleDoc parseTriples(std::string_view text);
std::string serializeTriples(const TripleDoc& doc);

/// Throws HigherOrderUnsupported, DataTypeUnsupported (declared data types
/// and literals of them) and UnsupportedConstruct (extends imports).
TripleDoc exportRdfs(const KnowledgeBase& kb);

struct ImportResult {
  KnowledgeBase kb;
  /// RDF001 warnings for vocabulary with no core counterpart.
  std::vector<Diagnostic> warnings;
};

/// Never throws on content; RDF is schema-optional.
ImportResult importRdfs(const TripleDoc& doc, std::string_view document = "");

}  // namespace oml::rdf

namespace oml::xol {

struct XolOptions {
  /// Also emit `documentation` and `slot-inverse` elements, which the core
  /// XOL DTD does not declare.
  bool extended = false;
};

/// Module text. Functions become slots. Throws UnsupportedConstruct for
/// relation subtypes, declared data types, unresolved or unclassified
/// relation targets, anonymous individuals, relation-type classification,
/// extends imports and own slots XOL cannot place.
std::string exportXol(const KnowledgeBase& kb, const XolOptions& options = {});

/// Slots become binary relation types unless `context` declares a function
/// type of that name. Throws XolSyntaxError and SyntaxError.
KnowledgeBase importXol(std::string_view text, const Ontology* context = nullptr);

/// The core XOL DTD (with `value` declared as character data).
std::string_view coreDtd();

}  // namespace oml::xol
