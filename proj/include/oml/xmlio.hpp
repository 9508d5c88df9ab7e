#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "oml/model.hpp"
#include "oml/xml.hpp"

namespace oml {

struct ParseOptions {
  /// Accept the higher-order grammar extension: classification and own-slot
  /// axioms inside ontologies and Individual.* tag spellings.
  bool higherOrder = false;
};

/// One `<OML>` document: exactly one ontology or one collection.
struct OmlDocument {
  std::variant<Ontology, Collection> root;
  std::string sourceName;

  bool isOntology() const { return std::holds_alternative<Ontology>(root); }
  const Ontology& ontology() const { return std::get<Ontology>(root); }
  Ontology& ontology() { return std::get<Ontology>(root); }
  const Collection& collection() const { return std::get<Collection>(root); }
  Collection& collection() { return std::get<Collection>(root); }

  friend bool operator==(const OmlDocument& a, const OmlDocument& b) {
    return a.root == b.root;
  }
};

/// Parse a generic-style document (Core Grammar). Throws SyntaxError for
/// malformed XML and GrammarError (with the violated rule number) for
/// grammar violations. Accepts the Type.Entity / Instance.Entity spellings
/// and an `OML:` tag prefix.
OmlDocument parseOml(std::string_view text, std::string_view sourceName = "",
                     const ParseOptions& options = {});

/// Canonical generic-style text: two-space indentation, attributes in
/// grammar order, self-closing empty elements, trailing newline.
std::string serializeGeneric(const OmlDocument& doc);
std::string serializeGeneric(const Ontology& ontology);
std::string serializeGeneric(const Collection& collection);

/// Maps an ontology URI to its document text; nullopt when unknown.
using ImportResolver =
    std::function<std::optional<std::string>(const std::string& uri)>;

struct LoadOptions {
  ParseOptions parse;
  /// Ontology URI for collections without an `ontology` attribute.
  std::optional<std::string> defaultOntology;
};

/// Resolve `extends` imports recursively (and, for a collection, its
/// ontology) into a knowledge base. Throws UnresolvableImport and
/// ImportCycle.
KnowledgeBase loadExtends(const OmlDocument& doc, const ImportResolver& resolver,
                          const LoadOptions& options = {});

/// Load one ontology by URI with its imports.
Ontology loadOntology(const std::string& uri, const ImportResolver& resolver,
                      const ParseOptions& options = {});

namespace detail {

/// Normalized core tag: strips `OML:`, maps Type.Entity/Instance.Entity to
/// the Object spellings and, in higher-order mode, Individual.* to Instance.*.
std::string canonicalTag(std::string_view tag, bool higherOrder);

/// Generic-style children of an object element (classification,
/// Instance.BinaryRelation, Instance.Function). Returns false when `child`
/// is not one of them.
bool parseInstanceChild(const xml::Node& child, ObjectInstance& object,
                        const ParseOptions& options);
ObjectInstance parseObjectElement(const xml::Node& node,
                                  const ParseOptions& options);
/// Merge a relation instance into `object` (pair semantics).
void mergeRelation(ObjectInstance& object, RelationInstance relation);
/// Merge a function instance; throws DuplicateFunctionValue.
void mergeFunction(ObjectInstance& object, FunctionInstance function);

bool isTypeNSName(std::string_view s);

std::string encodeSidecarText(std::string_view text);
std::string decodeSidecarText(std::string_view text);

}  // namespace detail

}  // namespace oml
