#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oml/checker.hpp"
#include "oml/model.hpp"
#include "oml/xmlio.hpp"

// Translation between the generic style (core tags only) and the specific
// style (the ontology's own type names as tags, functions as attributes).

namespace oml {

/// Minimal elements of `types` under the subtype closure. Mutually
/// equivalent types are all minimal.
std::vector<TypeRef> mostSpecificTypes(const std::vector<TypeRef>& types,
                                       const std::set<TypePair>& subtype);

/// Specific-style text of one collection of `kb`. Anonymous objects get
/// generated `_gN` ids. Throws AmbiguousClassification,
/// MissingClassification, UnnamedInstance and UnresolvedInstanceRef.
std::string toSpecific(const KnowledgeBase& kb, std::size_t collection = 0);

/// Read a specific-style (or mixed) document back into a collection.
/// Accepts an `<OML>` or `<Collection>` root, or a single object element.
/// Throws SyntaxError, GrammarError, UnknownTag, UnknownAttribute and
/// UnresolvedInstanceRef.
Collection toGeneric(std::string_view text, const Ontology& ontology,
                     std::string_view document = "",
                     const ParseOptions& options = {});

}  // namespace oml
