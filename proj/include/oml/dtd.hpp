#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oml/diagnostic.hpp"
#include "oml/model.hpp"

namespace oml::dtd {

/// Content particle of an element declaration's children model.
struct Particle {
  enum class Kind { Name, Sequence, Choice };

  Kind kind = Kind::Name;
  std::string name;
  std::vector<Particle> children;
  /// '\0', '?', '*' or '+'.
  char occurrence = '\0';

  friend bool operator==(const Particle&, const Particle&) = default;
};

struct ElementDecl {
  enum class Content { Empty, Any, Mixed, Children };

  std::string name;
  Content content = Content::Empty;
  /// Children: the model. Mixed: a choice of the allowed element names
  /// (possibly empty for `(#PCDATA)`).
  Particle model;

  friend bool operator==(const ElementDecl&, const ElementDecl&) = default;
};

struct AttributeDecl {
  enum class Type { CData, Id, IdRef, NmToken, Enumeration };
  enum class Default { Required, Implied, Fixed, Value };

  std::string element;
  std::string name;
  Type type = Type::CData;
  std::vector<std::string> values;
  Default presence = Default::Implied;
  std::optional<std::string> value;

  friend bool operator==(const AttributeDecl&, const AttributeDecl&) = default;
};

struct DtdDocument {
  std::vector<ElementDecl> elements;
  std::vector<AttributeDecl> attributes;

  const ElementDecl* element(std::string_view name) const;
  std::vector<const AttributeDecl*> attributesOf(std::string_view element) const;

  friend bool operator==(const DtdDocument&, const DtdDocument&) = default;
};

/// Domain-specific DTD of an ontology. Object types become elements whose
/// content is a repeatable choice of the relations sourced at them (or at a
/// supertype), with a required ID and one implied attribute per function.
/// Relation types become empty elements with a required target.Instance.
/// Throws NameCollision.
DtdDocument compileDtd(const Ontology& ontology);

/// `<!ELEMENT ...>` / `<!ATTLIST ...>` text; one block per element separated
/// by blank lines, attributes indented by four spaces.
std::string renderDtd(const DtdDocument& dtd);

/// Parse element and attribute-list declarations (comments allowed, no
/// entities or conditional sections). Throws SyntaxError.
DtdDocument parseDtd(std::string_view text);

struct ValidateOptions {
  std::string document;
  /// An undeclared `Collection` root wraps the validated elements.
  bool collectionWrapper = true;
};

std::vector<Diagnostic> validateAgainstDtd(const DtdDocument& dtd,
                                           std::string_view text,
                                           const ValidateOptions& options = {});

}  // namespace oml::dtd
