#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oml/error.hpp"

// Minimal XML reader/writer for the subset OML documents need: elements,
// attributes, character data, comments and character references. No CDATA,
// processing instructions (other than a leading XML declaration), internal
// DTD subsets or namespace processing.

namespace oml::xml {

struct Attribute {
  std::string name;
  std::string value;
  SourceLoc loc;
};

struct Node {
  enum class Kind { Element, Text, Comment };

  Kind kind = Kind::Element;
  /// Element name; empty for text and comments.
  std::string name;
  /// Character data or comment body.
  std::string text;
  std::vector<Attribute> attributes;
  std::vector<Node> children;
  SourceLoc loc;

  bool isElement() const { return kind == Kind::Element; }
  const Attribute* attribute(std::string_view attr) const;
  std::vector<const Node*> elements() const;
  /// Concatenated character data of direct text children.
  std::string textContent() const;
};

struct Document {
  /// Comments before the root element.
  std::vector<Node> prolog;
  Node root;
  /// Comments after the root element.
  std::vector<Node> epilog;
  /// Root name of a `<!DOCTYPE name ...>` declaration, if present.
  std::string doctype;
};

/// Parse a document; throws Error(SyntaxError) with the offending position.
Document parse(std::string_view text);

bool isNameStartChar(unsigned char c);
bool isNameChar(unsigned char c);
/// XML `Name` production (non-ASCII bytes are accepted as letters).
bool isName(std::string_view s);
bool isNmtoken(std::string_view s);
bool isWhitespace(std::string_view s);

/// Escape character data (`&`, `<`, `>`).
std::string escapeText(std::string_view s);
/// Escape an attribute value for double quotes; tab/CR/LF become character
/// references so they survive attribute-value normalization.
std::string escapeAttribute(std::string_view s);

}  // namespace oml::xml
