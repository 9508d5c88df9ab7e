#include "oml/xml.hpp"

#include <algorithm>

namespace oml::xml {

const Attribute* Node::attribute(std::string_view attr) const {
  for (const auto& a : attributes)
    if (a.name == attr) return &a;
  return nullptr;
}

std::vector<const Node*> Node::elements() const {
  std::vector<const Node*> out;
  for (const auto& child : children)
    if (child.isElement()) out.push_back(&child);
  return out;
}

std::string Node::textContent() const {
  std::string out;
  for (const auto& child : children)
    if (child.kind == Kind::Text) out += child.text;
  return out;
}

bool isNameStartChar(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
         c == ':' || c >= 0x80;
}

bool isNameChar(unsigned char c) {
  return isNameStartChar(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

bool isName(std::string_view s) {
  if (s.empty() || !isNameStartChar(static_cast<unsigned char>(s[0])))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return isNameChar(static_cast<unsigned char>(c));
  });
}

bool isNmtoken(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return isNameChar(static_cast<unsigned char>(c));
  });
}

bool isWhitespace(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

std::string escapeText(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escapeAttribute(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Document run() {
    Document doc;
    skipBom();
    if (startsWith("<?xml")) skipDeclaration();
    bool haveRoot = false;
    while (true) {
      skipSpace();
      if (atEnd()) break;
      if (startsWith("<!--")) {
        (haveRoot ? doc.epilog : doc.prolog).push_back(comment());
      } else if (startsWith("<!DOCTYPE")) {
        if (haveRoot) fail("DOCTYPE after the root element");
        doc.doctype = doctype();
      } else if (startsWith("<?")) {
        fail("processing instructions are not supported");
      } else if (peek() == '<') {
        if (haveRoot) fail("content after the root element");
        doc.root = element();
        haveRoot = true;
      } else {
        fail("character data outside the root element");
      }
    }
    if (!haveRoot) fail("document has no root element");
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::SyntaxError, message, here());
  }
  [[noreturn]] void failAt(const std::string& message, SourceLoc loc) const {
    throw Error(ErrorCode::SyntaxError, message, loc);
  }

  SourceLoc here() const { return {line_, col_}; }
  bool atEnd() const { return pos_ >= text_.size(); }
  char peek() const { return atEnd() ? '\0' : text_[pos_]; }
  bool startsWith(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void expect(std::string_view s) {
    if (!startsWith(s)) fail("expected '" + std::string(s) + "'");
    advance(s.size());
  }

  void skipSpace() {
    while (!atEnd() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                        peek() == '\r'))
      advance();
  }

  void skipBom() {
    if (startsWith("\xEF\xBB\xBF")) {
      pos_ += 3;
    }
  }

  void skipDeclaration() {
    auto end = text_.find("?>", pos_);
    if (end == std::string_view::npos) fail("unterminated XML declaration");
    advance(end + 2 - pos_);
  }

  std::string doctype() {
    expect("<!DOCTYPE");
    skipSpace();
    std::string root = name();
    while (!atEnd() && peek() != '>') {
      if (peek() == '[') fail("internal DTD subsets are not supported");
      if (peek() == '"' || peek() == '\'') {
        char q = peek();
        advance();
        while (!atEnd() && peek() != q) advance();
      }
      advance();
    }
    expect(">");
    return root;
  }

  Node comment() {
    Node node;
    node.kind = Node::Kind::Comment;
    node.loc = here();
    expect("<!--");
    auto end = text_.find("--", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    node.text = std::string(text_.substr(pos_, end - pos_));
    advance(end - pos_);
    if (!startsWith("-->")) fail("'--' is not allowed inside a comment");
    advance(3);
    return node;
  }

  std::string name() {
    if (atEnd() || !isNameStartChar(static_cast<unsigned char>(peek())))
      fail("expected a name");
    auto start = pos_;
    while (!atEnd() && isNameChar(static_cast<unsigned char>(peek()))) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  static void appendUtf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  void reference(std::string& out) {
    SourceLoc loc = here();
    expect("&");
    auto semi = text_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 10)
      failAt("unterminated entity reference", loc);
    std::string_view ent = text_.substr(pos_, semi - pos_);
    if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "amp") out += '&';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else if (ent.size() > 1 && ent[0] == '#') {
      unsigned long cp = 0;
      bool hex = ent[1] == 'x';
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) failAt("empty character reference", loc);
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else failAt("malformed character reference", loc);
        cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
        if (cp > 0x10FFFF) failAt("character reference out of range", loc);
      }
      appendUtf8(out, cp);
    } else {
      failAt("unknown entity '&" + std::string(ent) + ";'", loc);
    }
    advance(semi + 1 - pos_);
  }

  std::string attributeValue() {
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected a quoted attribute value");
    advance();
    std::string out;
    while (true) {
      if (atEnd()) fail("unterminated attribute value");
      char c = peek();
      if (c == quote) break;
      if (c == '<') fail("'<' is not allowed in attribute values");
      if (c == '&') {
        reference(out);
        continue;
      }
      // Attribute-value normalization of literal whitespace.
      out += (c == '\t' || c == '\n' || c == '\r') ? ' ' : c;
      advance();
    }
    advance();
    return out;
  }

  Node element() {
    Node node;
    node.loc = here();
    expect("<");
    node.name = name();
    while (true) {
      bool spaced = !atEnd() && (peek() == ' ' || peek() == '\t' ||
                                 peek() == '\n' || peek() == '\r');
      skipSpace();
      if (startsWith("/>")) {
        advance(2);
        return node;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (!spaced) fail("expected whitespace before attribute");
      Attribute attr;
      attr.loc = here();
      attr.name = name();
      skipSpace();
      expect("=");
      skipSpace();
      attr.value = attributeValue();
      if (node.attribute(attr.name))
        failAt("duplicate attribute '" + attr.name + "'", attr.loc);
      node.attributes.push_back(std::move(attr));
    }
    // Content.
    while (true) {
      if (atEnd())
        failAt("element '" + node.name + "' is not closed", node.loc);
      if (startsWith("</")) {
        SourceLoc closeLoc = here();
        advance(2);
        std::string closing = name();
        skipSpace();
        expect(">");
        if (closing != node.name)
          failAt("mismatched closing tag '" + closing + "' for '" + node.name +
                     "'",
                 closeLoc);
        return node;
      }
      if (startsWith("<!--")) {
        node.children.push_back(comment());
      } else if (startsWith("<![CDATA[")) {
        fail("CDATA sections are not supported");
      } else if (startsWith("<?")) {
        fail("processing instructions are not supported");
      } else if (startsWith("<!")) {
        fail("markup declarations are not allowed in content");
      } else if (peek() == '<') {
        node.children.push_back(element());
      } else {
        Node text;
        text.kind = Node::Kind::Text;
        text.loc = here();
        while (!atEnd() && peek() != '<') {
          if (peek() == '&') {
            reference(text.text);
          } else {
            if (peek() == '>' && startsWith("]]>"))
              fail("']]>' is not allowed in character data");
            text.text += peek();
            advance();
          }
        }
        node.children.push_back(std::move(text));
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

Document parse(std::string_view text) { return Parser(text).run(); }

}  // namespace oml::xml
