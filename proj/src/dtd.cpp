#include "oml/dtd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "oml/checker.hpp"
#include "oml/xml.hpp"

namespace oml::dtd {

const ElementDecl* DtdDocument::element(std::string_view name) const {
  for (const auto& e : elements)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<const AttributeDecl*> DtdDocument::attributesOf(
    std::string_view element) const {
  std::vector<const AttributeDecl*> out;
  for (const auto& a : attributes)
    if (a.element == element) out.push_back(&a);
  return out;
}

// ---------------------------------------------------------------------------
// Compilation

DtdDocument compileDtd(const Ontology& ontology) {
  TypeUniverse universe(ontology);
  const auto closure = subtypeClosure(universe);
  auto appliesTo = [&](const TypeInfo& relation, const TypeInfo& object) {
    if (!relation.source) return false;
    return *relation.source == entityRoot() ||
           closure.count({object.ref, *relation.source}) > 0;
  };

  DtdDocument dtd;
  std::set<std::string> elementNames;
  auto addElement = [&](ElementDecl decl, const TypeInfo& info) {
    if (!xml::isName(decl.name))
      throw Error(ErrorCode::NameCollision,
                  "type name '" + decl.name + "' is not a legal XML element name",
                  info.loc);
    if (!elementNames.insert(decl.name).second)
      throw Error(ErrorCode::NameCollision,
                  "two types map to element '" + decl.name + "'", info.loc);
    dtd.elements.push_back(std::move(decl));
  };

  for (const auto& info : universe.types()) {
    if (info.kind == TypeKind::Object) {
      ElementDecl element;
      element.name = info.name;
      Particle choice;
      choice.kind = Particle::Kind::Choice;
      choice.occurrence = '*';
      std::vector<AttributeDecl> attributes;
      std::set<std::string> attributeNames{"id"};
      attributes.push_back({info.name, "id", AttributeDecl::Type::Id, {},
                            AttributeDecl::Default::Required, std::nullopt});
      for (const auto& other : universe.types()) {
        if (!isRelationKind(other.kind) || !appliesTo(other, info)) continue;
        if (other.kind == TypeKind::BinaryRelation) {
          Particle name;
          name.name = other.name;
          choice.children.push_back(std::move(name));
          continue;
        }
        if (!xml::isName(other.name) || !attributeNames.insert(other.name).second)
          throw Error(ErrorCode::NameCollision,
                      "function '" + other.name + "' collides with another "
                      "attribute of '" + info.name + "'",
                      other.loc);
        attributes.push_back(
            {info.name, other.name,
             other.target == natnoType() ? AttributeDecl::Type::NmToken
                                         : AttributeDecl::Type::CData,
             {}, AttributeDecl::Default::Implied, std::nullopt});
      }
      if (!choice.children.empty()) {
        element.content = ElementDecl::Content::Children;
        element.model = std::move(choice);
      }
      addElement(std::move(element), info);
      for (auto& a : attributes) dtd.attributes.push_back(std::move(a));
    } else if (info.kind == TypeKind::BinaryRelation) {
      ElementDecl element;
      element.name = info.name;
      addElement(std::move(element), info);
      dtd.attributes.push_back({info.name, "target.Instance",
                                AttributeDecl::Type::CData, {},
                                AttributeDecl::Default::Required, std::nullopt});
    }
  }
  return dtd;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string renderParticle(const Particle& p, bool top) {
  std::string out;
  if (p.kind == Particle::Kind::Name) {
    out = top ? "(" + p.name + ")" : p.name;
  } else {
    const char* sep = p.kind == Particle::Kind::Sequence ? ", " : " | ";
    out = "(";
    for (std::size_t i = 0; i < p.children.size(); ++i) {
      if (i) out += sep;
      out += renderParticle(p.children[i], false);
    }
    out += ")";
  }
  if (p.occurrence) out += p.occurrence;
  return out;
}

std::string renderContent(const ElementDecl& e) {
  switch (e.content) {
    case ElementDecl::Content::Empty: return "EMPTY";
    case ElementDecl::Content::Any: return "ANY";
    case ElementDecl::Content::Mixed: {
      if (e.model.children.empty()) return "(#PCDATA)";
      std::string out = "(#PCDATA";
      for (const auto& c : e.model.children) out += " | " + c.name;
      return out + ")*";
    }
    case ElementDecl::Content::Children: return renderParticle(e.model, true);
  }
  return "EMPTY";
}

std::string renderType(const AttributeDecl& a) {
  switch (a.type) {
    case AttributeDecl::Type::CData: return "CDATA";
    case AttributeDecl::Type::Id: return "ID";
    case AttributeDecl::Type::IdRef: return "IDREF";
    case AttributeDecl::Type::NmToken: return "NMTOKEN";
    case AttributeDecl::Type::Enumeration: {
      std::string out = "(";
      for (std::size_t i = 0; i < a.values.size(); ++i)
        out += (i ? " | " : "") + a.values[i];
      return out + ")";
    }
  }
  return "CDATA";
}

std::string renderDefault(const AttributeDecl& a) {
  switch (a.presence) {
    case AttributeDecl::Default::Required: return "#REQUIRED";
    case AttributeDecl::Default::Implied: return "#IMPLIED";
    case AttributeDecl::Default::Fixed: return "#FIXED \"" + a.value.value_or("") + "\"";
    case AttributeDecl::Default::Value: return "\"" + a.value.value_or("") + "\"";
  }
  return "#IMPLIED";
}

void renderAttlist(std::ostringstream& out, const std::string& element,
                   const std::vector<const AttributeDecl*>& attrs) {
  if (attrs.empty()) return;
  out << "<!ATTLIST " << element;
  // ID attributes stay compact; the rest line up their types in one column.
  constexpr std::size_t kNameColumn = 23;
  for (const auto* a : attrs) {
    out << "\n    " << a->name;
    std::size_t pad = 1;
    if (a->type != AttributeDecl::Type::Id && a->name.size() < kNameColumn)
      pad = kNameColumn - a->name.size();
    out << std::string(pad, ' ') << renderType(*a) << ' ' << renderDefault(*a);
  }
  out << ">\n";
}

}  // namespace

std::string renderDtd(const DtdDocument& dtd) {
  std::ostringstream out;
  bool first = true;
  for (const auto& e : dtd.elements) {
    if (!first) out << '\n';
    first = false;
    out << "<!ELEMENT " << e.name << ' ' << renderContent(e) << ">\n";
    renderAttlist(out, e.name, dtd.attributesOf(e.name));
  }
  std::vector<std::string> orphans;
  for (const auto& a : dtd.attributes)
    if (!dtd.element(a.element) &&
        std::find(orphans.begin(), orphans.end(), a.element) == orphans.end())
      orphans.push_back(a.element);
  for (const auto& name : orphans) {
    if (!first) out << '\n';
    first = false;
    renderAttlist(out, name, dtd.attributesOf(name));
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class DtdParser {
 public:
  explicit DtdParser(std::string_view text) : text_(text) {}

  DtdDocument parse() {
    DtdDocument dtd;
    for (;;) {
      skipSpace();
      if (pos_ >= text_.size()) break;
      if (lookingAt("<!--")) {
        auto end = text_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) fail("unterminated comment");
        advanceTo(end + 3);
      } else if (lookingAt("<!ELEMENT")) {
        advanceTo(pos_ + 9);
        dtd.elements.push_back(elementDecl());
      } else if (lookingAt("<!ATTLIST")) {
        advanceTo(pos_ + 9);
        attlist(dtd);
      } else {
        fail("expected a markup declaration");
      }
    }
    return dtd;
  }

 private:
  ElementDecl elementDecl() {
    ElementDecl e;
    requireSpace();
    e.name = name();
    requireSpace();
    if (lookingAt("EMPTY")) {
      advanceTo(pos_ + 5);
      e.content = ElementDecl::Content::Empty;
    } else if (lookingAt("ANY")) {
      advanceTo(pos_ + 3);
      e.content = ElementDecl::Content::Any;
    } else {
      expect('(');
      skipSpace();
      if (lookingAt("#PCDATA")) {
        advanceTo(pos_ + 7);
        e.content = ElementDecl::Content::Mixed;
        e.model.kind = Particle::Kind::Choice;
        skipSpace();
        bool alternatives = false;
        while (peek() == '|') {
          ++pos_;
          skipSpace();
          Particle p;
          p.name = name();
          e.model.children.push_back(std::move(p));
          skipSpace();
          alternatives = true;
        }
        expect(')');
        if (peek() == '*') {
          ++pos_;
          e.model.occurrence = '*';
        } else if (alternatives) {
          fail("mixed content with element names needs ')*'");
        }
      } else {
        e.content = ElementDecl::Content::Children;
        e.model = group();
      }
    }
    skipSpace();
    expect('>');
    return e;
  }

  /// After '(' has been consumed.
  Particle group() {
    Particle p;
    p.kind = Particle::Kind::Choice;
    char sep = '\0';
    for (;;) {
      skipSpace();
      p.children.push_back(particle());
      skipSpace();
      char c = peek();
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c != ',' && c != '|') fail("expected ',', '|' or ')'");
      if (sep && c != sep) fail("mixed ',' and '|' in one group");
      sep = c;
      ++pos_;
    }
    if (sep == ',') p.kind = Particle::Kind::Sequence;
    p.occurrence = occurrence();
    return p;
  }

  Particle particle() {
    if (peek() == '(') {
      ++pos_;
      return group();
    }
    Particle p;
    p.name = name();
    p.occurrence = occurrence();
    return p;
  }

  char occurrence() {
    char c = peek();
    if (c == '?' || c == '*' || c == '+') {
      ++pos_;
      return c;
    }
    return '\0';
  }

  void attlist(DtdDocument& dtd) {
    requireSpace();
    std::string element = name();
    for (;;) {
      skipSpace();
      if (peek() == '>') {
        ++pos_;
        return;
      }
      AttributeDecl a;
      a.element = element;
      a.name = name();
      requireSpace();
      if (peek() == '(') {
        ++pos_;
        a.type = AttributeDecl::Type::Enumeration;
        for (;;) {
          skipSpace();
          a.values.push_back(nmtoken());
          skipSpace();
          if (peek() == ')') {
            ++pos_;
            break;
          }
          expect('|');
        }
      } else {
        std::string type = name();
        if (type == "CDATA") a.type = AttributeDecl::Type::CData;
        else if (type == "ID") a.type = AttributeDecl::Type::Id;
        else if (type == "IDREF") a.type = AttributeDecl::Type::IdRef;
        else if (type == "NMTOKEN") a.type = AttributeDecl::Type::NmToken;
        else fail("unsupported attribute type '" + type + "'");
      }
      requireSpace();
      if (lookingAt("#REQUIRED")) {
        advanceTo(pos_ + 9);
        a.presence = AttributeDecl::Default::Required;
      } else if (lookingAt("#IMPLIED")) {
        advanceTo(pos_ + 8);
        a.presence = AttributeDecl::Default::Implied;
      } else {
        if (lookingAt("#FIXED")) {
          advanceTo(pos_ + 6);
          requireSpace();
          a.presence = AttributeDecl::Default::Fixed;
        } else {
          a.presence = AttributeDecl::Default::Value;
        }
        a.value = quoted();
      }
      dtd.attributes.push_back(std::move(a));
    }
  }

  std::string quoted() {
    char q = peek();
    if (q != '"' && q != '\'') fail("expected a quoted value");
    auto end = text_.find(q, pos_ + 1);
    if (end == std::string_view::npos) fail("unterminated literal");
    std::string out(text_.substr(pos_ + 1, end - pos_ - 1));
    advanceTo(end + 1);
    return out;
  }

  std::string name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           xml::isNameChar(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string out(text_.substr(start, pos_ - start));
    if (!xml::isName(out)) fail("expected a name");
    return out;
  }

  std::string nmtoken() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           xml::isNameChar(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a name token");
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool lookingAt(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skipSpace() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }
  void requireSpace() {
    std::size_t before = pos_;
    skipSpace();
    if (before == pos_) fail("expected whitespace");
  }
  void advanceTo(std::size_t p) { pos_ = p; }

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::SyntaxError, "DTD: " + msg, {line, column});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DtdDocument parseDtd(std::string_view text) { return DtdParser(text).parse(); }

// ---------------------------------------------------------------------------
// Validation

namespace {

using Ends = std::set<std::size_t>;

Ends matchOnce(const Particle& p, const std::vector<std::string>& names,
               std::size_t pos);

Ends matchParticle(const Particle& p, const std::vector<std::string>& names,
                   std::size_t pos) {
  if (p.occurrence == '\0') return matchOnce(p, names, pos);
  Ends result;
  if (p.occurrence == '?' || p.occurrence == '*') result.insert(pos);
  Ends frontier = matchOnce(p, names, pos);
  if (p.occurrence == '?') {
    result.insert(frontier.begin(), frontier.end());
    return result;
  }
  while (!frontier.empty()) {
    Ends next;
    for (std::size_t e : frontier) {
      if (!result.insert(e).second) continue;
      for (std::size_t f : matchOnce(p, names, e))
        if (!result.count(f) && f != e) next.insert(f);
    }
    frontier = std::move(next);
  }
  return result;
}

Ends matchOnce(const Particle& p, const std::vector<std::string>& names,
               std::size_t pos) {
  switch (p.kind) {
    case Particle::Kind::Name:
      if (pos < names.size() && names[pos] == p.name) return {pos + 1};
      return {};
    case Particle::Kind::Choice: {
      Ends out;
      for (const auto& c : p.children) {
        Ends e = matchParticle(c, names, pos);
        out.insert(e.begin(), e.end());
      }
      return out;
    }
    case Particle::Kind::Sequence: {
      Ends current{pos};
      for (const auto& c : p.children) {
        Ends next;
        for (std::size_t s : current) {
          Ends e = matchParticle(c, names, s);
          next.insert(e.begin(), e.end());
        }
        current = std::move(next);
        if (current.empty()) break;
      }
      return current;
    }
  }
  return {};
}

class Validator {
 public:
  Validator(const DtdDocument& dtd, const ValidateOptions& options)
      : dtd_(dtd), options_(options) {}

  void validate(const xml::Node& node) {
    const ElementDecl* decl = dtd_.element(node.name);
    if (!decl) {
      report("DTD001", "element <" + node.name + "> is not declared", node.loc);
      for (const auto& child : node.children)
        if (child.isElement()) validate(child);
      return;
    }
    checkAttributes(node);
    checkContent(*decl, node);
    for (const auto& child : node.children)
      if (child.isElement()) validate(child);
  }

  std::vector<Diagnostic> take() { return std::move(out_); }

  void report(const char* code, std::string message, SourceLoc loc) {
    out_.push_back({Severity::Error, code, std::move(message), options_.document, loc});
  }

 private:
  void checkAttributes(const xml::Node& node) {
    const auto decls = dtd_.attributesOf(node.name);
    for (const auto& attr : node.attributes) {
      auto it = std::find_if(decls.begin(), decls.end(),
                             [&](const AttributeDecl* a) { return a->name == attr.name; });
      if (it == decls.end()) {
        report("DTD005",
               "attribute '" + attr.name + "' is not declared for <" + node.name + ">",
               attr.loc);
        continue;
      }
      const AttributeDecl& a = **it;
      bool ok = true;
      switch (a.type) {
        case AttributeDecl::Type::Id:
        case AttributeDecl::Type::IdRef: ok = xml::isName(attr.value); break;
        case AttributeDecl::Type::NmToken: ok = xml::isNmtoken(attr.value); break;
        case AttributeDecl::Type::Enumeration:
          ok = std::find(a.values.begin(), a.values.end(), attr.value) != a.values.end();
          break;
        case AttributeDecl::Type::CData: break;
      }
      if (a.presence == AttributeDecl::Default::Fixed && attr.value != a.value)
        ok = false;
      if (!ok)
        report("DTD006",
               "value '" + attr.value + "' of '" + attr.name +
                   "' does not match its declared type",
               attr.loc);
      if (a.type == AttributeDecl::Type::Id && ok &&
          !ids_.insert(attr.value).second)
        report("DTD004", "ID '" + attr.value + "' is used more than once", attr.loc);
    }
    for (const auto* a : decls)
      if (a->presence == AttributeDecl::Default::Required && !node.attribute(a->name))
        report("DTD003",
               "<" + node.name + "> lacks required attribute '" + a->name + "'",
               node.loc);
  }

  void checkContent(const ElementDecl& decl, const xml::Node& node) {
    std::vector<std::string> names;
    bool text = false;
    SourceLoc textLoc;
    for (const auto& child : node.children) {
      if (child.isElement()) names.push_back(child.name);
      if (child.kind == xml::Node::Kind::Text && !xml::isWhitespace(child.text)) {
        text = true;
        textLoc = child.loc;
      }
    }
    switch (decl.content) {
      case ElementDecl::Content::Any: return;
      case ElementDecl::Content::Empty:
        if (!names.empty() || text)
          report("DTD002", "<" + node.name + "> is declared EMPTY", node.loc);
        return;
      case ElementDecl::Content::Mixed:
        for (const auto& child : node.children) {
          if (!child.isElement()) continue;
          bool allowed = std::any_of(
              decl.model.children.begin(), decl.model.children.end(),
              [&](const Particle& p) { return p.name == child.name; });
          if (!allowed)
            report("DTD002",
                   "<" + child.name + "> is not allowed inside <" + node.name + ">",
                   child.loc);
        }
        return;
      case ElementDecl::Content::Children: {
        if (text)
          report("DTD002",
                 "character data is not allowed inside <" + node.name + ">", textLoc);
        Ends ends = matchParticle(decl.model, names, 0);
        if (!ends.count(names.size())) {
          std::string found;
          for (const auto& n : names) found += (found.empty() ? "" : " ") + n;
          report("DTD002",
                 "content of <" + node.name + "> does not match " +
                     renderParticle(decl.model, true) + "; found (" + found + ")",
                 node.loc);
        }
        return;
      }
    }
  }

  const DtdDocument& dtd_;
  const ValidateOptions& options_;
  std::set<std::string> ids_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validateAgainstDtd(const DtdDocument& dtd,
                                           std::string_view text,
                                           const ValidateOptions& options) {
  Validator validator(dtd, options);
  xml::Document doc;
  try {
    doc = xml::parse(text);
  } catch (const Error& e) {
    validator.report("XML001", e.detail(), e.location());
    return validator.take();
  }
  if (options.collectionWrapper && doc.root.name == "Collection" &&
      !dtd.element("Collection")) {
    for (const auto& child : doc.root.children) {
      if (child.isElement()) validator.validate(child);
      else if (child.kind == xml::Node::Kind::Text && !xml::isWhitespace(child.text))
        validator.report("DTD002", "character data outside any element", child.loc);
    }
  } else {
    validator.validate(doc.root);
  }
  auto out = validator.take();
  sortDiagnostics(out);
  return out;
}

}  // namespace oml::dtd
