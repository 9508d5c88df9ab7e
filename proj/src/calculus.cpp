#include "oml/calculus.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "oml/relations.hpp"

namespace oml {

std::string DerivedRelationType::toString(const TypeUniverse& universe) const {
  switch (op_) {
    case Op::Named: return universe.nameFor(base_);
    case Op::Identity: return "identity(" + universe.nameFor(base_) + ")";
    case Op::Compose:
      return "compose(" + left_->toString(universe) + ", " +
             right_->toString(universe) + ")";
    case Op::Transpose: return "transpose(" + left_->toString(universe) + ")";
  }
  return {};
}

bool operator==(const DerivedRelationType& a, const DerivedRelationType& b) {
  if (a.op_ != b.op_) return false;
  switch (a.op_) {
    case DerivedRelationType::Op::Named:
    case DerivedRelationType::Op::Identity: return a.base_ == b.base_;
    case DerivedRelationType::Op::Compose:
      return *a.left_ == *b.left_ && *a.right_ == *b.right_;
    case DerivedRelationType::Op::Transpose: return *a.left_ == *b.left_;
  }
  return false;
}

DerivedRelationType relationType(const Ontology& ontology, std::string_view name) {
  TypeRef ref = ontology.resolveTypeName(name);
  auto kind = ontology.kindOf(ref);
  if (!kind || !isRelationKind(*kind))
    throw Error(ErrorCode::KindMismatch,
                "'" + std::string(name) + "' is not a binary relation type");
  DerivedRelationType out;
  out.op_ = DerivedRelationType::Op::Named;
  out.base_ = ref;
  if (ref == relationRoot()) {
    out.source_ = out.target_ = entityRoot();
    return out;
  }
  TypeUniverse universe(ontology);
  const TypeInfo* info = universe.find(ref);
  out.source_ = info->source.value_or(TypeRef::unresolved(info->decl->source));
  out.target_ = info->target.value_or(TypeRef::unresolved(info->decl->target));
  return out;
}

DerivedRelationType identityType(const Ontology& ontology,
                                 std::string_view entity) {
  TypeRef ref = ontology.resolveTypeName(entity);
  auto kind = ontology.kindOf(ref);
  if (kind && !isEntityKind(*kind))
    throw Error(ErrorCode::KindMismatch,
                "identity needs an entity type, '" + std::string(entity) +
                    "' is a " + std::string(toString(*kind)) + " type");
  DerivedRelationType out;
  out.op_ = DerivedRelationType::Op::Identity;
  out.base_ = ref;
  out.source_ = out.target_ = ref;
  return out;
}

DerivedRelationType composeUnchecked(const DerivedRelationType& rho,
                                     const DerivedRelationType& sigma) {
  DerivedRelationType out;
  out.op_ = DerivedRelationType::Op::Compose;
  out.left_ = std::make_shared<const DerivedRelationType>(rho);
  out.right_ = std::make_shared<const DerivedRelationType>(sigma);
  out.source_ = rho.source_;
  out.target_ = sigma.target_;
  return out;
}

DerivedRelationType composeTypes(const Ontology& ontology,
                                 const DerivedRelationType& rho,
                                 const DerivedRelationType& sigma,
                                 const CalculusOptions& options) {
  bool ok = rho.target() == sigma.source();
  if (!ok && options.lenientComposition && rho.target().isResolved())
    ok = TypeUniverse(ontology).isSubtype(rho.target(), sigma.source());
  if (!ok) {
    TypeUniverse universe(ontology);
    throw Error(ErrorCode::NotComposable,
                "cannot compose " + rho.toString(universe) + " (target " +
                    universe.nameFor(rho.target()) + ") with " +
                    sigma.toString(universe) + " (source " +
                    universe.nameFor(sigma.source()) + ")");
  }
  return composeUnchecked(rho, sigma);
}

DerivedRelationType transposeType(const DerivedRelationType& rho) {
  DerivedRelationType out;
  out.op_ = DerivedRelationType::Op::Transpose;
  out.left_ = std::make_shared<const DerivedRelationType>(rho);
  out.source_ = rho.target_;
  out.target_ = rho.source_;
  return out;
}

DerivedRelationType normalize(const DerivedRelationType& type) {
  using Op = DerivedRelationType::Op;
  switch (type.op()) {
    case Op::Named:
    case Op::Identity: return type;
    case Op::Compose:
      return composeUnchecked(normalize(type.left()), normalize(type.right()));
    case Op::Transpose: {
      DerivedRelationType inner = normalize(type.operand());
      if (inner.op() == Op::Transpose) return inner.operand();
      if (inner.op() == Op::Identity) return inner;
      return transposeType(inner);
    }
  }
  return type;
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const Ontology& ontology, std::string_view text,
                   const CalculusOptions& options)
      : ontology_(ontology), text_(text), options_(options) {}

  DerivedRelationType parse() {
    DerivedRelationType out = expression();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  DerivedRelationType expression() {
    std::string word = name();
    skip();
    if (pos_ >= text_.size() || text_[pos_] != '(')
      return relationType(ontology_, word);
    ++pos_;
    std::vector<DerivedRelationType> args;
    std::string entity;
    if (word == "identity") {
      entity = name();
    } else {
      args.push_back(expression());
      skip();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        args.push_back(expression());
        skip();
      }
    }
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    if (word == "identity") return identityType(ontology_, entity);
    if (word == "transpose") {
      if (args.size() != 1) fail("transpose takes one argument");
      return transposeType(args[0]);
    }
    if (word == "compose") {
      if (args.size() < 2) fail("compose takes at least two arguments");
      DerivedRelationType out = args[0];
      for (std::size_t i = 1; i < args.size(); ++i)
        out = composeTypes(ontology_, out, args[i], options_);
      return out;
    }
    fail("unknown operator '" + word + "'");
  }

  std::string name() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '.' || text_[pos_] == '-' ||
            text_[pos_] == ':' || static_cast<unsigned char>(text_[pos_]) >= 0x80))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::SyntaxError,
                "relation expression, column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  const Ontology& ontology_;
  std::string_view text_;
  const CalculusOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

DerivedRelationType parseRelationExpression(const Ontology& ontology,
                                            std::string_view text,
                                            const CalculusOptions& options) {
  return ExpressionParser(ontology, text, options).parse();
}

ExtensionEvaluator::ExtensionEvaluator(const KnowledgeBase& kb) {
  TypeUniverse universe(kb.ontology);
  tables_.subtypePairs = subtypeClosure(universe);
  classificationClosure(extractFacts(kb, universe), tables_.subtypePairs, tables_);
}

PairSet ExtensionEvaluator::extension(const TypeRef& relation) const {
  PairSet out;
  for (const auto& [pair, type] : tables_.relationClassifications)
    if (type == relation) out.insert(pair);
  return out;
}

std::set<Individual> ExtensionEvaluator::entityExtension(const TypeRef& entity) const {
  std::set<Individual> out;
  for (const auto& [ind, type] : tables_.entityClassifications)
    if (type == entity) out.insert(ind);
  return out;
}

PairSet ExtensionEvaluator::extension(const DerivedRelationType& type) const {
  using Op = DerivedRelationType::Op;
  switch (type.op()) {
    case Op::Named: return extension(type.base());
    case Op::Identity: return rel::diagonal(entityExtension(type.base()));
    case Op::Compose:
      return rel::compose(extension(type.left()), extension(type.right()));
    case Op::Transpose: return rel::transpose(extension(type.operand()));
  }
  return {};
}

PairSet relationExtension(const KnowledgeBase& kb, const DerivedRelationType& type) {
  return ExtensionEvaluator(kb).extension(type);
}

TypeRef registerDerived(Ontology& ontology, std::string name,
                        const DerivedRelationType& type) {
  TypeUniverse universe(ontology);
  TypeDecl decl;
  decl.kind = TypeKind::BinaryRelation;
  decl.name = name;
  decl.source = universe.nameFor(type.source());
  decl.target = universe.nameFor(type.target());
  std::string inverseOf;
  if (type.op() == DerivedRelationType::Op::Transpose &&
      type.operand().op() == DerivedRelationType::Op::Named)
    inverseOf = universe.nameFor(type.operand().base());
  TypeRef ref = ontology.declareType(std::move(decl));
  if (!inverseOf.empty()) ontology.registerInverse(std::move(name), inverseOf);
  return ref;
}

}  // namespace oml
