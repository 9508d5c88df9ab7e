#include "oml/error.hpp"

#include <sstream>

namespace oml {

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::GrammarError: return "GrammarError";
    case ErrorCode::DuplicateTypeName: return "DuplicateTypeName";
    case ErrorCode::DuplicateInstanceId: return "DuplicateInstanceId";
    case ErrorCode::UnresolvedTypeRef: return "UnresolvedTypeRef";
    case ErrorCode::UnresolvedInstanceRef: return "UnresolvedInstanceRef";
    case ErrorCode::UnresolvedRef: return "UnresolvedRef";
    case ErrorCode::UnknownPrefix: return "UnknownPrefix";
    case ErrorCode::AmbiguousName: return "AmbiguousName";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidDeclaration: return "InvalidDeclaration";
    case ErrorCode::DuplicateFunctionValue: return "DuplicateFunctionValue";
    case ErrorCode::InvalidLiteral: return "InvalidLiteral";
    case ErrorCode::UnresolvableImport: return "UnresolvableImport";
    case ErrorCode::ImportCycle: return "ImportCycle";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorCode::MissingClassification: return "MissingClassification";
    case ErrorCode::UnnamedInstance: return "UnnamedInstance";
    case ErrorCode::UnknownTag: return "UnknownTag";
    case ErrorCode::UnknownAttribute: return "UnknownAttribute";
    case ErrorCode::HigherOrderUnsupported: return "HigherOrderUnsupported";
    case ErrorCode::DataTypeUnsupported: return "DataTypeUnsupported";
    case ErrorCode::XolSyntaxError: return "XolSyntaxError";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
  }
  return "Error";
}

namespace {

std::string compose(ErrorCode code, const std::string& message, SourceLoc loc,
                    int rule) {
  std::ostringstream os;
  os << toString(code);
  if (loc.known()) os << " at " << loc.line << ':' << loc.column;
  if (rule > 0) os << " (rule [" << rule << "])";
  os << ": " << message;
  return os.str();
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, SourceLoc loc,
             int rule)
    : std::runtime_error(compose(code, message, loc, rule)),
      code_(code),
      loc_(loc),
      rule_(rule),
      detail_(message) {}

void grammarError(int rule, const std::string& message, SourceLoc loc) {
  throw Error(ErrorCode::GrammarError, message, loc, rule);
}

}  // namespace oml
