#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oml {

/// Line/column position inside a source document (1-based; 0 means unknown).
///
/// Locations never participate in value equality, so model values that carry
/// them compare by content only.
struct SourceLoc {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class ErrorCode {
  SyntaxError,
  GrammarError,
  DuplicateTypeName,
  DuplicateInstanceId,
  UnresolvedTypeRef,
  UnresolvedInstanceRef,
  UnresolvedRef,
  UnknownPrefix,
  AmbiguousName,
  KindMismatch,
  InvalidDeclaration,
  DuplicateFunctionValue,
  InvalidLiteral,
  UnresolvableImport,
  ImportCycle,
  NotComposable,
  NameCollision,
  AmbiguousClassification,
  MissingClassification,
  UnnamedInstance,
  UnknownTag,
  UnknownAttribute,
  HigherOrderUnsupported,
  DataTypeUnsupported,
  XolSyntaxError,
  UnsupportedConstruct,
};

std::string_view toString(ErrorCode code);

/// Exception raised by every API entry point that rejects its input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourceLoc loc = {},
        int rule = 0);

  ErrorCode code() const { return code_; }
  const SourceLoc& location() const { return loc_; }
  /// Grammar rule number ([1]..[30]) for GrammarError, otherwise 0.
  int rule() const { return rule_; }
  /// Message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  SourceLoc loc_;
  int rule_;
  std::string detail_;
};

/// Raise a GrammarError citing `rule`.
[[noreturn]] void grammarError(int rule, const std::string& message,
                               SourceLoc loc);

}  // namespace oml
