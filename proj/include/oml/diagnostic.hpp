#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oml/error.hpp"

namespace oml {

enum class Severity { Info, Warning, Error };

std::string_view toString(Severity severity);

/// Uniform output of every checker and validator.
///
/// Codes come from a fixed registry (see `diagnosticCodes()`):
///
///   REF001  unresolved type reference          REF002  unresolved instance reference
///   KND001  classification of the wrong kind    KND002  axiom linking entity and relation types
///   FUN001  function with more than one value   SUB001  subtype cycle (type equivalence)
///   CLS001  preservation of classification      CLS002  classification inferred by completion
///   CLS003  literal incompatible with its type  ENT001  preservation of entailment
///   INC001  derived incompatible types          INC002  derived incoherent type
///   INC003  instance of an incoherent type      DIS001  instance of two disjoint types
///   SUG001  inclusion suggests a subtype axiom  HOT001  higher-order classification
///   HOT002  type name reused as individual id   HOT003  malformed higher-order assertion
///   DTD001  undeclared element                  DTD002  content model violation
///   DTD003  missing required attribute          DTD004  duplicate ID value
///   DTD005  undeclared attribute                DTD006  malformed attribute value
///   XML001  document is not well formed         OML001  document failed to parse
///   RDF001  unmapped RDF vocabulary
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string document;
  SourceLoc loc;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct DiagnosticCode {
  std::string_view code;
  std::string_view summary;
};

const std::vector<DiagnosticCode>& diagnosticCodes();
bool isRegisteredCode(std::string_view code);

/// `SEVERITY CODE file:line:col message`
std::string formatDiagnostic(const Diagnostic& d);
std::string formatDiagnostics(const std::vector<Diagnostic>& diagnostics);

/// Document order (document, line, column), then code.
void sortDiagnostics(std::vector<Diagnostic>& diagnostics);

bool hasErrors(const std::vector<Diagnostic>& diagnostics);
std::size_t countCode(const std::vector<Diagnostic>& diagnostics,
                      std::string_view code);

}  // namespace oml
