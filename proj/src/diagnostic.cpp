#include "oml/diagnostic.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace oml {

std::string_view toString(Severity severity) {
  switch (severity) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

const std::vector<DiagnosticCode>& diagnosticCodes() {
  static const std::vector<DiagnosticCode> codes = {
      {"REF001", "unresolved type reference"},
      {"REF002", "unresolved instance reference"},
      {"KND001", "classification by a type of the wrong kind"},
      {"KND002", "axiom linking an entity type and a relation type"},
      {"FUN001", "function instance with more than one value"},
      {"SUB001", "subtype cycle makes types equivalent"},
      {"CLS001", "preservation of classification violated"},
      {"CLS002", "classification inferred by completion"},
      {"CLS003", "literal incompatible with its data type"},
      {"ENT001", "preservation of entailment violated"},
      {"INC001", "derived incompatible (disjoint) types"},
      {"INC002", "derived incoherent type"},
      {"INC003", "instance classified by an incoherent type"},
      {"DIS001", "instance classified by two disjoint types"},
      {"SUG001", "extensional inclusion suggests a subtype axiom"},
      {"HOT001", "higher-order preservation of classification violated"},
      {"HOT002", "name used both as a type and as an individual"},
      {"HOT003", "malformed higher-order assertion"},
      {"DTD001", "element not declared"},
      {"DTD002", "content model violated"},
      {"DTD003", "required attribute missing"},
      {"DTD004", "duplicate ID value"},
      {"DTD005", "attribute not declared"},
      {"DTD006", "attribute value does not match its declared type"},
      {"XML001", "document is not well formed"},
      {"OML001", "document could not be parsed or loaded"},
      {"RDF001", "RDF vocabulary with no core counterpart"},
  };
  return codes;
}

bool isRegisteredCode(std::string_view code) {
  const auto& codes = diagnosticCodes();
  return std::any_of(codes.begin(), codes.end(),
                     [&](const DiagnosticCode& c) { return c.code == code; });
}

std::string formatDiagnostic(const Diagnostic& d) {
  std::ostringstream os;
  os << toString(d.severity) << ' ' << d.code << ' '
     << (d.document.empty() ? "-" : d.document) << ':' << d.loc.line << ':'
     << d.loc.column << ' ' << d.message;
  return os.str();
}

std::string formatDiagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    out += formatDiagnostic(d);
    out += '\n';
  }
  return out;
}

void sortDiagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.document, a.loc.line, a.loc.column,
                                     a.code) < std::tie(b.document, b.loc.line,
                                                        b.loc.column, b.code);
                   });
}

bool hasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::Error;
                     });
}

std::size_t countCode(const std::vector<Diagnostic>& diagnostics,
                      std::string_view code) {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(),
      [&](const Diagnostic& d) { return d.code == code; }));
}

}  // namespace oml
