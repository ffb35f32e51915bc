#pragma once

// Verification reports shared by the identities, gram and asympt modules,
// and their JSON / CSV / table serializations.

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "arith_harmonics/types.hpp"

namespace ah {

enum class Verdict { pass, fail, heuristic_pass };

std::string_view to_string(Verdict v);

using ReportScalar = std::variant<Complex, Rational>;
using ParamValue = std::variant<std::int64_t, double, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

struct IdentityReport {
  std::string name;
  ReportScalar lhs = Complex(0.0);
  ReportScalar rhs = Complex(0.0);
  double abs_error = 0.0;
  ParamMap params;
  Verdict verdict = Verdict::fail;
  std::size_t n_terms = 0;

  bool passed() const { return verdict != Verdict::fail; }
};

/// Float comparison: pass iff |lhs - rhs| <= tol. A heuristic report can at
/// best reach heuristic_pass. The tolerance is recorded under "tol".
IdentityReport numeric_report(std::string name, Complex lhs, Complex rhs, double tol, ParamMap params,
                              std::size_t n_terms, bool heuristic = false);

/// Exact comparison: pass iff lhs == rhs, with abs_error = |lhs - rhs|.
IdentityReport exact_report(std::string name, const Rational& lhs, const Rational& rhs, ParamMap params,
                            std::size_t n_terms = 0);

/// 0 when every report passes outright, 3 when all pass but some only
/// heuristically, 1 when any fails.
int exit_code_for(const std::vector<IdentityReport>& reports);

std::string scalar_to_string(const ReportScalar& v);
std::string param_to_string(const ParamValue& v);

enum class OutputFormat { csv, json, table };
OutputFormat parse_output_format(std::string_view name);

/// Writes reports with the resolved run configuration echoed in the header
/// (JSON "config" object, CSV "# key=value" lines, table preamble).
void write_reports(std::ostream& out, const std::vector<IdentityReport>& reports, const ParamMap& config,
                   OutputFormat format);

}  // namespace ah
