#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qosc {

/// Outcome of one identity verification: what was checked, on which sector,
/// the worst residual seen, and whether it beat the tolerance.
struct CheckReport {
  std::string id;        ///< human-readable relation name, e.g. "creator-exchange i=1 j=2"
  std::string equation;  ///< identity tag, e.g. "Eq(7)"
  std::int64_t dim = 0;  ///< dimension of the declared space
  int sector_max_occupation = 0;
  int margin = 0;        ///< declared safe-sector margin
  int eval_cutoff = 0;   ///< per-mode cutoff actually used to evaluate operators
  std::int64_t sector_size = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;      ///< optional context (truncation-edge warnings, discrepancy details)

  static CheckReport make(std::string id, std::string equation, double residual,
                          double tolerance) {
    CheckReport r;
    r.id = std::move(id);
    r.equation = std::move(equation);
    r.max_residual = residual;
    r.tolerance = tolerance;
    r.pass = residual < tolerance;
    return r;
  }
};

struct SuiteSummary {
  int total = 0;
  int passed = 0;
  int failed = 0;
};

inline SuiteSummary summarize(const std::vector<CheckReport>& checks) {
  SuiteSummary s;
  s.total = static_cast<int>(checks.size());
  for (const auto& c : checks) (c.pass ? s.passed : s.failed)++;
  return s;
}

}  // namespace qosc
