#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qosc {

/// Deformation parameter q, restricted to 0 < q < 1.
///
/// The derived `radius` (= 1/(1-q)) is the convergence boundary of the
/// q-exponential series and the upper limit of the Jackson integral grid.
class QParam {
 public:
  explicit QParam(double q) : q_(q) {
    if (!(q > 0.0) || !(q < 1.0) || !std::isfinite(q)) {
      throw std::domain_error("QParam: q must lie strictly inside (0,1), got q=" +
                              std::to_string(q));
    }
  }

  double q() const { return q_; }
  double one_minus_q() const { return 1.0 - q_; }

  /// Convergence boundary 1/(1-q); always > 1.
  double radius() const { return 1.0 / (1.0 - q_); }

  /// q^k for integer k >= 0 by repeated multiplication (deterministic,
  /// avoids libm pow discrepancies).
  double ipow(long k) const {
    double r = 1.0;
    for (long i = 0; i < k; ++i) r *= q_;
    return r;
  }

 private:
  double q_;
};

}  // namespace qosc
