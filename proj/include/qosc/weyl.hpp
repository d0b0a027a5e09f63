#pragma once

#include <vector>

#include "qosc/check_report.hpp"
#include "qosc/fock_space.hpp"
#include "qosc/operator_matrix.hpp"
#include "qosc/polynomial.hpp"
#include "qosc/qparam.hpp"

namespace qosc {

/// Reordering parameters (s_1..s_n, t_1..t_n). Magnitudes are capped at
/// 0.5 so that the enlarged-space evaluation keeps identity residuals
/// meaningful down to 1e-9.
struct WeylParams {
  std::vector<Complex> s;
  std::vector<Complex> t;
  QParam qp;

  static constexpr double kMaxMagnitude = 0.5;
  WeylParams(std::vector<Complex> s_values, std::vector<Complex> t_values, QParam param);
};

struct QExpOperator {
  OperatorMatrix op;
  int terms_used = 0;          ///< series terms actually summed
  bool nilpotent_stop = false; ///< true when a matrix power vanished exactly
};

/// exp_q(c A) = sum (cA)^k/[k]!. Terminates exactly when a power of A
/// vanishes (creators and annihilators are nilpotent on the truncated
/// space); otherwise truncates once the next term's max-abs drops below
/// tol, failing after the term cap.
QExpOperator qexp_operator(Complex c, const OperatorMatrix& a, const QParam& qp,
                           double tol = 1e-14);

/// f(A) by Horner's scheme in matrix arithmetic.
OperatorMatrix polynomial_of_operator(const Polynomial& f, const OperatorMatrix& a);

/// Shift identity: a_i f(a†_i) = f(q a†_i) a_i + (Df)(a†_i) Q_(i+1)..Q_n
/// (the tail product is empty for i = n). Exact on sectors with margin
/// >= deg f + 1; margin -1 selects that minimum.
CheckReport check_shift_identity(int mode, const Polynomial& f, const FockSpace& space,
                                 const QParam& qp, int margin = -1, double tolerance = 1e-12);

/// Power identity: a_i^m exp_q(t a†_i) = exp_q(t a†_i)(a_i + t Q_i..Q_n)^m.
/// Requires margin >= m; margin -1 selects cutoff/2.
CheckReport check_power_identity(int mode, Complex t, int power, const FockSpace& space,
                                 const QParam& qp, int margin = -1, double tolerance = 1e-10);

/// Closed-form m = 1 shift: a_i exp_q(t a†_i) = exp_q(q t a†_i) a_i
///                          + t exp_q(t a†_i) Q_(i+1)..Q_n.
CheckReport check_exp_shift_identity(int mode, Complex t, const FockSpace& space,
                                     const QParam& qp, int margin = -1,
                                     double tolerance = 1e-10);

/// Reordering relations between exponentials of annihilators and creators:
///  - per-mode combined form   exp_q(s a)exp_q(t a†) = exp_q(t a†) exp_q(s a + s t Q..Q)
///  - per-mode split form      exp_q(s a)exp_q(t a†) = exp_q(t a†) exp_q(s t Q..Q) exp_q(s a)
///  - full product of the split form over all modes, in both ascending and
///    descending mode order (the relation holds whenever both sides use the
///    same order; the reports name the ordering).
/// Also checks the q-commutation a_i Q_i = q Q_i a_i the split form rests on.
///
/// These identities mix raising and lowering exponentials, so they are
/// evaluated on an internally enlarged space (cutoff + margin + 4, capped
/// at cutoff + 12) and compared on the declared sector; the reports carry
/// the evaluation cutoff.
std::vector<CheckReport> check_weyl_relation(const WeylParams& params, const FockSpace& space,
                                             int margin = -1, double tolerance = 1e-9);

}  // namespace qosc
