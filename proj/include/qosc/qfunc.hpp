#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qosc/polynomial.hpp"
#include "qosc/qparam.hpp"

namespace qosc {

/// Default truncation tolerance for series / product / quadrature loops.
inline constexpr double kSeriesTol = 1e-12;

/// Hard cap on series terms before convergence failure.
inline constexpr int kMaxTerms = 10000;

/// Hard cap on product factors and Jackson grid points. The grids shrink
/// geometrically like q^k, so q near 1 legitimately needs far more terms
/// than the power series ever should.
inline constexpr int kMaxGridTerms = 1000000;

/// Minimum number of terms consumed before the stopping rule may fire,
/// guarding against a premature stop on an accidentally small term.
inline constexpr int kMinTerms = 5;

/// q-number [x] = (q^x - 1)/(q - 1). Monotone increasing in x and bounded
/// above by radius() for x >= 0.
double q_number(double x, const QParam& qp);

/// q-factorial [m]! = [1][2]...[m], with [0]! = 1. Rejects negative m.
double q_factorial(long m, const QParam& qp);

/// q-exponential by series: sum of x^n/[n]!. Requires |x| < radius;
/// accumulation is compensated (Kahan) so the absolute error is a few ulp
/// of the positive-term sum. Terms are added until the next-term modulus
/// drops below tol (after at least kMinTerms terms).
Complex q_exp_series(Complex x, const QParam& qp, double tol = kSeriesTol);

/// q-exponential by the infinite product: prod 1/(1 - (1-q) q^n x).
/// Truncated once |(1-q) q^n x| < tol. Throws if a factor denominator is
/// within tol of zero (pole on the product grid).
Complex q_exp_product(Complex x, const QParam& qp, double tol = kSeriesTol);

/// Reciprocal q-exponential via the same product with factors upright:
/// prod (1 - (1-q) q^n x). Entire (no poles); the preferred route for
/// the Jackson weight, where the grid touches the series boundary.
Complex q_exp_product_inverse(Complex x, const QParam& qp, double tol = kSeriesTol);

/// q-derivative on polynomial coefficients: x^n -> [n] x^(n-1).
Polynomial q_derivative(const Polynomial& f, const QParam& qp);

/// Jackson q-integral of f over [0, radius]:
///   radius*(1-q) * sum_k q^k f(radius * q^k),
/// truncated when the term modulus drops below tol. Evaluation failures of
/// f propagate.
double jackson_integral(const std::function<double(double)>& f, const QParam& qp,
                        double tol = kSeriesTol);

/// Jackson moments against a weight: result[m] = Jackson integral of
/// x^m * weight(x) for m = 0..max_power. Same grid and per-moment stopping
/// rule as jackson_integral, with the weight evaluated once per grid point.
std::vector<double> jackson_moments(int max_power,
                                    const std::function<double(double)>& weight,
                                    const QParam& qp, double tol = kSeriesTol);

/// Largest |x| <= 0.9*radius at which the series for exp_q is still
/// verifiable in double precision: the summation condition number
/// exp_q(|x|)/|exp_q(-|x|)| is capped at kappa_max. Identity checks on the
/// series sample inside this disk; outside it, cancellation inflates the
/// best achievable relative error past useful tolerances.
double series_conditioned_radius(const QParam& qp, double kappa_max = 500.0);

}  // namespace qosc
