#include "qosc/qfunc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qosc {

namespace {

// Compensated (Kahan) accumulator for complex values.
struct KahanSum {
  Complex sum{0.0};
  Complex carry{0.0};

  void add(Complex term) {
    const Complex y = term - carry;
    const Complex t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double q_number(double x, const QParam& qp) {
  return (std::pow(qp.q(), x) - 1.0) / (qp.q() - 1.0);
}

double q_factorial(long m, const QParam& qp) {
  if (m < 0) {
    throw std::domain_error("q_factorial: m must be nonnegative, got m=" + std::to_string(m));
  }
  double acc = 1.0;
  for (long k = 1; k <= m; ++k) acc *= q_number(static_cast<double>(k), qp);
  return acc;
}

Complex q_exp_series(Complex x, const QParam& qp, double tol) {
  const double radius = qp.radius();
  if (!(std::abs(x) < radius)) {
    throw std::domain_error("q_exp_series: |x|=" + std::to_string(std::abs(x)) +
                            " is outside the convergence disk |x| < " + std::to_string(radius));
  }
  KahanSum acc;
  Complex term(1.0);  // x^n / [n]!
  acc.add(term);
  for (int n = 1; n <= kMaxTerms; ++n) {
    term *= x / q_number(static_cast<double>(n), qp);
    if (n >= kMinTerms && std::abs(term) < tol) return acc.sum;
    acc.add(term);
  }
  throw std::runtime_error("q_exp_series: no convergence within " + std::to_string(kMaxTerms) +
                           " terms (|x| near the radius?)");
}

Complex q_exp_product(Complex x, const QParam& qp, double tol) {
  Complex prod(1.0);
  double scale = qp.one_minus_q();  // (1-q) q^n
  for (int n = 0; n <= kMaxGridTerms; ++n) {
    const Complex denom = 1.0 - scale * x;
    if (std::abs(denom) < tol) {
      throw std::domain_error("q_exp_product: factor pole at grid index " + std::to_string(n) +
                              " (denominator " + std::to_string(std::abs(denom)) + ")");
    }
    prod /= denom;
    scale *= qp.q();
    if (std::abs(scale * x) < tol) return prod;
  }
  throw std::runtime_error("q_exp_product: no convergence within " +
                           std::to_string(kMaxGridTerms) + " factors");
}

Complex q_exp_product_inverse(Complex x, const QParam& qp, double tol) {
  Complex prod(1.0);
  double scale = qp.one_minus_q();
  for (int n = 0; n <= kMaxGridTerms; ++n) {
    prod *= 1.0 - scale * x;
    scale *= qp.q();
    if (std::abs(scale * x) < tol) return prod;
  }
  throw std::runtime_error("q_exp_product_inverse: no convergence within " +
                           std::to_string(kMaxGridTerms) + " factors");
}

Polynomial q_derivative(const Polynomial& f, const QParam& qp) {
  if (f.degree() < 1) return Polynomial{};
  std::vector<Complex> c(static_cast<std::size_t>(f.degree()), Complex(0.0));
  for (std::size_t n = 1; n < f.coefficients().size(); ++n) {
    c[n - 1] = f.coefficients()[n] * q_number(static_cast<double>(n), qp);
  }
  return Polynomial(std::move(c));
}

double jackson_integral(const std::function<double(double)>& f, const QParam& qp, double tol) {
  const double radius = qp.radius();
  const double prefactor = radius * qp.one_minus_q();
  double acc = 0.0;
  double carry = 0.0;
  double qk = 1.0;  // q^k
  double peak = 0.0;
  for (int k = 0; k <= kMaxGridTerms; ++k) {
    const double term = prefactor * qk * f(radius * qk);
    // Stop only past the peak: near q = 1 the early grid terms underflow
    // before the integrand mass arrives, so "small term" alone is not a
    // safe exit.
    if (k >= kMinTerms && peak > tol && std::abs(term) < tol) return acc;
    peak = std::max(peak, std::abs(term));
    const double y = term - carry;
    const double t = acc + y;
    carry = (t - acc) - y;
    acc = t;
    qk *= qp.q();
  }
  throw std::runtime_error("jackson_integral: no convergence within " +
                           std::to_string(kMaxGridTerms) + " terms");
}

double series_conditioned_radius(const QParam& qp, double kappa_max) {
  const double upper = 0.9 * qp.radius();
  const auto kappa = [&](double r) {
    return std::abs(q_exp_product(r, qp, 1e-15) / q_exp_product(-r, qp, 1e-15));
  };
  if (kappa(upper) <= kappa_max) return upper;
  double lo = 0.0;
  double hi = upper;
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (kappa(mid) <= kappa_max ? lo : hi) = mid;
  }
  return lo;
}

std::vector<double> jackson_moments(int max_power, const std::function<double(double)>& weight,
                                    const QParam& qp, double tol) {
  const double radius = qp.radius();
  const double prefactor = radius * qp.one_minus_q();
  std::vector<double> acc(static_cast<std::size_t>(max_power) + 1, 0.0);
  std::vector<double> carry(acc.size(), 0.0);
  std::vector<double> peak(acc.size(), 0.0);
  std::vector<bool> done(acc.size(), false);
  double qk = 1.0;
  for (int k = 0; k <= kMaxGridTerms; ++k) {
    const double x = radius * qk;
    const double w = prefactor * qk * weight(x);
    bool all_done = true;
    double xm = 1.0;  // x^m
    for (int m = 0; m <= max_power; ++m) {
      const double term = w * xm;
      xm *= x;
      if (done[m]) continue;
      if (k >= kMinTerms && peak[m] > tol && std::abs(term) < tol) {
        done[m] = true;
        continue;
      }
      peak[m] = std::max(peak[m], std::abs(term));
      all_done = false;
      const double y = term - carry[m];
      const double t = acc[m] + y;
      carry[m] = (t - acc[m]) - y;
      acc[m] = t;
    }
    if (all_done) return acc;
    qk *= qp.q();
  }
  throw std::runtime_error("jackson_moments: no convergence within " +
                           std::to_string(kMaxGridTerms) + " terms");
}

}  // namespace qosc
