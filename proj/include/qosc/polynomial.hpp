#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qosc {

using Complex = std::complex<double>;

/// Polynomial over the complex numbers, coefficient index = power of x.
/// Canonical form trims trailing zero coefficients; the zero polynomial
/// has an empty coefficient list and degree() == -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coefficients);

  /// x^n with unit coefficient.
  static Polynomial monomial(std::size_t power, Complex coefficient = 1.0);
  static Polynomial constant(Complex value);

  const std::vector<Complex>& coefficients() const { return coeffs_; }

  /// Highest nonzero power, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Complex coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Complex(0.0);
  }

  /// Horner evaluation.
  Complex eval(Complex x) const;

  /// p(s*x): coefficient k scaled by s^k.
  Polynomial with_scaled_argument(Complex s) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(Complex scalar) const;

  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

}  // namespace qosc
