#include "qosc/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace qosc {

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::monomial(std::size_t power, Complex coefficient) {
  std::vector<Complex> c(power + 1, Complex(0.0));
  c[power] = coefficient;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::constant(Complex value) { return Polynomial({value}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

Complex Polynomial::eval(Complex x) const {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::with_scaled_argument(Complex s) const {
  std::vector<Complex> c(coeffs_);
  Complex sk(1.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= sk;
    sk *= s;
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Complex> c(std::max(coeffs_.size(), other.coeffs_.size()), Complex(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + (other * Complex(-1.0));
}

Polynomial Polynomial::operator*(Complex scalar) const {
  std::vector<Complex> c(coeffs_);
  for (auto& v : c) v *= scalar;
  return Polynomial(std::move(c));
}

}  // namespace qosc
