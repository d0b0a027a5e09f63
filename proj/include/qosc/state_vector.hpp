#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qosc {

using Complex = std::complex<double>;

/// Dense complex coefficient vector over a truncated Fock basis.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::int64_t dim) : data_(static_cast<size_t>(dim), Complex(0.0)) {}
  explicit StateVector(std::vector<Complex> data) : data_(std::move(data)) {}

  std::int64_t dim() const { return static_cast<std::int64_t>(data_.size()); }
  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

  Complex& operator[](std::int64_t i) { return data_[static_cast<size_t>(i)]; }
  const Complex& operator[](std::int64_t i) const { return data_[static_cast<size_t>(i)]; }

  double norm() const {
    double acc = 0.0;
    for (const Complex& v : data_) acc += std::norm(v);
    return std::sqrt(acc);
  }

  /// <this|other> with the conjugate on this vector.
  Complex inner(const StateVector& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("StateVector::inner: size mismatch");
    Complex acc(0.0);
    for (std::int64_t i = 0; i < dim(); ++i) {
      acc += std::conj(data_[static_cast<size_t>(i)]) * other[i];
    }
    return acc;
  }

  StateVector& scale(Complex s) {
    for (Complex& v : data_) v *= s;
    return *this;
  }

  /// this += s * other.
  StateVector& axpy(Complex s, const StateVector& other) {
    if (dim() != other.dim()) throw std::invalid_argument("StateVector::axpy: size mismatch");
    for (std::int64_t i = 0; i < dim(); ++i) data_[static_cast<size_t>(i)] += s * other[i];
    return *this;
  }

 private:
  std::vector<Complex> data_;
};

}  // namespace qosc
