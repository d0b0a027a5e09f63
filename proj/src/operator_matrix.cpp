#include "qosc/operator_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "qosc/kernels.hpp"

namespace qosc {

OperatorMatrix::OperatorMatrix(std::int64_t dim) : dim_(dim) {
  if (dim < 0) throw std::invalid_argument("OperatorMatrix: negative dimension");
  row_ptr_.assign(static_cast<size_t>(dim) + 1, 0);
}

OperatorMatrix OperatorMatrix::from_triplets(
    std::int64_t dim, std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const auto& x, const auto& y) {
    return std::make_pair(std::get<0>(x), std::get<1>(x)) <
           std::make_pair(std::get<0>(y), std::get<1>(y));
  });
  OperatorMatrix out(dim);
  out.cols_.reserve(triplets.size());
  out.values_.reserve(triplets.size());
  size_t i = 0;
  for (std::int64_t r = 0; r < dim; ++r) {
    while (i < triplets.size() && std::get<0>(triplets[i]) == r) {
      const std::int64_t c = std::get<1>(triplets[i]);
      if (c < 0 || c >= dim || std::get<0>(triplets[i]) < 0) {
        throw std::out_of_range("OperatorMatrix::from_triplets: index outside [0, dim)");
      }
      Complex v = std::get<2>(triplets[i]);
      ++i;
      while (i < triplets.size() && std::get<0>(triplets[i]) == r &&
             std::get<1>(triplets[i]) == c) {
        v += std::get<2>(triplets[i]);
        ++i;
      }
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::invalid_argument("OperatorMatrix: non-finite entry");
      }
      if (v != Complex(0.0)) {
        out.cols_.push_back(c);
        out.values_.push_back(v);
      }
    }
    out.row_ptr_[static_cast<size_t>(r) + 1] = static_cast<std::int64_t>(out.cols_.size());
  }
  if (i != triplets.size()) {
    throw std::out_of_range("OperatorMatrix::from_triplets: row index outside [0, dim)");
  }
  return out;
}

OperatorMatrix OperatorMatrix::identity(std::int64_t dim) {
  OperatorMatrix out(dim);
  out.cols_.resize(static_cast<size_t>(dim));
  out.values_.assign(static_cast<size_t>(dim), Complex(1.0));
  for (std::int64_t r = 0; r < dim; ++r) {
    out.cols_[static_cast<size_t>(r)] = r;
    out.row_ptr_[static_cast<size_t>(r) + 1] = r + 1;
  }
  return out;
}

OperatorMatrix OperatorMatrix::diagonal(std::vector<Complex> values) {
  const auto dim = static_cast<std::int64_t>(values.size());
  OperatorMatrix out(dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    const Complex v = values[static_cast<size_t>(r)];
    if (v != Complex(0.0)) {
      out.cols_.push_back(r);
      out.values_.push_back(v);
    }
    out.row_ptr_[static_cast<size_t>(r) + 1] = static_cast<std::int64_t>(out.cols_.size());
  }
  return out;
}

Complex OperatorMatrix::entry(std::int64_t row, std::int64_t col) const {
  if (row < 0 || row >= dim_ || col < 0 || col >= dim_) {
    throw std::out_of_range("OperatorMatrix::entry: index outside [0, dim)");
  }
  const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[static_cast<size_t>(row)]);
  const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[static_cast<size_t>(row) + 1]);
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return Complex(0.0);
  return values_[static_cast<size_t>(it - cols_.begin())];
}

double OperatorMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> triplets;
  triplets.reserve(values_.size());
  for_each_entry([&](std::int64_t r, std::int64_t c, Complex v) {
    triplets.emplace_back(c, r, std::conj(v));
  });
  return from_triplets(dim_, std::move(triplets));
}

OperatorMatrix linear_combination(Complex alpha, const OperatorMatrix& a, Complex beta,
                                  const OperatorMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("linear_combination: dimension mismatch");
  }
  std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> triplets;
  triplets.reserve(a.values().size() + b.values().size());
  a.for_each_entry([&](std::int64_t r, std::int64_t c, Complex v) {
    triplets.emplace_back(r, c, alpha * v);
  });
  b.for_each_entry([&](std::int64_t r, std::int64_t c, Complex v) {
    triplets.emplace_back(r, c, beta * v);
  });
  return OperatorMatrix::from_triplets(a.dim(), std::move(triplets));
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  return linear_combination(1.0, a, 1.0, b);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  return linear_combination(1.0, a, -1.0, b);
}

OperatorMatrix operator*(Complex scalar, const OperatorMatrix& a) {
  return linear_combination(scalar, a, 0.0, OperatorMatrix(a.dim()));
}

OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b) {
  return kernels::spmm(a, b);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  return matmul(a, b);
}

}  // namespace qosc
