#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qosc {

using Complex = std::complex<double>;

/// Sparse complex square matrix in CSR form with canonical (row-major,
/// column-sorted) entry ordering. Entries are finite and exact zeros are
/// dropped on construction, so equal operators have identical storage and
/// equality checks are deterministic.
class OperatorMatrix {
 public:
  OperatorMatrix() : dim_(0), row_ptr_{0} {}
  explicit OperatorMatrix(std::int64_t dim);

  /// Build from unsorted (row, col, value) triplets; duplicates are summed
  /// in (row, col, insertion) order, exact zeros dropped.
  static OperatorMatrix from_triplets(std::int64_t dim,
                                      std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> triplets);

  static OperatorMatrix identity(std::int64_t dim);
  static OperatorMatrix diagonal(std::vector<Complex> values);

  std::int64_t dim() const { return dim_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int64_t>& cols() const { return cols_; }
  const std::vector<Complex>& values() const { return values_; }

  Complex entry(std::int64_t row, std::int64_t col) const;
  bool is_zero() const { return values_.empty(); }
  double max_abs() const;

  OperatorMatrix adjoint() const;

  bool operator==(const OperatorMatrix& other) const {
    return dim_ == other.dim_ && row_ptr_ == other.row_ptr_ && cols_ == other.cols_ &&
           values_ == other.values_;
  }

  template <typename Fn>
  void for_each_entry(Fn&& fn) const {
    for (std::int64_t r = 0; r < dim_; ++r) {
      for (std::int64_t k = row_ptr_[static_cast<size_t>(r)];
           k < row_ptr_[static_cast<size_t>(r) + 1]; ++k) {
        fn(r, cols_[static_cast<size_t>(k)], values_[static_cast<size_t>(k)]);
      }
    }
  }

 private:
  friend OperatorMatrix matmul(const OperatorMatrix&, const OperatorMatrix&);
  friend class MatrixAccumulator;

  std::int64_t dim_ = 0;
  std::vector<std::int64_t> row_ptr_;
  std::vector<std::int64_t> cols_;
  std::vector<Complex> values_;
};

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex scalar, const OperatorMatrix& a);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

/// alpha*A + beta*B with exact-zero dropping.
OperatorMatrix linear_combination(Complex alpha, const OperatorMatrix& a, Complex beta,
                                  const OperatorMatrix& b);

/// A*B (delegates to the active kernel mode).
OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace qosc
