#pragma once

#include <cstdint>
#include <vector>

#include "qosc/operator_matrix.hpp"

namespace qosc::kernels {

/// Execution mode for the data-parallel kernels. `serial` is the reference
/// implementation; `parallel` distributes independent rows/columns over
/// OpenMP threads. Both produce bitwise-identical results: every output
/// element is accumulated in a fixed order local to one row or column.
enum class Mode { serial, parallel };

Mode mode();
void set_mode(Mode m);

/// C = A*B. Row-parallel; each output row is produced by a sorted-scatter
/// accumulation local to that row.
OperatorMatrix spmm(const OperatorMatrix& a, const OperatorMatrix& b, Mode m = mode());

/// y = A*x.
std::vector<Complex> spmv(const OperatorMatrix& a, const std::vector<Complex>& x,
                          Mode m = mode());

/// For each column c: sqrt(sum over rows r with row_mask[r] of |A(r,c)|^2).
/// Column-parallel over an internal CSC transpose.
std::vector<double> masked_column_norms(const OperatorMatrix& a,
                                        const std::vector<unsigned char>& row_mask,
                                        Mode m = mode());

/// One term of an operator expression: coeff * F_1 * F_2 * ... * F_k,
/// factors applied right-to-left when acting on a vector.
struct ExprTerm {
  Complex coeff{1.0};
  std::vector<const OperatorMatrix*> factors;
};

/// Sum of product terms, evaluated column-by-column without materializing
/// the (possibly dense) product matrix.
struct OperatorExpr {
  std::vector<ExprTerm> terms;
  std::vector<Complex> apply(std::int64_t dim, const std::vector<Complex>& x) const;
};

/// max over `columns` c of the row_mask-restricted 2-norm of
/// (lhs - rhs) * e_c. Column-parallel; one column is one unit of work.
double max_masked_column_residual(const OperatorExpr& lhs, const OperatorExpr& rhs,
                                  std::int64_t dim, const std::vector<std::int64_t>& columns,
                                  const std::vector<unsigned char>& row_mask, Mode m = mode());

}  // namespace qosc::kernels
