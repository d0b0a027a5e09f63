#include "qosc/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qosc::kernels {

namespace {

std::atomic<Mode> g_mode{Mode::parallel};

// Work below this many rows/columns is not worth forking threads for.
constexpr std::int64_t kParallelThreshold = 64;

bool use_parallel(Mode m, std::int64_t work_items) {
#ifdef _OPENMP
  return m == Mode::parallel && work_items >= kParallelThreshold;
#else
  (void)m;
  (void)work_items;
  return false;
#endif
}

// Accumulates one output row of A*B: scatter into a dense scratch with a
// touched-column list, then emit in sorted column order. The per-row
// accumulation order is fixed by the CSR layout, so results do not depend
// on the execution mode.
struct RowScratch {
  std::vector<Complex> value;
  std::vector<unsigned char> touched;
  std::vector<std::int64_t> touched_list;

  void resize(std::int64_t dim) {
    value.assign(static_cast<size_t>(dim), Complex(0.0));
    touched.assign(static_cast<size_t>(dim), 0);
    touched_list.reserve(static_cast<size_t>(dim));
  }

  void accumulate_row(const OperatorMatrix& a, const OperatorMatrix& b, std::int64_t row,
                      std::vector<std::int64_t>& out_cols, std::vector<Complex>& out_vals) {
    touched_list.clear();
    const auto& arp = a.row_ptr();
    const auto& acol = a.cols();
    const auto& aval = a.values();
    const auto& brp = b.row_ptr();
    const auto& bcol = b.cols();
    const auto& bval = b.values();
    for (std::int64_t ka = arp[static_cast<size_t>(row)]; ka < arp[static_cast<size_t>(row) + 1];
         ++ka) {
      const std::int64_t mid = acol[static_cast<size_t>(ka)];
      const Complex av = aval[static_cast<size_t>(ka)];
      for (std::int64_t kb = brp[static_cast<size_t>(mid)];
           kb < brp[static_cast<size_t>(mid) + 1]; ++kb) {
        const std::int64_t c = bcol[static_cast<size_t>(kb)];
        if (!touched[static_cast<size_t>(c)]) {
          touched[static_cast<size_t>(c)] = 1;
          value[static_cast<size_t>(c)] = Complex(0.0);
          touched_list.push_back(c);
        }
        value[static_cast<size_t>(c)] += av * bval[static_cast<size_t>(kb)];
      }
    }
    std::sort(touched_list.begin(), touched_list.end());
    for (const std::int64_t c : touched_list) {
      const Complex v = value[static_cast<size_t>(c)];
      touched[static_cast<size_t>(c)] = 0;
      if (v != Complex(0.0)) {
        out_cols.push_back(c);
        out_vals.push_back(v);
      }
    }
  }
};

// CSC view of a matrix (column pointers into row/value arrays).
struct CscView {
  std::vector<std::int64_t> col_ptr;
  std::vector<std::int64_t> rows;
  std::vector<Complex> values;
};

CscView transpose_to_csc(const OperatorMatrix& a) {
  CscView csc;
  csc.col_ptr.assign(static_cast<size_t>(a.dim()) + 1, 0);
  csc.rows.resize(a.values().size());
  csc.values.resize(a.values().size());
  for (const std::int64_t c : a.cols()) ++csc.col_ptr[static_cast<size_t>(c) + 1];
  for (size_t c = 1; c < csc.col_ptr.size(); ++c) csc.col_ptr[c] += csc.col_ptr[c - 1];
  std::vector<std::int64_t> next(csc.col_ptr.begin(), csc.col_ptr.end() - 1);
  a.for_each_entry([&](std::int64_t r, std::int64_t c, Complex v) {
    const std::int64_t slot = next[static_cast<size_t>(c)]++;
    csc.rows[static_cast<size_t>(slot)] = r;
    csc.values[static_cast<size_t>(slot)] = v;
  });
  return csc;
}

}  // namespace

Mode mode() { return g_mode.load(std::memory_order_relaxed); }
void set_mode(Mode m) { g_mode.store(m, std::memory_order_relaxed); }

OperatorMatrix spmm(const OperatorMatrix& a, const OperatorMatrix& b, Mode m) {
  if (a.dim() != b.dim()) throw std::invalid_argument("spmm: dimension mismatch");
  const std::int64_t dim = a.dim();

  std::vector<std::vector<std::int64_t>> row_cols(static_cast<size_t>(dim));
  std::vector<std::vector<Complex>> row_vals(static_cast<size_t>(dim));

  if (use_parallel(m, dim)) {
#ifdef _OPENMP
#pragma omp parallel
    {
      RowScratch scratch;
      scratch.resize(dim);
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t r = 0; r < dim; ++r) {
        scratch.accumulate_row(a, b, r, row_cols[static_cast<size_t>(r)],
                               row_vals[static_cast<size_t>(r)]);
      }
    }
#endif
  } else {
    RowScratch scratch;
    scratch.resize(dim);
    for (std::int64_t r = 0; r < dim; ++r) {
      scratch.accumulate_row(a, b, r, row_cols[static_cast<size_t>(r)],
                             row_vals[static_cast<size_t>(r)]);
    }
  }

  std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> triplets;
  std::size_t total = 0;
  for (const auto& rc : row_cols) total += rc.size();
  triplets.reserve(total);
  for (std::int64_t r = 0; r < dim; ++r) {
    const auto& rc = row_cols[static_cast<size_t>(r)];
    const auto& rv = row_vals[static_cast<size_t>(r)];
    for (size_t k = 0; k < rc.size(); ++k) triplets.emplace_back(r, rc[k], rv[k]);
  }
  return OperatorMatrix::from_triplets(dim, std::move(triplets));
}

std::vector<Complex> spmv(const OperatorMatrix& a, const std::vector<Complex>& x, Mode m) {
  if (static_cast<std::int64_t>(x.size()) != a.dim()) {
    throw std::invalid_argument("spmv: dimension mismatch");
  }
  std::vector<Complex> y(x.size(), Complex(0.0));
  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  const auto& vals = a.values();
  const std::int64_t dim = a.dim();

  auto run_row = [&](std::int64_t r) {
    Complex acc(0.0);
    for (std::int64_t k = rp[static_cast<size_t>(r)]; k < rp[static_cast<size_t>(r) + 1]; ++k) {
      acc += vals[static_cast<size_t>(k)] * x[static_cast<size_t>(cols[static_cast<size_t>(k)])];
    }
    y[static_cast<size_t>(r)] = acc;
  };

  if (use_parallel(m, dim)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < dim; ++r) run_row(r);
#endif
  } else {
    for (std::int64_t r = 0; r < dim; ++r) run_row(r);
  }
  return y;
}

std::vector<double> masked_column_norms(const OperatorMatrix& a,
                                        const std::vector<unsigned char>& row_mask, Mode m) {
  if (static_cast<std::int64_t>(row_mask.size()) != a.dim()) {
    throw std::invalid_argument("masked_column_norms: mask size mismatch");
  }
  const CscView csc = transpose_to_csc(a);
  const std::int64_t dim = a.dim();
  std::vector<double> norms(static_cast<size_t>(dim), 0.0);

  auto run_col = [&](std::int64_t c) {
    double acc = 0.0;
    for (std::int64_t k = csc.col_ptr[static_cast<size_t>(c)];
         k < csc.col_ptr[static_cast<size_t>(c) + 1]; ++k) {
      const std::int64_t r = csc.rows[static_cast<size_t>(k)];
      if (row_mask[static_cast<size_t>(r)]) acc += std::norm(csc.values[static_cast<size_t>(k)]);
    }
    norms[static_cast<size_t>(c)] = std::sqrt(acc);
  };

  if (use_parallel(m, dim)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < dim; ++c) run_col(c);
#endif
  } else {
    for (std::int64_t c = 0; c < dim; ++c) run_col(c);
  }
  return norms;
}

std::vector<Complex> OperatorExpr::apply(std::int64_t dim, const std::vector<Complex>& x) const {
  std::vector<Complex> acc(static_cast<size_t>(dim), Complex(0.0));
  for (const ExprTerm& term : terms) {
    std::vector<Complex> v = x;
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
      v = spmv(**it, v, Mode::serial);
    }
    for (std::int64_t i = 0; i < dim; ++i) {
      acc[static_cast<size_t>(i)] += term.coeff * v[static_cast<size_t>(i)];
    }
  }
  return acc;
}

double max_masked_column_residual(const OperatorExpr& lhs, const OperatorExpr& rhs,
                                  std::int64_t dim, const std::vector<std::int64_t>& columns,
                                  const std::vector<unsigned char>& row_mask, Mode m) {
  if (static_cast<std::int64_t>(row_mask.size()) != dim) {
    throw std::invalid_argument("max_masked_column_residual: mask size mismatch");
  }
  const auto n_cols = static_cast<std::int64_t>(columns.size());
  std::vector<double> col_norm(static_cast<size_t>(n_cols), 0.0);

  auto run_col = [&](std::int64_t ci) {
    std::vector<Complex> e(static_cast<size_t>(dim), Complex(0.0));
    e[static_cast<size_t>(columns[static_cast<size_t>(ci)])] = Complex(1.0);
    const std::vector<Complex> l = lhs.apply(dim, e);
    const std::vector<Complex> r = rhs.apply(dim, e);
    double acc = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
      if (row_mask[static_cast<size_t>(i)]) {
        acc += std::norm(l[static_cast<size_t>(i)] - r[static_cast<size_t>(i)]);
      }
    }
    col_norm[static_cast<size_t>(ci)] = std::sqrt(acc);
  };

  if (use_parallel(m, n_cols)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t ci = 0; ci < n_cols; ++ci) run_col(ci);
#endif
  } else {
    for (std::int64_t ci = 0; ci < n_cols; ++ci) run_col(ci);
  }

  double worst = 0.0;
  for (const double v : col_norm) worst = std::max(worst, v);
  return worst;
}

}  // namespace qosc::kernels
