#include "qosc/fock_ops.hpp"

#include <cmath>
#include <tuple>

#include "qosc/kernels.hpp"
#include "qosc/qfunc.hpp"

namespace qosc {

OperatorMatrix build_annihilator(int mode, const FockSpace& space, const QParam& qp) {
  space.require_mode(mode);
  std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> triplets;
  triplets.reserve(static_cast<size_t>(space.dim()));
  const std::int64_t stride = [&] {
    std::int64_t s = 1;
    for (int i = 1; i < mode; ++i) s *= space.cutoff() + 1;
    return s;
  }();
  for (std::int64_t col = 0; col < space.dim(); ++col) {
    const int n_i = space.occupation(col, mode);
    if (n_i == 0) continue;
    const double amp = std::sqrt(qp.ipow(space.tail_sum(col, mode)) *
                                 q_number(static_cast<double>(n_i), qp));
    triplets.emplace_back(col - stride, col, Complex(amp));
  }
  return OperatorMatrix::from_triplets(space.dim(), std::move(triplets));
}

OperatorMatrix build_creator(int mode, const FockSpace& space, const QParam& qp) {
  return build_annihilator(mode, space, qp).adjoint();
}

OperatorMatrix build_number(int mode, const FockSpace& space) {
  space.require_mode(mode);
  std::vector<Complex> diag(static_cast<size_t>(space.dim()));
  for (std::int64_t i = 0; i < space.dim(); ++i) {
    diag[static_cast<size_t>(i)] = static_cast<double>(space.occupation(i, mode));
  }
  return OperatorMatrix::diagonal(std::move(diag));
}

OperatorMatrix build_scale(int mode, const FockSpace& space, const QParam& qp) {
  space.require_mode(mode);
  std::vector<Complex> diag(static_cast<size_t>(space.dim()));
  for (std::int64_t i = 0; i < space.dim(); ++i) {
    diag[static_cast<size_t>(i)] = qp.ipow(space.occupation(i, mode));
  }
  return OperatorMatrix::diagonal(std::move(diag));
}

OperatorMatrix build_scale_product(int mode, const FockSpace& space, const QParam& qp) {
  if (mode < 1 || mode > space.n_modes() + 1) {
    throw std::out_of_range("build_scale_product: mode outside 1..n_modes+1");
  }
  std::vector<Complex> diag(static_cast<size_t>(space.dim()));
  for (std::int64_t i = 0; i < space.dim(); ++i) {
    // q^(n_mode + n_(mode+1) + ... + n_n) = q^(tail_sum(mode-1)).
    diag[static_cast<size_t>(i)] = qp.ipow(space.tail_sum(i, mode - 1));
  }
  return OperatorMatrix::diagonal(std::move(diag));
}

StateVector build_fock_state(const MultiIndex& occ, const FockSpace& space, const QParam& qp) {
  if (!space.contains(occ)) {
    throw std::out_of_range("build_fock_state: multi-index outside the truncated basis");
  }
  StateVector state(space.dim());
  state[0] = Complex(1.0);
  double norm_sq = 1.0;
  for (int mode = 1; mode <= space.n_modes(); ++mode) {
    const int reps = occ[static_cast<size_t>(mode - 1)];
    if (reps == 0) continue;
    const OperatorMatrix creator = build_creator(mode, space, qp);
    for (int r = 0; r < reps; ++r) {
      state = StateVector(kernels::spmv(creator, state.data()));
    }
    norm_sq *= q_factorial(reps, qp);
  }
  state.scale(1.0 / std::sqrt(norm_sq));
  return state;
}

double relation_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs,
                         const SafeSector& sector) {
  if (lhs.dim() != rhs.dim() || lhs.dim() != sector.space().dim()) {
    throw std::invalid_argument("relation_residual: dimension mismatch");
  }
  const OperatorMatrix diff = lhs - rhs;
  const std::vector<double> norms = kernels::masked_column_norms(diff, sector.mask());
  double worst = 0.0;
  for (const std::int64_t c : sector.members()) {
    worst = std::max(worst, norms[static_cast<size_t>(c)]);
  }
  return worst;
}

CheckReport check_relation(const std::string& id, const std::string& equation,
                           const OperatorMatrix& lhs, const OperatorMatrix& rhs,
                           const SafeSector& sector, double tolerance) {
  CheckReport r = CheckReport::make(id, equation, relation_residual(lhs, rhs, sector), tolerance);
  r.dim = sector.space().dim();
  r.sector_max_occupation = sector.max_occupation();
  r.margin = sector.margin();
  r.eval_cutoff = sector.space().cutoff();
  r.sector_size = sector.size();
  return r;
}

}  // namespace qosc
