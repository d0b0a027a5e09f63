#include "qosc/weyl.hpp"

#include <cmath>
#include <string>

#include "qosc/fock_ops.hpp"
#include "qosc/kernels.hpp"
#include "qosc/qfunc.hpp"

namespace qosc {

namespace {

int resolve_margin(int margin, const FockSpace& space) {
  const int m = margin >= 0 ? margin : space.cutoff() / 2;
  if (m > space.cutoff()) {
    throw std::invalid_argument("margin " + std::to_string(m) + " exceeds cutoff " +
                                std::to_string(space.cutoff()));
  }
  return m;
}

void stamp(CheckReport& r, const FockSpace& declared, const SafeSector& sector) {
  r.dim = declared.dim();
  r.eval_cutoff = sector.space().cutoff();
  r.sector_max_occupation = sector.max_occupation();
  r.margin = declared.cutoff() - sector.max_occupation();
  r.sector_size = sector.size();
}

}  // namespace

WeylParams::WeylParams(std::vector<Complex> s_values, std::vector<Complex> t_values, QParam param)
    : s(std::move(s_values)), t(std::move(t_values)), qp(param) {
  if (s.size() != t.size()) {
    throw std::invalid_argument("WeylParams: s and t must have one entry per mode");
  }
  for (const auto& v : s) {
    if (std::abs(v) > kMaxMagnitude) {
      throw std::domain_error("WeylParams: |s_i| = " + std::to_string(std::abs(v)) +
                              " outside the declared window <= 0.5");
    }
  }
  for (const auto& v : t) {
    if (std::abs(v) > kMaxMagnitude) {
      throw std::domain_error("WeylParams: |t_i| = " + std::to_string(std::abs(v)) +
                              " outside the declared window <= 0.5");
    }
  }
}

QExpOperator qexp_operator(Complex c, const OperatorMatrix& a, const QParam& qp, double tol) {
  QExpOperator result;
  const std::int64_t dim = a.dim();
  const OperatorMatrix scaled = c * a;
  OperatorMatrix term = OperatorMatrix::identity(dim);
  OperatorMatrix acc = term;
  result.terms_used = 1;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = matmul(term, scaled);
    term = linear_combination(Complex(1.0 / q_number(static_cast<double>(k), qp)), term,
                              Complex(0.0), OperatorMatrix(dim));
    if (term.is_zero()) {
      result.nilpotent_stop = true;
      result.op = std::move(acc);
      return result;
    }
    if (term.max_abs() < tol) {
      result.op = std::move(acc);
      return result;
    }
    acc = acc + term;
    ++result.terms_used;
  }
  throw std::runtime_error("qexp_operator: series did not converge within " +
                           std::to_string(kMaxTerms) + " terms");
}

OperatorMatrix polynomial_of_operator(const Polynomial& f, const OperatorMatrix& a) {
  const std::int64_t dim = a.dim();
  if (f.is_zero()) return OperatorMatrix(dim);
  OperatorMatrix acc(dim);
  const OperatorMatrix id = OperatorMatrix::identity(dim);
  for (int k = f.degree(); k >= 0; --k) {
    acc = matmul(acc, a);
    acc = linear_combination(Complex(1.0), acc, f.coefficient(static_cast<size_t>(k)), id);
  }
  return acc;
}

CheckReport check_shift_identity(int mode, const Polynomial& f, const FockSpace& space,
                                 const QParam& qp, int margin, double tolerance) {
  space.require_mode(mode);
  const int required = f.degree() + 1;
  const int m = margin >= 0 ? margin : std::max(required, 0);
  if (m < required) {
    throw std::invalid_argument("check_shift_identity: margin " + std::to_string(m) +
                                " insufficient for degree " + std::to_string(f.degree()));
  }
  const SafeSector sector = SafeSector::with_margin(space, m);

  const OperatorMatrix a = build_annihilator(mode, space, qp);
  const OperatorMatrix adag = build_creator(mode, space, qp);
  const OperatorMatrix tail = build_scale_product(mode + 1, space, qp);

  const OperatorMatrix lhs = matmul(a, polynomial_of_operator(f, adag));
  const OperatorMatrix rhs =
      matmul(polynomial_of_operator(f.with_scaled_argument(qp.q()), adag), a) +
      matmul(polynomial_of_operator(q_derivative(f, qp), adag), tail);

  CheckReport r = check_relation("shift-identity i=" + std::to_string(mode) + " deg=" +
                                     std::to_string(f.degree()),
                                 "Eq(18)", lhs, rhs, sector, tolerance);
  stamp(r, space, sector);
  return r;
}

CheckReport check_power_identity(int mode, Complex t, int power, const FockSpace& space,
                                 const QParam& qp, int margin, double tolerance) {
  space.require_mode(mode);
  if (power < 0) throw std::invalid_argument("check_power_identity: power must be >= 0");
  const int m = resolve_margin(margin, space);
  if (m < power) {
    throw std::invalid_argument("check_power_identity: margin " + std::to_string(m) +
                                " insufficient for power " + std::to_string(power));
  }
  const SafeSector sector = SafeSector::with_margin(space, m);

  const OperatorMatrix a = build_annihilator(mode, space, qp);
  const OperatorMatrix adag = build_creator(mode, space, qp);
  const OperatorMatrix scale_from_mode = build_scale_product(mode, space, qp);
  const OperatorMatrix expt = qexp_operator(t, adag, qp).op;

  OperatorMatrix lhs = expt;
  for (int k = 0; k < power; ++k) lhs = matmul(a, lhs);

  const OperatorMatrix shifted = linear_combination(Complex(1.0), a, t, scale_from_mode);
  OperatorMatrix rhs = expt;
  for (int k = 0; k < power; ++k) rhs = matmul(rhs, shifted);

  CheckReport r = check_relation("power-identity i=" + std::to_string(mode) + " m=" +
                                     std::to_string(power),
                                 "Eq(20)", lhs, rhs, sector, tolerance);
  stamp(r, space, sector);
  return r;
}

CheckReport check_exp_shift_identity(int mode, Complex t, const FockSpace& space,
                                     const QParam& qp, int margin, double tolerance) {
  space.require_mode(mode);
  const int m = resolve_margin(margin, space);
  if (m < 1) {
    throw std::invalid_argument("check_exp_shift_identity: margin must be >= 1");
  }
  const SafeSector sector = SafeSector::with_margin(space, m);

  const OperatorMatrix a = build_annihilator(mode, space, qp);
  const OperatorMatrix adag = build_creator(mode, space, qp);
  const OperatorMatrix tail = build_scale_product(mode + 1, space, qp);

  const OperatorMatrix lhs = matmul(a, qexp_operator(t, adag, qp).op);
  const OperatorMatrix rhs =
      matmul(qexp_operator(t * qp.q(), adag, qp).op, a) +
      t * matmul(qexp_operator(t, adag, qp).op, tail);

  CheckReport r = check_relation("exp-shift i=" + std::to_string(mode), "Eq(19)", lhs, rhs,
                                 sector, tolerance);
  stamp(r, space, sector);
  return r;
}

std::vector<CheckReport> check_weyl_relation(const WeylParams& params, const FockSpace& space,
                                             int margin, double tolerance) {
  if (static_cast<int>(params.s.size()) != space.n_modes()) {
    throw std::invalid_argument("check_weyl_relation: expected one (s, t) pair per mode");
  }
  const QParam& qp = params.qp;
  const int n = space.n_modes();
  const int m = resolve_margin(margin, space);

  // Mixed raising/lowering exponentials leak through the cutoff; evaluate
  // on an enlarged space and compare on the declared sector.
  const int eval_cutoff = std::min(space.cutoff() + m + 4, space.cutoff() + 12);
  const FockSpace eval_space(n, eval_cutoff);
  const SafeSector sector =
      SafeSector::with_max_occupation(eval_space, space.cutoff() - m);

  std::vector<CheckReport> out;

  std::vector<OperatorMatrix> exp_s, exp_t, exp_d;
  exp_s.reserve(static_cast<size_t>(n));
  exp_t.reserve(static_cast<size_t>(n));
  exp_d.reserve(static_cast<size_t>(n));

  for (int i = 1; i <= n; ++i) {
    const Complex s = params.s[static_cast<size_t>(i - 1)];
    const Complex t = params.t[static_cast<size_t>(i - 1)];
    const OperatorMatrix a = build_annihilator(i, eval_space, qp);
    const OperatorMatrix adag = build_creator(i, eval_space, qp);
    const OperatorMatrix scale_tail = build_scale_product(i, eval_space, qp);

    // q-commutation a_i Q_i = q Q_i a_i (exact on the full basis).
    {
      const OperatorMatrix qi = build_scale(i, eval_space, qp);
      CheckReport r = check_relation(
          "mode-scale-q-commutation i=" + std::to_string(i), "Eq(22)", matmul(a, qi),
          Complex(qp.q()) * matmul(qi, a), SafeSector::with_margin(eval_space, 0), 1e-14);
      stamp(r, space, SafeSector::with_margin(eval_space, 0));
      r.sector_max_occupation = eval_cutoff;
      r.margin = 0;
      r.note = "full evaluation basis";
      out.push_back(r);
    }

    const OperatorMatrix es = qexp_operator(s, a, qp).op;
    const OperatorMatrix et = qexp_operator(t, adag, qp).op;
    const OperatorMatrix combined =
        qexp_operator(Complex(1.0), linear_combination(s, a, s * t, scale_tail), qp).op;
    const OperatorMatrix ed = qexp_operator(s * t, scale_tail, qp).op;

    const OperatorMatrix lhs = matmul(es, et);

    CheckReport r21 = check_relation("exp-reordering-combined i=" + std::to_string(i), "Eq(21)",
                                     lhs, matmul(et, combined), sector, tolerance);
    stamp(r21, space, sector);
    out.push_back(r21);

    CheckReport r22 = check_relation("exp-reordering-split i=" + std::to_string(i), "Eq(22)",
                                     lhs, matmul(et, matmul(ed, es)), sector, tolerance);
    stamp(r22, space, sector);
    out.push_back(r22);

    exp_s.push_back(es);
    exp_t.push_back(et);
    exp_d.push_back(ed);
  }

  // Full products over modes, evaluated column-by-column.
  for (const bool ascending : {true, false}) {
    kernels::OperatorExpr lhs, rhs;
    kernels::ExprTerm lterm, rterm;
    for (int k = 0; k < n; ++k) {
      const size_t i = static_cast<size_t>(ascending ? k : n - 1 - k);
      lterm.factors.push_back(&exp_s[i]);
      lterm.factors.push_back(&exp_t[i]);
      rterm.factors.push_back(&exp_t[i]);
      rterm.factors.push_back(&exp_d[i]);
      rterm.factors.push_back(&exp_s[i]);
    }
    lhs.terms.push_back(lterm);
    rhs.terms.push_back(rterm);

    const double residual = kernels::max_masked_column_residual(
        lhs, rhs, eval_space.dim(), sector.members(), sector.mask());
    CheckReport r = CheckReport::make(
        std::string("weyl-product ordering=") + (ascending ? "ascending" : "descending"),
        "Eq(23)", residual, tolerance);
    stamp(r, space, sector);
    r.note = "both sides multiplied in the same mode order";
    out.push_back(r);
  }

  return out;
}

}  // namespace qosc
