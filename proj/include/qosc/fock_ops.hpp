#pragma once

#include "qosc/check_report.hpp"
#include "qosc/fock_space.hpp"
#include "qosc/operator_matrix.hpp"
#include "qosc/qparam.hpp"
#include "qosc/state_vector.hpp"

namespace qosc {

/// Annihilator a_i on the truncated basis:
///   a_i|n_1..n_n> = sqrt(q^(sum_{k>i} n_k) [n_i]) |.., n_i - 1, ..>,
/// with a_i|..,0,..> = 0. Exactly one nonzero per column with n_i >= 1.
OperatorMatrix build_annihilator(int mode, const FockSpace& space, const QParam& qp);

/// Creator a†_i, the conjugate transpose of a_i. Transitions that would
/// exceed the cutoff are dropped (truncation).
OperatorMatrix build_creator(int mode, const FockSpace& space, const QParam& qp);

/// Number operator N_i (diagonal, eigenvalue n_i).
OperatorMatrix build_number(int mode, const FockSpace& space);

/// Scale operator Q_i = q^(N_i) (diagonal, eigenvalue q^(n_i)).
OperatorMatrix build_scale(int mode, const FockSpace& space, const QParam& qp);

/// Tail product Q_i Q_(i+1) ... Q_n; mode = n_modes+1 yields the identity
/// (empty product).
OperatorMatrix build_scale_product(int mode, const FockSpace& space, const QParam& qp);

/// Fock state by repeated creation on the ground state:
///   (a†_n)^(n_n) ... (a†_1)^(n_1) / sqrt([n_1]!...[n_n]!) |0..0>,
/// evaluated with the actual creator matrices; reproduces the basis unit
/// vector up to rounding, which doubles as a consistency check of the
/// representation's ordering and scaling conventions.
StateVector build_fock_state(const MultiIndex& occ, const FockSpace& space, const QParam& qp);

/// Max over sector columns of the sector-row-restricted column 2-norm of
/// (lhs - rhs). The returned report carries the residual; id/equation/
/// tolerance are filled by the caller.
double relation_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs,
                         const SafeSector& sector);

/// relation_residual wrapped in a CheckReport.
CheckReport check_relation(const std::string& id, const std::string& equation,
                           const OperatorMatrix& lhs, const OperatorMatrix& rhs,
                           const SafeSector& sector, double tolerance);

}  // namespace qosc
