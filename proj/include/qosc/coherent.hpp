#pragma once

#include <stdexcept>
#include <vector>

#include "qosc/check_report.hpp"
#include "qosc/fock_space.hpp"
#include "qosc/qparam.hpp"
#include "qosc/state_vector.hpp"

namespace qosc {

/// Raised when the truncated basis cannot hold a coherent state to the
/// requested tail tolerance; the message carries the computed tail bound.
struct InsufficientCutoffError : std::runtime_error {
  explicit InsufficientCutoffError(const std::string& what, double bound)
      : std::runtime_error(what), tail_bound(bound) {}
  double tail_bound;
};

/// Mode amplitudes (z_1, ..., z_n) of a coherent state; every |z_i|^2 must
/// lie inside the convergence disk |z_i|^2 < radius.
struct CoherentParams {
  std::vector<Complex> z;
  QParam qp;

  CoherentParams(std::vector<Complex> amplitudes, QParam param);
};

enum class CoherentNormalization {
  normalized,  ///< c = prod_i exp_q(|z_i|^2)^(-1/2); unit norm
  bare,        ///< c = 1; the raw generating-series coefficients
  as_printed,  ///< c = prod_i exp_q(|z_i|^2); kept for documenting that this
               ///< choice does not normalize the state
};

/// Coherent state with coefficients c * prod_i z_i^(n_i)/sqrt([n_i]!).
/// For the normalizing conventions, the dropped tail (norm^2 outside the
/// cutoff box) is bounded a priori and must stay below tail_tol.
StateVector coherent_state(const CoherentParams& params, const FockSpace& space,
                           CoherentNormalization normalization = CoherentNormalization::normalized,
                           double tail_tol = 1e-12);

/// Residual of a_i|z> = z_i |z_1,..,z_i, sqrt(q) z_(i+1),.., sqrt(q) z_n>,
/// compared on the generating (bare) coefficient family over total quanta
/// <= cutoff - 1. On unit-normalized states the two sides differ by the
/// known factor prod_{k>i} (1 - (1-q)|z_k|^2)^(1/2); the report notes it.
CheckReport check_eigen_relation(int mode, const CoherentParams& params, const FockSpace& space,
                                 double tolerance = 1e-10);

/// <z|w> of normalized truncated coherent states.
Complex coherent_overlap(const CoherentParams& zp, const CoherentParams& wp,
                         const FockSpace& space, double tail_tol = 1e-12);

struct CompletenessConfig {
  double radial_tol = 1e-12;  ///< Jackson-sum truncation
  int margin = -1;            ///< sector margin; -1 means cutoff/2
  bool printed_measure = false;  ///< use the 1/pi^2 prefactor instead of 1/pi^n
  double tolerance = 1e-8;    ///< acceptance threshold on the resolved identity
};

/// Resolves the identity from coherent-state projectors: exact angular
/// integration per mode (phase orthogonality kills off-diagonal elements)
/// and radial Jackson quadrature per mode over r_i = |z_i|^2. Reports the
/// max deviation |(M_resolved - I)_(nu,nu)| over the sector.
CheckReport completeness_check(const FockSpace& space, const QParam& qp,
                               const CompletenessConfig& cfg = {});

}  // namespace qosc
