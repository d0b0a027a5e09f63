#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qosc/coherent.hpp"
#include "qosc/fock_ops.hpp"
#include "qosc/qfunc.hpp"
#include "test_util.hpp"

using namespace qosc;
using qosc::test::kQGrid;

namespace {

double oracle_q_number(int k, double q) {
  double acc = 0.0;
  double p = 1.0;
  for (int j = 0; j < k; ++j) {
    acc += p;
    p *= q;
  }
  return acc;
}

double oracle_q_factorial(int m, double q) {
  double acc = 1.0;
  for (int k = 1; k <= m; ++k) acc *= oracle_q_number(k, q);
  return acc;
}

// Plain summation of sum_m t^m / [m]! over the truncated range.
Complex oracle_mode_sum(Complex t, double q, int terms) {
  Complex acc(0.0);
  Complex num(1.0);
  for (int m = 0; m < terms; ++m) {
    acc += num / oracle_q_factorial(m, q);
    num *= t;
  }
  return acc;
}

// Sampling domain for random coherent amplitudes: far enough inside the
// convergence disk that cutoff 30 holds the tail below 1e-12 for every q
// in the grid.
Complex sample_amplitude(std::mt19937_64& gen, const QParam& qp) {
  const double rmax = std::min(0.35 * qp.radius(), 1.2);
  return qosc::test::random_in_disk(gen, std::sqrt(rmax));
}

constexpr int kPropertyCutoff = 30;

}  // namespace

TEST_CASE("coherent state at z = 0 is the ground basis state") {
  const QParam qp(0.5);
  const FockSpace space(2, 6);
  const CoherentParams params({Complex(0.0), Complex(0.0)}, qp);
  for (const auto normalization :
       {CoherentNormalization::normalized, CoherentNormalization::bare}) {
    const StateVector s = coherent_state(params, space, normalization);
    CHECK(s[0] == Complex(1.0));
    for (std::int64_t k = 1; k < space.dim(); ++k) CHECK(s[k] == Complex(0.0));
  }
}

TEST_CASE("single-mode coefficients match the closed form") {
  const QParam qp(0.5);
  const FockSpace space(1, 14);
  const CoherentParams params({Complex(0.5)}, qp);
  const StateVector s = coherent_state(params, space);

  // c = exp_q(|z|^2)^(-1/2), coefficients c z^m / sqrt([m]!).
  const double c = 1.0 / std::sqrt(q_exp_product(Complex(0.25), qp, 1e-15).real());
  for (int m = 0; m <= 14; ++m) {
    const double expected = c * std::pow(0.5, m) / std::sqrt(oracle_q_factorial(m, 0.5));
    CHECK(std::abs(s[m] - Complex(expected)) < 1e-13);
  }
  CHECK(std::abs(s.norm() - 1.0) < 1e-10);

  // At cutoff 12 the dropped tail is ~7e-12: inside the 1e-10 norm claim
  // but outside the strict 1e-12 default precondition.
  const FockSpace smaller(1, 12);
  CHECK_THROWS_AS(coherent_state(params, smaller), InsufficientCutoffError);
  const StateVector loose = coherent_state(params, smaller, CoherentNormalization::normalized,
                                           /*tail_tol=*/1e-10);
  CHECK(std::abs(loose.norm() - 1.0) < 1e-10);
}

TEST_CASE("two-mode normalization against the direct summation oracle") {
  const QParam qp(0.5);
  const FockSpace space(2, 14);
  const CoherentParams params({Complex(0.3), Complex(0.0, 0.4)}, qp);
  const StateVector s = coherent_state(params, space);
  CHECK(std::abs(s.norm() - 1.0) < 1e-10);

  // Oracle: <z|z> = |c|^2 * prod_i sum_m |z_i|^(2m) / [m]!.
  const double full = oracle_mode_sum(Complex(0.09), 0.5, 40).real() *
                      oracle_mode_sum(Complex(0.16), 0.5, 40).real();
  const StateVector bare = coherent_state(params, space, CoherentNormalization::bare);
  CHECK(std::abs(bare.norm() * bare.norm() - full) < 1e-10);
}

TEST_CASE("normalization holds across random amplitudes") {
  for (const double q : kQGrid) {
    const QParam qp(q);
    for (int modes = 1; modes <= 3; ++modes) {
      const FockSpace space(modes, kPropertyCutoff);
      auto gen = qosc::test::rng(1000 + modes);
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<Complex> z(static_cast<size_t>(modes));
        for (auto& zi : z) zi = sample_amplitude(gen, qp);
        const StateVector s = coherent_state(CoherentParams(z, qp), space);
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("as-printed normalization demonstrably fails to normalize") {
  const QParam qp(0.5);
  const FockSpace space(1, 14);
  const CoherentParams params({Complex(0.5)}, qp);
  const StateVector s = coherent_state(params, space, CoherentNormalization::as_printed);
  // <z|z> = exp_q(|z|^2)^3 under the printed convention.
  const double expq = q_exp_product(Complex(0.25), qp, 1e-15).real();
  CHECK(std::abs(s.norm() * s.norm() - expq * expq * expq) < 1e-10);
  CHECK(std::abs(s.norm() - 1.0) > 0.1);
}

TEST_CASE("domain and cutoff violations are rejected") {
  const QParam qp(0.5);
  CHECK_THROWS_AS(CoherentParams({Complex(1.5)}, qp), std::domain_error);  // |z|^2 = 2.25 >= 2
  const FockSpace space(1, 3);
  // |z|^2 = 1.69 close to the radius: cutoff 3 cannot hold the tail.
  CHECK_THROWS_AS(coherent_state(CoherentParams({Complex(1.3)}, qp), space),
                  InsufficientCutoffError);
  try {
    coherent_state(CoherentParams({Complex(1.3)}, qp), space);
  } catch (const InsufficientCutoffError& e) {
    CHECK(e.tail_bound > 0.0);
  }
  // mode-count mismatch
  CHECK_THROWS_AS(coherent_state(CoherentParams({Complex(0.1), Complex(0.1)}, qp), space),
                  std::invalid_argument);
}

TEST_CASE("eigen-relation: trivial, pinned and random samples") {
  const QParam qp(0.5);

  {
    const FockSpace space(2, 8);
    const CheckReport r =
        check_eigen_relation(1, CoherentParams({Complex(0.0), Complex(0.0)}, qp), space);
    CHECK(r.max_residual == 0.0);
    CHECK(r.pass);
  }
  {
    // Single mode: ordinary q-coherent eigenstate of the annihilator.
    const FockSpace space(1, 20);
    const CheckReport r = check_eigen_relation(1, CoherentParams({Complex(0.5)}, qp), space);
    CHECK(r.max_residual < 1e-10);
  }
  {
    // Three modes, rescaled tail (0.2, sqrt(q) 0.3, sqrt(q) 0.4).
    const FockSpace space(3, 10);
    const CheckReport r = check_eigen_relation(
        1, CoherentParams({Complex(0.2), Complex(0.3), Complex(0.4)}, qp), space);
    CHECK(r.max_residual < 1e-10);
  }

  for (const double q : kQGrid) {
    const QParam p(q);
    for (int modes = 1; modes <= 3; ++modes) {
      const FockSpace space(modes, kPropertyCutoff);
      auto gen = qosc::test::rng(77 + modes);
      for (int rep = 0; rep < 8; ++rep) {
        std::vector<Complex> z(static_cast<size_t>(modes));
        for (auto& zi : z) zi = sample_amplitude(gen, p);
        for (int i = 1; i <= modes; ++i) {
          CHECK(check_eigen_relation(i, CoherentParams(z, p), space).max_residual < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("overlap factorizes over modes") {
  for (const double q : kQGrid) {
    const QParam qp(q);
    const FockSpace space(2, kPropertyCutoff);
    auto gen = qosc::test::rng(555);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<Complex> z{sample_amplitude(gen, qp), sample_amplitude(gen, qp)};
      std::vector<Complex> w{sample_amplitude(gen, qp), sample_amplitude(gen, qp)};
      const Complex overlap =
          coherent_overlap(CoherentParams(z, qp), CoherentParams(w, qp), space);

      double cz = 1.0, cw = 1.0;
      Complex product(1.0);
      for (int i = 0; i < 2; ++i) {
        cz *= oracle_mode_sum(Complex(std::norm(z[static_cast<size_t>(i)])), q, 60).real();
        cw *= oracle_mode_sum(Complex(std::norm(w[static_cast<size_t>(i)])), q, 60).real();
        product *= oracle_mode_sum(std::conj(z[static_cast<size_t>(i)]) * w[static_cast<size_t>(i)],
                                   q, 60);
      }
      const Complex expected = product / std::sqrt(cz * cw);
      CHECK(std::abs(overlap - expected) < 1e-10);
    }
  }
}

TEST_CASE("completeness: resolved identity on safe sectors") {
  {
    const QParam qp(0.5);
    const CheckReport r = completeness_check(FockSpace(1, 8), qp, {.margin = 4});
    CHECK(r.max_residual < 1e-8);
    CHECK(r.pass);
  }
  {
    const QParam qp(0.5);
    const CheckReport r = completeness_check(FockSpace(2, 6), qp, {.margin = 3});
    CHECK(r.max_residual < 1e-8);
  }
  for (const double q : kQGrid) {
    const QParam qp(q);
    for (int modes = 1; modes <= 2; ++modes) {
      for (int cutoff : {6, 8}) {
        const CheckReport r = completeness_check(FockSpace(modes, cutoff), qp, {});
        CHECK(r.max_residual < 1e-8);
      }
    }
  }
}

TEST_CASE("completeness: full numerical quadrature oracle for one mode") {
  // Independent route: resolve the identity by outer products of bare
  // truncated coherent vectors on an explicit (radial Jackson) x (angular
  // trapezoid) grid. The angular rule is exact for the finite Fourier
  // content, so off-diagonals must vanish to rounding.
  const QParam qp(0.5);
  const int cutoff = 8;
  const FockSpace space(1, cutoff);
  const int n_angles = 2 * cutoff + 3;
  const double radius = qp.radius();
  const double pi = 3.14159265358979323846;

  std::vector<std::vector<Complex>> resolved(
      static_cast<size_t>(space.dim()), std::vector<Complex>(static_cast<size_t>(space.dim())));

  // Test-local bare coefficients z^m/sqrt([m]!); also valid on the boundary
  // grid point |z|^2 = radius, where the normalized state does not exist.
  const auto bare_vector = [&](Complex z) {
    StateVector psi(space.dim());
    Complex num(1.0);
    for (int m = 0; m <= cutoff; ++m) {
      psi[m] = num / std::sqrt(oracle_q_factorial(m, qp.q()));
      num *= z;
    }
    return psi;
  };

  double qk = 1.0;
  for (int k = 0; k < 2000; ++k) {
    const double r = radius * qk;
    const double w_radial = radius * qp.one_minus_q() * qk;
    const double weight = q_exp_product_inverse(Complex(qp.q() * r), qp, 1e-15).real();
    if (k > 5 && w_radial * weight < 1e-14) break;
    for (int j = 0; j < n_angles; ++j) {
      const double theta = 2.0 * pi * j / n_angles;
      const Complex z = std::sqrt(r) * Complex(std::cos(theta), std::sin(theta));
      const StateVector psi = bare_vector(z);
      const double measure = w_radial * 0.5 * (2.0 * pi / n_angles) * weight / pi;
      for (std::int64_t a = 0; a < space.dim(); ++a) {
        for (std::int64_t b = 0; b < space.dim(); ++b) {
          resolved[static_cast<size_t>(a)][static_cast<size_t>(b)] +=
              measure * psi[a] * std::conj(psi[b]);
        }
      }
    }
    qk *= qp.q();
  }

  const SafeSector sector = SafeSector::with_margin(space, 4);
  for (const std::int64_t a : sector.members()) {
    CHECK(std::abs(resolved[static_cast<size_t>(a)][static_cast<size_t>(a)] - 1.0) < 1e-8);
  }
  for (std::int64_t a = 0; a < space.dim(); ++a) {
    for (std::int64_t b = 0; b < space.dim(); ++b) {
      if (a != b) {
        CHECK(std::abs(resolved[static_cast<size_t>(a)][static_cast<size_t>(b)]) < 1e-10);
      }
    }
  }
}

TEST_CASE("printed 1/pi^2 measure fails off n = 2 and coincides at n = 2") {
  const QParam qp(0.5);
  const CheckReport one_mode =
      completeness_check(FockSpace(1, 8), qp, {.printed_measure = true});
  CHECK_FALSE(one_mode.pass);
  const CheckReport two_modes =
      completeness_check(FockSpace(2, 6), qp, {.printed_measure = true});
  CHECK(two_modes.pass);
  const CheckReport corrected = completeness_check(FockSpace(1, 8), qp, {});
  CHECK(corrected.pass);
}

TEST_CASE("completeness survives q near 1") {
  const QParam qp(0.999);
  const CheckReport r = completeness_check(FockSpace(1, 8), qp, {.margin = 4});
  CHECK(r.max_residual < 1e-8);
}
