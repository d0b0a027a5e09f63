#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qosc/fock_ops.hpp"
#include "qosc/fock_space.hpp"
#include "qosc/operator_matrix.hpp"
#include "qosc/qfunc.hpp"
#include "test_util.hpp"

using namespace qosc;
using qosc::test::kQGrid;

namespace {

// Test-side oracle: carry (amplitude, occupations) through the defining
// amplitude formulas, with q-numbers from the independent geometric sum.
struct Ket {
  double amp = 1.0;
  MultiIndex occ;
};

double oracle_q_number(int k, double q) {
  double acc = 0.0;
  double p = 1.0;
  for (int j = 0; j < k; ++j) {
    acc += p;
    p *= q;
  }
  return acc;
}

double oracle_tail_pow(const MultiIndex& occ, int mode, double q) {
  double acc = 1.0;
  for (size_t k = static_cast<size_t>(mode); k < occ.size(); ++k) {
    for (int j = 0; j < occ[k]; ++j) acc *= q;
  }
  return acc;
}

Ket oracle_annihilate(int mode, Ket k, double q) {
  const int n = k.occ[static_cast<size_t>(mode - 1)];
  if (n == 0) return {0.0, k.occ};
  k.amp *= std::sqrt(oracle_tail_pow(k.occ, mode, q) * oracle_q_number(n, q));
  k.occ[static_cast<size_t>(mode - 1)] -= 1;
  return k;
}

Ket oracle_create(int mode, Ket k, double q, int cutoff) {
  const int n = k.occ[static_cast<size_t>(mode - 1)];
  if (n == cutoff) return {0.0, k.occ};  // truncation drop
  k.amp *= std::sqrt(oracle_tail_pow(k.occ, mode, q) * oracle_q_number(n + 1, q));
  k.occ[static_cast<size_t>(mode - 1)] += 1;
  return k;
}

MultiIndex random_occ(std::mt19937_64& gen, int modes, int cutoff) {
  std::uniform_int_distribution<int> dist(0, cutoff);
  MultiIndex occ(static_cast<size_t>(modes));
  for (auto& v : occ) v = dist(gen);
  return occ;
}

}  // namespace

TEST_CASE("FockSpace enumeration is a bijection with exact dimension") {
  for (int modes = 1; modes <= 3; ++modes) {
    const FockSpace space(modes, 5);
    std::int64_t expected_dim = 1;
    for (int i = 0; i < modes; ++i) expected_dim *= 6;
    CHECK(space.dim() == expected_dim);
    for (std::int64_t idx = 0; idx < space.dim(); ++idx) {
      const MultiIndex occ = space.decode(idx);
      CHECK(space.encode(occ) == idx);
      for (int m = 1; m <= modes; ++m) {
        CHECK(space.occupation(idx, m) == occ[static_cast<size_t>(m - 1)]);
      }
    }
  }
  CHECK_THROWS_AS(FockSpace(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(FockSpace(2, 0), std::invalid_argument);
  const FockSpace space(2, 5);
  CHECK_THROWS_AS(space.encode({6, 0}), std::out_of_range);
  CHECK_THROWS_AS(space.decode(36), std::out_of_range);
}

TEST_CASE("SafeSector: margin 0 is the full basis, sectors nest") {
  const FockSpace space(2, 5);
  const SafeSector full = SafeSector::with_margin(space, 0);
  CHECK(full.size() == space.dim());
  std::int64_t prev = full.size();
  for (int margin = 1; margin <= 5; ++margin) {
    const SafeSector s = SafeSector::with_margin(space, margin);
    CHECK(s.size() < prev);
    for (const auto idx : s.members()) {
      CHECK(SafeSector::with_margin(space, margin - 1).member(idx));
    }
    prev = s.size();
  }
  CHECK_THROWS_AS(SafeSector::with_margin(space, 6), std::invalid_argument);
}

TEST_CASE("annihilator: pinned amplitudes and ground-state kill") {
  const QParam qp(0.5);
  const FockSpace space(2, 5);
  const OperatorMatrix a1 = build_annihilator(1, space, qp);

  // a_1|1,0> = |0,0>
  CHECK(a1.entry(space.encode({0, 0}), space.encode({1, 0})) == Complex(1.0));
  // a_1|1,1> = sqrt(q^(n_2) [1]) |0,1> = sqrt(0.5)|0,1>
  CHECK(std::abs(a1.entry(space.encode({0, 1}), space.encode({1, 1})) -
                 Complex(std::sqrt(0.5))) < 1e-15);
  // ground-state column is zero
  for (std::int64_t r = 0; r < space.dim(); ++r) {
    CHECK(a1.entry(r, space.encode({0, 0})) == Complex(0.0));
  }
  // exactly one nonzero per column with n_1 >= 1
  CHECK(a1.nnz() == space.dim() - 6);

  CHECK_THROWS_AS(build_annihilator(3, space, qp), std::out_of_range);
  CHECK_THROWS_AS(build_annihilator(0, space, qp), std::out_of_range);
}

TEST_CASE("creator: pinned amplitudes, cutoff drop, adjoint equality") {
  const QParam qp(0.5);
  const FockSpace space(2, 5);
  const OperatorMatrix adag1 = build_creator(1, space, qp);
  const OperatorMatrix adag2 = build_creator(2, space, qp);

  // adag_2|0,0> = |0,1>
  CHECK(adag2.entry(space.encode({0, 1}), space.encode({0, 0})) == Complex(1.0));
  // adag_1|M,0> = 0 (truncation drop)
  for (std::int64_t r = 0; r < space.dim(); ++r) {
    CHECK(adag1.entry(r, space.encode({5, 0})) == Complex(0.0));
  }
  // exact adjoint pairing
  CHECK(adag1 == build_annihilator(1, space, qp).adjoint());
  CHECK(build_annihilator(1, space, qp) == adag1.adjoint());
}

TEST_CASE("number / scale / scale-product diagonals") {
  const QParam qp(0.5);
  const FockSpace space(2, 5);

  CHECK(build_number(2, space).entry(space.encode({3, 5}), space.encode({3, 5})) ==
        Complex(5.0));
  CHECK(std::abs(build_scale(1, space, qp).entry(space.encode({2, 0}), space.encode({2, 0})) -
                 Complex(0.25)) < 1e-16);
  // scale_product(1)|1,1> = q^(n_1+n_2)|1,1> = 0.25|1,1>
  CHECK(std::abs(build_scale_product(1, space, qp).entry(space.encode({1, 1}),
                                                         space.encode({1, 1})) -
                 Complex(0.25)) < 1e-16);
  // empty product convention
  CHECK(build_scale_product(3, space, qp) == OperatorMatrix::identity(space.dim()));
  CHECK_THROWS_AS(build_scale_product(4, space, qp), std::out_of_range);

  // number and scale are real diagonal
  build_number(1, space).for_each_entry([](std::int64_t r, std::int64_t c, Complex v) {
    CHECK(r == c);
    CHECK(v.imag() == 0.0);
  });
  build_scale(2, space, qp).for_each_entry([](std::int64_t r, std::int64_t c, Complex v) {
    CHECK(r == c);
    CHECK(v.imag() == 0.0);
  });
}

TEST_CASE("matrix action matches the amplitude oracle on random states") {
  auto gen = qosc::test::rng(4242);
  for (const double q : kQGrid) {
    const QParam qp(q);
    for (int modes = 1; modes <= 3; ++modes) {
      const FockSpace space(modes, 5);
      std::vector<OperatorMatrix> a, adag;
      for (int m = 1; m <= modes; ++m) {
        a.push_back(build_annihilator(m, space, qp));
        adag.push_back(build_creator(m, space, qp));
      }
      for (int rep = 0; rep < 40; ++rep) {
        const MultiIndex occ = random_occ(gen, modes, 5);
        const std::int64_t col = space.encode(occ);
        for (int m = 1; m <= modes; ++m) {
          const Ket down = oracle_annihilate(m, {1.0, occ}, q);
          if (down.amp != 0.0) {
            CHECK(std::abs(a[static_cast<size_t>(m - 1)].entry(space.encode(down.occ), col) -
                           Complex(down.amp)) < 1e-14);
          }
          const Ket up = oracle_create(m, {1.0, occ}, q, 5);
          if (up.amp != 0.0) {
            CHECK(std::abs(adag[static_cast<size_t>(m - 1)].entry(space.encode(up.occ), col) -
                           Complex(up.amp)) < 1e-14);
          }
        }
      }
    }
  }
}

TEST_CASE("oscillator algebra relations hold on safe sectors") {
  const double tol = 1e-12;
  for (const double q : kQGrid) {
    const QParam qp(q);
    const double sq = std::sqrt(q);
    for (int modes = 1; modes <= 3; ++modes) {
      const FockSpace space(modes, 5);
      const SafeSector margin2 = SafeSector::with_margin(space, 2);
      const SafeSector margin1 = SafeSector::with_margin(space, 1);
      const OperatorMatrix id = OperatorMatrix::identity(space.dim());

      std::vector<OperatorMatrix> a, adag, num;
      for (int m = 1; m <= modes; ++m) {
        a.push_back(build_annihilator(m, space, qp));
        adag.push_back(build_creator(m, space, qp));
        num.push_back(build_number(m, space));
      }
      const auto A = [&](int m) -> const OperatorMatrix& { return a[static_cast<size_t>(m - 1)]; };
      const auto Adag = [&](int m) -> const OperatorMatrix& {
        return adag[static_cast<size_t>(m - 1)];
      };
      const auto N = [&](int m) -> const OperatorMatrix& {
        return num[static_cast<size_t>(m - 1)];
      };

      for (int i = 1; i <= modes; ++i) {
        for (int j = i + 1; j <= modes; ++j) {
          // creator exchange: adag_i adag_j = sqrt(q) adag_j adag_i
          CHECK(relation_residual(Adag(i) * Adag(j), Complex(sq) * (Adag(j) * Adag(i)),
                                  margin2) < tol);
          // annihilator exchange: a_i a_j = q^(-1/2) a_j a_i
          CHECK(relation_residual(A(i) * A(j), Complex(1.0 / sq) * (A(j) * A(i)), margin2) <
                tol);
        }
        for (int j = 1; j <= modes; ++j) {
          if (i == j) continue;
          // cross-mode: a_i adag_j = sqrt(q) adag_j a_i, both orders of (i, j)
          CHECK(relation_residual(A(i) * Adag(j), Complex(sq) * (Adag(j) * A(i)), margin2) <
                tol);
          // number commutators, off-diagonal: [N_i, a_j] = 0
          CHECK(relation_residual(N(i) * A(j), A(j) * N(i), margin2) < tol);
        }
        // [N_i, a_i] = -a_i and [N_i, adag_i] = adag_i
        CHECK(relation_residual(N(i) * A(i) - A(i) * N(i), Complex(-1.0) * A(i), margin2) < tol);
        CHECK(relation_residual(N(i) * Adag(i) - Adag(i) * N(i), Adag(i), margin2) < tol);

        // deformed commutator: a_i adag_i = 1 + q adag_i a_i + (q-1) sum_{k>i} adag_k a_k
        OperatorMatrix rhs = id + Complex(q) * (Adag(i) * A(i));
        for (int k = i + 1; k <= modes; ++k) {
          rhs = rhs + Complex(q - 1.0) * (Adag(k) * A(k));
        }
        CHECK(relation_residual(A(i) * Adag(i), rhs, margin2) < tol);

        // scale-product commutator: [a_i, adag_i] = Q_i ... Q_n, margin 1
        CHECK(relation_residual(A(i) * Adag(i) - Adag(i) * A(i),
                                build_scale_product(i, space, qp), margin1) < tol);

        // number-mode identity on the full basis, 1e-14:
        // adag_i a_i = q^(sum_{k>i} N_k) [N_i]
        std::vector<Complex> diag(static_cast<size_t>(space.dim()));
        for (std::int64_t idx = 0; idx < space.dim(); ++idx) {
          diag[static_cast<size_t>(idx)] =
              qp.ipow(space.tail_sum(idx, i)) *
              q_number(static_cast<double>(space.occupation(idx, i)), qp);
        }
        CHECK(relation_residual(Adag(i) * A(i), OperatorMatrix::diagonal(std::move(diag)),
                                SafeSector::with_margin(space, 0)) < 1e-14);
      }
    }
  }
}

TEST_CASE("q -> 1 recovers ordinary boson relations") {
  const QParam qp(1.0 - 1e-8);
  const FockSpace space(2, 5);
  const SafeSector margin1 = SafeSector::with_margin(space, 1);
  const OperatorMatrix id = OperatorMatrix::identity(space.dim());
  for (int i = 1; i <= 2; ++i) {
    const OperatorMatrix a = build_annihilator(i, space, qp);
    const OperatorMatrix adag = build_creator(i, space, qp);
    CHECK(relation_residual(a * adag - adag * a, id, margin1) < 1e-6);
  }
  const OperatorMatrix a1 = build_annihilator(1, space, qp);
  const OperatorMatrix a2 = build_annihilator(2, space, qp);
  CHECK(relation_residual(a1 * a2, a2 * a1, SafeSector::with_margin(space, 2)) < 1e-6);
}

TEST_CASE("repeated creation reproduces basis unit vectors") {
  const QParam qp(0.5);
  const FockSpace space(2, 5);

  // ground state: exact
  const StateVector ground = build_fock_state({0, 0}, space, qp);
  CHECK(ground[0] == Complex(1.0));
  CHECK(ground.norm() == 1.0);

  for (const MultiIndex& occ : {MultiIndex{1, 1}, MultiIndex{2, 1}, MultiIndex{3, 4}}) {
    const StateVector state = build_fock_state(occ, space, qp);
    StateVector expected(space.dim());
    expected[space.encode(occ)] = Complex(1.0);
    double residual = 0.0;
    for (std::int64_t k = 0; k < space.dim(); ++k) {
      residual = std::max(residual, std::abs(state[k] - expected[k]));
    }
    CHECK(residual < 1e-12);
  }

  CHECK_THROWS_AS(build_fock_state({6, 0}, space, qp), std::out_of_range);
}

TEST_CASE("relation checker basics") {
  const FockSpace space(2, 5);
  const SafeSector sector = SafeSector::with_margin(space, 1);
  const OperatorMatrix id = OperatorMatrix::identity(space.dim());
  CHECK(relation_residual(id, id, sector) == 0.0);
  CHECK_THROWS_AS(relation_residual(id, OperatorMatrix::identity(7), sector),
                  std::invalid_argument);

  const QParam qp(0.5);
  const CheckReport r =
      check_relation("identity-self", "Eq(0)", id, id, sector, 1e-12);
  CHECK(r.pass);
  CHECK(r.sector_size == sector.size());
  CHECK(r.margin == 1);
}
