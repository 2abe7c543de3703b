#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "walks.hpp"
#include "walkspectra/lattice.hpp"

using namespace walkspectra;

TEST_CASE("lattice points add, negate and order lexicographically") {
  const LatticePoint a{1, -2}, b{0, 5};
  CHECK(a + b == LatticePoint{1, 3});
  CHECK(a - b == LatticePoint{1, -7});
  CHECK(-a == LatticePoint{-1, 2});
  CHECK(a * 3 == LatticePoint{3, -6});
  CHECK(b < a);
  CHECK(LatticePoint(2).is_zero());
  CHECK(LatticePoint::unit(3, 1, -1) == LatticePoint{0, -1, 0});
  CHECK_THROWS_AS(a + LatticePoint{1}, DimensionError);
}

TEST_CASE("operator construction rejects malformed input") {
  CHECK_THROWS_AS(PeriodicOperator(1, 2, {}), MalformedOperator);
  CHECK_THROWS_AS(PeriodicOperator(1, 2, {{LatticePoint{1, 0}, CMatrix::Identity(2, 2)}}),
                  MalformedOperator);
  CHECK_THROWS_AS(PeriodicOperator(1, 2, {{LatticePoint{1}, CMatrix::Identity(3, 3)}}),
                  MalformedOperator);
  CHECK_THROWS_AS(PeriodicOperator(0, 1, {{LatticePoint{}, CMatrix::Identity(1, 1)}}),
                  MalformedOperator);
}

TEST_CASE("reference walks pass the unitarity gate") {
  for (const auto &op : {walks::hadamard(), walks::grover(), walks::constant_coin(),
                         walks::pure_shift()}) {
    const auto r = validate_unitarity(op, 1e-12);
    CHECK(r.passed);
    CHECK(r.max_residual <= 1e-12);
  }
}

TEST_CASE("unitarity gate covers the difference set and flags perturbed coins") {
  const auto op = walks::grover();
  const auto r = validate_unitarity(op);
  // S - S for the four unit shifts: 0, +-2e_i and the four diagonals.
  CHECK(r.per_gamma.size() == 9);

  auto steps = op.steps();
  steps.begin()->second *= 1.01;
  const auto bad = validate_unitarity(PeriodicOperator(2, 4, steps), 1e-10);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_residual > 1e-3);
}

TEST_CASE("unitarity report agrees with the symbol at random torus points") {
  std::mt19937_64 rng(11);
  auto steps = walks::hadamard().steps();
  steps.begin()->second(0, 1) += 0.05;
  const PeriodicOperator op(1, 2, steps);
  const double reported = validate_unitarity(op).max_residual;
  double sampled = 0.0;
  for (int i = 0; i < 400; ++i) {
    const auto z = oracle::random_torus_point(1, rng);
    const CMatrix s = oracle::symbol(op, z);
    const CMatrix dev = s.adjoint() * s - CMatrix::Identity(2, 2);
    sampled = std::max(sampled, dev.cwiseAbs().maxCoeff());
  }
  // Each Fourier coefficient of U^*U - I is bounded by its sup norm.
  CHECK(reported > 0.0);
  CHECK(reported <= 2.0 * sampled + 1e-12);
}

TEST_CASE("symbol and its theta derivative match the coin table") {
  std::mt19937_64 rng(3);
  const auto op = walks::grover();
  for (int i = 0; i < 50; ++i) {
    const auto z = oracle::random_torus_point(2, rng);
    CHECK((op.symbol_at(z) - oracle::symbol(op, z)).cwiseAbs().maxCoeff() < 1e-14);
    const double h = 1e-6;
    for (std::size_t axis = 0; axis < 2; ++axis) {
      auto zp = z, zm = z;
      zp[axis] *= std::polar(1.0, h);
      zm[axis] *= std::polar(1.0, -h);
      const CMatrix fd = (oracle::symbol(op, zp) - oracle::symbol(op, zm)) / (2 * h);
      CHECK((op.symbol_theta_derivative(z, axis) - fd).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("adjoint symbol is the pointwise conjugate transpose") {
  std::mt19937_64 rng(5);
  for (const auto &op : {walks::hadamard(), walks::grover()}) {
    const auto adj = op.adjoint();
    for (int i = 0; i < 20; ++i) {
      const auto z = oracle::random_torus_point(op.dim(), rng);
      const CMatrix diff = adj.symbol_at(z) - op.symbol_at(z).adjoint();
      CHECK(diff.cwiseAbs().maxCoeff() < 1e-14);
    }
    const auto back = adj.adjoint();
    CHECK(back.steps().size() == op.steps().size());
    for (const auto &[a, c] : back.steps())
      CHECK((c - op.coin(a)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("step extents") {
  const auto op = walks::grover();
  CHECK(op.min_step() == std::vector<int>{-1, -1});
  CHECK(op.max_step() == std::vector<int>{1, 1});
  CHECK(op.step_radius() == 1);
  CHECK(walks::pure_shift().min_step() == std::vector<int>{1});
}

TEST_CASE("lattice state bookkeeping") {
  LatticeState w(2, 2);
  w.set({1, 2}, walks::basis(2, 0));
  w.add({1, 2}, walks::basis(2, 1));
  w.set({-3, 0}, CVector::Zero(2));
  CHECK(w.support_size() == 2);
  CHECK(w.norm_squared() == doctest::Approx(2.0));
  const auto [lo, hi] = w.bounding_box();
  CHECK(lo == std::vector<int>{-3, 0});
  CHECK(hi == std::vector<int>{1, 2});
  w.prune();
  CHECK(w.support_size() == 1);
  const auto t = w.translated({-1, -2});
  CHECK(probability(t, LatticePoint(2)) == doctest::Approx(2.0));
  CHECK(w.at({7, 7}).norm() == 0.0);
  CHECK_THROWS_AS(w.set({1}, walks::basis(2, 0)), DimensionError);
  CHECK_THROWS_AS(w.set({0, 0}, walks::basis(3, 0)), DimensionError);
}

TEST_CASE("direct evolution matches a dense-array walk") {
  std::mt19937_64 rng(17);
  for (const auto &op : {walks::hadamard(), walks::grover()}) {
    const std::size_t d = op.dim();
    const auto dc = static_cast<Eigen::Index>(op.coin_dim());
    LatticeState w(d, op.coin_dim());
    oracle::DenseWalk dense(op, 20);
    for (int s = 0; s < 4; ++s) {
      LatticePoint x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<int>(rng() % 5) - 2;
      const CVector v = oracle::random_unit(dc, rng);
      w.add(x, v);
    }
    for (const auto &[x, v] : w.amplitudes()) dense.set(x, v);
    for (int n = 1; n <= 12; ++n) {
      w = apply_direct(op, w);
      dense.step();
      double worst = 0.0;
      for (std::size_t k = 0; k < dense.sites(); ++k) {
        const LatticePoint x = dense.site(k);
        worst = std::max(worst, (w.at(x) - dense.at(x)).cwiseAbs().maxCoeff());
      }
      CHECK(worst < 1e-13);
      CHECK(w.norm_squared() == doctest::Approx(dense.total()).epsilon(1e-13));
    }
  }
}

TEST_CASE("hadamard walk from delta_0 e1 after two steps") {
  // U(delta_0 e1): site -1 gets (1,0)/sqrt2, site 1 gets (0,1)/sqrt2.
  const auto op = walks::hadamard();
  const auto w1 = evolve_direct(op, walks::delta0(op, walks::basis(2, 0)), 1);
  CHECK(std::abs(w1.at({-1})(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(w1.at({1})(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
  const auto w2 = evolve_direct(op, w1, 1);
  CHECK(probability(w2, {0}) == doctest::Approx(0.5));
  CHECK(probability(w2, {-2}) == doctest::Approx(0.25));
  CHECK(probability(w2, {2}) == doctest::Approx(0.25));
}
