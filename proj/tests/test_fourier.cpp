#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "walks.hpp"
#include "walkspectra/fourier.hpp"

using namespace walkspectra;

namespace {

LatticeState random_state(std::size_t d, std::size_t dc, int radius, int sites,
                          std::mt19937_64 &rng) {
  LatticeState w(d, dc);
  for (int s = 0; s < sites; ++s) {
    LatticePoint x(d);
    for (std::size_t i = 0; i < d; ++i)
      x[i] = static_cast<int>(rng() % (2 * radius + 1)) - radius;
    w.add(x, oracle::random_unit(static_cast<Eigen::Index>(dc), rng));
  }
  return w;
}

}  // namespace

TEST_CASE("box layout") {
  auto b = BoxState::centered(2, 3, 1);
  CHECK(b.site_count() == 9);
  CHECK(b.site(0) == LatticePoint{-1, -1});
  CHECK(b.site(1) == LatticePoint{-1, 0});
  CHECK(b.site_index({1, 1}) == 8);
  CHECK_FALSE(b.contains({2, 0}));
  CHECK(b.at({5, 5}).norm() == 0.0);
  const auto g = BoxState::grid_period(1, 1, 6);
  CHECK(g.lo() == std::vector<int>{-2});
  CHECK(g.extent() == std::vector<std::size_t>{6});
}

TEST_CASE("forward transform matches a naive sum") {
  std::mt19937_64 rng(21);
  for (std::size_t d : {1u, 2u}) {
    const auto w = random_state(d, 2, 3, 6, rng);
    const TorusGrid grid(d, 10);
    const auto f = to_fourier(BoxState::from_lattice(w), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto z = grid.point(k);
      CVector ref = CVector::Zero(2);
      for (const auto &[x, v] : w.amplitudes()) ref += oracle::monomial(z, x) * v;
      CHECK((f.value(k) - ref).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("transform round trip and Parseval") {
  std::mt19937_64 rng(22);
  const auto w = random_state(2, 4, 4, 12, rng);
  const TorusGrid grid(2, 12);
  const auto f = to_fourier(BoxState::from_lattice(w), grid);
  CHECK(f.mean_norm_squared() == doctest::Approx(w.norm_squared()).epsilon(1e-13));
  const auto back = from_fourier(f).to_lattice();
  for (const auto &[x, v] : w.amplitudes()) CHECK((back.at(x) - v).norm() < 1e-13);
  double stray = 0.0;
  for (const auto &[x, v] : back.amplitudes())
    if (w.at(x).norm() == 0.0) stray = std::max(stray, v.norm());
  CHECK(stray < 1e-13);
}

TEST_CASE("boxes wider than the grid are rejected") {
  const TorusGrid grid(1, 8);
  CHECK_THROWS_AS(to_fourier(BoxState::centered(1, 1, 4), grid), AliasingError);
  const GridField f(grid, 1);
  CHECK_THROWS_AS(from_fourier(f, {-5}, {9}), AliasingError);
}

TEST_CASE("the transform intertwines U with multiplication by the symbol") {
  std::mt19937_64 rng(23);
  for (const auto &op : {walks::hadamard(), walks::grover()}) {
    const auto w = random_state(op.dim(), op.coin_dim(), 2, 5, rng);
    const auto uw = apply_direct(op, w);
    const TorusGrid grid(op.dim(), 16);
    const auto lo = std::vector<int>(op.dim(), -4);
    const auto ext = std::vector<std::size_t>(op.dim(), 9);
    const auto f = to_fourier(BoxState::from_lattice(w, lo, ext), grid);
    const auto fu = to_fourier(BoxState::from_lattice(uw, lo, ext), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const CVector expect = oracle::symbol(op, grid.point(k)) * f.value(k);
      CHECK((fu.value(k) - expect).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("grid powers equal repeated symbol multiplication") {
  std::mt19937_64 rng(24);
  const auto op = walks::grover();
  const TorusGrid grid(2, 8);
  GridField f(grid, 4);
  for (auto &c : f.data) c = oracle::random_complex(rng);
  const GridPropagator prop(op, grid);
  const auto g = prop.apply(f, 13);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CVector v = f.value(k);
    const CMatrix s = oracle::symbol(op, grid.point(k));
    for (int n = 0; n < 13; ++n) v = s * v;
    CHECK((g.value(k) - v).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("no-aliasing bound") {
  CHECK(no_aliasing_bound(walks::hadamard(), 0, 16) == 33);
  CHECK(no_aliasing_bound(walks::grover(), 2, 10) == 25);
  std::mt19937_64 rng(25);
  const auto w = walks::delta0(walks::hadamard(), walks::basis(2, 0));
  CHECK(support_radius(w) == 0);
  CHECK_THROWS_AS(evolve_box(walks::hadamard(), w, 16, 32), AliasingError);
}

TEST_CASE("fourier evolution equals the dense-array walk") {
  std::mt19937_64 rng(26);
  for (const auto &op : {walks::hadamard(), walks::grover()}) {
    const auto w = random_state(op.dim(), op.coin_dim(), 2, 4, rng);
    oracle::DenseWalk dense(op, 24);
    for (const auto &[x, v] : w.amplitudes()) dense.set(x, v);
    for (std::size_t n = 1; n <= 16; ++n) {
      dense.step();
      const std::size_t grid_n = no_aliasing_bound(op, support_radius(w), n);
      const auto box = evolve_box(op, w, n, grid_n);
      double worst = 0.0;
      for (std::size_t s = 0; s < box.site_count(); ++s) {
        const auto x = box.site(s);
        worst = std::max(worst, (box.at(x) - dense.at(x)).cwiseAbs().maxCoeff());
      }
      CHECK(worst < 1e-12);
      CHECK(std::abs(box.norm_squared() - w.norm_squared()) < 1e-12);
    }
  }
}

TEST_CASE("projections onto distinct eigenvalues are orthogonal") {
  const auto op = walks::grover();
  const TorusGrid grid(2, 32);
  std::mt19937_64 rng(27);
  const auto w = walks::delta0(op, oracle::random_unit(4, rng));
  const auto p1 = project_state(op, w, grid, 1.0, 1e-8);
  const auto m1 = project_state(op, w, grid, -1.0, 1e-8);
  Complex inner(0.0);
  for (std::size_t i = 0; i < p1.data().size(); ++i)
    inner += std::conj(p1.data()[i]) * m1.data()[i];
  CHECK(std::abs(inner) < 1e-12);
  CHECK(p1.norm_squared() + m1.norm_squared() <= w.norm_squared() + 1e-12);

  // 1 is an eigenvalue of the hadamard symbol only at z = +-1.
  const auto had = walks::hadamard();
  const auto field = eigenprojection_field(had, TorusGrid(1, 8), 1.0);
  CHECK(field.gap_violations.size() == 6);
  CHECK_THROWS_AS(project_state(field, walks::delta0(had, walks::basis(2, 0))),
                  PreconditionError);
}
