#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "walks.hpp"
#include "walkspectra/linalg.hpp"
#include "walkspectra/spectra.hpp"

using namespace walkspectra;

TEST_CASE("torus grid indexing is row-major with the last axis fastest") {
  const TorusGrid g(2, 4);
  CHECK(g.size() == 16);
  CHECK(g.multi_index(6) == std::vector<std::size_t>{1, 2});
  CHECK(g.linear_index({3, 1}) == 13);
  const auto z = g.point(6);
  CHECK(std::abs(z[0] - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(z[1] - Complex(-1, 0)) < 1e-15);
  CHECK(TorusGrid::signed_index(2, 4) == 2);
  CHECK(TorusGrid::signed_index(3, 4) == -1);
  CHECK_THROWS(TorusGrid(1, 1));
}

TEST_CASE("unitary eigensolver gives orthonormal bases inside degenerate clusters") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix q = oracle::random_unitary(6, rng);
    CVector phases(6);
    phases << 1.0, 1.0, 1.0, Complex(0, 1), -1.0, std::polar(1.0, 2.5);
    const CMatrix a = q * phases.asDiagonal() * q.adjoint();
    const auto e = decompose_unitary(a, 1e-8);
    CHECK(e.cluster_count == 4);
    CHECK((e.vectors.adjoint() * e.vectors - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(e.residual < 1e-12);
    for (Eigen::Index i = 1; i < 6; ++i) CHECK(std::arg(e.values(i - 1)) <= std::arg(e.values(i)));
  }
}

TEST_CASE("grover detection and certification on a 16x16 grid") {
  const auto op = walks::grover();
  const auto eig = eigen_on_grid(op, TorusGrid(2, 16));
  const auto cands = detect_constant_eigenvalues(eig);
  REQUIRE(cands.size() == 2);
  const bool plus_first = std::abs(cands[0].omega - Complex(1.0)) < 1e-12;
  CHECK(std::abs(cands[plus_first ? 1 : 0].omega - Complex(-1.0)) < 1e-12);
  CHECK(std::abs(cands[plus_first ? 0 : 1].omega - Complex(1.0)) < 1e-12);
  for (const auto &c : cands) {
    CHECK(c.max_grid_deviation <= 1e-10);
    CHECK(certify_eigenvalue(op, c.omega).residual <= 1e-9);
    const auto [lo, hi] = std::minmax_element(c.multiplicity_profile.begin(),
                                              c.multiplicity_profile.end());
    CHECK(*lo == 1);
    CHECK(*hi == 3);
  }
}

TEST_CASE("hadamard has no constant eigenvalue") {
  const auto op = walks::hadamard();
  const auto eig = eigen_on_grid(op, TorusGrid(1, 256));
  CHECK(detect_constant_eigenvalues(eig).empty());
  const auto c = certify_eigenvalue(op, 1.0);
  CHECK_FALSE(c.is_eigenvalue);
  CHECK(std::abs(c.residual - 1.0 / std::sqrt(2.0)) <= 1e-10);
  CHECK_THROWS_AS(certify_eigenvalue(op, 1.1), PreconditionError);
}

TEST_CASE("peeling reproduces the factorisation found by a computer-algebra oracle") {
  const auto ref = oracle::reference()["grover_peel"];
  const auto op = walks::grover();
  const auto chi = char_poly(symbol_matrix(op));
  const auto peel = peel_point_spectrum(chi, {Complex(1.0), Complex(-1.0)});
  REQUIRE(peel.factors.size() == 2);
  CHECK(peel.factors[0].multiplicity == ref["plus_one"].get<std::size_t>());
  CHECK(peel.factors[1].multiplicity == ref["minus_one"].get<std::size_t>());
  CHECK(peel.quotient.degree() == ref["quotient_degree"].get<std::size_t>());
  for (const auto &f : peel.factors)
    for (double r : f.residuals) CHECK(r <= 1e-9);
}

TEST_CASE("analyze_spectrum gates on unitarity") {
  auto steps = walks::hadamard().steps();
  steps.begin()->second *= 1.01;
  CHECK_THROWS_AS(analyze_spectrum(PeriodicOperator(1, 2, steps), TorusGrid(1, 16)),
                  PreconditionError);
}

TEST_CASE("grover spectral report bands") {
  const auto rep = analyze_spectrum(walks::grover(), TorusGrid(2, 16));
  CHECK(rep.certified().size() == 2);
  CHECK(rep.bands.bands.front().size() == 2);
  CHECK(rep.bands.discriminant.has_value());
  // Bands meet the flat eigenvalues at z = (1,1) and (-1,-1).
  CHECK_FALSE(rep.bands.collision_points.empty());
}

TEST_CASE("hadamard band report") {
  const auto rep = analyze_spectrum(walks::hadamard(), TorusGrid(1, 256));
  CHECK(rep.certified().empty());
  REQUIRE(rep.bands.min_abs_discriminant.has_value());
  CHECK(std::abs(*rep.bands.min_abs_discriminant - 2.0) < 1e-9);
  CHECK(rep.bands.collision_points.empty());
  CHECK_FALSE(rep.bands.repeated_factor);
}

TEST_CASE("eigenprojections form a resolution of the identity where the gap is clean") {
  const auto op = walks::grover();
  const TorusGrid grid(2, 24);
  const auto plus = eigenprojection_field(op, grid, 1.0);
  const auto minus = eigenprojection_field(op, grid, -1.0);
  std::size_t checked = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (plus.violated[k] || minus.violated[k]) continue;
    ++checked;
    const CMatrix u = op.symbol_at(grid.point(k));
    const CMatrix &r = plus.r[k];
    CHECK((r * r - r).norm() < 1e-10);
    CHECK((r - r.adjoint()).norm() < 1e-10);
    CHECK((u * r - r).norm() < 1e-9);
    CHECK((r * minus.r[k]).norm() < 1e-10);
    // Band projectors from the remaining two eigenvalues complete the identity.
    const auto e = decompose_unitary(u);
    CMatrix rest = CMatrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
      if (std::abs(e.values(i) - 1.0) > 1e-6 && std::abs(e.values(i) + 1.0) > 1e-6)
        rest += e.vectors.col(i) * e.vectors.col(i).adjoint();
    CHECK((r + minus.r[k] + rest - CMatrix::Identity(4, 4)).norm() < 1e-10);
  }
  CHECK(checked + plus.gap_violations.size() >= grid.size());
  CHECK(plus.min_gap > 0.0);
  CHECK_THROWS_AS(eigenprojection_field(op, grid, std::polar(1.0, 0.123)), PreconditionError);
}

TEST_CASE("contour projections agree with eigenvector projections") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix q = oracle::random_unitary(5, rng);
    CVector ph(5);
    ph << 1.0, 1.0, Complex(0, 1), -1.0, std::polar(1.0, 2.0);
    const CMatrix a = q * ph.asDiagonal() * q.adjoint();
    const CMatrix exact = q.leftCols(2) * q.leftCols(2).adjoint();
    CHECK((contour_projection(a, 1.0, 0.5) - exact).norm() < 1e-10);
  }
}
