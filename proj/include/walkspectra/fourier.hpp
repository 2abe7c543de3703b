#ifndef WALKSPECTRA_FOURIER_HPP
#define WALKSPECTRA_FOURIER_HPP

// Dense lattice boxes, torus-grid fields and the DFT between them, symbol
// powering on grids, and spectral projections of states.

#include <cstddef>
#include <vector>

#include "walkspectra/lattice.hpp"
#include "walkspectra/spectra.hpp"

namespace walkspectra {

/// Dense C^D-valued array on the box prod_i [lo_i, lo_i + ext_i - 1].
/// Storage is site-major (last axis fastest) with the coin index innermost.
class BoxState {
public:
  BoxState(std::size_t coin_dim, std::vector<int> lo, std::vector<std::size_t> ext);

  /// [-b, b]^d
  static BoxState centered(std::size_t d, std::size_t coin_dim, int b);
  /// The N^d box whose sites are the signed-wrap representatives of the grid.
  static BoxState grid_period(std::size_t d, std::size_t coin_dim, std::size_t n);
  /// Smallest box holding the support of w (a single site at the origin when w is empty).
  static BoxState from_lattice(const LatticeState &w);
  static BoxState from_lattice(const LatticeState &w, std::vector<int> lo,
                               std::vector<std::size_t> ext);

  std::size_t dim() const { return lo_.size(); }
  std::size_t coin_dim() const { return coin_dim_; }
  const std::vector<int> &lo() const { return lo_; }
  const std::vector<std::size_t> &extent() const { return ext_; }
  std::size_t site_count() const { return sites_; }

  bool contains(const LatticePoint &x) const;
  LatticePoint site(std::size_t s) const;
  std::size_t site_index(const LatticePoint &x) const;

  /// Zero outside the box.
  CVector at(const LatticePoint &x) const;
  void set(const LatticePoint &x, const CVector &v);

  std::vector<Complex> &data() { return data_; }
  const std::vector<Complex> &data() const { return data_; }

  double norm_squared() const;
  /// Sparse copy; sites whose amplitude is exactly zero are omitted.
  LatticeState to_lattice() const;

private:
  std::size_t coin_dim_;
  std::vector<int> lo_;
  std::vector<std::size_t> ext_;
  std::size_t sites_;
  std::vector<Complex> data_;
};

/// Samples of a C^D-valued function on a torus grid; point-major, coin innermost.
struct GridField {
  TorusGrid grid;
  std::size_t coin_dim;
  std::vector<Complex> data;

  GridField(TorusGrid g, std::size_t d_coin)
      : grid(g), coin_dim(d_coin), data(g.size() * d_coin, Complex(0.0)) {}

  Eigen::Map<CVector> value(std::size_t k) {
    return Eigen::Map<CVector>(data.data() + k * coin_dim,
                               static_cast<Eigen::Index>(coin_dim));
  }
  Eigen::Map<const CVector> value(std::size_t k) const {
    return Eigen::Map<const CVector>(data.data() + k * coin_dim,
                                     static_cast<Eigen::Index>(coin_dim));
  }
  /// Grid mean of ||f(z_k)||^2.
  double mean_norm_squared() const;
};

/// f(z_k) = sum_x w(x) z_k^x. Throws AliasingError if some box side exceeds N.
GridField to_fourier(const BoxState &w, const TorusGrid &grid);

/// w(x) = N^{-d} sum_k z_k^{-x} f(z_k) on the requested box. Throws
/// AliasingError if the box does not fit in one grid period.
BoxState from_fourier(const GridField &f, std::vector<int> lo, std::vector<std::size_t> ext);
BoxState from_fourier(const GridField &f);  // on the grid-period box

/// Per-axis grid length guaranteeing alias-free evolution: 2(s + n max|S_axis|) + 1
/// where s bounds |x_i| over the initial support.
std::size_t no_aliasing_bound(const PeriodicOperator &op, int support_radius, std::size_t n);
int support_radius(const LatticeState &w);

/// Caches a diagonalization of the symbol at every grid point and applies
/// pointwise powers. Points whose residual exceeds 1e-10 fall back to
/// repeated multiplication.
class GridPropagator {
public:
  GridPropagator(const PeriodicOperator &op, const TorusGrid &grid);

  const TorusGrid &grid() const { return grid_; }
  std::size_t fallback_points() const { return fallback_count_; }

  GridField apply(const GridField &f, std::size_t n) const;

private:
  TorusGrid grid_;
  std::size_t coin_dim_;
  std::vector<CMatrix> symbol_;
  std::vector<CVector> values_;
  std::vector<CMatrix> vectors_;
  std::vector<bool> fallback_;
  std::size_t fallback_count_ = 0;
};

GridField evolve_fourier(const PeriodicOperator &op, const GridField &f, std::size_t n);

/// U^n w on the grid, returned on the grid-period box. Throws AliasingError
/// when N is below no_aliasing_bound.
BoxState evolve_box(const PeriodicOperator &op, const LatticeState &w, std::size_t n,
                    std::size_t grid_n);

/// pi_j w = F^{-1}[R_j f], on the grid-period box. Throws PreconditionError
/// when the field has gap violations.
BoxState project_state(const ProjectionField &field, const LatticeState &w);
BoxState project_state(const PeriodicOperator &op, const LatticeState &w,
                       const TorusGrid &grid, Complex omega, double cluster_tol = 1e-8);

}  // namespace walkspectra

#endif  // WALKSPECTRA_FOURIER_HPP
