#ifndef WALKSPECTRA_LATTICE_HPP
#define WALKSPECTRA_LATTICE_HPP

#include <compare>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "walkspectra/errors.hpp"

namespace walkspectra {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A point of the integer lattice Z^d. Also used for exponent vectors of
/// Laurent monomials.
class LatticePoint {
public:
  LatticePoint() = default;
  explicit LatticePoint(std::size_t d) : coords_(d, 0) {}
  LatticePoint(std::initializer_list<int> c) : coords_(c) {}
  explicit LatticePoint(std::vector<int> c) : coords_(std::move(c)) {}

  static LatticePoint unit(std::size_t d, std::size_t axis, int sign = 1) {
    LatticePoint p(d);
    p.coords_.at(axis) = sign;
    return p;
  }

  std::size_t dim() const { return coords_.size(); }
  int operator[](std::size_t i) const { return coords_[i]; }
  int &operator[](std::size_t i) { return coords_[i]; }
  const std::vector<int> &coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    for (int c : coords_)
      if (c != 0) return false;
    return true;
  }

  LatticePoint operator+(const LatticePoint &o) const;
  LatticePoint operator-(const LatticePoint &o) const;
  LatticePoint operator-() const;
  LatticePoint operator*(int k) const;

  auto operator<=>(const LatticePoint &) const = default;
  bool operator==(const LatticePoint &) const = default;

  std::string str() const;

private:
  std::vector<int> coords_;
};

using Exponent = LatticePoint;

/// Periodic unitary transition operator U = sum_a tau^a C(a) on l^2(Z^d, C^D).
///
/// The step set and coins are fixed at construction; the constructor checks
/// shape only. Unitarity is a numerical property and is checked separately by
/// validate_unitarity().
class PeriodicOperator {
public:
  PeriodicOperator(std::size_t d, std::size_t coin_dim,
                   std::map<LatticePoint, CMatrix> steps);

  std::size_t dim() const { return d_; }
  std::size_t coin_dim() const { return coin_dim_; }
  const std::map<LatticePoint, CMatrix> &steps() const { return steps_; }

  /// Coin of step a, or the zero matrix if a is not a step.
  CMatrix coin(const LatticePoint &a) const;

  /// Per-axis minimum and maximum step coordinate.
  std::vector<int> min_step() const;
  std::vector<int> max_step() const;
  /// max over axes and steps of |a_i|.
  int step_radius() const;

  /// The adjoint U*, with coins C(a)* placed at -a.
  PeriodicOperator adjoint() const;

  /// U evaluated at a point z of the complex torus: sum_a z^a C(a).
  CMatrix symbol_at(const std::vector<Complex> &z) const;
  /// Derivative of the symbol along theta_axis at z = exp(i theta):
  /// sum_a i a_axis z^a C(a).
  CMatrix symbol_theta_derivative(const std::vector<Complex> &z,
                                  std::size_t axis) const;

private:
  std::size_t d_;
  std::size_t coin_dim_;
  std::map<LatticePoint, CMatrix> steps_;
};

struct UnitarityReport {
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::map<LatticePoint, double> per_gamma;
  bool passed = false;
};

/// Checks sum_{a-b=g} C(b)^* C(a) = delta_{g,0} I for every g in S-S using the
/// spectral norm of the deviation.
UnitarityReport validate_unitarity(const PeriodicOperator &op,
                                   double tol = 1e-10);

/// Finitely supported vector-valued function on Z^d.
class LatticeState {
public:
  LatticeState(std::size_t d, std::size_t coin_dim) : d_(d), coin_dim_(coin_dim) {}

  /// delta_y (x) phi
  static LatticeState delta(const LatticePoint &y, const CVector &phi);

  std::size_t dim() const { return d_; }
  std::size_t coin_dim() const { return coin_dim_; }
  const std::map<LatticePoint, CVector> &amplitudes() const { return amp_; }
  std::size_t support_size() const { return amp_.size(); }
  std::vector<LatticePoint> support() const;

  /// Amplitude at x (zero vector when x is outside the stored support).
  CVector at(const LatticePoint &x) const;
  void set(const LatticePoint &x, const CVector &v);
  void add(const LatticePoint &x, const CVector &v);

  double norm_squared() const;
  /// Removes sites whose amplitude norm is <= threshold. Threshold 0 drops
  /// exact zeros only.
  void prune(double threshold = 0.0);
  LatticeState translated(const LatticePoint &y) const;

  /// Per-axis bounding box of the support; empty vectors for an empty state.
  std::pair<std::vector<int>, std::vector<int>> bounding_box() const;

private:
  void check_point(const LatticePoint &x) const;

  std::size_t d_;
  std::size_t coin_dim_;
  std::map<LatticePoint, CVector> amp_;
};

/// (Uw)(x) = sum_a C(a) w(x - a).
LatticeState apply_direct(const PeriodicOperator &op, const LatticeState &w);
LatticeState evolve_direct(const PeriodicOperator &op, const LatticeState &w,
                           std::size_t n);

/// p(w; x) = ||w(x)||^2.
double probability(const LatticeState &w, const LatticePoint &x);

}  // namespace walkspectra

#endif  // WALKSPECTRA_LATTICE_HPP
