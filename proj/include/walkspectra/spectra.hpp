#ifndef WALKSPECTRA_SPECTRA_HPP
#define WALKSPECTRA_SPECTRA_HPP

// Pointwise eigen-analysis of the symbol on torus grids: constant-eigenvalue
// detection and certification, eigenprojection fields, band diagnostics.

#include <cstddef>
#include <optional>
#include <vector>

#include "walkspectra/laurent.hpp"
#include "walkspectra/lattice.hpp"
#include "walkspectra/linalg.hpp"

namespace walkspectra {

/// Uniform grid z_k = (e^{2 pi i k_1/N}, ..., e^{2 pi i k_d/N}) on T^d.
/// Linear indices are row-major: the last axis varies fastest.
class TorusGrid {
public:
  TorusGrid(std::size_t d, std::size_t n);

  std::size_t dim() const { return d_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return size_; }

  std::vector<std::size_t> multi_index(std::size_t k) const;
  std::size_t linear_index(const std::vector<std::size_t> &mi) const;
  std::vector<Complex> point(std::size_t k) const;
  std::string describe(std::size_t k) const;

  /// Signed frequency of grid index k: k for k <= N/2, else k - N.
  static long signed_index(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<long>(k)
                      : static_cast<long>(k) - static_cast<long>(n);
  }

private:
  std::size_t d_, n_, size_;
};

struct SpectralTolerances {
  double cluster = 1e-8;
  double spread = 1e-6;
  double certify = 1e-8;
  double gap = 1e-6;
};

struct EigenData {
  TorusGrid grid;
  std::size_t coin_dim;
  double cluster_tol;
  std::vector<UnitaryEigen> points;
};

/// Diagonalizes the symbol at every grid point. Throws EigensolverFailure
/// naming the grid point on failure.
EigenData eigen_on_grid(const PeriodicOperator &op, const TorusGrid &grid,
                        double cluster_tol = 1e-8);

struct ConstantCandidate {
  Complex omega;
  double max_grid_deviation = 0.0;
  std::vector<int> multiplicity_profile;  // eigenvalues within spread_tol, per point
};

/// Values omega such that every grid point has an eigenvalue within
/// spread_tol. Seeds come from the first grid point; omega is the circular
/// mean of the matched eigenvalues. Sorted by argument.
std::vector<ConstantCandidate> detect_constant_eigenvalues(const EigenData &eig,
                                                           double spread_tol = 1e-6);

struct Certificate {
  bool is_eigenvalue = false;
  double residual = 0.0;  // max coefficient of chi(lambda, .)
};

/// chi(lambda, z) == 0 identically in z. Requires |lambda| = 1 within 1e-8.
Certificate certify_eigenvalue(const ZetaPoly &chi, Complex lambda,
                               double certify_tol = 1e-8);
Certificate certify_eigenvalue(const PeriodicOperator &op, Complex lambda,
                               double certify_tol = 1e-8);

struct PeeledFactor {
  Complex omega;
  std::size_t multiplicity = 0;
  std::vector<double> residuals;  // remainder residual of each successful division
};

struct PeelResult {
  std::vector<PeeledFactor> factors;
  ZetaPoly quotient;
};

/// Divides chi by (zeta - omega) for each omega while the remainder stays
/// within certify_tol.
PeelResult peel_point_spectrum(const ZetaPoly &chi, const std::vector<Complex> &omegas,
                               double certify_tol = 1e-8);

struct BandReport {
  /// Per grid point, the eigenvalues left after removing m_j copies of each
  /// peeled omega_j (argument-sorted).
  std::vector<std::vector<Complex>> bands;
  std::optional<LaurentPoly> discriminant;  // of the peeled quotient, degree >= 2
  std::optional<double> min_abs_discriminant;
  bool repeated_factor = false;
  double min_eigenvalue_gap = 0.0;  // over all points, among bands and peeled values
  std::vector<std::size_t> collision_points;
};

BandReport band_report(const EigenData &eig, const PeelResult &peel,
                       double gap_tol = 1e-6);

struct SpectralCandidate {
  ConstantCandidate detected;
  Certificate certificate;
  std::size_t peeled_multiplicity = 0;
};

struct SpectralReport {
  TorusGrid grid;
  ZetaPoly chi;
  std::vector<SpectralCandidate> candidates;
  PeelResult peel;
  BandReport bands;

  std::vector<Complex> certified() const;
};

/// detect + certify + peel + bands. Requires the operator to pass
/// validate_unitarity at 1e-10.
SpectralReport analyze_spectrum(const PeriodicOperator &op, const TorusGrid &grid,
                                const SpectralTolerances &tol = {});

struct ProjectionField {
  TorusGrid grid;
  Complex omega;
  double cluster_tol;
  std::vector<CMatrix> r;
  std::vector<int> rank;
  /// Points where omega is missing or another eigenvalue lies within
  /// 2 cluster_tol of it.
  std::vector<std::size_t> gap_violations;
  std::vector<bool> violated;
  /// Min distance from omega to the remaining eigenvalues over the clean points.
  double min_gap = 0.0;
  double contour_radius() const { return 0.5 * min_gap; }
};

/// R(z) = sum of v v* over eigenvectors with eigenvalue within cluster_tol of
/// omega. Throws PreconditionError if omega is an eigenvalue at no grid point.
ProjectionField eigenprojection_field(const PeriodicOperator &op, const TorusGrid &grid,
                                      Complex omega, double cluster_tol = 1e-8);

/// Riesz projection (1/2 pi i) \oint (zeta - A)^{-1} d zeta over the circle of
/// the given radius around omega, trapezoidal rule with `nodes` points.
CMatrix contour_projection(const CMatrix &a, Complex omega, double radius,
                           int nodes = 64);

}  // namespace walkspectra

#endif  // WALKSPECTRA_SPECTRA_HPP
