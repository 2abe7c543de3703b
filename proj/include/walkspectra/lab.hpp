#ifndef WALKSPECTRA_LAB_HPP
#define WALKSPECTRA_LAB_HPP

// Long-time behaviour of walks: transition-probability series, Cesaro
// averages and their predicted limits, decay checks, the finite-dimensional
// oracle and the d = 1 spectral density.

#include <cstddef>
#include <optional>
#include <vector>

#include "walkspectra/fourier.hpp"
#include "walkspectra/lattice.hpp"
#include "walkspectra/spectra.hpp"

namespace walkspectra {

enum class SeriesMethod { automatic, direct, spectral };

/// p[s][x][n] = p_n(w_s; x_x) for n = 0..horizon.
///
/// The spectral route writes (U^n w)(x) as the grid mean of
/// z^{-x} U(z)^n w^(z) over an M^d grid with M beyond the reach of
/// supp(w) + n S relative to x, which is exact for every n <= horizon. The
/// eigen-expansion at each grid point turns the time series into a sum of
/// pure phases that is evaluated for all n at once by a Gaussian-gridding
/// non-uniform FFT.
using ProbabilitySeries = std::vector<std::vector<std::vector<double>>>;

ProbabilitySeries probability_series(const PeriodicOperator &op,
                                     const std::vector<LatticeState> &states,
                                     const std::vector<LatticePoint> &sites,
                                     std::size_t horizon,
                                     SeriesMethod method = SeriesMethod::automatic);

/// Smallest M for which the spectral route is exact up to `horizon`.
std::size_t exact_series_grid(const PeriodicOperator &op, const LatticeState &w,
                              const LatticePoint &x, std::size_t horizon);

/// p_bar_N = (1/N) sum_{n=1}^N p_n for each N in the schedule.
std::vector<double> cesaro_means(const std::vector<double> &p,
                                 const std::vector<std::size_t> &schedule);

/// Powers of two from `first` to `cap` inclusive.
std::vector<std::size_t> power_schedule(std::size_t first, std::size_t cap,
                                        std::size_t factor = 2);

/// sum_j ||(pi_j w)(x)||^2 per site, with R_j sampled on an N^d grid.
/// Returns zeros for an empty omega list. Throws PreconditionError on gap
/// violations.
std::vector<double> predicted_average(const PeriodicOperator &op, const LatticeState &w,
                                      const std::vector<LatticePoint> &sites,
                                      const std::vector<Complex> &omegas,
                                      std::size_t grid_n, double cluster_tol = 1e-8);

struct AverageTrace {
  LatticePoint site;
  std::vector<std::size_t> schedule;
  std::vector<double> means;
  std::vector<double> gaps;
  double predicted = 0.0;
  double final_gap = 0.0;
  bool gaps_decreasing = false;
};

AverageTrace make_trace(const LatticePoint &site, const std::vector<double> &p,
                        const std::vector<std::size_t> &schedule, double predicted);

struct MassIdentity {
  double site_sum = 0.0;        // sum over the grid-period box of sum_j ||pi_j w(x)||^2
  double projected_norm = 0.0;  // sum_j <w^, R_j w^> as a grid mean
  std::vector<double> per_omega;
};

MassIdentity mass_identity(const PeriodicOperator &op, const LatticeState &w,
                           const std::vector<Complex> &omegas, std::size_t grid_n,
                           double cluster_tol = 1e-8);

struct DecayResult {
  double sup = 0.0;
  std::size_t argmax = 0;
  std::optional<double> slope;  // log-log least squares over positive samples
};

DecayResult decay_check(const std::vector<double> &p, std::size_t n0, std::size_t n1);

/// Finite unitary matrix with its spectrum grouped into distinct eigenvalues.
class FiniteUnitary {
public:
  explicit FiniteUnitary(CMatrix m, double group_tol = 1e-10);

  const CMatrix &matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const std::vector<Complex> &eigenvalues() const { return values_; }
  const std::vector<CMatrix> &projectors() const { return proj_; }
  /// Smallest distance between distinct groups.
  double min_group_gap() const { return min_gap_; }
  bool ill_grouped() const { return min_gap_ < 1e-12; }

private:
  CMatrix m_;
  std::vector<Complex> values_;
  std::vector<CMatrix> proj_;
  double min_gap_ = 0.0;
};

struct FiniteAverage {
  double limit = 0.0;
  std::optional<double> mean_at_n;
  bool ill_grouped = false;
};

/// sum_mu |<e_i, P_mu w>|^2, optionally with the Cesaro mean at n_check.
FiniteAverage finite_oracle_average(const FiniteUnitary &u, const CVector &w, std::size_t i,
                                    std::optional<std::size_t> n_check = std::nullopt);

/// (1/N) sum_{n=1}^N |(M^n w)_i|^2 by repeated multiplication, for every i.
std::vector<double> brute_force_cesaro(const CMatrix &m, const CVector &w, std::size_t n);

struct DensityOptions {
  double cluster_tol = 1e-8;
  double certify_tol = 1e-8;
  std::size_t edge_scan = 4096;  // theta samples used to locate band extrema
};

struct BandEdge {
  double t = 0.0;       // arg of the eigenvalue at the extremum
  double theta = 0.0;
  double curvature = 0.0;  // d^2 phi / d theta^2
  double weight = 0.0;     // ||P w^||^2 at the extremum
};

struct DensityProfile {
  std::vector<double> t;
  std::vector<double> gamma;
  std::vector<bool> flagged;
  std::vector<BandEdge> edges;
  double integral = 0.0;  // of gamma against dt / 2 pi
  double continuous_norm = 0.0;  // ||w||^2 - sum_j ||pi_j w||^2 from the peeled spectrum
};

/// Gamma(t) = sum over z = e^{i theta} with a band eigenvalue e^{it} of
/// ||P(z) w^(z)||^2 / |d phi / d theta|, at t_k = -pi + 2 pi (k + 1/2)/K.
DensityProfile spectral_density_1d(const PeriodicOperator &op, const LatticeState &w,
                                   std::size_t samples, const DensityOptions &opt = {});

}  // namespace walkspectra

#endif  // WALKSPECTRA_LAB_HPP
