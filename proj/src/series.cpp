#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fftw3.h>

#include "walkspectra/lab.hpp"
#include "walkspectra/numeric.hpp"

namespace walkspectra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Type-1 non-uniform DFT f(n) = sum_j c_j e^{-i n x_j}, n = 0..horizon, by
// Gaussian gridding (Greengard and Lee) on an oversampled periodic grid,
// with `channels` independent strength vectors.
class GaussianGridder {
public:
  GaussianGridder(std::size_t horizon, std::size_t channels)
      : horizon_(horizon), channels_(channels) {
    const std::size_t mf = 2 * (horizon + 1);
    mr_ = 2 * mf;
    h_ = kTwoPi / static_cast<double>(mr_);
    const double r = 2.0;
    tau_ = std::numbers::pi * kSpread / (static_cast<double>(mf) * mf * r * (r - 0.5));
    for (int l = -kSpread + 1; l <= kSpread; ++l)
      e3_[static_cast<std::size_t>(l + kSpread - 1)] = std::exp(-(l * h_) * (l * h_) / (4.0 * tau_));
    grid_.assign(mr_ * channels_, Complex(0.0));
  }

  // Weights and base index for a source at x in [0, 2 pi).
  void weights(double x, std::size_t &base, std::array<double, 24> &w) const {
    const double pos = x / h_;
    long m0 = static_cast<long>(std::floor(pos));
    const double xi = x - static_cast<double>(m0) * h_;
    const double e1 = std::exp(-xi * xi / (4.0 * tau_));
    const double e2 = std::exp(xi * h_ / (2.0 * tau_));
    // l runs from -kSpread + 1 to kSpread; distance is xi - l h.
    double p = std::pow(e2, -kSpread + 1);
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] = e1 * p * e3_[j];
      p *= e2;
    }
    long b = (m0 - kSpread + 1) % static_cast<long>(mr_);
    if (b < 0) b += static_cast<long>(mr_);
    base = static_cast<std::size_t>(b);
  }

  void spread(std::size_t base, const std::array<double, 24> &w, std::size_t channel,
              Complex strength) {
    std::size_t m = base;
    for (double wj : w) {
      grid_[m * channels_ + channel] += wj * strength;
      if (++m == mr_) m = 0;
    }
  }

  // result[channel][n]
  std::vector<std::vector<Complex>> finish() {
    auto *p = reinterpret_cast<fftw_complex *>(grid_.data());
    const int n = static_cast<int>(mr_);
    const int howmany = static_cast<int>(channels_);
    fftw_plan plan = fftw_plan_many_dft(1, &n, howmany, p, nullptr, howmany, 1, p, nullptr,
                                        howmany, 1, FFTW_FORWARD, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("FFTW planning failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<std::vector<Complex>> out(channels_, std::vector<Complex>(horizon_ + 1));
    const double pre = std::sqrt(std::numbers::pi / tau_) / static_cast<double>(mr_);
    for (std::size_t k = 0; k <= horizon_; ++k) {
      const double dk = static_cast<double>(k);
      const double f = pre * std::exp(dk * dk * tau_);
      for (std::size_t c = 0; c < channels_; ++c) out[c][k] = f * grid_[k * channels_ + c];
    }
    return out;
  }

private:
  static constexpr int kSpread = 12;
  std::size_t horizon_, channels_, mr_;
  double h_, tau_;
  std::array<double, 24> e3_{};
  std::vector<Complex> grid_;
};

ProbabilitySeries series_direct(const PeriodicOperator &op,
                                const std::vector<LatticeState> &states,
                                const std::vector<LatticePoint> &sites, std::size_t horizon) {
  ProbabilitySeries out(states.size(),
                        std::vector<std::vector<double>>(sites.size(),
                                                         std::vector<double>(horizon + 1)));
  for (std::size_t s = 0; s < states.size(); ++s) {
    LatticeState cur = states[s];
    for (std::size_t n = 0; n <= horizon; ++n) {
      if (n) cur = apply_direct(op, cur);
      for (std::size_t x = 0; x < sites.size(); ++x) out[s][x][n] = probability(cur, sites[x]);
    }
  }
  return out;
}

template <int Dim>
void accumulate_spectral(const PeriodicOperator &op, const std::vector<LatticeState> &states,
                         const std::vector<LatticePoint> &sites, std::size_t horizon,
                         std::size_t m, GaussianGridder &gridder,
                         std::vector<std::vector<Complex>> &fallback) {
  using Mat = Eigen::Matrix<Complex, Dim, Dim>;
  using Vec = Eigen::Matrix<Complex, Dim, 1>;
  const std::size_t d = op.dim();
  const std::size_t D = op.coin_dim();
  const auto De = static_cast<Eigen::Index>(D);
  const std::size_t ns = states.size(), nx = sites.size();

  std::vector<Complex> roots(m);
  for (std::size_t k = 0; k < m; ++k)
    roots[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
  const long ml = static_cast<long>(m);
  // z^a on the grid is a product of tabulated roots of unity.
  auto power = [&](const std::vector<std::size_t> &mi, const LatticePoint &a) {
    Complex v(1.0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      long r = (static_cast<long>(mi[i]) * a[i]) % ml;
      if (r < 0) r += ml;
      v *= roots[static_cast<std::size_t>(r)];
    }
    return v;
  };
  std::vector<std::pair<LatticePoint, Mat>> steps;
  for (const auto &[a, c] : op.steps()) steps.emplace_back(a, Mat(c));
  std::vector<std::vector<std::pair<LatticePoint, Vec>>> amps(ns);
  for (std::size_t s = 0; s < ns; ++s)
    for (const auto &[y, v] : states[s].amplitudes()) amps[s].emplace_back(y, Vec(v));

  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= m;
  const double inv_total = 1.0 / static_cast<double>(total);

  Eigen::ComplexSchur<Mat> schur(De);
  std::vector<std::size_t> mi(d, 0);
  std::vector<Vec> what(ns, Vec::Zero(De)), coef(ns, Vec::Zero(De));
  std::vector<Complex> phase(nx);
  std::array<double, 24> w{};
  Mat u = Mat::Zero(De, De);
  for (std::size_t k = 0; k < total; ++k) {
    u.setZero();
    for (const auto &[a, c] : steps) u += power(mi, a) * c;
    for (std::size_t s = 0; s < ns; ++s) {
      what[s].setZero();
      for (const auto &[y, v] : amps[s]) what[s] += power(mi, y) * v;
    }
    for (std::size_t x = 0; x < nx; ++x) phase[x] = inv_total * std::conj(power(mi, sites[x]));

    schur.compute(u, true);
    bool diagonal = schur.info() == Eigen::Success;
    if (diagonal) {
      const Mat &t = schur.matrixT();
      for (Eigen::Index i = 0; i < De && diagonal; ++i)
        for (Eigen::Index j = i + 1; j < De; ++j)
          if (std::abs(t(i, j)) > 1e-10) diagonal = false;
    }
    if (diagonal) {
      const Mat &q = schur.matrixU();
      const Mat &t = schur.matrixT();
      for (std::size_t s = 0; s < ns; ++s) coef[s].noalias() = q.adjoint() * what[s];
      for (Eigen::Index i = 0; i < De; ++i) {
        double x = -std::arg(t(i, i));
        if (x < 0.0) x += kTwoPi;
        if (x >= kTwoPi) x -= kTwoPi;
        std::size_t base = 0;
        gridder.weights(x, base, w);
        for (std::size_t s = 0; s < ns; ++s) {
          for (std::size_t xs = 0; xs < nx; ++xs) {
            const Complex c = coef[s](i) * phase[xs];
            if (c == Complex(0.0)) continue;
            const std::size_t ch0 = (s * nx + xs) * D;
            for (std::size_t comp = 0; comp < D; ++comp)
              gridder.spread(base, w, ch0 + comp, q(static_cast<Eigen::Index>(comp), i) * c);
          }
        }
      }
    } else {
      // Not numerically normal at this point: iterate the matrix.
      for (std::size_t s = 0; s < ns; ++s) {
        Vec v = what[s];
        for (std::size_t n = 0; n <= horizon; ++n) {
          if (n) v = (u * v).eval();
          for (std::size_t xs = 0; xs < nx; ++xs) {
            const std::size_t ch0 = (s * nx + xs) * D;
            for (std::size_t comp = 0; comp < D; ++comp) {
              auto &f = fallback[ch0 + comp];
              if (f.empty()) f.assign(horizon + 1, Complex(0.0));
              f[n] += phase[xs] * v(static_cast<Eigen::Index>(comp));
            }
          }
        }
      }
    }
    for (std::size_t i = d; i-- > 0;) {
      if (++mi[i] < m) break;
      mi[i] = 0;
    }
  }
}

ProbabilitySeries series_spectral(const PeriodicOperator &op,
                                  const std::vector<LatticeState> &states,
                                  const std::vector<LatticePoint> &sites, std::size_t horizon) {
  const std::size_t D = op.coin_dim();
  std::size_t m = 2;
  for (const auto &w : states)
    for (const auto &x : sites) m = std::max(m, exact_series_grid(op, w, x, horizon));

  const std::size_t ns = states.size(), nx = sites.size();
  const std::size_t channels = ns * nx * D;
  GaussianGridder gridder(horizon, channels);
  std::vector<std::vector<Complex>> fallback(channels);
  if (D == 2)
    accumulate_spectral<2>(op, states, sites, horizon, m, gridder, fallback);
  else if (D == 4)
    accumulate_spectral<4>(op, states, sites, horizon, m, gridder, fallback);
  else
    accumulate_spectral<Eigen::Dynamic>(op, states, sites, horizon, m, gridder, fallback);

  auto amp = gridder.finish();
  ProbabilitySeries out(ns, std::vector<std::vector<double>>(nx, std::vector<double>(horizon + 1)));
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t xs = 0; xs < nx; ++xs)
      for (std::size_t n = 0; n <= horizon; ++n) {
        double p = 0.0;
        for (std::size_t comp = 0; comp < D; ++comp) {
          const std::size_t ch = (s * nx + xs) * D + comp;
          Complex a = amp[ch][n];
          if (!fallback[ch].empty()) a += fallback[ch][n];
          p += std::norm(a);
        }
        out[s][xs][n] = p;
      }
  return out;
}

double direct_cost(const PeriodicOperator &op, const std::vector<LatticeState> &states,
                   std::size_t horizon) {
  const auto lo = op.min_step(), hi = op.max_step();
  double cost = 0.0;
  for (const auto &w : states) {
    auto [blo, bhi] = w.bounding_box();
    if (blo.empty()) continue;
    for (std::size_t n = 0; n <= horizon; ++n) {
      double sites = 1.0;
      for (std::size_t i = 0; i < op.dim(); ++i)
        sites *= static_cast<double>(bhi[i] - blo[i] + 1) +
                 static_cast<double>(n) * (hi[i] - lo[i]);
      cost += sites;
    }
  }
  return cost * static_cast<double>(op.steps().size() * op.coin_dim() * op.coin_dim());
}

}  // namespace

std::size_t exact_series_grid(const PeriodicOperator &op, const LatticeState &w,
                              const LatticePoint &x, std::size_t horizon) {
  auto [lo, hi] = w.bounding_box();
  if (lo.empty()) return 2;
  const auto smin = op.min_step(), smax = op.max_step();
  const long n = static_cast<long>(horizon);
  long reach = 0;
  for (std::size_t i = 0; i < op.dim(); ++i) {
    reach = std::max(reach, hi[i] + n * smax[i] - x[i]);
    reach = std::max(reach, x[i] - lo[i] - n * smin[i]);
  }
  return static_cast<std::size_t>(std::max(reach + 1, 2L));
}

ProbabilitySeries probability_series(const PeriodicOperator &op,
                                     const std::vector<LatticeState> &states,
                                     const std::vector<LatticePoint> &sites,
                                     std::size_t horizon, SeriesMethod method) {
  for (const auto &w : states)
    if (w.dim() != op.dim() || w.coin_dim() != op.coin_dim())
      throw DimensionError("state does not match operator");
  for (const auto &x : sites)
    if (x.dim() != op.dim()) throw DimensionError("site " + x.str() + " has wrong rank");
  if (method == SeriesMethod::automatic)
    method = direct_cost(op, states, horizon) <= 5e7 ? SeriesMethod::direct
                                                     : SeriesMethod::spectral;
  if (method == SeriesMethod::direct) return series_direct(op, states, sites, horizon);
  return series_spectral(op, states, sites, horizon);
}

}  // namespace walkspectra
