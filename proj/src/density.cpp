#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "walkspectra/lab.hpp"
#include "walkspectra/linalg.hpp"
#include "walkspectra/numeric.hpp"

namespace walkspectra {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeReach = kPi / 4.0;

struct BandPoint {
  Complex lambda;
  double dphi = 0.0;    // d arg(lambda) / d theta
  double weight = 0.0;  // ||P w^||^2
  bool simple = true;
};

// Band eigenvalues of the symbol at e^{i theta} after removing m_j copies of
// each peeled constant eigenvalue.
class BandSampler {
public:
  BandSampler(const PeriodicOperator &op, const LatticeState &w, const PeelResult &peel,
              double cluster_tol)
      : op_(op), w_(w), peel_(peel), cluster_tol_(cluster_tol),
        solver_(static_cast<Eigen::Index>(op.coin_dim())) {}

  std::vector<BandPoint> at(double theta) {
    const std::vector<Complex> z{std::polar(1.0, theta)};
    const auto &e = solver_.compute(op_.symbol_at(z), cluster_tol_);
    const CMatrix du = op_.symbol_theta_derivative(z, 0);
    CVector f = CVector::Zero(e.values.size());
    for (const auto &[y, v] : w_.amplitudes()) f += ipow(z[0], y[0]) * v;

    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) keep.push_back(i);
    for (const auto &fac : peel_.factors)
      for (std::size_t c = 0; c < fac.multiplicity && !keep.empty(); ++c) {
        auto it = std::min_element(keep.begin(), keep.end(), [&](auto a, auto b) {
          return std::abs(e.values(a) - fac.omega) < std::abs(e.values(b) - fac.omega);
        });
        keep.erase(it);
      }
    std::vector<BandPoint> out;
    for (Eigen::Index i : keep) {
      BandPoint b;
      b.lambda = e.values(i);
      int members = 0;
      for (Eigen::Index j = 0; j < e.values.size(); ++j)
        if (e.cluster[static_cast<std::size_t>(j)] == e.cluster[static_cast<std::size_t>(i)])
          ++members;
      b.simple = members == 1;
      const auto v = e.vectors.col(i);
      const Complex dl = v.dot(du * v);
      b.dphi = std::real(dl / (Complex(0.0, 1.0) * b.lambda));
      b.weight = std::norm(v.dot(f));
      out.push_back(b);
    }
    return out;
  }

  // Band point nearest to a reference eigenvalue.
  BandPoint nearest(double theta, Complex ref) {
    auto pts = at(theta);
    return *std::min_element(pts.begin(), pts.end(), [&](const auto &a, const auto &b) {
      return std::abs(a.lambda - ref) < std::abs(b.lambda - ref);
    });
  }

private:
  const PeriodicOperator &op_;
  const LatticeState &w_;
  const PeelResult &peel_;
  double cluster_tol_;
  UnitaryEigenSolver solver_;
};

std::vector<BandEdge> locate_edges(BandSampler &sampler, std::size_t scan) {
  std::vector<BandEdge> edges;
  const double step = 2.0 * kPi / static_cast<double>(scan);
  auto prev = sampler.at(0.0);
  const std::size_t branches = prev.size();
  for (std::size_t k = 1; k <= scan; ++k) {
    const double th = step * static_cast<double>(k);
    auto cur = sampler.at(th);
    std::vector<bool> used(cur.size(), false);
    std::vector<BandPoint> matched(branches);
    for (std::size_t b = 0; b < branches; ++b) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < cur.size(); ++c) {
        const double dist = std::abs(cur[c].lambda - prev[b].lambda);
        if (!used[c] && dist < bd) {
          bd = dist;
          best = c;
        }
      }
      used[best] = true;
      matched[b] = cur[best];
      if ((prev[b].dphi > 0.0) == (matched[b].dphi > 0.0)) continue;
      // Bisect the sign change of d phi / d theta along this branch.
      double a = th - step, c = th;
      Complex ref = prev[b].lambda;
      const bool left_positive = prev[b].dphi > 0.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + c);
        const BandPoint p = sampler.nearest(mid, ref);
        if ((p.dphi > 0.0) == left_positive) {
          a = mid;
          ref = p.lambda;
        } else {
          c = mid;
        }
      }
      const double te = 0.5 * (a + c);
      const BandPoint at = sampler.nearest(te, ref);
      const double h = 1e-5;
      const double dp = sampler.nearest(te + h, at.lambda).dphi;
      const double dm = sampler.nearest(te - h, at.lambda).dphi;
      if (std::abs(dp - dm) < 1e-12) continue;
      edges.push_back(BandEdge{std::arg(at.lambda), wrap_angle(te), (dp - dm) / (2.0 * h),
                               at.weight});
    }
    prev = std::move(matched);
  }
  std::sort(edges.begin(), edges.end(), [](const auto &x, const auto &y) { return x.t < y.t; });
  return edges;
}

// Unit-circle roots of a one-variable Laurent polynomial.
std::vector<Complex> circle_roots(const LaurentPoly &p, double tol) {
  std::vector<Complex> roots;
  if (p.is_zero()) return roots;
  const int lo = p.terms().begin()->first[0];
  const int hi = p.terms().rbegin()->first[0];
  const int deg = hi - lo;
  if (deg == 0) return roots;
  const Complex lead = p.coeff(Exponent{hi});
  CMatrix comp = CMatrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int j = 0; j < deg; ++j) comp(j, deg - 1) = -p.coeff(Exponent{lo + j}) / lead;
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  if (es.info() != Eigen::Success) throw EigensolverFailure("companion eigenvalues failed");
  for (Eigen::Index i = 0; i < deg; ++i) {
    const Complex r = es.eigenvalues()(i);
    if (std::abs(std::abs(r) - 1.0) <= tol) roots.push_back(r / std::abs(r));
  }
  return roots;
}

}  // namespace

DensityProfile spectral_density_1d(const PeriodicOperator &op, const LatticeState &w,
                                   std::size_t samples, const DensityOptions &opt) {
  if (op.dim() != 1) throw DimensionError("spectral density is implemented for d = 1 only");
  if (w.dim() != 1 || w.coin_dim() != op.coin_dim())
    throw DimensionError("state does not match operator");
  if (samples == 0) throw std::invalid_argument("need at least one t sample");

  SpectralTolerances tol;
  tol.cluster = opt.cluster_tol;
  tol.certify = opt.certify_tol;
  const SpectralReport spec = analyze_spectrum(op, TorusGrid(1, 256), tol);
  const auto omegas = spec.certified();

  DensityProfile prof;
  double point_mass = 0.0;
  if (!omegas.empty()) {
    const MassIdentity mi = mass_identity(op, w, omegas, 1024, opt.cluster_tol);
    point_mass = mi.projected_norm;
  }
  prof.continuous_norm = w.norm_squared() - point_mass;

  BandSampler sampler(op, w, spec.peel, opt.cluster_tol);
  if (spec.peel.quotient.degree() >= 1) prof.edges = locate_edges(sampler, opt.edge_scan);

  std::vector<double> remainder(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = -kPi + 2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
    const Complex zeta = std::polar(1.0, t);
    double gamma = 0.0;
    bool flagged = false;
    if (spec.peel.quotient.degree() >= 1) {
      for (Complex z : circle_roots(spec.peel.quotient.at_zeta(zeta), 1e-6)) {
        const BandPoint b = sampler.nearest(std::arg(z), zeta);
        if (std::abs(b.lambda - zeta) > 1e-6 || !b.simple || std::abs(b.dphi) < 1e-9) {
          flagged = true;
          continue;
        }
        gamma += b.weight / std::abs(b.dphi);
      }
    }
    prof.t.push_back(t);
    prof.gamma.push_back(gamma);
    prof.flagged.push_back(flagged);

    double singular = 0.0;
    for (const auto &e : prof.edges) {
      const double s = e.curvature > 0.0 ? wrap_angle(t - e.t) : wrap_angle(e.t - t);
      if (s <= 0.0 || s >= kEdgeReach) continue;
      const double a = e.weight * std::sqrt(2.0 / std::abs(e.curvature));
      singular += a / std::sqrt(s) * (1.0 - s / kEdgeReach);
    }
    remainder[k] = gamma - singular;
  }
  double added = 0.0;
  for (const auto &e : prof.edges)
    added += (4.0 / 3.0) * e.weight * std::sqrt(2.0 / std::abs(e.curvature)) *
             std::sqrt(kEdgeReach);
  prof.integral = pairwise_sum(std::span<const double>(remainder)) /
                      static_cast<double>(samples) +
                  added / (2.0 * kPi);
  return prof;
}

}  // namespace walkspectra
