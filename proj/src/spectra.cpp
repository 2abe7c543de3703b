#include "walkspectra/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "walkspectra/numeric.hpp"

namespace walkspectra {

TorusGrid::TorusGrid(std::size_t d, std::size_t n) : d_(d), n_(n), size_(1) {
  if (d_ == 0) throw DimensionError("torus grid rank must be positive");
  if (n_ < 2) throw std::invalid_argument("torus grid needs N >= 2");
  for (std::size_t i = 0; i < d_; ++i) size_ *= n_;
}

std::vector<std::size_t> TorusGrid::multi_index(std::size_t k) const {
  std::vector<std::size_t> mi(d_);
  for (std::size_t i = d_; i-- > 0;) {
    mi[i] = k % n_;
    k /= n_;
  }
  return mi;
}

std::size_t TorusGrid::linear_index(const std::vector<std::size_t> &mi) const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < d_; ++i) k = k * n_ + mi[i];
  return k;
}

std::vector<Complex> TorusGrid::point(std::size_t k) const {
  const auto mi = multi_index(k);
  std::vector<Complex> z(d_);
  for (std::size_t i = 0; i < d_; ++i)
    z[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mi[i]) /
                               static_cast<double>(n_));
  return z;
}

std::string TorusGrid::describe(std::size_t k) const {
  std::ostringstream os;
  const auto mi = multi_index(k);
  os << "grid point k=(";
  for (std::size_t i = 0; i < d_; ++i) os << (i ? "," : "") << mi[i];
  os << ") of N=" << n_;
  return os.str();
}

EigenData eigen_on_grid(const PeriodicOperator &op, const TorusGrid &grid,
                        double cluster_tol) {
  if (grid.dim() != op.dim()) throw DimensionError("grid rank differs from operator rank");
  EigenData out{grid, op.coin_dim(), cluster_tol, {}};
  out.points.reserve(grid.size());
  UnitaryEigenSolver solver(static_cast<Eigen::Index>(op.coin_dim()));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    try {
      const auto &e = solver.compute(op.symbol_at(grid.point(k)), cluster_tol);
      if (!(e.residual <= 1e-8))
        throw EigensolverFailure("diagonalization residual " + std::to_string(e.residual));
      out.points.push_back(e);
    } catch (const EigensolverFailure &err) {
      throw EigensolverFailure(std::string(err.what()) + " at " + grid.describe(k));
    }
  }
  return out;
}

namespace {

Complex nearest(const CVector &values, Complex target) {
  Complex best = values(0);
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (std::abs(values(i) - target) < std::abs(best - target)) best = values(i);
  return best;
}

}  // namespace

std::vector<ConstantCandidate> detect_constant_eigenvalues(const EigenData &eig,
                                                           double spread_tol) {
  std::vector<ConstantCandidate> found;
  if (eig.points.empty()) return found;
  const CVector &seeds = eig.points.front().values;
  for (Eigen::Index s = 0; s < seeds.size(); ++s) {
    const Complex seed = seeds(s);
    bool dup = false;
    for (const auto &c : found)
      if (std::abs(c.omega - seed) <= spread_tol) dup = true;
    if (dup) continue;

    std::vector<Complex> matched;
    matched.reserve(eig.points.size());
    bool ok = true;
    for (const auto &p : eig.points) {
      const Complex m = nearest(p.values, seed);
      if (std::abs(m - seed) > spread_tol) {
        ok = false;
        break;
      }
      matched.push_back(m / std::abs(m));
    }
    if (!ok) continue;
    Complex mean = pairwise_sum(std::span<const Complex>(matched));
    ConstantCandidate c;
    c.omega = mean / std::abs(mean);
    for (const auto &p : eig.points) {
      c.max_grid_deviation =
          std::max(c.max_grid_deviation, std::abs(nearest(p.values, c.omega) - c.omega));
      int count = 0;
      for (Eigen::Index i = 0; i < p.values.size(); ++i)
        if (std::abs(p.values(i) - c.omega) <= spread_tol) ++count;
      c.multiplicity_profile.push_back(count);
    }
    found.push_back(std::move(c));
  }
  std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) {
    return std::arg(a.omega) < std::arg(b.omega);
  });
  return found;
}

Certificate certify_eigenvalue(const ZetaPoly &chi, Complex lambda, double certify_tol) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-8)
    throw PreconditionError("certify_eigenvalue: |lambda| must be 1");
  if (chi.degree() < 1) throw PreconditionError("certify_eigenvalue: chi has degree 0");
  const RootDivision div = divide_by_root(chi, lambda);
  Certificate c;
  c.residual = div.remainder.max_abs_coeff();
  c.is_eigenvalue = c.residual <= certify_tol;
  return c;
}

Certificate certify_eigenvalue(const PeriodicOperator &op, Complex lambda,
                               double certify_tol) {
  return certify_eigenvalue(char_poly(symbol_matrix(op)), lambda, certify_tol);
}

PeelResult peel_point_spectrum(const ZetaPoly &chi, const std::vector<Complex> &omegas,
                               double certify_tol) {
  PeelResult out{{}, chi};
  for (Complex w : omegas) {
    PeeledFactor f{w, 0, {}};
    while (out.quotient.degree() >= 1) {
      RootDivision div = divide_by_root(out.quotient, w);
      const double r = div.remainder.max_abs_coeff();
      if (r > certify_tol) break;
      out.quotient = std::move(div.quotient);
      f.residuals.push_back(r);
      ++f.multiplicity;
    }
    out.factors.push_back(std::move(f));
  }
  return out;
}

BandReport band_report(const EigenData &eig, const PeelResult &peel, double gap_tol) {
  BandReport rep;
  rep.min_eigenvalue_gap = std::numeric_limits<double>::infinity();
  if (peel.quotient.degree() >= 2) {
    rep.discriminant = discriminant(peel.quotient);
    rep.repeated_factor = rep.discriminant->is_zero();
  }
  std::vector<Complex> peeled;
  for (const auto &f : peel.factors)
    if (f.multiplicity > 0) peeled.push_back(f.omega);

  double min_disc = std::numeric_limits<double>::infinity();
  rep.bands.reserve(eig.points.size());
  for (std::size_t k = 0; k < eig.points.size(); ++k) {
    std::vector<Complex> rest(eig.points[k].values.data(),
                              eig.points[k].values.data() + eig.points[k].values.size());
    for (const auto &f : peel.factors) {
      for (std::size_t c = 0; c < f.multiplicity && !rest.empty(); ++c) {
        auto it = std::min_element(rest.begin(), rest.end(), [&](Complex a, Complex b) {
          return std::abs(a - f.omega) < std::abs(b - f.omega);
        });
        rest.erase(it);
      }
    }
    std::vector<Complex> all = rest;
    all.insert(all.end(), peeled.begin(), peeled.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        gap = std::min(gap, std::abs(all[i] - all[j]));
    rep.min_eigenvalue_gap = std::min(rep.min_eigenvalue_gap, gap);
    if (gap < gap_tol) rep.collision_points.push_back(k);
    if (rep.discriminant && !rep.repeated_factor) {
      const auto z = eig.grid.point(k);
      min_disc = std::min(min_disc, std::abs(rep.discriminant->eval(z)));
    }
    rep.bands.push_back(std::move(rest));
  }
  if (rep.discriminant && !rep.repeated_factor) rep.min_abs_discriminant = min_disc;
  return rep;
}

std::vector<Complex> SpectralReport::certified() const {
  std::vector<Complex> w;
  for (const auto &c : candidates)
    if (c.certificate.is_eigenvalue) w.push_back(c.detected.omega);
  return w;
}

SpectralReport analyze_spectrum(const PeriodicOperator &op, const TorusGrid &grid,
                                const SpectralTolerances &tol) {
  const UnitarityReport u = validate_unitarity(op, 1e-10);
  if (!u.passed)
    throw PreconditionError("operator is not unitary (max residual " +
                            std::to_string(u.max_residual) + ")");
  ZetaPoly chi = char_poly(symbol_matrix(op));
  const EigenData eig = eigen_on_grid(op, grid, tol.cluster);
  std::vector<SpectralCandidate> cands;
  std::vector<Complex> certified;
  for (auto &c : detect_constant_eigenvalues(eig, tol.spread)) {
    SpectralCandidate sc{std::move(c), {}, 0};
    sc.certificate = certify_eigenvalue(chi, sc.detected.omega, tol.certify);
    if (sc.certificate.is_eigenvalue) certified.push_back(sc.detected.omega);
    cands.push_back(std::move(sc));
  }
  PeelResult peel = peel_point_spectrum(chi, certified, tol.certify);
  for (auto &sc : cands)
    for (const auto &f : peel.factors)
      if (f.omega == sc.detected.omega) sc.peeled_multiplicity = f.multiplicity;
  BandReport bands = band_report(eig, peel, tol.gap);
  return SpectralReport{grid, std::move(chi), std::move(cands), std::move(peel),
                        std::move(bands)};
}

ProjectionField eigenprojection_field(const PeriodicOperator &op, const TorusGrid &grid,
                                      Complex omega, double cluster_tol) {
  if (grid.dim() != op.dim()) throw DimensionError("grid rank differs from operator rank");
  const auto D = static_cast<Eigen::Index>(op.coin_dim());
  ProjectionField f{grid, omega, cluster_tol, {}, {}, {}, {}, 0.0};
  f.r.reserve(grid.size());
  f.rank.reserve(grid.size());
  f.violated.assign(grid.size(), false);
  f.min_gap = std::numeric_limits<double>::infinity();
  UnitaryEigenSolver solver(D);
  std::size_t present = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const UnitaryEigen *e = nullptr;
    try {
      e = &solver.compute(op.symbol_at(grid.point(k)), cluster_tol);
    } catch (const EigensolverFailure &err) {
      throw EigensolverFailure(std::string(err.what()) + " at " + grid.describe(k));
    }
    CMatrix r = CMatrix::Zero(D, D);
    int rank = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < D; ++i) {
      const double dist = std::abs(e->values(i) - omega);
      if (dist <= cluster_tol) {
        r += e->vectors.col(i) * e->vectors.col(i).adjoint();
        ++rank;
      } else {
        gap = std::min(gap, dist);
      }
    }
    if (rank > 0) ++present;
    if (rank == 0 || gap <= 2.0 * cluster_tol) {
      f.violated[k] = true;
      f.gap_violations.push_back(k);
    } else {
      f.min_gap = std::min(f.min_gap, gap);
    }
    f.r.push_back(std::move(r));
    f.rank.push_back(rank);
  }
  if (present == 0)
    throw PreconditionError("value is not an eigenvalue of the symbol at any grid point");
  return f;
}

CMatrix contour_projection(const CMatrix &a, Complex omega, double radius, int nodes) {
  if (!(radius > 0.0)) throw PreconditionError("contour radius must be positive");
  const Eigen::Index n = a.rows();
  CMatrix p = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (int k = 0; k < nodes; ++k) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
    const Complex zeta = omega + radius * e;
    p += (radius * e) * (zeta * id - a).partialPivLu().inverse();
  }
  return p / static_cast<double>(nodes);
}

}  // namespace walkspectra
