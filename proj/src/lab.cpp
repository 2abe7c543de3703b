#include "walkspectra/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "walkspectra/linalg.hpp"
#include "walkspectra/numeric.hpp"

namespace walkspectra {

std::vector<double> cesaro_means(const std::vector<double> &p,
                                 const std::vector<std::size_t> &schedule) {
  std::vector<double> out;
  out.reserve(schedule.size());
  for (std::size_t n : schedule) {
    if (n == 0 || n >= p.size())
      throw std::out_of_range("Cesaro horizon " + std::to_string(n) + " outside the series");
    std::span<const double> terms(p.data() + 1, n);
    out.push_back(pairwise_sum(terms) / static_cast<double>(n));
  }
  return out;
}

std::vector<std::size_t> power_schedule(std::size_t first, std::size_t cap, std::size_t factor) {
  if (first == 0 || factor < 2) throw std::invalid_argument("bad schedule parameters");
  std::vector<std::size_t> s;
  for (std::size_t n = first; n <= cap; n *= factor) s.push_back(n);
  return s;
}

namespace {

Complex monomial(const std::vector<Complex> &z, const LatticePoint &a) {
  Complex v(1.0);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a[i] != 0) v *= ipow(z[i], a[i]);
  return v;
}

CVector fourier_at(const LatticeState &w, const std::vector<Complex> &z) {
  CVector f = CVector::Zero(static_cast<Eigen::Index>(w.coin_dim()));
  for (const auto &[y, v] : w.amplitudes()) f += monomial(z, y) * v;
  return f;
}

}  // namespace

std::vector<double> predicted_average(const PeriodicOperator &op, const LatticeState &w,
                                      const std::vector<LatticePoint> &sites,
                                      const std::vector<Complex> &omegas, std::size_t grid_n,
                                      double cluster_tol) {
  std::vector<double> out(sites.size(), 0.0);
  if (omegas.empty()) return out;
  if (w.dim() != op.dim() || w.coin_dim() != op.coin_dim())
    throw DimensionError("state does not match operator");
  const TorusGrid grid(op.dim(), grid_n);
  const auto D = static_cast<Eigen::Index>(op.coin_dim());
  const double inv = 1.0 / static_cast<double>(grid.size());
  std::vector<std::vector<CVector>> acc(omegas.size(),
                                        std::vector<CVector>(sites.size(), CVector::Zero(D)));
  UnitaryEigenSolver solver(D);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto z = grid.point(k);
    const auto &e = solver.compute(op.symbol_at(z), cluster_tol);
    const CVector f = fourier_at(w, z);
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      CVector rf = CVector::Zero(D);
      int rank = 0;
      double gap = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < D; ++i) {
        const double dist = std::abs(e.values(i) - omegas[j]);
        if (dist <= cluster_tol) {
          rf += e.vectors.col(i) * e.vectors.col(i).dot(f);
          ++rank;
        } else {
          gap = std::min(gap, dist);
        }
      }
      if (rank == 0 || gap <= 2.0 * cluster_tol)
        throw PreconditionError("spectral gap condition fails at " + grid.describe(k));
      for (std::size_t x = 0; x < sites.size(); ++x)
        acc[j][x] += (inv / monomial(z, sites[x])) * rf;
    }
  }
  for (std::size_t x = 0; x < sites.size(); ++x)
    for (std::size_t j = 0; j < omegas.size(); ++j) out[x] += acc[j][x].squaredNorm();
  return out;
}

AverageTrace make_trace(const LatticePoint &site, const std::vector<double> &p,
                        const std::vector<std::size_t> &schedule, double predicted) {
  AverageTrace t;
  t.site = site;
  t.schedule = schedule;
  t.means = cesaro_means(p, schedule);
  t.predicted = predicted;
  for (double m : t.means) t.gaps.push_back(std::abs(m - predicted));
  t.final_gap = t.gaps.empty() ? 0.0 : t.gaps.back();
  t.gaps_decreasing = true;
  for (std::size_t i = 1; i < t.gaps.size(); ++i)
    if (!(t.gaps[i] < t.gaps[i - 1])) t.gaps_decreasing = false;
  return t;
}

MassIdentity mass_identity(const PeriodicOperator &op, const LatticeState &w,
                           const std::vector<Complex> &omegas, std::size_t grid_n,
                           double cluster_tol) {
  MassIdentity m;
  const TorusGrid grid(op.dim(), grid_n);
  for (Complex omega : omegas) {
    const ProjectionField field = eigenprojection_field(op, grid, omega, cluster_tol);
    const BoxState pw = project_state(field, w);
    const double box_norm = pw.norm_squared();
    m.per_omega.push_back(box_norm);
    m.site_sum += box_norm;
    const GridField f = to_fourier(BoxState::from_lattice(w), grid);
    std::vector<double> parts(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
      parts[k] = std::real(f.value(k).dot(field.r[k] * f.value(k)));
    m.projected_norm +=
        pairwise_sum(std::span<const double>(parts)) / static_cast<double>(grid.size());
  }
  return m;
}

DecayResult decay_check(const std::vector<double> &p, std::size_t n0, std::size_t n1) {
  if (n0 > n1 || n1 >= p.size()) throw std::out_of_range("decay window outside the series");
  DecayResult r;
  r.sup = -1.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t n = n0; n <= n1; ++n) {
    if (p[n] > r.sup) {
      r.sup = p[n];
      r.argmax = n;
    }
    if (p[n] > 0.0 && n > 0) {
      const double x = std::log(static_cast<double>(n)), y = std::log(p[n]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
  }
  if (cnt >= 2) {
    const double c = static_cast<double>(cnt);
    const double den = c * sxx - sx * sx;
    if (den > 0.0) r.slope = (c * sxy - sx * sy) / den;
  }
  return r;
}

FiniteUnitary::FiniteUnitary(CMatrix m, double group_tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw DimensionError("finite unitary must be square and nonempty");
  const CMatrix dev = m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
  if (dev.cwiseAbs().maxCoeff() > 1e-12)
    throw PreconditionError("matrix is not unitary within 1e-12");
  const UnitaryEigen e = decompose_unitary(m_, group_tol);
  const Eigen::Index n = m_.rows();
  for (int c = 0; c < e.cluster_count; ++c) {
    CMatrix p = CMatrix::Zero(n, n);
    Complex sum(0.0);
    int count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (e.cluster[static_cast<std::size_t>(i)] != c) continue;
      p += e.vectors.col(i) * e.vectors.col(i).adjoint();
      sum += e.values(i);
      ++count;
    }
    values_.push_back(sum / static_cast<double>(count));
    proj_.push_back(std::move(p));
  }
  min_gap_ = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < values_.size(); ++a)
    for (std::size_t b = a + 1; b < values_.size(); ++b)
      min_gap_ = std::min(min_gap_, std::abs(values_[a] - values_[b]));
}

FiniteAverage finite_oracle_average(const FiniteUnitary &u, const CVector &w, std::size_t i,
                                    std::optional<std::size_t> n_check) {
  if (static_cast<std::size_t>(w.size()) != u.dim() || i >= u.dim())
    throw DimensionError("vector or coordinate does not match the matrix");
  FiniteAverage r;
  const auto ii = static_cast<Eigen::Index>(i);
  for (const auto &p : u.projectors()) r.limit += std::norm((p * w)(ii));
  r.ill_grouped = u.ill_grouped();
  if (n_check) r.mean_at_n = brute_force_cesaro(u.matrix(), w, *n_check).at(i);
  return r;
}

std::vector<double> brute_force_cesaro(const CMatrix &m, const CVector &w, std::size_t n) {
  if (n == 0) throw std::invalid_argument("Cesaro horizon must be positive");
  const auto dim = static_cast<std::size_t>(w.size());
  std::vector<std::vector<double>> p(dim, std::vector<double>(n + 1, 0.0));
  CVector v = w;
  for (std::size_t k = 1; k <= n; ++k) {
    v = m * v;
    for (std::size_t i = 0; i < dim; ++i) p[i][k] = std::norm(v(static_cast<Eigen::Index>(i)));
  }
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    out[i] = pairwise_sum(std::span<const double>(p[i].data() + 1, n)) / static_cast<double>(n);
  return out;
}

}  // namespace walkspectra
