#include "walkspectra/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "walkspectra/numeric.hpp"

namespace walkspectra {

LatticePoint LatticePoint::operator+(const LatticePoint &o) const {
  if (o.dim() != dim()) throw DimensionError("lattice point rank mismatch");
  LatticePoint r(*this);
  for (std::size_t i = 0; i < dim(); ++i) r.coords_[i] += o.coords_[i];
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint &o) const {
  if (o.dim() != dim()) throw DimensionError("lattice point rank mismatch");
  LatticePoint r(*this);
  for (std::size_t i = 0; i < dim(); ++i) r.coords_[i] -= o.coords_[i];
  return r;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r(*this);
  for (int &c : r.coords_) c = -c;
  return r;
}

LatticePoint LatticePoint::operator*(int k) const {
  LatticePoint r(*this);
  for (int &c : r.coords_) c *= k;
  return r;
}

std::string LatticePoint::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

PeriodicOperator::PeriodicOperator(std::size_t d, std::size_t coin_dim,
                                   std::map<LatticePoint, CMatrix> steps)
    : d_(d), coin_dim_(coin_dim), steps_(std::move(steps)) {
  if (d_ == 0) throw MalformedOperator("lattice rank d must be positive");
  if (coin_dim_ == 0) throw MalformedOperator("coin dimension D must be positive");
  if (steps_.empty()) throw MalformedOperator("step set is empty");
  for (const auto &[a, c] : steps_) {
    if (a.dim() != d_)
      throw MalformedOperator("step " + a.str() + " does not have rank " +
                              std::to_string(d_));
    if (static_cast<std::size_t>(c.rows()) != coin_dim_ ||
        static_cast<std::size_t>(c.cols()) != coin_dim_)
      throw MalformedOperator("coin at step " + a.str() + " is " +
                              std::to_string(c.rows()) + "x" +
                              std::to_string(c.cols()) + ", expected " +
                              std::to_string(coin_dim_) + "x" +
                              std::to_string(coin_dim_));
  }
}

CMatrix PeriodicOperator::coin(const LatticePoint &a) const {
  auto it = steps_.find(a);
  if (it == steps_.end()) return CMatrix::Zero(coin_dim_, coin_dim_);
  return it->second;
}

std::vector<int> PeriodicOperator::min_step() const {
  std::vector<int> lo(d_, 0);
  bool first = true;
  for (const auto &[a, c] : steps_) {
    for (std::size_t i = 0; i < d_; ++i)
      lo[i] = first ? a[i] : std::min(lo[i], a[i]);
    first = false;
  }
  return lo;
}

std::vector<int> PeriodicOperator::max_step() const {
  std::vector<int> hi(d_, 0);
  bool first = true;
  for (const auto &[a, c] : steps_) {
    for (std::size_t i = 0; i < d_; ++i)
      hi[i] = first ? a[i] : std::max(hi[i], a[i]);
    first = false;
  }
  return hi;
}

int PeriodicOperator::step_radius() const {
  int r = 0;
  for (const auto &[a, c] : steps_)
    for (int x : a) r = std::max(r, std::abs(x));
  return r;
}

PeriodicOperator PeriodicOperator::adjoint() const {
  std::map<LatticePoint, CMatrix> adj;
  for (const auto &[a, c] : steps_) adj.emplace(-a, c.adjoint());
  return PeriodicOperator(d_, coin_dim_, std::move(adj));
}

namespace {

Complex monomial(const std::vector<Complex> &z, const LatticePoint &a) {
  Complex v(1.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] == 0) continue;
    v *= ipow(z[i], a[i]);
  }
  return v;
}

}  // namespace

CMatrix PeriodicOperator::symbol_at(const std::vector<Complex> &z) const {
  if (z.size() != d_) throw DimensionError("torus point has wrong rank");
  CMatrix m = CMatrix::Zero(coin_dim_, coin_dim_);
  for (const auto &[a, c] : steps_) m += monomial(z, a) * c;
  return m;
}

CMatrix PeriodicOperator::symbol_theta_derivative(const std::vector<Complex> &z,
                                                  std::size_t axis) const {
  if (z.size() != d_) throw DimensionError("torus point has wrong rank");
  CMatrix m = CMatrix::Zero(coin_dim_, coin_dim_);
  for (const auto &[a, c] : steps_) {
    if (a[axis] == 0) continue;
    m += Complex(0.0, a[axis]) * monomial(z, a) * c;
  }
  return m;
}

UnitarityReport validate_unitarity(const PeriodicOperator &op, double tol) {
  const auto D = static_cast<Eigen::Index>(op.coin_dim());
  std::map<LatticePoint, CMatrix> sums;
  for (const auto &[a, ca] : op.steps()) {
    for (const auto &[b, cb] : op.steps()) {
      auto [it, inserted] = sums.try_emplace(a - b, CMatrix::Zero(D, D));
      it->second += cb.adjoint() * ca;
    }
  }
  UnitarityReport rep;
  rep.tolerance = tol;
  for (auto &[g, m] : sums) {
    if (g.is_zero()) m -= CMatrix::Identity(D, D);
    Eigen::JacobiSVD<CMatrix> svd(m);
    const double r = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    rep.per_gamma.emplace(g, r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  rep.passed = rep.max_residual <= tol;
  return rep;
}

LatticeState LatticeState::delta(const LatticePoint &y, const CVector &phi) {
  LatticeState s(y.dim(), static_cast<std::size_t>(phi.size()));
  s.set(y, phi);
  return s;
}

void LatticeState::check_point(const LatticePoint &x) const {
  if (x.dim() != d_)
    throw DimensionError("lattice point " + x.str() + " does not have rank " +
                         std::to_string(d_));
}

std::vector<LatticePoint> LatticeState::support() const {
  std::vector<LatticePoint> s;
  s.reserve(amp_.size());
  for (const auto &[x, v] : amp_) s.push_back(x);
  return s;
}

CVector LatticeState::at(const LatticePoint &x) const {
  check_point(x);
  auto it = amp_.find(x);
  if (it == amp_.end()) return CVector::Zero(coin_dim_);
  return it->second;
}

void LatticeState::set(const LatticePoint &x, const CVector &v) {
  check_point(x);
  if (static_cast<std::size_t>(v.size()) != coin_dim_)
    throw DimensionError("amplitude has wrong coin dimension");
  amp_.insert_or_assign(x, v);
}

void LatticeState::add(const LatticePoint &x, const CVector &v) {
  check_point(x);
  if (static_cast<std::size_t>(v.size()) != coin_dim_)
    throw DimensionError("amplitude has wrong coin dimension");
  auto [it, inserted] = amp_.try_emplace(x, v);
  if (!inserted) it->second += v;
}

double LatticeState::norm_squared() const {
  std::vector<double> parts;
  parts.reserve(amp_.size());
  for (const auto &[x, v] : amp_) parts.push_back(v.squaredNorm());
  return pairwise_sum(std::span<const double>(parts));
}

void LatticeState::prune(double threshold) {
  std::erase_if(amp_, [threshold](const auto &kv) {
    return kv.second.norm() <= threshold;
  });
}

LatticeState LatticeState::translated(const LatticePoint &y) const {
  check_point(y);
  LatticeState r(d_, coin_dim_);
  for (const auto &[x, v] : amp_) r.amp_.emplace(x + y, v);
  return r;
}

std::pair<std::vector<int>, std::vector<int>> LatticeState::bounding_box() const {
  if (amp_.empty()) return {};
  std::vector<int> lo(amp_.begin()->first.coords()), hi(lo);
  for (const auto &[x, v] : amp_) {
    for (std::size_t i = 0; i < d_; ++i) {
      lo[i] = std::min(lo[i], x[i]);
      hi[i] = std::max(hi[i], x[i]);
    }
  }
  return {lo, hi};
}

LatticeState apply_direct(const PeriodicOperator &op, const LatticeState &w) {
  if (w.dim() != op.dim() || w.coin_dim() != op.coin_dim())
    throw DimensionError("state (d=" + std::to_string(w.dim()) +
                         ", D=" + std::to_string(w.coin_dim()) +
                         ") does not match operator (d=" +
                         std::to_string(op.dim()) +
                         ", D=" + std::to_string(op.coin_dim()) + ")");
  LatticeState out(w.dim(), w.coin_dim());
  for (const auto &[y, v] : w.amplitudes()) {
    for (const auto &[a, c] : op.steps()) {
      CVector cv = c * v;
      if (cv.isZero(0.0)) continue;
      out.add(y + a, cv);
    }
  }
  return out;
}

LatticeState evolve_direct(const PeriodicOperator &op, const LatticeState &w,
                           std::size_t n) {
  if (w.dim() != op.dim() || w.coin_dim() != op.coin_dim())
    throw DimensionError("state does not match operator");
  LatticeState cur = w;
  for (std::size_t k = 0; k < n; ++k) cur = apply_direct(op, cur);
  return cur;
}

double probability(const LatticeState &w, const LatticePoint &x) {
  return w.at(x).squaredNorm();
}

}  // namespace walkspectra
