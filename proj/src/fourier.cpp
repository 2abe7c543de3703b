#include "walkspectra/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fftw3.h>

#include "walkspectra/numeric.hpp"

namespace walkspectra {

BoxState::BoxState(std::size_t coin_dim, std::vector<int> lo, std::vector<std::size_t> ext)
    : coin_dim_(coin_dim), lo_(std::move(lo)), ext_(std::move(ext)), sites_(1) {
  if (lo_.size() != ext_.size() || lo_.empty())
    throw DimensionError("box corner and extent ranks differ");
  for (std::size_t e : ext_) {
    if (e == 0) throw DimensionError("box extent must be positive");
    sites_ *= e;
  }
  data_.assign(sites_ * coin_dim_, Complex(0.0));
}

BoxState BoxState::centered(std::size_t d, std::size_t coin_dim, int b) {
  return BoxState(coin_dim, std::vector<int>(d, -b),
                  std::vector<std::size_t>(d, static_cast<std::size_t>(2 * b + 1)));
}

BoxState BoxState::grid_period(std::size_t d, std::size_t coin_dim, std::size_t n) {
  const int lo = static_cast<int>(n / 2) - static_cast<int>(n) + 1;
  return BoxState(coin_dim, std::vector<int>(d, lo), std::vector<std::size_t>(d, n));
}

BoxState BoxState::from_lattice(const LatticeState &w) {
  if (w.support_size() == 0)
    return BoxState(w.coin_dim(), std::vector<int>(w.dim(), 0),
                    std::vector<std::size_t>(w.dim(), 1));
  auto [lo, hi] = w.bounding_box();
  std::vector<std::size_t> ext(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i)
    ext[i] = static_cast<std::size_t>(hi[i] - lo[i] + 1);
  return from_lattice(w, lo, ext);
}

BoxState BoxState::from_lattice(const LatticeState &w, std::vector<int> lo,
                                std::vector<std::size_t> ext) {
  BoxState b(w.coin_dim(), std::move(lo), std::move(ext));
  if (b.dim() != w.dim()) throw DimensionError("box rank differs from state rank");
  for (const auto &[x, v] : w.amplitudes()) {
    if (!b.contains(x)) throw DimensionError("site " + x.str() + " lies outside the box");
    b.set(x, v);
  }
  return b;
}

bool BoxState::contains(const LatticePoint &x) const {
  if (x.dim() != dim()) throw DimensionError("lattice point rank differs from box rank");
  for (std::size_t i = 0; i < dim(); ++i) {
    const long off = static_cast<long>(x[i]) - lo_[i];
    if (off < 0 || off >= static_cast<long>(ext_[i])) return false;
  }
  return true;
}

LatticePoint BoxState::site(std::size_t s) const {
  LatticePoint x(dim());
  for (std::size_t i = dim(); i-- > 0;) {
    x[i] = lo_[i] + static_cast<int>(s % ext_[i]);
    s /= ext_[i];
  }
  return x;
}

std::size_t BoxState::site_index(const LatticePoint &x) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < dim(); ++i)
    s = s * ext_[i] + static_cast<std::size_t>(x[i] - lo_[i]);
  return s;
}

CVector BoxState::at(const LatticePoint &x) const {
  if (!contains(x)) return CVector::Zero(static_cast<Eigen::Index>(coin_dim_));
  return Eigen::Map<const CVector>(data_.data() + site_index(x) * coin_dim_,
                                   static_cast<Eigen::Index>(coin_dim_));
}

void BoxState::set(const LatticePoint &x, const CVector &v) {
  if (!contains(x)) throw DimensionError("site " + x.str() + " lies outside the box");
  if (static_cast<std::size_t>(v.size()) != coin_dim_)
    throw DimensionError("amplitude has wrong coin dimension");
  std::copy(v.data(), v.data() + v.size(), data_.begin() + site_index(x) * coin_dim_);
}

double BoxState::norm_squared() const {
  std::vector<double> parts(data_.size());
  std::transform(data_.begin(), data_.end(), parts.begin(),
                 [](Complex c) { return std::norm(c); });
  return pairwise_sum(std::span<const double>(parts));
}

LatticeState BoxState::to_lattice() const {
  LatticeState w(dim(), coin_dim_);
  for (std::size_t s = 0; s < sites_; ++s) {
    Eigen::Map<const CVector> v(data_.data() + s * coin_dim_,
                                static_cast<Eigen::Index>(coin_dim_));
    if (!v.isZero(0.0)) w.set(site(s), v);
  }
  return w;
}

double GridField::mean_norm_squared() const {
  std::vector<double> parts(data.size());
  std::transform(data.begin(), data.end(), parts.begin(),
                 [](Complex c) { return std::norm(c); });
  return pairwise_sum(std::span<const double>(parts)) / static_cast<double>(grid.size());
}

namespace {

std::size_t wrap(long x, std::size_t n) {
  const long m = static_cast<long>(n);
  long r = x % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

// In-place multi-dimensional DFT over the grid axes for each coin component.
void dft_inplace(std::vector<Complex> &data, std::size_t d, std::size_t n,
                 std::size_t coin_dim, int sign) {
  std::vector<int> dims(d, static_cast<int>(n));
  auto *p = reinterpret_cast<fftw_complex *>(data.data());
  const int howmany = static_cast<int>(coin_dim);
  fftw_plan plan = fftw_plan_many_dft(static_cast<int>(d), dims.data(), howmany, p, nullptr,
                                      howmany, 1, p, nullptr, howmany, 1, sign,
                                      FFTW_ESTIMATE);
  if (!plan) throw std::runtime_error("FFTW planning failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

std::size_t grid_index_of(const LatticePoint &x, const TorusGrid &grid) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < grid.dim(); ++i) k = k * grid.n() + wrap(x[i], grid.n());
  return k;
}

}  // namespace

GridField to_fourier(const BoxState &w, const TorusGrid &grid) {
  if (w.dim() != grid.dim()) throw DimensionError("box rank differs from grid rank");
  for (std::size_t e : w.extent())
    if (e > grid.n())
      throw AliasingError("box side " + std::to_string(e) + " exceeds grid length " +
                          std::to_string(grid.n()));
  const std::size_t D = w.coin_dim();
  GridField f(grid, D);
  for (std::size_t s = 0; s < w.site_count(); ++s) {
    const std::size_t k = grid_index_of(w.site(s), grid);
    std::copy_n(w.data().begin() + s * D, D, f.data.begin() + k * D);
  }
  // z_k^x = exp(+2 pi i k x / N): FFTW's backward sign.
  dft_inplace(f.data, grid.dim(), grid.n(), D, FFTW_BACKWARD);
  return f;
}

BoxState from_fourier(const GridField &f, std::vector<int> lo, std::vector<std::size_t> ext) {
  BoxState out(f.coin_dim, std::move(lo), std::move(ext));
  if (out.dim() != f.grid.dim()) throw DimensionError("box rank differs from grid rank");
  for (std::size_t e : out.extent())
    if (e > f.grid.n())
      throw AliasingError("box side " + std::to_string(e) + " exceeds grid length " +
                          std::to_string(f.grid.n()));
  std::vector<Complex> buf = f.data;
  dft_inplace(buf, f.grid.dim(), f.grid.n(), f.coin_dim, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(f.grid.size());
  const std::size_t D = f.coin_dim;
  for (std::size_t s = 0; s < out.site_count(); ++s) {
    const std::size_t k = grid_index_of(out.site(s), f.grid);
    for (std::size_t c = 0; c < D; ++c) out.data()[s * D + c] = buf[k * D + c] * scale;
  }
  return out;
}

BoxState from_fourier(const GridField &f) {
  const BoxState box = BoxState::grid_period(f.grid.dim(), f.coin_dim, f.grid.n());
  return from_fourier(f, box.lo(), box.extent());
}

int support_radius(const LatticeState &w) {
  int s = 0;
  for (const auto &[x, v] : w.amplitudes())
    for (int c : x) s = std::max(s, std::abs(c));
  return s;
}

std::size_t no_aliasing_bound(const PeriodicOperator &op, int support_radius, std::size_t n) {
  return 2 * (static_cast<std::size_t>(support_radius) +
              n * static_cast<std::size_t>(op.step_radius())) +
         1;
}

GridPropagator::GridPropagator(const PeriodicOperator &op, const TorusGrid &grid)
    : grid_(grid), coin_dim_(op.coin_dim()) {
  if (grid.dim() != op.dim()) throw DimensionError("grid rank differs from operator rank");
  symbol_.reserve(grid.size());
  values_.reserve(grid.size());
  vectors_.reserve(grid.size());
  fallback_.assign(grid.size(), false);
  UnitaryEigenSolver solver(static_cast<Eigen::Index>(coin_dim_));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CMatrix u = op.symbol_at(grid.point(k));
    bool ok = true;
    try {
      const auto &e = solver.compute(u, 1e-8);
      ok = e.residual <= 1e-10;
      values_.push_back(e.values);
      vectors_.push_back(e.vectors);
    } catch (const EigensolverFailure &) {
      ok = false;
      values_.emplace_back();
      vectors_.emplace_back();
    }
    if (!ok) {
      fallback_[k] = true;
      ++fallback_count_;
    }
    symbol_.push_back(std::move(u));
  }
}

GridField GridPropagator::apply(const GridField &f, std::size_t n) const {
  if (f.grid.dim() != grid_.dim() || f.grid.n() != grid_.n() || f.coin_dim != coin_dim_)
    throw DimensionError("field does not match the propagator grid");
  GridField out(grid_, coin_dim_);
  const int e = static_cast<int>(n);
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    CVector v = f.value(k);
    if (fallback_[k]) {
      for (std::size_t s = 0; s < n; ++s) v = symbol_[k] * v;
    } else {
      CVector c = vectors_[k].adjoint() * v;
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= ipow(values_[k](i), e);
      v = vectors_[k] * c;
    }
    out.value(k) = v;
  }
  return out;
}

GridField evolve_fourier(const PeriodicOperator &op, const GridField &f, std::size_t n) {
  return GridPropagator(op, f.grid).apply(f, n);
}

BoxState evolve_box(const PeriodicOperator &op, const LatticeState &w, std::size_t n,
                    std::size_t grid_n) {
  const std::size_t need = no_aliasing_bound(op, support_radius(w), n);
  if (grid_n < need)
    throw AliasingError("grid length " + std::to_string(grid_n) + " is below the no-aliasing bound " +
                        std::to_string(need) + " for " + std::to_string(n) + " steps");
  const TorusGrid grid(op.dim(), grid_n);
  const GridField f = to_fourier(BoxState::from_lattice(w), grid);
  return from_fourier(evolve_fourier(op, f, n));
}

BoxState project_state(const ProjectionField &field, const LatticeState &w) {
  if (!field.gap_violations.empty())
    throw PreconditionError(std::to_string(field.gap_violations.size()) +
                            " grid points violate the spectral gap condition (first at " +
                            field.grid.describe(field.gap_violations.front()) + ")");
  GridField f = to_fourier(BoxState::from_lattice(w), field.grid);
  for (std::size_t k = 0; k < field.grid.size(); ++k) {
    CVector v = field.r[k] * f.value(k);
    f.value(k) = v;
  }
  return from_fourier(f);
}

BoxState project_state(const PeriodicOperator &op, const LatticeState &w,
                       const TorusGrid &grid, Complex omega, double cluster_tol) {
  return project_state(eigenprojection_field(op, grid, omega, cluster_tol), w);
}

}  // namespace walkspectra
