#include "walkspectra/laurent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <optional>

#include "walkspectra/numeric.hpp"

namespace walkspectra {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(std::size_t d, Complex c) {
  LaurentPoly p(d);
  if (std::abs(c) > kLaurentPruneEpsilon) p.terms_.emplace(Exponent(d), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent &e, Complex c) {
  LaurentPoly p(e.dim());
  if (std::abs(c) > kLaurentPruneEpsilon) p.terms_.emplace(e, c);
  return p;
}

void LaurentPoly::check_dim(const LaurentPoly &o) const {
  if (o.d_ != d_)
    throw DimensionError("Laurent polynomials in " + std::to_string(d_) +
                         " and " + std::to_string(o.d_) + " variables");
}

Complex LaurentPoly::coeff(const Exponent &e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly::add_term(const Exponent &e, Complex c) {
  if (e.dim() != d_) throw DimensionError("exponent has wrong rank");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto &[e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

LaurentPoly &LaurentPoly::prune(double eps) {
  std::erase_if(terms_, [eps](const auto &kv) { return std::abs(kv.second) <= eps; });
  return *this;
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
  check_dim(o);
  for (const auto &[e, c] : o.terms_) add_term(e, c);
  return prune();
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o) {
  check_dim(o);
  for (const auto &[e, c] : o.terms_) add_term(e, -c);
  return prune();
}

LaurentPoly &LaurentPoly::operator*=(Complex s) {
  for (auto &[e, c] : terms_) c *= s;
  return prune();
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
  a.check_dim(b);
  LaurentPoly r(a.d_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r.prune();
}

Complex LaurentPoly::eval(std::span<const Complex> z) const {
  if (z.size() != d_) throw DimensionError("evaluation point has wrong rank");
  for (std::size_t i = 0; i < d_; ++i)
    if (z[i] == Complex(0.0))
      throw DomainError("Laurent polynomial evaluated at a zero coordinate");
  if (terms_.empty()) return 0.0;

  // Per-axis power tables over the exponent range in use.
  std::vector<int> lo(d_, 0), hi(d_, 0);
  for (const auto &[e, c] : terms_) {
    for (std::size_t i = 0; i < d_; ++i) {
      lo[i] = std::min(lo[i], e[i]);
      hi[i] = std::max(hi[i], e[i]);
    }
  }
  std::vector<std::vector<Complex>> pw(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    pw[i].resize(static_cast<std::size_t>(hi[i] - lo[i] + 1));
    for (int k = lo[i]; k <= hi[i]; ++k)
      pw[i][static_cast<std::size_t>(k - lo[i])] = ipow(z[i], k);
  }
  Complex s(0.0);
  for (const auto &[e, c] : terms_) {
    Complex m = c;
    for (std::size_t i = 0; i < d_; ++i)
      m *= pw[i][static_cast<std::size_t>(e[i] - lo[i])];
    s += m;
  }
  return s;
}

double max_coeff_distance(const LaurentPoly &a, const LaurentPoly &b) {
  a.check_dim(b);
  double m = 0.0;
  for (const auto &[e, c] : a.terms_) m = std::max(m, std::abs(c - b.coeff(e)));
  for (const auto &[e, c] : b.terms_)
    if (!a.terms_.contains(e)) m = std::max(m, std::abs(c));
  return m;
}

// ------------------------------------------------------------------- ZetaPoly

ZetaPoly::ZetaPoly(std::vector<LaurentPoly> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("ZetaPoly needs at least one coefficient");
  const std::size_t d = coeffs_.front().dim();
  for (const auto &c : coeffs_)
    if (c.dim() != d) throw DimensionError("ZetaPoly coefficients differ in rank");
  // Strip vanishing leading coefficients; the zero polynomial keeps one entry.
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                            [](const LaurentPoly &p) { return !p.is_zero(); });
  if (first == coeffs_.end()) first = coeffs_.end() - 1;
  coeffs_.erase(coeffs_.begin(), first);
}

ZetaPoly ZetaPoly::from_roots(std::size_t d, std::span<const Complex> roots) {
  ZetaPoly f({LaurentPoly::constant(d, 1.0)});
  for (Complex r : roots)
    f = f * ZetaPoly({LaurentPoly::constant(d, 1.0), LaurentPoly::constant(d, -r)});
  return f;
}

bool ZetaPoly::is_monic() const {
  const auto &lc = leading();
  return lc.term_count() == 1 && lc.terms().begin()->first.is_zero() &&
         std::abs(lc.terms().begin()->second - Complex(1.0)) <= kLaurentPruneEpsilon;
}

Complex ZetaPoly::eval(Complex zeta, std::span<const Complex> z) const {
  Complex acc(0.0);
  for (const auto &c : coeffs_) acc = acc * zeta + c.eval(z);
  return acc;
}

LaurentPoly ZetaPoly::at_zeta(Complex zeta0) const {
  LaurentPoly acc(dim());
  for (const auto &c : coeffs_) {
    acc *= zeta0;
    acc += c;
  }
  return acc;
}

ZetaPoly ZetaPoly::derivative() const {
  const std::size_t n = degree();
  if (n == 0) return ZetaPoly({LaurentPoly(dim())});
  std::vector<LaurentPoly> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(coeffs_[k] * Complex(static_cast<double>(n - k)));
  return ZetaPoly(std::move(out));
}

ZetaPoly operator*(const ZetaPoly &a, const ZetaPoly &b) {
  const std::size_t n = a.degree() + b.degree();
  std::vector<LaurentPoly> out(n + 1, LaurentPoly(a.dim()));
  for (std::size_t i = 0; i <= a.degree(); ++i)
    for (std::size_t j = 0; j <= b.degree(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ZetaPoly(std::move(out));
}

namespace {

// Aligns both operands on powers of zeta (index 0 = zeta^0).
std::vector<LaurentPoly> ascending(const ZetaPoly &f, std::size_t len) {
  std::vector<LaurentPoly> v(len, LaurentPoly(f.dim()));
  for (std::size_t j = 0; j <= f.degree(); ++j) v[j] = f.coeff_of_power(j);
  return v;
}

ZetaPoly from_ascending(std::vector<LaurentPoly> v) {
  std::reverse(v.begin(), v.end());
  return ZetaPoly(std::move(v));
}

}  // namespace

ZetaPoly operator+(const ZetaPoly &a, const ZetaPoly &b) {
  const std::size_t len = std::max(a.degree(), b.degree()) + 1;
  auto va = ascending(a, len), vb = ascending(b, len);
  for (std::size_t j = 0; j < len; ++j) va[j] += vb[j];
  return from_ascending(std::move(va));
}

ZetaPoly operator-(const ZetaPoly &a, const ZetaPoly &b) {
  const std::size_t len = std::max(a.degree(), b.degree()) + 1;
  auto va = ascending(a, len), vb = ascending(b, len);
  for (std::size_t j = 0; j < len; ++j) va[j] -= vb[j];
  return from_ascending(std::move(va));
}

double max_coeff_distance(const ZetaPoly &a, const ZetaPoly &b) {
  const std::size_t len = std::max(a.degree(), b.degree()) + 1;
  auto va = ascending(a, len), vb = ascending(b, len);
  double m = 0.0;
  for (std::size_t j = 0; j < len; ++j) m = std::max(m, max_coeff_distance(va[j], vb[j]));
  return m;
}

// --------------------------------------------------------------- SymbolMatrix

SymbolMatrix::SymbolMatrix(std::size_t d, std::size_t rows, std::size_t cols)
    : d_(d), rows_(rows), cols_(cols), entries_(rows * cols, LaurentPoly(d)) {}

CMatrix SymbolMatrix::eval(std::span<const Complex> z) const {
  CMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).eval(z);
  return m;
}

SymbolMatrix symbol_matrix(const PeriodicOperator &op) {
  const std::size_t D = op.coin_dim();
  SymbolMatrix s(op.dim(), D, D);
  for (const auto &[a, c] : op.steps())
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j)
        s(i, j) += LaurentPoly::monomial(
            a, c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  return s;
}

namespace {

SymbolMatrix multiply(const SymbolMatrix &a, const SymbolMatrix &b) {
  SymbolMatrix r(a.dim(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

}  // namespace

ZetaPoly char_poly(const SymbolMatrix &sym) {
  if (sym.rows() != sym.cols())
    throw DimensionError("characteristic polynomial of a non-square matrix");
  const std::size_t n = sym.rows();
  const std::size_t d = sym.dim();
  // coeffs[k] multiplies zeta^{n-k}; coeffs[0] = 1.
  std::vector<LaurentPoly> coeffs(n + 1, LaurentPoly(d));
  coeffs[0] = LaurentPoly::constant(d, 1.0);
  SymbolMatrix m(d, n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k
    SymbolMatrix next = multiply(sym, m);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += coeffs[k - 1];
    SymbolMatrix am = multiply(sym, next);
    LaurentPoly tr(d);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    coeffs[k] = tr * Complex(-1.0 / static_cast<double>(k));
    m = std::move(next);
  }
  return ZetaPoly(std::move(coeffs));
}

RootDivision divide_by_root(const ZetaPoly &f, Complex lambda) {
  const std::size_t n = f.degree();
  if (n == 0) throw std::invalid_argument("divide_by_root needs degree >= 1");
  const auto &p = f.coeffs();
  std::vector<LaurentPoly> q;
  q.reserve(n);
  q.push_back(p[0]);
  for (std::size_t k = 1; k < n; ++k) q.push_back(p[k] + q.back() * lambda);
  LaurentPoly r = p[n] + q.back() * lambda;
  return {ZetaPoly(std::move(q)), std::move(r)};
}

LaurentPoly laurent_determinant(const std::vector<std::vector<LaurentPoly>> &m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  for (const auto &row : m)
    if (row.size() != n) throw DimensionError("determinant of a non-square matrix");
  if (n > 20) throw std::invalid_argument("matrix too large for cofactor expansion");
  const std::size_t d = m[0][0].dim();

  // minor[mask] = det of rows (n - popcount(mask) .. n-1) x columns in mask.
  std::vector<std::optional<LaurentPoly>> memo(std::size_t{1} << n);
  auto solve = [&](auto &&self, std::uint32_t mask) -> const LaurentPoly & {
    auto &slot = memo[mask];
    if (slot) return *slot;
    const int k = std::popcount(mask);
    if (k == 0) {
      slot = LaurentPoly::constant(d, 1.0);
      return *slot;
    }
    const std::size_t row = n - static_cast<std::size_t>(k);
    LaurentPoly acc(d);
    int pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const LaurentPoly &a = m[row][j];
      if (!a.is_zero()) {
        const LaurentPoly &minor = self(self, mask & ~(1u << j));
        if (!minor.is_zero()) {
          LaurentPoly t = a * minor;
          if (pos % 2) acc -= t;
          else acc += t;
        }
      }
      ++pos;
    }
    slot = std::move(acc);
    return *slot;
  };
  return solve(solve, static_cast<std::uint32_t>((std::size_t{1} << n) - 1));
}

LaurentPoly resultant_zeta(const ZetaPoly &f, const ZetaPoly &g) {
  if (f.dim() != g.dim()) throw DimensionError("resultant of polynomials of different rank");
  if (f.leading().is_zero() || g.leading().is_zero())
    throw std::invalid_argument("resultant of a zero polynomial");
  const std::size_t n = f.degree(), m = g.degree();
  if (n == 0 && m == 0) return LaurentPoly::constant(f.dim(), 1.0);
  const std::size_t size = n + m;
  std::vector<std::vector<LaurentPoly>> syl(size,
                                            std::vector<LaurentPoly>(size, LaurentPoly(f.dim())));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) syl[r][r + k] = f.coeffs()[k];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) syl[m + r][r + k] = g.coeffs()[k];
  return laurent_determinant(syl);
}

LaurentPoly discriminant(const ZetaPoly &f) {
  if (f.degree() < 2) throw std::invalid_argument("discriminant needs degree >= 2");
  if (!f.is_monic()) throw std::invalid_argument("discriminant expects a monic polynomial");
  const std::size_t n = f.degree();
  LaurentPoly r = resultant_zeta(f, f.derivative());
  if ((n * (n - 1) / 2) % 2) r *= Complex(-1.0);
  return r;
}

}  // namespace walkspectra
