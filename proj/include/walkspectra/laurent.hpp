#ifndef WALKSPECTRA_LAURENT_HPP
#define WALKSPECTRA_LAURENT_HPP

// Laurent polynomials in z = (z_1, ..., z_d), polynomials in zeta over that
// ring, and the symbol-level algebra built on them (characteristic
// polynomials, division by (zeta - lambda), resultants, discriminants).

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "walkspectra/lattice.hpp"

namespace walkspectra {

/// Coefficients with magnitude at or below this are dropped after every ring
/// operation.
inline constexpr double kLaurentPruneEpsilon = 1e-13;

class LaurentPoly {
public:
  explicit LaurentPoly(std::size_t d) : d_(d) {}

  static LaurentPoly constant(std::size_t d, Complex c);
  static LaurentPoly monomial(const Exponent &e, Complex c = 1.0);

  std::size_t dim() const { return d_; }
  const std::map<Exponent, Complex> &terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Complex coeff(const Exponent &e) const;
  /// Adds c to the coefficient of z^e (no pruning).
  void add_term(const Exponent &e, Complex c);
  double max_abs_coeff() const;

  /// Drops coefficients with |c| <= eps.
  LaurentPoly &prune(double eps = kLaurentPruneEpsilon);

  LaurentPoly &operator+=(const LaurentPoly &o);
  LaurentPoly &operator-=(const LaurentPoly &o);
  LaurentPoly &operator*=(Complex s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, Complex s) { return a *= s; }
  friend LaurentPoly operator*(Complex s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
  LaurentPoly operator-() const { return *this * Complex(-1.0); }

  /// Value at z in (C \ {0})^d. Throws DomainError on a zero coordinate.
  Complex eval(std::span<const Complex> z) const;

  /// Coefficientwise max |a - b|.
  friend double max_coeff_distance(const LaurentPoly &a, const LaurentPoly &b);

private:
  void check_dim(const LaurentPoly &o) const;

  std::size_t d_;
  std::map<Exponent, Complex> terms_;
};

/// Polynomial in zeta with Laurent coefficients, leading coefficient first:
/// f = sum_j p_{n-j} zeta^j, so coeffs()[0] multiplies zeta^n.
class ZetaPoly {
public:
  explicit ZetaPoly(std::vector<LaurentPoly> coeffs);

  /// The polynomial prod (zeta - r_i) with constant roots.
  static ZetaPoly from_roots(std::size_t d, std::span<const Complex> roots);

  std::size_t dim() const { return coeffs_.front().dim(); }
  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<LaurentPoly> &coeffs() const { return coeffs_; }
  const LaurentPoly &leading() const { return coeffs_.front(); }
  /// Coefficient of zeta^j.
  const LaurentPoly &coeff_of_power(std::size_t j) const {
    return coeffs_[degree() - j];
  }
  bool is_monic() const;

  Complex eval(Complex zeta, std::span<const Complex> z) const;
  /// f(zeta0, .) as a Laurent polynomial in z.
  LaurentPoly at_zeta(Complex zeta0) const;
  ZetaPoly derivative() const;

  friend ZetaPoly operator*(const ZetaPoly &a, const ZetaPoly &b);
  friend ZetaPoly operator+(const ZetaPoly &a, const ZetaPoly &b);
  friend ZetaPoly operator-(const ZetaPoly &a, const ZetaPoly &b);

  /// max over zeta-powers of the coefficientwise distance.
  friend double max_coeff_distance(const ZetaPoly &a, const ZetaPoly &b);

private:
  std::vector<LaurentPoly> coeffs_;
};

/// D x D matrix of Laurent polynomials (the symbol as a Laurent matrix).
class SymbolMatrix {
public:
  SymbolMatrix(std::size_t d, std::size_t rows, std::size_t cols);

  std::size_t dim() const { return d_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const LaurentPoly &operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  LaurentPoly &operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  CMatrix eval(std::span<const Complex> z) const;

private:
  std::size_t d_, rows_, cols_;
  std::vector<LaurentPoly> entries_;
};

/// Entry (i,j) = sum_a C(a)_{ij} z^a.
SymbolMatrix symbol_matrix(const PeriodicOperator &op);

/// det(zeta - A) by the Faddeev-LeVerrier recursion over the Laurent ring.
ZetaPoly char_poly(const SymbolMatrix &sym);

struct RootDivision {
  ZetaPoly quotient;
  LaurentPoly remainder;
};

/// f = (zeta - lambda) q + r with r of zeta-degree 0 (synthetic division).
RootDivision divide_by_root(const ZetaPoly &f, Complex lambda);

/// Sylvester resultant in zeta. Convention: res(f, g) = lc(f)^deg g *
/// lc(g)^deg f * prod (a_i - b_j) over roots a_i of f and b_j of g.
LaurentPoly resultant_zeta(const ZetaPoly &f, const ZetaPoly &g);

/// Discriminant of a monic polynomial, signed so that zeta^2 + b zeta + c
/// gives b^2 - 4c: (-1)^{n(n-1)/2} res(f, f').
LaurentPoly discriminant(const ZetaPoly &f);

/// Determinant of a square matrix of Laurent polynomials by memoized
/// cofactor expansion (exponential in size; intended for size <= ~12).
LaurentPoly laurent_determinant(const std::vector<std::vector<LaurentPoly>> &m);

}  // namespace walkspectra

#endif  // WALKSPECTRA_LAURENT_HPP
