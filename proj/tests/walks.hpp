#ifndef WALKSPECTRA_TESTS_WALKS_HPP
#define WALKSPECTRA_TESTS_WALKS_HPP

// Literal operators used across the tests. They double as the golden copies of
// the CLI presets and of the matrices listed in docs/presets.md.

#include <cmath>
#include <map>

#include "walkspectra/lattice.hpp"

namespace walks {

using walkspectra::CMatrix;
using walkspectra::Complex;
using walkspectra::CVector;
using walkspectra::LatticePoint;
using walkspectra::LatticeState;
using walkspectra::PeriodicOperator;

inline PeriodicOperator hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix left(2, 2), right(2, 2);
  left << s, s, 0, 0;
  right << 0, 0, s, -s;
  return PeriodicOperator(1, 2, {{LatticePoint{-1}, left}, {LatticePoint{1}, right}});
}

inline PeriodicOperator grover() {
  CMatrix g = CMatrix::Constant(4, 4, 0.5) - CMatrix::Identity(4, 4);
  std::map<LatticePoint, CMatrix> steps;
  const LatticePoint shifts[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  for (int c = 0; c < 4; ++c) {
    CMatrix e = CMatrix::Zero(4, 4);
    e(c, c) = 1.0;
    steps[shifts[c]] = e * g;
  }
  return PeriodicOperator(2, 4, steps);
}

inline PeriodicOperator constant_coin() {
  CMatrix c(2, 2);
  c << 1, 0, 0, Complex(0, 1);
  return PeriodicOperator(1, 2, {{LatticePoint{0}, c}});
}

inline PeriodicOperator pure_shift() {
  return PeriodicOperator(1, 1, {{LatticePoint{1}, CMatrix::Identity(1, 1)}});
}

inline CVector basis(Eigen::Index n, Eigen::Index i) {
  CVector v = CVector::Zero(n);
  v(i) = 1.0;
  return v;
}

inline LatticeState delta0(const PeriodicOperator &op, const CVector &phi) {
  return LatticeState::delta(LatticePoint(op.dim()), phi);
}

}  // namespace walks

#endif  // WALKSPECTRA_TESTS_WALKS_HPP
