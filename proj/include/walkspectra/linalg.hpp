#ifndef WALKSPECTRA_LINALG_HPP
#define WALKSPECTRA_LINALG_HPP

#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "walkspectra/lattice.hpp"

namespace walkspectra {

/// Diagonalization of a (numerically) unitary matrix A = V diag(values) V*.
struct UnitaryEigen {
  CVector values;            // sorted by principal argument
  CMatrix vectors;           // orthonormal columns, matching values
  std::vector<int> cluster;  // cluster label per eigenvalue, 0-based, in order
  int cluster_count = 0;
  double residual = 0.0;     // max-abs entry of V diag V* - A
};

/// Schur-based eigensolver for normal matrices. For a normal matrix the Schur
/// form is diagonal, so the Schur vectors are an orthonormal eigenbasis even
/// inside degenerate clusters. Eigenvalues whose circular neighbours lie
/// within cluster_tol are chained into one cluster and that cluster's
/// vectors are re-orthonormalized.
class UnitaryEigenSolver {
public:
  explicit UnitaryEigenSolver(Eigen::Index dim) : schur_(dim) {}

  const UnitaryEigen &compute(const CMatrix &a, double cluster_tol);
  const UnitaryEigen &result() const { return out_; }

private:
  Eigen::ComplexSchur<CMatrix> schur_;
  UnitaryEigen out_;
  std::vector<Eigen::Index> order_;
};

/// Convenience wrapper around UnitaryEigenSolver.
UnitaryEigen decompose_unitary(const CMatrix &a, double cluster_tol = 1e-8);

/// Largest singular value.
double spectral_norm(const CMatrix &m);

}  // namespace walkspectra

#endif  // WALKSPECTRA_LINALG_HPP
