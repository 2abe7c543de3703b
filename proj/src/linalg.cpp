#include "walkspectra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace walkspectra {

const UnitaryEigen &UnitaryEigenSolver::compute(const CMatrix &a, double cluster_tol) {
  const Eigen::Index n = a.rows();
  schur_.compute(a, true);
  if (schur_.info() != Eigen::Success)
    throw EigensolverFailure("Schur decomposition did not converge");
  const CMatrix &t = schur_.matrixT();
  const CMatrix &u = schur_.matrixU();

  order_.resize(static_cast<std::size_t>(n));
  std::iota(order_.begin(), order_.end(), Eigen::Index{0});
  std::stable_sort(order_.begin(), order_.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::arg(t(i, i)) < std::arg(t(j, j));
  });
  out_.values.resize(n);
  out_.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order_[static_cast<std::size_t>(k)];
    out_.values(k) = t(src, src);
    out_.vectors.col(k) = u.col(src);
  }

  // Chain neighbours on the circle; the last and first entries are neighbours
  // too.
  out_.cluster.assign(static_cast<std::size_t>(n), 0);
  int label = 0;
  for (Eigen::Index k = 1; k < n; ++k) {
    if (std::abs(out_.values(k) - out_.values(k - 1)) > cluster_tol) ++label;
    out_.cluster[static_cast<std::size_t>(k)] = label;
  }
  if (n > 1 && label > 0 &&
      std::abs(out_.values(n - 1) - out_.values(0)) <= cluster_tol) {
    const int last = label;
    for (auto &c : out_.cluster)
      if (c == last) c = 0;
    --label;
  }
  out_.cluster_count = n ? label + 1 : 0;

  for (int c = 0; c < out_.cluster_count; ++c) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index k = 0; k < n; ++k)
      if (out_.cluster[static_cast<std::size_t>(k)] == c) idx.push_back(k);
    if (idx.size() < 2) continue;
    CMatrix block(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
      block.col(static_cast<Eigen::Index>(j)) = out_.vectors.col(idx[j]);
    Eigen::HouseholderQR<CMatrix> qr(block);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, block.cols());
    for (std::size_t j = 0; j < idx.size(); ++j)
      out_.vectors.col(idx[j]) = q.col(static_cast<Eigen::Index>(j));
  }

  out_.residual =
      (out_.vectors * out_.values.asDiagonal() * out_.vectors.adjoint() - a)
          .cwiseAbs()
          .maxCoeff();
  return out_;
}

UnitaryEigen decompose_unitary(const CMatrix &a, double cluster_tol) {
  UnitaryEigenSolver s(a.rows());
  return s.compute(a, cluster_tol);
}

double spectral_norm(const CMatrix &m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace walkspectra
