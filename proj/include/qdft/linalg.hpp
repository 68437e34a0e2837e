#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace qdft {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Flip each column so its largest-magnitude entry is positive (first index
/// wins ties). Makes eigenvectors from a symmetric solver reproducible.
template <typename Derived>
void fix_column_signs(Eigen::MatrixBase<Derived>& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index best = 0;
    typename Derived::RealScalar best_abs = -1;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const auto a = std::abs(vectors(r, c));
      if (a > best_abs + 1e-12) {
        best_abs = a;
        best = r;
      }
    }
    if (vectors.rows() > 0 && std::real(vectors(best, c)) < 0) {
      vectors.col(c) *= -1;
    }
  }
}

/// Eigen-decomposition of a real symmetric matrix with ascending eigenvalues
/// and sign-fixed eigenvectors.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

template <typename Derived>
SymmetricEigen symmetric_eigen(const Eigen::MatrixBase<Derived>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.derived());
  SymmetricEigen out{solver.eigenvalues(), solver.eigenvectors()};
  fix_column_signs(out.vectors);
  return out;
}

template <typename Derived>
Matrix symmetrized(const Eigen::MatrixBase<Derived>& m) {
  return 0.5 * (m + m.transpose());
}

}  // namespace qdft
