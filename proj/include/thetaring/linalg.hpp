#ifndef THETARING_LINALG_HPP
#define THETARING_LINALG_HPP

// Dense complex linear algebra for the handful of small systems the ring
// constructions need (4x4 solves, 4x5 kernels, a 36x81 rank).

#include "thetaring/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <sstream>
#include <vector>

namespace thetaring {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline double inf_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

inline double inf_norm(const ComplexVector& v) {
  if (v.size() == 0) return 0.0;
  return v.cwiseAbs().maxCoeff();
}

struct SolveResult {
  ComplexVector x;
  double rcond = 0.0; ///< reciprocal condition estimate in the 1-norm
};

/// Partial-pivoted LU solve. Pivots below 1e-13 * ||A||_inf are singular.
inline SolveResult solve(const ComplexMatrix& a, const ComplexVector& b) {
  if (a.rows() != a.cols()) throw UsageError("solve: matrix is not square");
  if (a.rows() != b.size()) throw UsageError("solve: right-hand side has wrong length");
  if (a.rows() == 0) return {ComplexVector(0), 1.0};

  const double norm = inf_norm(a);
  const Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-13 * norm)) {
    std::ostringstream msg;
    msg << "solve: numerically singular matrix (pivot " << min_pivot << ", ||A|| " << norm
        << ")";
    throw SingularityError(msg.str(), min_pivot);
  }
  return {lu.solve(b), lu.rcond()};
}

/// Numerical rank with pivots compared against tol times the largest pivot.
inline int rank(const ComplexMatrix& a, double tol = 1e-9) {
  if (a.size() == 0) return 0;
  Eigen::FullPivLU<ComplexMatrix> lu(a);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

/// Basis of the numerical nullspace, each vector scaled so that its first
/// nonzero coordinate is exactly 1.
inline std::vector<ComplexVector> nullspace(const ComplexMatrix& a, double tol = 1e-9) {
  std::vector<ComplexVector> basis;
  const auto n = a.cols();
  if (n == 0) return basis;

  if (inf_norm(a) == 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) basis.push_back(ComplexVector::Unit(n, i));
    return basis;
  }

  Eigen::FullPivLU<ComplexMatrix> lu(a);
  lu.setThreshold(tol);
  if (lu.dimensionOfKernel() == 0) return basis;

  const ComplexMatrix kernel = lu.kernel();
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    ComplexVector v = kernel.col(c);
    const double scale = inf_norm(v);
    if (scale == 0.0) continue;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12 * scale) {
        v /= v(i);
        v(i) = 1.0;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// ||A v||_inf / (||A||_inf ||v||_inf); zero for a zero matrix.
inline double relative_residual(const ComplexMatrix& a, const ComplexVector& v) {
  const double denom = inf_norm(a) * inf_norm(v);
  if (denom == 0.0) return 0.0;
  return inf_norm(ComplexVector(a * v)) / denom;
}

} // namespace thetaring

#endif // THETARING_LINALG_HPP
