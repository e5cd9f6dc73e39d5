#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gss/errors.hpp"

// Dense real-matrix kernel. Everything here is a pure function on immutable
// inputs; Eigen is the only math dependency.

namespace gss {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrixd = DenseMatrix<double>;
using Vectord = DenseVector<double>;

/// Relative tolerance with a 1e-12 absolute floor so zero-norm references stay
/// comparable.
inline double tol_rel(double rel, double scale) {
  return std::max(rel * scale, 1e-12);
}

template <class Derived>
void ensure_finite(const Eigen::MatrixBase<Derived>& m, const char* name) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(name) + " contains non-finite entries");
  }
}

template <class Scalar>
struct SvdResult {
  DenseVector<Scalar> singular_values;  // nonincreasing, nonnegative
  DenseMatrix<Scalar> left_vectors;     // U, orthonormal columns
  DenseMatrix<Scalar> right_vectors;    // V, orthonormal columns
};

/// Full SVD m = U diag(sigma) V^T with singular values sorted nonincreasing.
template <class Scalar>
SvdResult<Scalar> svd(const DenseMatrix<Scalar>& m) {
  ensure_finite(m, "svd input");
  Eigen::JacobiSVD<DenseMatrix<Scalar>> js(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (js.info() != Eigen::Success) {
    throw NumericalError("svd failed to converge on a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix");
  }
  return {js.singularValues(), js.matrixU(), js.matrixV()};
}

/// sigma_max / sigma_min of a square matrix; +inf when exactly singular.
template <class Scalar>
Scalar condition_estimate(const DenseMatrix<Scalar>& a) {
  Eigen::JacobiSVD<DenseMatrix<Scalar>> js(a);
  const DenseVector<Scalar>& sv = js.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) == Scalar(0)) {
    return std::numeric_limits<Scalar>::infinity();
  }
  return sv(0) / sv(sv.size() - 1);
}

/// Solves a x = b for square a via pivoted LU plus one refinement step.
/// Throws SingularOperatorError when the condition estimate exceeds
/// 1/sqrt(machine epsilon).
template <class Scalar>
DenseMatrix<Scalar> solve_square(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("solve_square: lhs is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", expected square");
  }
  if (b.rows() != a.rows()) {
    throw std::invalid_argument("solve_square: rhs has " + std::to_string(b.rows()) +
                                " rows, expected " + std::to_string(a.rows()));
  }
  ensure_finite(a, "solve_square lhs");
  ensure_finite(b, "solve_square rhs");

  const Scalar cond = condition_estimate(a);
  const Scalar limit = Scalar(1) / std::sqrt(std::numeric_limits<Scalar>::epsilon());
  if (!(cond < limit)) {
    throw SingularOperatorError("singular sampling operator: condition estimate " +
                                    std::to_string(static_cast<double>(cond)) +
                                    " exceeds 1/sqrt(eps)",
                                static_cast<double>(cond));
  }

  Eigen::FullPivLU<DenseMatrix<Scalar>> lu(a);
  DenseMatrix<Scalar> x = lu.solve(b);
  x += lu.solve(b - a * x);  // refinement keeps the residual near machine level
  return x;
}

template <class DerivedA, class DerivedB>
DenseMatrix<typename DerivedA::Scalar> matmul(const Eigen::MatrixBase<DerivedA>& a,
                                              const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions disagree (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
  }
  return a.derived() * b.derived();
}

template <class Derived>
DenseMatrix<typename Derived::Scalar> transpose(const Eigen::MatrixBase<Derived>& m) {
  return m.transpose();
}

template <class Derived>
typename Derived::Scalar frobenius_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

template <class Scalar>
Scalar spectral_norm_via_svd(const DenseMatrix<Scalar>& m) {
  Eigen::JacobiSVD<DenseMatrix<Scalar>> js(m);
  return js.singularValues().size() > 0 ? js.singularValues()(0) : Scalar(0);
}

/// Maps each nonzero row to unit l2 norm; all-zero rows stay zero.
template <class Scalar>
DenseMatrix<Scalar> row_normalize(const DenseMatrix<Scalar>& m) {
  DenseMatrix<Scalar> out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const Scalar n = out.row(i).norm();
    if (n > Scalar(0)) {
      out.row(i) /= n;
    }
  }
  return out;
}

}  // namespace gss
