#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gss/lowrank.hpp"
#include "gss/numerics.hpp"

namespace gss {

/// Row selection over n nodes: conceptually the P x N matrix of identity rows
/// indexed by `selected`, in that order.
struct SubsamplingOperator {
  int n = 0;
  std::vector<int> selected;
};

inline SubsamplingOperator make_operator(int n, std::vector<int> selected) {
  if (n < 1) throw std::invalid_argument("subsampling operator needs at least one node");
  std::vector<char> member(static_cast<std::size_t>(n), 0);
  for (int idx : selected) {
    if (idx < 0 || idx >= n) {
      throw std::invalid_argument("subsampling index " + std::to_string(idx) +
                                  " out of range [0, " + std::to_string(n - 1) + "]");
    }
    if (member[static_cast<std::size_t>(idx)]) {
      throw std::invalid_argument("duplicate subsampling index " + std::to_string(idx));
    }
    member[static_cast<std::size_t>(idx)] = 1;
  }
  if (selected.empty()) throw std::invalid_argument("subsampling set must be nonempty");
  return {n, std::move(selected)};
}

/// Row slice of y at the selected nodes, order matching the operator.
inline Matrixd subsample(const Matrixd& y, const SubsamplingOperator& op) {
  if (y.rows() != op.n) {
    throw std::invalid_argument("subsample: signal has " + std::to_string(y.rows()) +
                                " rows, operator expects " + std::to_string(op.n));
  }
  Matrixd out(static_cast<Eigen::Index>(op.selected.size()), y.cols());
  for (std::size_t k = 0; k < op.selected.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = y.row(op.selected[k]);
  }
  return out;
}

inline Matrixd sampled_t_factor(const LowRankFactorization& fac, const SubsamplingOperator& op) {
  Matrixd ast(static_cast<Eigen::Index>(op.selected.size()), fac.t_factor.cols());
  for (std::size_t k = 0; k < op.selected.size(); ++k) {
    ast.row(static_cast<Eigen::Index>(k)) = fac.t_factor.row(op.selected[k]);
  }
  return ast;
}

/// y_hat = T (A_S T)^{-1} y_S. Throws SingularOperatorError carrying the
/// condition estimate and the selected set when A_S T is numerically singular,
/// so callers can re-select instead of silently degrading.
inline Matrixd reconstruct(const Matrixd& y_s, const LowRankFactorization& fac,
                           const SubsamplingOperator& op) {
  if (static_cast<int>(op.selected.size()) != fac.P) {
    throw std::invalid_argument("reconstruct: |S| = " + std::to_string(op.selected.size()) +
                                " but factorization rank is " + std::to_string(fac.P));
  }
  if (y_s.rows() != fac.P) {
    throw std::invalid_argument("reconstruct: subsampled signal has " + std::to_string(y_s.rows()) +
                                " rows, expected " + std::to_string(fac.P));
  }
  const Matrixd ast = sampled_t_factor(fac, op);
  const double cond = condition_estimate(ast);
  const double limit = 1.0 / std::sqrt(std::numeric_limits<double>::epsilon());
  if (!(cond < limit)) {
    throw SingularOperatorError("singular sampling operator A_S T (condition estimate " +
                                    std::to_string(cond) + ")",
                                cond, op.selected);
  }
  return fac.t_factor * solve_square(ast, y_s);
}

inline constexpr double kErrorDbFloor = -400.0;

struct ReconstructionReport {
  Matrixd y_hat;
  Vectord per_time_error;  // ||y(t) - y_hat(t)|| / ||y(t)|| per column
  double error_db = 0.0;   // 10 log10(||Y - Yhat||_F^2 / ||Y||_F^2), floored at -400
  double low_rank_term = 0.0;  // ||(B - B_tilde) C||_F
  double sampling_term = 0.0;  // ||T (A_S T)^{-1} (Y_tilde_S - Y_S)||_F
  double cond_ast = 0.0;
};

/// Error accounting: total normalized error in dB plus the two-term split of
/// the triangle bound. Verifies the bound (and the zero sampling term for the
/// samp scheme) instead of trusting it.
inline ReconstructionReport error_report(const Matrixd& y, const Matrixd& y_hat, const Matrixd& b,
                                         const LowRankFactorization& fac, const Matrixd& c,
                                         const SubsamplingOperator& op) {
  if (y.rows() != y_hat.rows() || y.cols() != y_hat.cols()) {
    throw std::invalid_argument("error_report: Y and Y_hat shapes disagree");
  }
  const double y_norm = y.norm();
  if (y_norm == 0.0) {
    throw NumericalError("error_report: zero signal matrix, normalized error undefined");
  }

  ReconstructionReport rep;
  rep.y_hat = y_hat;
  const double err = (y - y_hat).norm();
  rep.error_db =
      err == 0.0 ? kErrorDbFloor
                 : std::max(kErrorDbFloor, 10.0 * std::log10((err * err) / (y_norm * y_norm)));

  rep.per_time_error.resize(y.cols());
  for (Eigen::Index t = 0; t < y.cols(); ++t) {
    const double denom = std::max(y.col(t).norm(), 1e-12);
    rep.per_time_error(t) = (y.col(t) - y_hat.col(t)).norm() / denom;
  }

  rep.low_rank_term = ((b - fac.b_tilde) * c).norm();
  const Matrixd y_tilde_s = subsample(fac.b_tilde * c, op);
  const Matrixd y_s = subsample(y, op);
  const Matrixd ast = sampled_t_factor(fac, op);
  rep.cond_ast = condition_estimate(ast);
  const Matrixd sampling_gap = y_tilde_s - y_s;
  rep.sampling_term = (fac.t_factor * solve_square(ast, sampling_gap)).norm();

  const double slack = tol_rel(1e-9, y_norm);
  if (err > rep.low_rank_term + rep.sampling_term + slack) {
    throw NumericalError("error_report: measured error " + std::to_string(err) +
                         " exceeds the triangle bound " +
                         std::to_string(rep.low_rank_term + rep.sampling_term));
  }
  if (fac.scheme == Scheme::samp && rep.sampling_term > slack) {
    throw NumericalError("error_report: sampling term " + std::to_string(rep.sampling_term) +
                         " nonzero under the samp scheme");
  }
  return rep;
}

}  // namespace gss
