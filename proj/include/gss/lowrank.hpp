#pragma once

#include <string>
#include <vector>

#include "gss/numerics.hpp"

namespace gss {

enum class Scheme { svd, samp };

inline const char* to_string(Scheme s) { return s == Scheme::svd ? "svd" : "samp"; }

/// Rank chosen from the tolerance: P is the smallest j >= 1 whose discarded
/// tail energy sum_{i>j} sigma_i^2 stays within epsilon^2 of the total.
struct RankSelection {
  int P = 0;
  double epsilon = 0.0;
  double discarded_energy = 0.0;
  double total_energy = 0.0;
};

inline RankSelection select_rank(const Vectord& singular_values, double epsilon) {
  const auto n = singular_values.size();
  if (n < 1) throw std::invalid_argument("select_rank: empty singular value list");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must lie strictly inside (0, 1)");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(singular_values(i) >= 0.0)) {
      throw std::invalid_argument("select_rank: singular values must be nonnegative");
    }
    if (i > 0 && singular_values(i) > singular_values(i - 1)) {
      throw std::invalid_argument("select_rank: singular values must be nonincreasing");
    }
  }
  if (singular_values(0) == 0.0) {
    throw NumericalError("select_rank: all singular values are zero; nothing to sample");
  }
  // Tail sums accumulated smallest-first for accuracy.
  Vectord tail = Vectord::Zero(n + 1);  // tail(j) = sum_{i > j} sigma_i^2
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    tail(j) = tail(j + 1) + singular_values(j) * singular_values(j);
  }
  const double total = tail(0);
  const double budget = epsilon * epsilon * total;
  RankSelection sel;
  sel.epsilon = epsilon;
  sel.total_energy = total;
  for (Eigen::Index j = 1; j <= n; ++j) {
    if (tail(j) <= budget) {
      sel.P = static_cast<int>(j);
      sel.discarded_energy = tail(j);
      return sel;
    }
  }
  sel.P = static_cast<int>(n);  // tail(n) = 0 always satisfies the budget
  sel.discarded_energy = 0.0;
  return sel;
}

/// Rank-P approximation b_tilde = T F with full column-rank T (N x P).
/// scheme == samp additionally fixes the rows indexed by selected_set to the
/// corresponding rows of B exactly.
struct LowRankFactorization {
  Scheme scheme = Scheme::svd;
  int P = 0;
  Matrixd b_tilde;
  Matrixd t_factor;
  std::vector<int> selected_set;  // samp: defining set; svd: filled once selection runs
};

/// Truncated SVD keeping the P largest singular values; T = U_P.
inline LowRankFactorization approx_svd(const Matrixd& b, int P) {
  const auto n = b.rows();
  if (P < 1 || P > n) {
    throw std::invalid_argument("approx_svd: rank P must lie in [1, " + std::to_string(n) + "]");
  }
  const SvdResult<double> f = svd(b);
  LowRankFactorization out;
  out.scheme = Scheme::svd;
  out.P = P;
  out.t_factor = f.left_vectors.leftCols(P);
  out.b_tilde = out.t_factor * f.singular_values.head(P).asDiagonal() *
                f.right_vectors.leftCols(P).transpose();
  return out;
}

namespace detail {

// Orthonormal basis of the row span of block (rows as vectors), by modified
// Gram-Schmidt with one reorthogonalization pass.
inline Matrixd orthonormal_row_basis(const Matrixd& block) {
  const auto p = block.rows();
  Matrixd q = block;
  for (Eigen::Index k = 0; k < p; ++k) {
    const double original = q.row(k).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index l = 0; l < k; ++l) {
        q.row(k) -= q.row(k).dot(q.row(l)) * q.row(l);
      }
    }
    const double remaining = q.row(k).norm();
    if (remaining <= 1e-12 * std::max(original, 1.0)) {
      throw NumericalError("selection yields rank-deficient row block");
    }
    q.row(k) /= remaining;
  }
  return q;
}

}  // namespace detail

/// Row-copy-plus-projection approximation: rows at s are B's rows verbatim,
/// every other row is the orthogonal projection of B's row onto the span of
/// the selected rows. T is the column block of b_tilde indexed by s.
inline LowRankFactorization approx_samp(const Matrixd& b, const std::vector<int>& s) {
  const auto n = b.rows();
  if (b.cols() != n) throw std::invalid_argument("approx_samp: B must be square");
  if (s.empty() || static_cast<Eigen::Index>(s.size()) > n) {
    throw std::invalid_argument("approx_samp: selected set size must lie in [1, N]");
  }
  std::vector<char> member(static_cast<std::size_t>(n), 0);
  for (int idx : s) {
    if (idx < 0 || idx >= n) {
      throw std::invalid_argument("approx_samp: node index " + std::to_string(idx) +
                                  " out of range");
    }
    if (member[static_cast<std::size_t>(idx)]) {
      throw std::invalid_argument("approx_samp: duplicate node index " + std::to_string(idx));
    }
    member[static_cast<std::size_t>(idx)] = 1;
  }
  const int p = static_cast<int>(s.size());

  Matrixd block(p, n);  // A_S B
  for (int k = 0; k < p; ++k) block.row(k) = b.row(s[static_cast<std::size_t>(k)]);

  {
    Eigen::JacobiSVD<Matrixd> js(block);
    const Vectord& sv = js.singularValues();
    if (sv(sv.size() - 1) <= 1e-10 * sv(0)) {
      throw NumericalError("selection yields rank-deficient row block (sigma_min/sigma_max = " +
                           std::to_string(sv(sv.size() - 1) / std::max(sv(0), 1e-300)) + ")");
    }
  }
  const Matrixd q = detail::orthonormal_row_basis(block);

  LowRankFactorization out;
  out.scheme = Scheme::samp;
  out.P = p;
  out.selected_set = s;
  out.b_tilde.resize(n, n);
  for (int i = 0; i < n; ++i) {
    if (member[static_cast<std::size_t>(i)]) {
      out.b_tilde.row(i) = b.row(i);  // exact copy
    } else {
      out.b_tilde.row(i) = (b.row(i) * q.transpose()) * q;
    }
  }
  out.t_factor.resize(n, p);
  for (int k = 0; k < p; ++k) {
    out.t_factor.col(k) = out.b_tilde.col(s[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// Least-squares coefficient matrix F with T F ~= b_tilde. Diagnostic only:
/// reconstruction never materializes F.
inline Matrixd compute_f(const Matrixd& b_tilde, const Matrixd& t_factor) {
  if (t_factor.rows() != b_tilde.rows()) {
    throw std::invalid_argument("compute_f: T and b_tilde row counts disagree");
  }
  Eigen::ColPivHouseholderQR<Matrixd> qr(t_factor);
  if (qr.rank() < t_factor.cols()) {
    throw NumericalError("compute_f: rank-deficient t_factor (rank " +
                         std::to_string(qr.rank()) + " of " + std::to_string(t_factor.cols()) +
                         ")");
  }
  return qr.solve(b_tilde);
}

}  // namespace gss
