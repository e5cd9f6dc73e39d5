#pragma once

#include <string>
#include <vector>

#include "gss/lowrank.hpp"
#include "gss/numerics.hpp"
#include "gss/reconstruct.hpp"

namespace gss {

struct RemovalRecord {
  int removed = -1;
  int pair_i = -1;
  int pair_j = -1;
  double rowsum_i = 0.0;
  double rowsum_j = 0.0;
};

struct SelectionResult {
  std::vector<int> selected;  // ascending
  std::vector<RemovalRecord> removal_trace;
  Scheme seeded_with = Scheme::svd;  // which matrix seeded B_sel: B_tilde_svd or B
};

struct GreedyOptions {
  // Row sums over the full correlation matrix by default; the active-only
  // variant restricts them to the surviving set each iteration.
  bool rowsum_active_only = false;
};

/// abs-valued row Gram of the row-normalized matrix, zero diagonal. Entry
/// (i, j) is |<row_i, row_j>| after unit-normalizing rows; zero rows correlate
/// to zero with everything.
inline Matrixd node_correlation_matrix(const Matrixd& b_sel) {
  if (b_sel.rows() != b_sel.cols()) {
    throw std::invalid_argument("node_correlation_matrix: matrix must be square");
  }
  const Matrixd rn = row_normalize(b_sel);
  const auto n = b_sel.rows();
  Matrixd corr = Matrixd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::min(1.0, std::abs(rn.row(i).dot(rn.row(j))));
      corr(i, j) = v;
      corr(j, i) = v;
    }
  }
  return corr;
}

/// Greedy removal on a precomputed correlation matrix: repeatedly find the
/// most correlated surviving pair and drop its higher-row-sum member.
/// Ties: the argmax pair is the lexicographically smallest; equal row sums
/// remove the second node of the pair.
inline SelectionResult greedy_select_on_correlation(const Matrixd& corr, int P,
                                                    Scheme seeded_with,
                                                    const GreedyOptions& opts = {}) {
  const int n = static_cast<int>(corr.rows());
  if (corr.cols() != n) throw std::invalid_argument("greedy_select: correlation must be square");
  if (P < 1 || P > n) {
    throw std::invalid_argument("greedy_select: P must lie in [1, " + std::to_string(n) + "]");
  }
  std::vector<char> active(static_cast<std::size_t>(n), 1);
  Vectord full_rowsum = corr.rowwise().sum();

  SelectionResult res;
  res.seeded_with = seeded_with;
  int remaining = n;
  while (remaining > P) {
    int best_i = -1;
    int best_j = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!active[static_cast<std::size_t>(j)]) continue;
        if (corr(i, j) > best) {
          best = corr(i, j);
          best_i = i;
          best_j = j;
        }
      }
    }
    auto rowsum = [&](int i) {
      if (!opts.rowsum_active_only) return full_rowsum(i);
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (active[static_cast<std::size_t>(j)]) s += corr(i, j);
      }
      return s;
    };
    RemovalRecord rec;
    rec.pair_i = best_i;
    rec.pair_j = best_j;
    rec.rowsum_i = rowsum(best_i);
    rec.rowsum_j = rowsum(best_j);
    rec.removed = rec.rowsum_i > rec.rowsum_j ? best_i : best_j;
    active[static_cast<std::size_t>(rec.removed)] = 0;
    --remaining;
    res.removal_trace.push_back(rec);
  }
  for (int i = 0; i < n; ++i) {
    if (active[static_cast<std::size_t>(i)]) res.selected.push_back(i);
  }
  return res;
}

inline SelectionResult greedy_select(const Matrixd& b_sel, int P, Scheme seeded_with,
                                     const GreedyOptions& opts = {}) {
  return greedy_select_on_correlation(node_correlation_matrix(b_sel), P, seeded_with, opts);
}

struct SubsetScore {
  std::vector<int> subset;
  bool feasible = false;
  double error = 0.0;  // ||Y - Y_hat||_F when feasible
};

struct BruteForceSelection {
  SelectionResult result;  // removal_trace is empty: pair/rowsum records are greedy-specific
  double best_error = 0.0;
  std::vector<SubsetScore> scores;
};

inline constexpr int kBruteForceMaxNodes = 12;

/// Exhaustive oracle: scores every P-subset by actual reconstruction error of
/// Y = B c against the scheme's approximation, skipping subsets with singular
/// A_S T. Returns the lexicographically smallest argmin. Guarded to N <= 12.
inline BruteForceSelection brute_force_select(const Matrixd& b, int P, const Matrixd& c_oracle,
                                              Scheme scheme) {
  const int n = static_cast<int>(b.rows());
  if (n > kBruteForceMaxNodes) {
    throw ConfigError("brute_force_select refuses N = " + std::to_string(n) +
                      " (limit " + std::to_string(kBruteForceMaxNodes) +
                      "); use greedy_select instead");
  }
  if (P < 1 || P > n) {
    throw std::invalid_argument("brute_force_select: P must lie in [1, " + std::to_string(n) +
                                "]");
  }
  const Matrixd y = matmul(b, c_oracle);
  LowRankFactorization svd_fac;
  if (scheme == Scheme::svd) svd_fac = approx_svd(b, P);

  BruteForceSelection out;
  out.result.seeded_with = scheme;
  out.best_error = std::numeric_limits<double>::infinity();

  std::vector<int> subset(static_cast<std::size_t>(P));
  for (int k = 0; k < P; ++k) subset[static_cast<std::size_t>(k)] = k;
  while (true) {
    SubsetScore score;
    score.subset = subset;
    try {
      const SubsamplingOperator op = make_operator(n, subset);
      const LowRankFactorization fac = scheme == Scheme::svd ? svd_fac : approx_samp(b, subset);
      const Matrixd y_hat = reconstruct(subsample(y, op), fac, op);
      score.feasible = true;
      score.error = (y - y_hat).norm();
      if (score.error < out.best_error) {
        out.best_error = score.error;
        out.result.selected = subset;
      }
    } catch (const NumericalError&) {
      score.feasible = false;  // singular A_S T or rank-deficient row block
    }
    out.scores.push_back(std::move(score));

    // next combination in lexicographic order
    int k = P - 1;
    while (k >= 0 && subset[static_cast<std::size_t>(k)] == n - P + k) --k;
    if (k < 0) break;
    ++subset[static_cast<std::size_t>(k)];
    for (int l = k + 1; l < P; ++l) {
      subset[static_cast<std::size_t>(l)] = subset[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
  if (out.result.selected.empty()) {
    throw NumericalError("brute_force_select: no feasible subset of size " + std::to_string(P));
  }
  return out;
}

}  // namespace gss
