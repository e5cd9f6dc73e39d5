#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gss/numerics.hpp"
#include "gss/rng.hpp"

namespace gss {

/// Undirected weighted graph over nodes 0..n-1: symmetric nonnegative weight
/// matrix with zero diagonal.
struct WeightedGraph {
  int n = 0;
  Matrixd weights;
};

enum class GraphKind { custom, erdos_renyi, complete, bipartite, figure1a };

struct GraphTemplate {
  GraphKind kind = GraphKind::erdos_renyi;
  int n = 5;                   // erdos_renyi / complete node count
  double edge_prob = 0.5;      // erdos_renyi
  int part_a = 2;              // bipartite part sizes
  int part_b = 3;
  double w_lo = 1.0;           // random weight range [w_lo, w_hi]
  double w_hi = 10.0;
  double alpha = 1.0;          // figure1a variable edge weight
  Matrixd weights;             // custom: explicit matrix
  std::uint64_t seed = 0;
};

// The 5-node study graph: complete topology with unit base weights, alpha on
// the pairs (1,3) and (0,4) (nodes 2-4 and 1-5 in 1-based labels).
inline constexpr int kFigure1aNodes = 5;
inline constexpr double kFigure1aBaseWeight = 1.0;

inline WeightedGraph make_weighted_graph(Matrixd w) {
  if (w.rows() < 1 || w.rows() != w.cols()) {
    throw ConfigError("graph weights must be a square matrix with at least one node, got " +
                      std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  }
  ensure_finite(w, "graph weights");
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) {
      throw ConfigError("graph weights must have zero diagonal (node " + std::to_string(i) + ")");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (w(i, j) != w(j, i)) {
        throw ConfigError("graph weights must be exactly symmetric (entry " + std::to_string(i) +
                          "," + std::to_string(j) + ")");
      }
      if (w(i, j) < 0.0) {
        throw ConfigError("graph weights must be nonnegative (entry " + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      }
    }
  }
  return {static_cast<int>(w.rows()), std::move(w)};
}

inline void validate(const GraphTemplate& t) {
  switch (t.kind) {
    case GraphKind::custom:
      if (t.weights.rows() < 2) throw ConfigError("custom graph needs at least 2 nodes");
      break;
    case GraphKind::erdos_renyi:
      if (t.n < 2) throw ConfigError("erdos_renyi graph needs at least 2 nodes");
      if (!(t.edge_prob >= 0.0 && t.edge_prob <= 1.0)) {
        throw ConfigError("erdos_renyi edge probability must lie in [0, 1]");
      }
      if (!(t.w_lo > 0.0 && t.w_lo <= t.w_hi)) {
        throw ConfigError("weight range must satisfy 0 < w_lo <= w_hi");
      }
      break;
    case GraphKind::complete:
      if (t.n < 2) throw ConfigError("complete graph needs at least 2 nodes");
      if (!(t.w_lo > 0.0 && t.w_lo <= t.w_hi)) {
        throw ConfigError("weight range must satisfy 0 < w_lo <= w_hi");
      }
      break;
    case GraphKind::bipartite:
      if (t.part_a < 1 || t.part_b < 1) throw ConfigError("bipartite parts must be nonempty");
      if (t.part_a + t.part_b < 2) throw ConfigError("bipartite graph needs at least 2 nodes");
      if (!(t.w_lo > 0.0 && t.w_lo <= t.w_hi)) {
        throw ConfigError("weight range must satisfy 0 < w_lo <= w_hi");
      }
      break;
    case GraphKind::figure1a:
      if (!(t.alpha > 0.0)) throw ConfigError("figure1a alpha must be positive");
      break;
  }
}

namespace detail {

// Weight draws are keyed by (seed, i, j) with i < j and mirrored, so the
// matrix is symmetric by construction and independent of evaluation order.
inline double edge_weight(std::uint64_t seed, int i, int j, double lo, double hi) {
  const auto a = static_cast<std::uint64_t>(std::min(i, j));
  const auto b = static_cast<std::uint64_t>(std::max(i, j));
  return rng::uniform(rng::derive(seed, rng::kWeight, a, b), lo, hi);
}

inline bool edge_present(std::uint64_t seed, int i, int j, double p) {
  const auto a = static_cast<std::uint64_t>(std::min(i, j));
  const auto b = static_cast<std::uint64_t>(std::max(i, j));
  return rng::uniform01(rng::derive(seed, rng::kEdge, a, b)) < p;
}

}  // namespace detail

/// Deterministic construction: identical (template, seed) yields a bit-for-bit
/// identical graph.
inline WeightedGraph build_graph(const GraphTemplate& t) {
  validate(t);
  switch (t.kind) {
    case GraphKind::custom:
      return make_weighted_graph(t.weights);
    case GraphKind::erdos_renyi: {
      Matrixd w = Matrixd::Zero(t.n, t.n);
      for (int i = 0; i < t.n; ++i) {
        for (int j = i + 1; j < t.n; ++j) {
          if (detail::edge_present(t.seed, i, j, t.edge_prob)) {
            w(i, j) = w(j, i) = detail::edge_weight(t.seed, i, j, t.w_lo, t.w_hi);
          }
        }
      }
      return make_weighted_graph(std::move(w));
    }
    case GraphKind::complete: {
      Matrixd w = Matrixd::Zero(t.n, t.n);
      for (int i = 0; i < t.n; ++i) {
        for (int j = i + 1; j < t.n; ++j) {
          w(i, j) = w(j, i) = detail::edge_weight(t.seed, i, j, t.w_lo, t.w_hi);
        }
      }
      return make_weighted_graph(std::move(w));
    }
    case GraphKind::bipartite: {
      const int n = t.part_a + t.part_b;
      Matrixd w = Matrixd::Zero(n, n);
      for (int i = 0; i < t.part_a; ++i) {
        for (int j = t.part_a; j < n; ++j) {
          w(i, j) = w(j, i) = detail::edge_weight(t.seed, i, j, t.w_lo, t.w_hi);
        }
      }
      return make_weighted_graph(std::move(w));
    }
    case GraphKind::figure1a: {
      const int n = kFigure1aNodes;
      Matrixd w = Matrixd::Constant(n, n, kFigure1aBaseWeight);
      w.diagonal().setZero();
      w(1, 3) = w(3, 1) = t.alpha;
      w(0, 4) = w(4, 0) = t.alpha;
      return make_weighted_graph(std::move(w));
    }
  }
  throw ConfigError("unknown graph kind");
}

inline Vectord degrees(const WeightedGraph& g) {
  return g.weights.rowwise().sum();
}

inline bool is_connected(const WeightedGraph& g) {
  if (g.n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < g.n; ++v) {
      if (!seen[v] && g.weights(u, v) > 0.0) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == g.n;
}

/// Normalized Laplacian L = D^{-1/2} (D - W) D^{-1/2}, assembled entrywise so
/// the result is exactly symmetric. Requires every node to have positive degree.
inline Matrixd normalized_laplacian(const WeightedGraph& g) {
  const Vectord d = degrees(g);
  for (int i = 0; i < g.n; ++i) {
    if (!(d(i) > 0.0)) {
      throw std::invalid_argument("normalized Laplacian undefined: node " + std::to_string(i) +
                                  " is isolated (zero degree)");
    }
  }
  const Vectord dinv_sqrt = d.array().rsqrt();
  Matrixd l(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    l(i, i) = d(i) * dinv_sqrt(i) * dinv_sqrt(i);
    for (int j = i + 1; j < g.n; ++j) {
      const double v = -g.weights(i, j) * dinv_sqrt(i) * dinv_sqrt(j);
      l(i, j) = v;
      l(j, i) = v;
    }
  }
  return l;
}

/// sigma_{N-1} in nonincreasing order, i.e. the second-smallest singular value.
inline double second_smallest_singular_value(const Matrixd& b) {
  if (b.rows() != b.cols() || b.rows() < 2) {
    throw std::invalid_argument("second_smallest_singular_value needs a square matrix of size >= 2");
  }
  const SvdResult<double> f = svd(b);
  return f.singular_values(b.rows() - 2);
}

}  // namespace gss
