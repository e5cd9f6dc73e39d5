#pragma once

// Shared fixtures for the unit and acceptance suites: deterministic random
// instances and matrices, all keyed off explicit seeds.

#include <cstdint>
#include <filesystem>
#include <string>

#include "gss/generator.hpp"
#include "gss/graph.hpp"
#include "gss/numerics.hpp"
#include "gss/rng.hpp"

namespace support {

struct Instance {
  gss::WeightedGraph graph;
  gss::Matrixd laplacian;
  gss::GeneratorSpec spec;
  gss::Matrixd b;
};

/// Connected Erdos-Renyi instance with a random generator spec (K in [1,5]),
/// deterministic in `seed`. Unconnected draws are skipped by bumping a
/// sub-seed, so the result is always connected.
inline Instance make_connected_instance(std::uint64_t seed, int n_lo, int n_hi) {
  using namespace gss;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = rng::derive(seed, 77, attempt);
    GraphTemplate t;
    t.kind = GraphKind::erdos_renyi;
    t.n = n_lo + static_cast<int>(rng::derive(s, 1) % static_cast<std::uint64_t>(n_hi - n_lo + 1));
    t.edge_prob = 0.5;
    t.w_lo = 1.0;
    t.w_hi = 10.0;
    t.seed = rng::derive(s, 2);
    WeightedGraph g = build_graph(t);
    if (!is_connected(g)) continue;
    Instance inst;
    inst.graph = std::move(g);
    inst.laplacian = normalized_laplacian(inst.graph);
    const int k = 1 + static_cast<int>(rng::derive(s, 3) % 5);
    inst.spec = random_generator_spec(k, rng::derive(s, 4));
    inst.b = build_generator(inst.laplacian, inst.spec);
    return inst;
  }
}

inline gss::Matrixd random_matrix(std::uint64_t seed, int rows, int cols) {
  gss::Matrixd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = gss::rng::normal(gss::rng::derive(seed, 99, static_cast<std::uint64_t>(i),
                                                  static_cast<std::uint64_t>(j)));
    }
  }
  return m;
}

inline gss::Matrixd random_symmetric(std::uint64_t seed, int n) {
  const gss::Matrixd m = random_matrix(seed, n, n);
  return 0.5 * (m + m.transpose());
}

/// Numerical rank against the 1e-10 * sigma_1 cutoff.
inline int numerical_rank(const gss::Vectord& sv) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) ++r;
  }
  return r;
}

/// Fresh scratch directory under the current working directory.
inline std::string temp_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path("test_tmp") / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace support
