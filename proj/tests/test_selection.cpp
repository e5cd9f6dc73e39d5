#include <doctest.h>

#include "gss/selection.hpp"
#include "support.hpp"

using gss::Matrixd;
using gss::Scheme;
using gss::SelectionResult;

namespace {

Matrixd corr3(double c01, double c02, double c12) {
  Matrixd c = Matrixd::Zero(3, 3);
  c(0, 1) = c(1, 0) = c01;
  c(0, 2) = c(2, 0) = c02;
  c(1, 2) = c(2, 1) = c12;
  return c;
}

}  // namespace

TEST_CASE("node_correlation_matrix: orthogonal, identical and collinear rows") {
  const Matrixd id_corr = gss::node_correlation_matrix(Matrixd::Identity(3, 3));
  CHECK(id_corr.norm() == 0.0);

  Matrixd twin(2, 2);
  twin << 1, 2, 1, 2;
  CHECK(gss::node_correlation_matrix(twin)(0, 1) == doctest::Approx(1.0));

  Matrixd anti(2, 2);
  anti << 1, -1, -1, 1;  // rows are negatives of each other
  CHECK(gss::node_correlation_matrix(anti)(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("node_correlation_matrix: zero rows, range, symmetry, zero diagonal") {
  Matrixd m = support::random_matrix(700, 5, 5);
  m.row(2).setZero();
  const Matrixd c = gss::node_correlation_matrix(m);
  CHECK(c.row(2).norm() == 0.0);
  for (int i = 0; i < 5; ++i) {
    CHECK(c(i, i) == 0.0);
    for (int j = 0; j < 5; ++j) {
      CHECK(c(i, j) >= 0.0);
      CHECK(c(i, j) <= 1.0);
      CHECK(c(i, j) == c(j, i));
    }
  }
}

TEST_CASE("greedy_select: P = N never removes") {
  const Matrixd b = support::random_matrix(710, 4, 4);
  const SelectionResult res = gss::greedy_select(b, 4, Scheme::svd);
  CHECK(res.selected == std::vector<int>{0, 1, 2, 3});
  CHECK(res.removal_trace.empty());
}

TEST_CASE("greedy_select: hand trace on a 3-node correlation matrix") {
  // pairs: (0,1)=0.9, (0,2)=0.5, (1,2)=0.1 -> max pair (0,1);
  // rowsum(0)=1.4 > rowsum(1)=1.0 -> remove 0 -> S = {1,2}
  const SelectionResult res =
      gss::greedy_select_on_correlation(corr3(0.9, 0.5, 0.1), 2, Scheme::samp);
  CHECK(res.selected == std::vector<int>{1, 2});
  REQUIRE(res.removal_trace.size() == 1);
  CHECK(res.removal_trace[0].removed == 0);
  CHECK(res.removal_trace[0].pair_i == 0);
  CHECK(res.removal_trace[0].pair_j == 1);
  CHECK(res.removal_trace[0].rowsum_i == doctest::Approx(1.4));
  CHECK(res.removal_trace[0].rowsum_j == doctest::Approx(1.0));
}

TEST_CASE("greedy_select: tie rules") {
  // all off-diagonal correlations equal: lowest-index pair (0,1) picked, row
  // sums tie, so the second member of the pair is removed
  const SelectionResult res =
      gss::greedy_select_on_correlation(corr3(0.5, 0.5, 0.5), 2, Scheme::svd);
  CHECK(res.selected == std::vector<int>{0, 2});
  CHECK(res.removal_trace[0].removed == 1);
  CHECK(res.removal_trace[0].pair_i == 0);
  CHECK(res.removal_trace[0].pair_j == 1);
}

TEST_CASE("greedy_select: full vs active-only row sums can disagree") {
  Matrixd c = Matrixd::Zero(4, 4);
  auto set = [&](int i, int j, double v) { c(i, j) = c(j, i) = v; };
  set(0, 1, 0.9);
  set(0, 2, 0.8);
  set(1, 2, 0.6);
  set(1, 3, 0.7);
  // step 1 (both variants): pair (0,1), rowsums 1.7 vs 2.2 -> remove 1
  // step 2 full: pair (0,2), rowsums 1.7 vs 1.4 -> remove 0 -> {2,3}
  // step 2 active-only over {0,2,3}: rowsums 0.8 vs 0.8 tie -> remove 2 -> {0,3}
  const SelectionResult full = gss::greedy_select_on_correlation(c, 2, Scheme::svd);
  CHECK(full.selected == std::vector<int>{2, 3});

  gss::GreedyOptions active;
  active.rowsum_active_only = true;
  const SelectionResult var = gss::greedy_select_on_correlation(c, 2, Scheme::svd, active);
  CHECK(var.selected == std::vector<int>{0, 3});
}

TEST_CASE("greedy_select: invariant to positive scaling of B_sel") {
  for (std::uint64_t seed = 720; seed < 726; ++seed) {
    const auto inst = support::make_connected_instance(seed, 4, 10);
    const int p = std::max(1, inst.graph.n / 2);
    const SelectionResult a = gss::greedy_select(inst.b, p, Scheme::samp);
    const SelectionResult b = gss::greedy_select(Matrixd(3.7 * inst.b), p, Scheme::samp);
    CHECK(a.selected == b.selected);
    CHECK(a.removal_trace.size() == static_cast<std::size_t>(inst.graph.n - p));
  }
}

TEST_CASE("brute_force_select: full selection is exact") {
  const auto inst = support::make_connected_instance(730, 4, 5);
  const Matrixd c = support::random_matrix(731, inst.graph.n, 8);
  const Matrixd y = inst.b * c;
  const auto bf = gss::brute_force_select(inst.b, inst.graph.n, c, Scheme::svd);
  CHECK(bf.scores.size() == 1);
  CHECK(bf.best_error <= 1e-10 * std::max(1.0, y.norm()));
}

TEST_CASE("brute_force_select: P = N-1 at full rank reconstructs every feasible subset") {
  for (std::uint64_t seed = 740; seed < 744; ++seed) {
    const auto inst = support::make_connected_instance(seed, 4, 6);
    if (support::numerical_rank(gss::svd(inst.b).singular_values) != inst.graph.n - 1) continue;
    const Matrixd c = support::random_matrix(seed + 1, inst.graph.n, 6);
    const double y_norm = (inst.b * c).norm();
    for (Scheme scheme : {Scheme::svd, Scheme::samp}) {
      const auto bf = gss::brute_force_select(inst.b, inst.graph.n - 1, c, scheme);
      int feasible = 0;
      for (const auto& score : bf.scores) {
        if (!score.feasible) continue;
        ++feasible;
        CHECK(score.error <= 1e-10 * std::max(1.0, y_norm));
      }
      CHECK(feasible >= 1);
    }
  }
}

TEST_CASE("brute_force_select: collinear 2-node example, both singletons perfect") {
  Matrixd b(2, 2);
  b << 1, -1, -1, 1;
  const Matrixd c = support::random_matrix(750, 2, 5);
  const double y_norm = (b * c).norm();
  for (Scheme scheme : {Scheme::svd, Scheme::samp}) {
    const auto bf = gss::brute_force_select(b, 1, c, scheme);
    CHECK(bf.scores.size() == 2);
    for (const auto& score : bf.scores) {
      CHECK(score.feasible);
      CHECK(score.error <= 1e-10 * std::max(1.0, y_norm));
    }
  }
}

TEST_CASE("brute_force_select: size guard") {
  const Matrixd big = Matrixd::Identity(13, 13);
  CHECK_THROWS_AS(gss::brute_force_select(big, 2, Matrixd::Zero(13, 4), Scheme::svd),
                  gss::ConfigError);
}

TEST_CASE("brute_force_select: result is lexicographically smallest among optima") {
  // identity B under the samp scheme: every singleton keeps exactly its own
  // row, so with a constant signal all three subsets tie and {0} must win
  const Matrixd b = Matrixd::Identity(3, 3);
  const Matrixd c = Matrixd::Constant(3, 4, 1.0);
  const auto bf = gss::brute_force_select(b, 1, c, Scheme::samp);
  REQUIRE(bf.scores.size() == 3);
  for (const auto& score : bf.scores) {
    CHECK(score.feasible);
    CHECK(score.error == doctest::Approx(bf.best_error));
  }
  CHECK(bf.result.selected == std::vector<int>{0});
}
