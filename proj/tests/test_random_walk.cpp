#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sparsecut/error.hpp"
#include "sparsecut/random_walk.hpp"
#include "sparsecut/testbed.hpp"

namespace sparsecut {
namespace {

Graph star(Vertex leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

TEST(LazyStep, PointMassSplits) {
  const Graph g = ring_of_cliques(3, 4).graph;
  const Vertex u = 3;  // carries a bridge: degree 4
  const DenseDistribution p = lazy_step(g, point_mass(g, u));
  EXPECT_DOUBLE_EQ(p.mass[u], 0.5);
  for (Vertex w : g.neighbors(u)) EXPECT_DOUBLE_EQ(p.mass[w], 1.0 / (2.0 * static_cast<double>(g.degree(u))));
  EXPECT_NEAR(p.total(), 1.0, 1e-15);
}

TEST(LazyStep, StationaryIsFixed) {
  const Graph g = erdos_renyi(40, 0.2, 3);
  const DenseDistribution pi = stationary(g);
  const DenseDistribution next = lazy_step(g, pi);
  for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_NEAR(next.mass[v], pi.mass[v], 1e-15);
}

TEST(LazyStep, PathMiddle) {
  const Graph g = path(3);
  const DenseDistribution p = lazy_step(g, point_mass(g, 1));
  EXPECT_DOUBLE_EQ(p.mass[0], 0.25);
  EXPECT_DOUBLE_EQ(p.mass[1], 0.5);
  EXPECT_DOUBLE_EQ(p.mass[2], 0.25);

  const auto dense = oracle::dense_walk(g, 1, 1);
  for (Vertex v = 0; v < 3; ++v) EXPECT_DOUBLE_EQ(p.mass[v], dense[1](v));
}

TEST(LazyStep, LengthMismatch) {
  const Graph g = path(3);
  EXPECT_THROW(lazy_step(g, DenseDistribution{{1.0, 0.0}}), DomainError);
  EXPECT_THROW(lazy_step_reference(g, DenseDistribution{{1.0}}), DomainError);
}

// The OpenMP pull kernel, the serial pull kernel and the push reference agree.
TEST(LazyStep, KernelsAgreeWithReference) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = erdos_renyi(300, 0.03, rng());
    DenseDistribution p{std::vector<double>(g.vertex_count())};
    double total = 0.0;
    for (double& m : p.mass) total += (m = std::uniform_real_distribution<double>(0, 1)(rng));
    for (double& m : p.mass) m /= total;

    const auto par = lazy_step(g, p, Execution::parallel);
    const auto ser = lazy_step(g, p, Execution::serial);
    const auto ref = lazy_step_reference(g, p);
    EXPECT_EQ(par.mass, ser.mass);
    for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_NEAR(par.mass[v], ref.mass[v], 1e-15);
    EXPECT_NEAR(par.total(), 1.0, 1e-12);
  }
}

TEST(TruncatedStep, StarFromLeaf) {
  const Graph g = star(10);
  const auto step = truncated_step(g, SparseDistribution{{1}, {1.0}}, 0.06);
  ASSERT_EQ(step.q.size(), 2U);
  EXPECT_DOUBLE_EQ(step.q.at(0), 0.5);
  EXPECT_DOUBLE_EQ(step.q.at(1), 0.5);
  // the centre holds 0.5 < 0.06 * 10
  EXPECT_EQ(step.next.support, (std::vector<Vertex>{1}));
  EXPECT_DOUBLE_EQ(step.next.mass[0], 0.5);

  const auto dense = oracle::dense_walk(g, 1, 1);
  for (Vertex v = 0; v <= 1; ++v) EXPECT_DOUBLE_EQ(step.q.at(v), dense[1](v));
}

TEST(TruncatedStep, StarCenterLosesEverything) {
  const Graph g = star(10);
  const auto step = truncated_step(g, SparseDistribution{{0}, {1.0}}, 0.06);
  ASSERT_EQ(step.q.size(), 11U);
  EXPECT_DOUBLE_EQ(step.q.at(0), 0.5);
  for (Vertex v = 1; v <= 10; ++v) EXPECT_DOUBLE_EQ(step.q.at(v), 0.05);
  EXPECT_EQ(step.next.size(), 0U);
  EXPECT_DOUBLE_EQ(step.next.total(), 0.0);
}

TEST(TruncatedStep, KeepsMassOnEquality) {
  const Graph g = star(10);
  // leaves receive exactly 0.05 = 0.05 * d(leaf)
  const auto step = truncated_step(g, SparseDistribution{{0}, {1.0}}, 0.05);
  EXPECT_EQ(step.next.size(), 11U);
}

TEST(TruncatedStep, ZeroThresholdMatchesExactStep) {
  const Graph g = erdos_renyi(60, 0.1, 5);
  SparseDistribution p{{0}, {1.0}};
  DenseDistribution d = point_mass(g, 0);
  for (int t = 0; t < 8; ++t) {
    p = truncated_step(g, p, 0.0).next;
    d = lazy_step(g, d);
    const DenseDistribution pd = to_dense(g, p);
    for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_NEAR(pd.mass[v], d.mass[v], 1e-15);
  }
}

TEST(TruncatedStep, SupportGrowsOneHop) {
  std::mt19937_64 rng(17);
  const Graph g = erdos_renyi(120, 0.04, 9);
  SparseDistribution p = truncate(g, SparseDistribution{{4}, {1.0}}, 1e-3);
  for (int t = 0; t < 12; ++t) {
    auto next = truncated_step(g, p, 1e-3).next;
    std::vector<char> reach(g.vertex_count(), 0);
    for (Vertex u : p.support) {
      reach[u] = 1;
      for (Vertex w : g.neighbors(u)) reach[w] = 1;
    }
    for (Vertex v : next.support) EXPECT_TRUE(reach[v]);
    for (double m : next.mass) EXPECT_GT(m, 0.0);
    EXPECT_TRUE(std::is_sorted(next.support.begin(), next.support.end()));
    p = std::move(next);
  }
}

TEST(RunWalk, ZeroHorizon) {
  const Graph g = path(4);
  const auto exact = run_walk(g, 2, {0, 0.0});
  ASSERT_EQ(exact.steps.size(), 1U);
  EXPECT_EQ(std::get<DenseDistribution>(exact.steps[0]).mass, (std::vector<double>{0, 0, 1, 0}));
  const auto trunc = run_walk(g, 2, {0, 1e-3});
  ASSERT_EQ(trunc.steps.size(), 1U);
  EXPECT_EQ(std::get<SparseDistribution>(trunc.steps[0]).support, (std::vector<Vertex>{2}));
}

TEST(RunWalk, RejectsBadArguments) {
  const Graph g = path(4);
  EXPECT_THROW(run_walk(g, 4, {1, 0.0}), DomainError);
  EXPECT_THROW(run_walk(g, 0, {-1, 0.0}), DomainError);
  EXPECT_THROW(run_walk(g, 0, {1, -0.1}), DomainError);
}

// Property: the sandwich p~_t <= p_t <= p~_t + eps t d holds componentwise, the
// truncated mass never increases, and the support volume stays below 1/eps.
TEST(RunWalk, SandwichAgainstDenseOracle) {
  const Graph g = erdos_renyi(200, 0.05, 21);
  for (double eps : {1e-3, 1e-4}) {
    const auto trace = run_walk(g, 0, {50, eps});
    const auto dense = oracle::dense_walk(g, 0, 50);
    double prev_total = 1.0;
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
      const auto& p = std::get<SparseDistribution>(trace.steps[t]);
      const DenseDistribution pd = to_dense(g, p);
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const double gap = dense[t](v) - pd.mass[v];
        EXPECT_GE(gap, -1e-12);
        EXPECT_LE(gap, eps * static_cast<double>(t) * static_cast<double>(g.degree(v)) + 1e-12);
      }
      EXPECT_LE(p.total(), prev_total + 1e-15);
      prev_total = p.total();
      if (t >= 1) EXPECT_LE(static_cast<double>(trace.touched_volume[t]), 1.0 / eps);
    }
  }
}

TEST(RunWalk, ExactWalkConservesMass) {
  const Graph g = ring_of_cliques(5, 6).graph;
  const auto trace = run_walk(g, 7, {40, 0.0});
  for (const auto& step : trace.steps) EXPECT_NEAR(std::get<DenseDistribution>(step).total(), 1.0, 1e-12);
}

}  // namespace
}  // namespace sparsecut
