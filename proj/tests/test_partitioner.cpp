#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sparsecut/error.hpp"
#include "sparsecut/ls_curve.hpp"
#include "sparsecut/partitioner.hpp"
#include "sparsecut/spectral.hpp"
#include "sparsecut/testbed.hpp"

namespace sparsecut {
namespace {

TEST(Sweep, StationaryTrajectory) {
  const Graph g = erdos_renyi(25, 0.2, 31);
  const std::vector<Distribution> traj{stationary(g)};
  const Volume cap = g.total_volume() / 3;
  const auto out = sweep(g, traj, cap);
  ASSERT_TRUE(out.has_value());

  // all ratios tie, so the order is by id
  Ratio best{2, 1};
  std::size_t best_j = 0;
  Volume vol = 0;
  for (Vertex j = 1; j <= g.vertex_count(); ++j) {
    vol += g.degree(j - 1);
    if (vol > cap) break;
    std::vector<Vertex> prefix(j);
    std::iota(prefix.begin(), prefix.end(), Vertex{0});
    const Ratio r = cut_of(g, prefix).conductance();
    if (r < best) {
      best = r;
      best_j = j;
    }
  }
  EXPECT_EQ(out->best.conductance(), best);
  EXPECT_EQ(out->origin.prefix, best_j);
  EXPECT_EQ(out->origin.step, 0);
  EXPECT_LE(out->best.volume, cap);
}

TEST(Sweep, BarbellFindsTriangle) {
  const PlantedInstance inst = barbell(3);
  const auto trace = run_walk(inst.graph, 1, {20, 0.0});
  const auto out = sweep(inst.graph, trace.steps, 7);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->best.members, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(out->best.conductance(), (Ratio{1, 7}));
  EXPECT_EQ(exact_phi_k(inst.graph, 7).phi, (Ratio{1, 7}));

  // the origin reproduces the cut
  const LSCurve c = build_curve(inst.graph, trace.steps[static_cast<std::size_t>(out->origin.step)]);
  std::vector<Vertex> prefix(c.order.begin(), c.order.begin() + static_cast<std::ptrdiff_t>(out->origin.prefix));
  std::sort(prefix.begin(), prefix.end());
  EXPECT_EQ(prefix, out->best.members);
}

TEST(Sweep, EmptyOutcomeAndPreconditions) {
  const Graph g = complete(5);
  const std::vector<Distribution> traj{point_mass(g, 0)};
  EXPECT_FALSE(sweep(g, traj, 3).has_value());
  EXPECT_THROW(sweep(g, traj, 0), DomainError);
  EXPECT_THROW(sweep(g, std::vector<Distribution>{}, 5), DomainError);
}

TEST(Sweep, TiesPreferSmallerVolumeThenEarlierStep) {
  // two disjoint triangles: every component has conductance zero
  const std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  const Graph g = Graph::from_edges(6, edges);
  const auto trace = run_walk(g, 4, {5, 0.0});
  const auto out = sweep(g, trace.steps, 12, 4);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->best.volume, 6);
  EXPECT_EQ(out->best.boundary, 0);
  EXPECT_EQ(out->origin.step, 1);
  EXPECT_EQ(out->best.members, (std::vector<Vertex>{3, 4, 5}));
}

TEST(GlobalParams, DerivedValues) {
  const GlobalParams p{100, 0.5, std::nullopt};
  EXPECT_DOUBLE_EQ(p.effective_epsilon(), 0.01);
  EXPECT_EQ(p.horizon(), static_cast<std::int64_t>(std::ceil(0.01 * 1e4 * std::log(100.0) / 4.0)));
  EXPECT_EQ(p.volume_cap(), static_cast<Volume>(std::floor(std::pow(100.0, 1.01))));
  EXPECT_FALSE(p.guarantee_regime());
  EXPECT_TRUE((GlobalParams{101, 0.01, std::nullopt}).guarantee_regime());
  EXPECT_EQ((GlobalParams{100, 0.5, 7}).horizon(), 7);
}

TEST(GlobalSparsestCut, SmallComponentHasZeroConductance) {
  std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {1, 2}, {2, 0}};
  for (Vertex a = 3; a < 9; ++a)
    for (Vertex b = a + 1; b < 9; ++b) edges.emplace_back(a, b);
  const Graph g = Graph::from_edges(9, edges);
  const auto out = global_sparsest_cut(g, {6, 0.01, std::nullopt});
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->best.boundary, 0);
  EXPECT_EQ(out->best.members, (std::vector<Vertex>{0, 1, 2}));
}

TEST(GlobalSparsestCut, RingOfCliquesMeetsBound) {
  const PlantedInstance inst = ring_of_cliques(8, 8);
  const Volume k = inst.planted.volume;
  const auto phik = phi_k_by_connectivity(inst.graph, inst.planted, k);
  ASSERT_TRUE(phik.has_value());
  EXPECT_EQ(phik->phi, (Ratio{2, 58}));

  const GlobalParams params{k, 0.01, std::nullopt};
  const auto out = global_sparsest_cut(inst.graph, params);
  ASSERT_TRUE(out.has_value());
  EXPECT_LE(out->best.conductance_value(), 4.0 * std::sqrt(phik->phi.value() / params.effective_epsilon()));
  EXPECT_LE(out->best.volume, params.volume_cap());
  EXPECT_EQ(out->best.conductance(), phik->phi);
}

TEST(GlobalSparsestCut, SerialParallelAndRepeatAgree) {
  const PlantedInstance inst = ring_of_cliques(5, 6);
  const GlobalParams params{inst.planted.volume, 0.01, 12};
  const auto a = global_sparsest_cut(inst.graph, params, Execution::parallel);
  const auto b = global_sparsest_cut(inst.graph, params, Execution::serial);
  const auto c = global_sparsest_cut(inst.graph, params, Execution::parallel);
  ASSERT_TRUE(a && b && c);
  for (const auto* o : {&*b, &*c}) {
    EXPECT_EQ(a->best.members, o->best.members);
    EXPECT_EQ(a->origin.seed, o->origin.seed);
    EXPECT_EQ(a->origin.step, o->origin.step);
    EXPECT_EQ(a->origin.prefix, o->origin.prefix);
    EXPECT_EQ(a->work, o->work);
  }
}

TEST(GlobalSparsestCut, Validation) {
  const Graph g = complete(4);
  EXPECT_THROW(global_sparsest_cut(g, {1, 0.01, std::nullopt}), DomainError);
  EXPECT_THROW(global_sparsest_cut(g, {13, 0.01, std::nullopt}), DomainError);
  EXPECT_THROW(global_sparsest_cut(g, {4, 0.0, std::nullopt}), DomainError);
  EXPECT_THROW(global_sparsest_cut(g, {4, 0.01, -1}), DomainError);
}

// Exhaustive-oracle suite on small random graphs.
TEST(GlobalSparsestCut, SmallGraphsAgainstExhaustiveOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<Vertex>(std::uniform_int_distribution<int>(4, 12)(rng));
    const Graph g = oracle::random_connected_graph(n, 0.3, rng);
    const Volume k = std::uniform_int_distribution<Volume>(2, std::max<Volume>(2, 2 * g.edge_count() / 3))(rng);
    const GlobalParams params{k, 0.01, std::nullopt};
    const auto out = global_sparsest_cut(g, params);
    const auto brute = oracle::brute_force_phi_k(g, std::min(params.volume_cap(), g.edge_count()));
    if (!out) {
      EXPECT_EQ(brute.phi.den, 0);
      continue;
    }
    EXPECT_LE(out->best.volume, params.volume_cap());
    EXPECT_GE(out->best.conductance(), brute.phi);
    const Cut check = cut_of(g, out->best.members);
    EXPECT_EQ(check.volume, out->best.volume);
    EXPECT_EQ(check.boundary, out->best.boundary);
    if (brute.phi.den > 0 && k <= g.total_volume()) {
      const auto phik = oracle::brute_force_phi_k(g, k);
      if (phik.phi.den > 0 && phik.phi.value() < params.effective_epsilon())
        EXPECT_LE(out->best.conductance_value(), 4.0 * std::sqrt(phik.phi.value() / params.effective_epsilon()));
    }
  }
}

TEST(TightVolume, CapArithmetic) {
  const double exponent = tight_volume_exponent(100, 0.5);
  const double cap = std::pow(100.0, 1.0 + exponent);
  EXPECT_NEAR(cap, 128.4025416687741, 1e-9);
  EXPECT_LE(cap, 150.0);
}

TEST(TightVolume, RejectsBoundaryEpsilon) {
  const PlantedInstance inst = ring_of_cliques(4, 5);
  const Volume k = 20;
  const double boundary = 2.0 * std::log(20.0) / 20.0;
  EXPECT_THROW(global_sparsest_cut_tight_volume(inst.graph, k, boundary), DomainError);
  EXPECT_NO_THROW(global_sparsest_cut_tight_volume(inst.graph, k, boundary * 1.01, 5));
}

TEST(TightVolume, RelaxedBoundOnPlantedInstance) {
  const PlantedInstance inst = barbell(6);
  const Volume k = inst.planted.volume;
  const double eps = 0.5;
  const auto out = global_sparsest_cut_tight_volume(inst.graph, k, eps);
  ASSERT_TRUE(out.has_value());
  EXPECT_LE(static_cast<double>(out->best.volume), (1.0 + eps) * static_cast<double>(k));
  const double phik = exact_phi_k(inst.graph, k).phi.value();
  EXPECT_LE(out->best.conductance_value(), 4.0 * std::sqrt(2.0 * phik * std::log(static_cast<double>(k)) / eps));
}

TEST(LocalParams, DerivedValues) {
  const LocalParams p{0, 92, 2.0 / 92.0, 0.2};
  EXPECT_EQ(p.horizon(), static_cast<std::int64_t>(std::ceil(0.2 * std::log(92.0) / (4.0 / 92.0))));
  EXPECT_DOUBLE_EQ(p.truncation(), std::pow(92.0, -1.2) / (20.0 * static_cast<double>(p.horizon())));
  EXPECT_EQ(p.volume_cap(), static_cast<Volume>(std::floor(5.0 * std::pow(92.0, 1.2))));
  EXPECT_DOUBLE_EQ(p.acceptance_threshold(), 8.0 * std::sqrt((2.0 / 92.0) / 0.2));
}

TEST(LocalParams, Validation) {
  const Graph g = complete(5);
  EXPECT_THROW(local_partition(g, {5, 10, 0.01, 0.5}), DomainError);
  EXPECT_THROW(local_partition(g, {0, 10, 0.0, 0.5}), DomainError);
  EXPECT_THROW(local_partition(g, {0, 10, 0.01, 0.2}), DomainError);
  EXPECT_THROW(local_partition(g, {0, 1, 0.01, 3.0}), DomainError);
}

TEST(LocalPartition, RingOfCliquesRecoversSparseCut) {
  const PlantedInstance inst = ring_of_cliques(10, 10);
  const Volume k = inst.planted.volume;
  const double phi = inst.phi_planted.value();
  for (double eps : {0.1, 0.2}) {
    LocalParams params{0, k, phi, eps};
    params.seed = find_local_seed(inst.graph, inst.planted.members, params);
    EXPECT_LT(params.seed, 10U);
    const LocalResult res = local_partition(inst.graph, params);
    ASSERT_EQ(res.status, LocalStatus::found);
    EXPECT_LE(res.outcome->best.conductance_value(), params.acceptance_threshold());
    EXPECT_LE(res.outcome->best.volume, params.volume_cap());
    EXPECT_EQ(res.outcome->curve_trace.size(), static_cast<std::size_t>(params.horizon()) + 1);
    EXPECT_LE(static_cast<double>(res.work),
              static_cast<double>(params.horizon() + 1) / params.truncation());
  }
}

TEST(LocalPartition, NoLevelSetFitsTheCap) {
  const Graph g = erdos_renyi(300, 0.5, 77);
  const LocalResult res = local_partition(g, {3, 12, 0.02, 0.2});
  EXPECT_EQ(res.status, LocalStatus::not_found);
  EXPECT_FALSE(res.outcome.has_value());
}

TEST(LocalPartition, ExpanderHasNoQualifyingCut) {
  const Graph g = erdos_renyi(400, 0.05, 13);
  const LocalParams params{0, 100, 0.0005, 0.5};
  const LocalResult res = local_partition(g, params);
  EXPECT_EQ(res.status, LocalStatus::not_found);
  ASSERT_TRUE(res.outcome.has_value());

  // every truncated level set under the cap is worse than the threshold
  const Volume cap = std::min(params.volume_cap(), g.edge_count());
  const auto trace = run_walk(g, 0, {params.horizon(), params.truncation()});
  for (const auto& p : trace.steps)
    for (const Cut& c : level_sets(g, build_curve(g, p), cap))
      EXPECT_GT(c.conductance_value(), params.acceptance_threshold());
}

TEST(FindLocalSeed, BarbellTriangle) {
  const PlantedInstance inst = barbell(3);
  const LocalParams params{0, 7, 1.0 / 7.0, 0.5};
  const Vertex seed = find_local_seed(inst.graph, inst.planted.members, params);
  EXPECT_LT(seed, 3U);

  double best = -1.0;
  Vertex arg = 0;
  for (Vertex v : inst.planted.members) {
    const double m = retained_mass(inst.graph, point_mass(inst.graph, v).mass, inst.planted.members,
                                   params.horizon());
    if (m > best) {
      best = m;
      arg = v;
    }
  }
  EXPECT_EQ(seed, arg);
}

TEST(FindLocalSeed, TrivialSets) {
  const Graph g = ring_of_cliques(3, 4).graph;
  EXPECT_EQ(find_local_seed(g, std::vector<Vertex>{5}, {0, 4, 1.0, 1.0}), 5U);
  std::vector<Vertex> all(g.vertex_count());
  std::iota(all.begin(), all.end(), Vertex{0});
  const Vertex v = find_local_seed(g, all, {0, g.total_volume(), 0.01, 1.0});
  EXPECT_LT(v, g.vertex_count());
  EXPECT_THROW(find_local_seed(g, std::vector<Vertex>{0, 1, 2, 3}, {0, 5, 1.0, 1.0}), DomainError);
  EXPECT_THROW(find_local_seed(g, std::vector<Vertex>{0, 1, 2, 3}, {0, 100, 0.01, 1.0}), DomainError);
}

}  // namespace
}  // namespace sparsecut
