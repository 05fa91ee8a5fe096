#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "sparsecut/graph.hpp"
#include "sparsecut/parallel.hpp"

namespace sparsecut {

/// Walk state over every vertex.
struct DenseDistribution {
  std::vector<double> mass;

  double total() const noexcept;
};

/// Walk state over a sorted support; every listed vertex carries positive mass.
struct SparseDistribution {
  std::vector<Vertex> support;
  std::vector<double> mass;

  double total() const noexcept;
  double at(Vertex v) const noexcept;
  std::size_t size() const noexcept { return support.size(); }
};

using Distribution = std::variant<DenseDistribution, SparseDistribution>;

struct WalkSchedule {
  std::int64_t horizon = 0;
  /// Per-unit-degree truncation threshold; 0 runs the exact walk.
  double truncation = 0.0;
};

DenseDistribution point_mass(const Graph& g, Vertex v);
DenseDistribution stationary(const Graph& g);
DenseDistribution to_dense(const Graph& g, const SparseDistribution& p);

/// One lazy step p -> p W with W = (I + D^-1 A) / 2.
///
/// The parallel kernel pulls mass into each vertex from its neighbors, so each
/// output entry is written by one thread and sums in a fixed order regardless
/// of the thread count. The serial kernel pushes mass outward and is kept as
/// the reference the parallel one is tested against.
DenseDistribution lazy_step(const Graph& g, const DenseDistribution& p,
                            Execution exec = Execution::parallel);
DenseDistribution lazy_step_reference(const Graph& g, const DenseDistribution& p);

/// Allocation-free variant: writes p W into `out`. `share` is scratch of size n.
void lazy_step_into(const Graph& g, std::span<const double> p, std::span<double> out,
                    std::span<double> share, Execution exec);

/// Zeroes every entry with mass < threshold * d(v); keeps mass on equality.
SparseDistribution truncate(const Graph& g, const SparseDistribution& q, double threshold);

struct TruncatedStep {
  SparseDistribution q;     // exact step of the truncated input
  SparseDistribution next;  // q after truncation
};

/// q = p W computed over support(p) and its neighbors only, then truncated.
/// Costs O(vol(support(p)) log) time.
TruncatedStep truncated_step(const Graph& g, const SparseDistribution& p, double threshold);

struct WalkTrace {
  /// steps[t] is the distribution after t steps; dense when truncation is 0.
  std::vector<Distribution> steps;
  /// touched_volume[t] = vol(support(steps[t])), the cost of computing step t+1.
  std::vector<Volume> touched_volume;

  Volume total_work() const noexcept;
};

/// Walks from the point mass on `seed` for sched.horizon steps.
WalkTrace run_walk(const Graph& g, Vertex seed, const WalkSchedule& sched);

}  // namespace sparsecut
