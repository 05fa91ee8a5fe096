#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparsecut/graph.hpp"
#include "sparsecut/parallel.hpp"
#include "sparsecut/random_walk.hpp"

namespace sparsecut {

/// Where a swept cut came from: walk seed, step t, and prefix length j.
struct SweepOrigin {
  Vertex seed = 0;
  std::int64_t step = 0;
  std::size_t prefix = 0;
};

struct SweepOutcome {
  Cut best;
  SweepOrigin origin;
  /// C_t(trace_volume) per step, filled by single-walk drivers.
  std::vector<double> curve_trace;
  /// Total touched volume of the walks that produced this outcome.
  Volume work = 0;
  /// The volume cap the sweep enforced.
  Volume cap = 0;
};

/// Streaming sweep: feed distributions one step at a time and keep the
/// minimum-conductance level set of volume at most `cap`. Ties go to the
/// smaller volume, then the earlier step, the shorter prefix, the smaller seed.
class Sweeper {
 public:
  Sweeper(const Graph& g, Volume cap);

  void observe(const Distribution& p, Vertex seed, std::int64_t step);
  void observe(std::span<const double> dense, Vertex seed, std::int64_t step);
  void observe(const SparseDistribution& p, Vertex seed, std::int64_t step);
  /// Keeps the better of the two candidates.
  void merge(Sweeper&& other);

  bool empty() const noexcept { return !found_; }
  /// Materializes the best cut; nullopt when no level set fit the cap.
  std::optional<SweepOutcome> outcome() const;

 private:
  struct Candidate {
    Volume volume = 0;
    Volume boundary = 0;
    SweepOrigin origin;
    std::vector<Vertex> members;
  };
  static bool better(const Candidate& a, const Candidate& b);
  void scan(const std::vector<Vertex>& order, Vertex seed, std::int64_t step);
  std::size_t prefix_limit(std::size_t entries) const noexcept;

  const Graph* g_;
  Volume cap_;
  bool found_ = false;
  Candidate best_;
};

/// Minimum-conductance level set over all steps of a trajectory, with volume
/// at most vol_cap. nullopt when no prefix fits at any step.
std::optional<SweepOutcome> sweep(const Graph& g, std::span<const Distribution> trajectory,
                                  Volume vol_cap, Vertex seed = 0);

/// Parameters of the global bicriteria search.
struct GlobalParams {
  Volume k = 2;
  double epsilon = 0.01;
  std::optional<std::int64_t> horizon_override;

  /// epsilon clamped to at most 0.01.
  double effective_epsilon() const noexcept;
  /// ceil(eps k^2 ln k / 4) with the effective epsilon, unless overridden.
  std::int64_t horizon() const;
  /// floor(k^(1 + eps)).
  Volume volume_cap() const;
  /// Whether eps > 1/k, the regime where the conductance guarantee applies.
  bool guarantee_regime() const noexcept;
  void validate(const Graph& g) const;
};

inline constexpr double kMaxGlobalEpsilon = 0.01;

/// Exact lazy walks from every vertex for horizon() steps; returns the best
/// level set with volume at most min(volume_cap(), m). Seeds are distributed
/// across OpenMP workers when exec is parallel; the result does not depend on
/// the worker count.
std::optional<SweepOutcome> global_sparsest_cut(const Graph& g, const GlobalParams& params,
                                                Execution exec = Execution::parallel);

/// eps / (2 ln k), the exponent giving a volume cap of at most (1 + eps) k.
double tight_volume_exponent(Volume k, double epsilon);

/// Runs global_sparsest_cut with exponent eps / (2 ln k). Requires
/// eps > 2 ln k / k.
std::optional<SweepOutcome> global_sparsest_cut_tight_volume(
    const Graph& g, Volume k, double epsilon, std::optional<std::int64_t> horizon_override = {},
    Execution exec = Execution::parallel);

/// Parameters of the local truncated-walk search from one seed.
struct LocalParams {
  Vertex seed = 0;
  Volume k = 2;
  double phi = 0.01;
  double epsilon = 0.1;

  /// ceil(eps ln k / (2 phi)).
  std::int64_t horizon() const;
  /// k^(-1 - eps) / (20 T).
  double truncation() const;
  /// floor(5 k^(1 + eps)).
  Volume volume_cap() const;
  /// 8 sqrt(phi / eps).
  double acceptance_threshold() const;
  void validate(const Graph& g) const;
};

enum class LocalStatus { found, not_found };

struct LocalResult {
  LocalStatus status = LocalStatus::not_found;
  /// Best level set seen, present whenever any level set fit the cap.
  std::optional<SweepOutcome> outcome;
  Volume work = 0;
};

/// Truncated walk from params.seed; sweeps the support of every step under
/// min(volume_cap(), m) and accepts when the best conductance is at most
/// acceptance_threshold(). Work is proportional to the volume the walk touches.
LocalResult local_partition(const Graph& g, const LocalParams& params);

/// A start vertex of U for local_partition: the member retaining the most mass
/// in U after params.horizon() exact steps. Requires U connected,
/// vol(U) <= k and phi(U) <= phi.
Vertex find_local_seed(const Graph& g, std::span<const Vertex> u, const LocalParams& params);

}  // namespace sparsecut
