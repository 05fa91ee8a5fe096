#include "sparsecut/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "sparsecut/detail/membership.hpp"
#include "sparsecut/error.hpp"
#include "sparsecut/ls_curve.hpp"
#include "sparsecut/spectral.hpp"

namespace sparsecut {

Sweeper::Sweeper(const Graph& g, Volume cap) : g_(&g), cap_(cap) {
  if (cap < 1) throw DomainError("volume cap must be at least 1");
}

bool Sweeper::better(const Candidate& a, const Candidate& b) {
  const Ratio ra{a.boundary, a.volume};
  const Ratio rb{b.boundary, b.volume};
  if (ra != rb) return ra < rb;
  return std::tie(a.volume, a.origin.step, a.origin.prefix, a.origin.seed) <
         std::tie(b.volume, b.origin.step, b.origin.prefix, b.origin.seed);
}

std::size_t Sweeper::prefix_limit(std::size_t entries) const noexcept {
  // every degree is at least one, so no prefix under the cap has more than cap vertices
  return std::min(entries, static_cast<std::size_t>(cap_));
}

void Sweeper::scan(const std::vector<Vertex>& order, Vertex seed, std::int64_t step) {
  detail::PrefixScanner prefix(*g_, order.size());
  Candidate local;
  bool any = false;
  for (std::size_t j = 1; j <= order.size(); ++j) {
    const Vertex v = order[j - 1];
    if (prefix.volume() + g_->degree(v) > cap_) break;
    prefix.add(v);
    Candidate c{prefix.volume(), prefix.boundary(), {seed, step, j}, {}};
    if (!any || better(c, local)) {
      local = c;
      any = true;
    }
  }
  if (!any || (found_ && !better(local, best_))) return;
  local.members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(local.origin.prefix));
  std::sort(local.members.begin(), local.members.end());
  best_ = std::move(local);
  found_ = true;
}

void Sweeper::observe(std::span<const double> dense, Vertex seed, std::int64_t step) {
  scan(sweep_order(*g_, dense, prefix_limit(dense.size())), seed, step);
}

void Sweeper::observe(const SparseDistribution& p, Vertex seed, std::int64_t step) {
  scan(sweep_order(*g_, p, prefix_limit(p.size())), seed, step);
}

void Sweeper::observe(const Distribution& p, Vertex seed, std::int64_t step) {
  if (const auto* dense = std::get_if<DenseDistribution>(&p))
    observe(std::span<const double>(dense->mass), seed, step);
  else
    observe(std::get<SparseDistribution>(p), seed, step);
}

void Sweeper::merge(Sweeper&& other) {
  if (!other.found_) return;
  if (!found_ || better(other.best_, best_)) {
    best_ = std::move(other.best_);
    found_ = true;
  }
  other.found_ = false;
}

std::optional<SweepOutcome> Sweeper::outcome() const {
  if (!found_) return std::nullopt;
  SweepOutcome out;
  out.best.members = best_.members;
  out.best.volume = best_.volume;
  out.best.boundary = best_.boundary;
  out.origin = best_.origin;
  out.cap = cap_;
  return out;
}

std::optional<SweepOutcome> sweep(const Graph& g, std::span<const Distribution> trajectory,
                                  Volume vol_cap, Vertex seed) {
  if (trajectory.empty()) throw DomainError("sweep needs a nonempty trajectory");
  Sweeper sweeper(g, vol_cap);
  for (std::size_t t = 0; t < trajectory.size(); ++t)
    sweeper.observe(trajectory[t], seed, static_cast<std::int64_t>(t));
  return sweeper.outcome();
}

// ---------------------------------------------------------------------------
// global

double GlobalParams::effective_epsilon() const noexcept { return std::min(epsilon, kMaxGlobalEpsilon); }

std::int64_t GlobalParams::horizon() const {
  if (horizon_override) return *horizon_override;
  const double kd = static_cast<double>(k);
  return static_cast<std::int64_t>(std::ceil(effective_epsilon() * kd * kd * std::log(kd) / 4.0));
}

Volume GlobalParams::volume_cap() const {
  return static_cast<Volume>(std::floor(std::pow(static_cast<double>(k), 1.0 + effective_epsilon())));
}

bool GlobalParams::guarantee_regime() const noexcept {
  return effective_epsilon() > 1.0 / static_cast<double>(k);
}

void GlobalParams::validate(const Graph& g) const {
  if (k < 2) throw DomainError("k must be at least 2");
  if (k > g.total_volume()) throw DomainError("k must not exceed the total volume 2m");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
  if (horizon_override && *horizon_override < 0) throw DomainError("horizon must be nonnegative");
}

namespace {

Volume nonzero_volume(const Graph& g, std::span<const double> p) {
  Volume vol = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (p[v] != 0.0) vol += g.degree(v);
  return vol;
}

Volume sweep_cap(const Graph& g, Volume cap) { return std::max<Volume>(1, std::min(cap, g.edge_count())); }

}  // namespace

std::optional<SweepOutcome> global_sparsest_cut(const Graph& g, const GlobalParams& params, Execution exec) {
  params.validate(g);
  const Volume cap = sweep_cap(g, params.volume_cap());
  const std::int64_t horizon = params.horizon();
  const auto n = static_cast<std::int64_t>(g.vertex_count());

  Sweeper result(g, cap);
  Volume work = 0;

  auto run_seeds = [&](Sweeper& sweeper, Volume& seed_work, auto&& for_each_seed) {
    std::vector<double> p(g.vertex_count()), next(g.vertex_count()), share(g.vertex_count());
    for_each_seed([&](Vertex u) {
      std::fill(p.begin(), p.end(), 0.0);
      p[u] = 1.0;
      for (std::int64_t t = 0;; ++t) {
        seed_work += nonzero_volume(g, p);
        sweeper.observe(std::span<const double>(p), u, t);
        if (t == horizon) break;
        lazy_step_into(g, p, next, share, Execution::serial);
        p.swap(next);
      }
    });
  };

  if (exec == Execution::parallel) {
#pragma omp parallel
    {
      Sweeper mine(g, cap);
      Volume my_work = 0;
      run_seeds(mine, my_work, [&](auto&& body) {
#pragma omp for schedule(dynamic)
        for (std::int64_t u = 0; u < n; ++u) body(static_cast<Vertex>(u));
      });
#pragma omp critical(sparsecut_global_merge)
      {
        result.merge(std::move(mine));
        work += my_work;
      }
    }
  } else {
    run_seeds(result, work, [&](auto&& body) {
      for (std::int64_t u = 0; u < n; ++u) body(static_cast<Vertex>(u));
    });
  }

  auto out = result.outcome();
  if (out) out->work = work;
  return out;
}

double tight_volume_exponent(Volume k, double epsilon) {
  return epsilon / (2.0 * std::log(static_cast<double>(k)));
}

std::optional<SweepOutcome> global_sparsest_cut_tight_volume(const Graph& g, Volume k, double epsilon,
                                                             std::optional<std::int64_t> horizon_override,
                                                             Execution exec) {
  if (k < 2) throw DomainError("k must be at least 2");
  const double kd = static_cast<double>(k);
  if (!(epsilon > 2.0 * std::log(kd) / kd) || !std::isfinite(epsilon))
    throw DomainError("tight-volume search needs epsilon > 2 ln k / k");
  GlobalParams params{k, tight_volume_exponent(k, epsilon), horizon_override};
  return global_sparsest_cut(g, params, exec);
}

// ---------------------------------------------------------------------------
// local

std::int64_t LocalParams::horizon() const {
  return static_cast<std::int64_t>(std::ceil(epsilon * std::log(static_cast<double>(k)) / (2.0 * phi)));
}

double LocalParams::truncation() const {
  return std::pow(static_cast<double>(k), -1.0 - epsilon) / (20.0 * static_cast<double>(horizon()));
}

Volume LocalParams::volume_cap() const {
  return static_cast<Volume>(std::floor(5.0 * std::pow(static_cast<double>(k), 1.0 + epsilon)));
}

double LocalParams::acceptance_threshold() const { return 8.0 * std::sqrt(phi / epsilon); }

void LocalParams::validate(const Graph& g) const {
  if (!g.contains(seed)) throw DomainError("seed vertex " + std::to_string(seed) + " out of range");
  if (k < 2) throw DomainError("k must be at least 2");
  if (!(phi > 0.0) || phi > 1.0) throw DomainError("phi must lie in (0, 1]");
  if (!(epsilon > 2.0 / static_cast<double>(k)) || !std::isfinite(epsilon))
    throw DomainError("epsilon must exceed 2 / k");
}

LocalResult local_partition(const Graph& g, const LocalParams& params) {
  params.validate(g);
  const std::int64_t horizon = params.horizon();
  const double threshold = params.truncation();
  const Volume cap = sweep_cap(g, params.volume_cap());

  Sweeper sweeper(g, cap);
  std::vector<double> trace;
  LocalResult result;

  SparseDistribution p = truncate(g, SparseDistribution{{params.seed}, {1.0}}, threshold);
  for (std::int64_t t = 0;; ++t) {
    for (Vertex v : p.support) result.work += g.degree(v);
    sweeper.observe(p, params.seed, t);
    const LSCurve curve = build_curve(g, p);
    trace.push_back(eval(curve, static_cast<double>(std::min(params.k, g.total_volume()))));
    if (t == horizon) break;
    p = truncated_step(g, p, threshold).next;
  }

  result.outcome = sweeper.outcome();
  if (result.outcome) {
    result.outcome->work = result.work;
    result.outcome->curve_trace = std::move(trace);
    if (result.outcome->best.conductance_value() <= params.acceptance_threshold())
      result.status = LocalStatus::found;
  }
  return result;
}

Vertex find_local_seed(const Graph& g, std::span<const Vertex> u, const LocalParams& params) {
  const Cut cut = cut_of(g, u);
  if (cut.volume > params.k) throw DomainError("vol(U) exceeds k");
  if (cut.conductance_value() > params.phi) throw DomainError("phi(U) exceeds phi");
  return best_seed_vertex(g, cut.members, params.horizon()).vertex;
}

}  // namespace sparsecut
