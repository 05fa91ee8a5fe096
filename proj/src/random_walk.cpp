#include "sparsecut/random_walk.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "sparsecut/error.hpp"

namespace sparsecut {

double DenseDistribution::total() const noexcept {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

double SparseDistribution::total() const noexcept {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

double SparseDistribution::at(Vertex v) const noexcept {
  auto it = std::lower_bound(support.begin(), support.end(), v);
  if (it == support.end() || *it != v) return 0.0;
  return mass[static_cast<std::size_t>(it - support.begin())];
}

Volume WalkTrace::total_work() const noexcept {
  return std::accumulate(touched_volume.begin(), touched_volume.end(), Volume{0});
}

DenseDistribution point_mass(const Graph& g, Vertex v) {
  if (!g.contains(v)) throw DomainError("seed vertex " + std::to_string(v) + " out of range");
  DenseDistribution p{std::vector<double>(g.vertex_count(), 0.0)};
  p.mass[v] = 1.0;
  return p;
}

DenseDistribution stationary(const Graph& g) {
  DenseDistribution p{std::vector<double>(g.vertex_count())};
  const auto vol = static_cast<double>(g.total_volume());
  for (Vertex v = 0; v < g.vertex_count(); ++v) p.mass[v] = static_cast<double>(g.degree(v)) / vol;
  return p;
}

DenseDistribution to_dense(const Graph& g, const SparseDistribution& p) {
  DenseDistribution out{std::vector<double>(g.vertex_count(), 0.0)};
  for (std::size_t i = 0; i < p.support.size(); ++i) out.mass[p.support[i]] = p.mass[i];
  return out;
}

void lazy_step_into(const Graph& g, std::span<const double> p, std::span<double> out,
                    std::span<double> share, Execution exec) {
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  if (static_cast<std::int64_t>(p.size()) != n || out.size() != p.size() || share.size() != p.size())
    throw DomainError("distribution length does not match vertex count");

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < n; ++v)
      share[v] = p[v] / (2.0 * static_cast<double>(g.degree(static_cast<Vertex>(v))));

#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t v = 0; v < n; ++v) {
      double acc = 0.5 * p[v];
      for (Vertex u : g.neighbors(static_cast<Vertex>(v))) acc += share[u];
      out[v] = acc;
    }
    return;
  }

  for (std::int64_t v = 0; v < n; ++v)
    share[v] = p[v] / (2.0 * static_cast<double>(g.degree(static_cast<Vertex>(v))));
  for (std::int64_t v = 0; v < n; ++v) {
    double acc = 0.5 * p[v];
    for (Vertex u : g.neighbors(static_cast<Vertex>(v))) acc += share[u];
    out[v] = acc;
  }
}

DenseDistribution lazy_step(const Graph& g, const DenseDistribution& p, Execution exec) {
  DenseDistribution out{std::vector<double>(p.mass.size())};
  std::vector<double> share(p.mass.size());
  lazy_step_into(g, p.mass, out.mass, share, exec);
  return out;
}

DenseDistribution lazy_step_reference(const Graph& g, const DenseDistribution& p) {
  if (p.mass.size() != g.vertex_count())
    throw DomainError("distribution length does not match vertex count");
  DenseDistribution out{std::vector<double>(p.mass.size(), 0.0)};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const double m = p.mass[v];
    if (m == 0.0) continue;
    out.mass[v] += 0.5 * m;
    const double share = m / (2.0 * static_cast<double>(g.degree(v)));
    for (Vertex w : g.neighbors(v)) out.mass[w] += share;
  }
  return out;
}

SparseDistribution truncate(const Graph& g, const SparseDistribution& q, double threshold) {
  SparseDistribution out;
  for (std::size_t i = 0; i < q.support.size(); ++i) {
    const Vertex v = q.support[i];
    const double m = q.mass[i];
    if (m > 0.0 && !(m < threshold * static_cast<double>(g.degree(v)))) {
      out.support.push_back(v);
      out.mass.push_back(m);
    }
  }
  return out;
}

TruncatedStep truncated_step(const Graph& g, const SparseDistribution& p, double threshold) {
  if (threshold < 0.0) throw DomainError("truncation threshold must be nonnegative");
  std::unordered_map<Vertex, double> acc;
  Volume touched = 0;
  for (Vertex v : p.support) touched += g.degree(v);
  acc.reserve(static_cast<std::size_t>(touched) + p.support.size());

  for (std::size_t i = 0; i < p.support.size(); ++i) {
    const Vertex v = p.support[i];
    if (!g.contains(v)) throw DomainError("support vertex out of range");
    const double m = p.mass[i];
    acc[v] += 0.5 * m;
    const double share = m / (2.0 * static_cast<double>(g.degree(v)));
    for (Vertex w : g.neighbors(v)) acc[w] += share;
  }

  TruncatedStep step;
  step.q.support.reserve(acc.size());
  for (const auto& [v, m] : acc)
    if (m > 0.0) step.q.support.push_back(v);
  std::sort(step.q.support.begin(), step.q.support.end());
  step.q.mass.reserve(step.q.support.size());
  for (Vertex v : step.q.support) step.q.mass.push_back(acc[v]);
  step.next = truncate(g, step.q, threshold);
  return step;
}

namespace {

Volume support_volume(const Graph& g, const SparseDistribution& p) {
  Volume vol = 0;
  for (Vertex v : p.support) vol += g.degree(v);
  return vol;
}

Volume support_volume(const Graph& g, const DenseDistribution& p) {
  Volume vol = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (p.mass[v] != 0.0) vol += g.degree(v);
  return vol;
}

}  // namespace

WalkTrace run_walk(const Graph& g, Vertex seed, const WalkSchedule& sched) {
  if (!g.contains(seed)) throw DomainError("seed vertex " + std::to_string(seed) + " out of range");
  if (sched.horizon < 0) throw DomainError("walk horizon must be nonnegative");
  if (sched.truncation < 0.0) throw DomainError("truncation must be nonnegative");

  WalkTrace trace;
  const auto steps = static_cast<std::size_t>(sched.horizon) + 1;
  trace.steps.reserve(steps);
  trace.touched_volume.reserve(steps);

  if (sched.truncation == 0.0) {
    DenseDistribution p = point_mass(g, seed);
    for (std::int64_t t = 0;; ++t) {
      trace.touched_volume.push_back(support_volume(g, p));
      trace.steps.emplace_back(p);
      if (t == sched.horizon) break;
      p = lazy_step(g, p);
    }
    return trace;
  }

  SparseDistribution p = truncate(g, SparseDistribution{{seed}, {1.0}}, sched.truncation);
  for (std::int64_t t = 0;; ++t) {
    trace.touched_volume.push_back(support_volume(g, p));
    if (t == sched.horizon) {
      trace.steps.emplace_back(std::move(p));
      break;
    }
    auto step = truncated_step(g, p, sched.truncation);
    trace.steps.emplace_back(std::move(p));
    p = std::move(step.next);
  }
  return trace;
}

}  // namespace sparsecut
