#include "sparsecut/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sparsecut/error.hpp"
#include "sparsecut/random_walk.hpp"

namespace sparsecut {

namespace {

std::vector<Vertex> normalized_subset(const Graph& g, std::span<const Vertex> subset) {
  if (subset.empty()) throw DomainError("vertex set is empty");
  std::vector<Vertex> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!g.contains(s.back())) throw DomainError("vertex id " + std::to_string(s.back()) + " out of range");
  if (!induces_connected(g, s))
    throw DomainError("vertex set does not induce a connected subgraph; run per component");
  return s;
}

// Induced subgraph with edge weights 1/sqrt(d(u) d(w)).
struct RestrictedOperator {
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> target;
  std::vector<double> weight;

  RestrictedOperator(const Graph& g, const std::vector<Vertex>& s) {
    for (Vertex u : s) {
      const double du = static_cast<double>(g.degree(u));
      for (Vertex w : g.neighbors(u)) {
        auto it = std::lower_bound(s.begin(), s.end(), w);
        if (it == s.end() || *it != w) continue;
        target.push_back(static_cast<std::size_t>(it - s.begin()));
        weight.push_back(1.0 / std::sqrt(du * static_cast<double>(g.degree(w))));
      }
      offsets.push_back(target.size());
    }
  }

  // y = (x + A' x) / 2
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
      double acc = x[i];
      for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) acc += weight[e] * x[target[e]];
      y[i] = 0.5 * acc;
    }
  }
};

double norm2(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

}  // namespace

LocalEigenpair restricted_eigenpair(const Graph& g, std::span<const Vertex> subset,
                                    const EigenOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("eigen tolerance must be positive");
  LocalEigenpair out;
  out.subset = normalized_subset(g, subset);
  const auto& s = out.subset;
  const RestrictedOperator op(g, s);

  std::vector<double> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = std::sqrt(static_cast<double>(g.degree(s[i])));
  const double n0 = norm2(x);
  for (double& xi : x) xi /= n0;

  std::vector<double> y(s.size());
  double rho_prev = -1.0;
  double rho = 0.0;
  for (std::int64_t it = 1;; ++it) {
    op.apply(x, y);
    rho = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    double residual = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) residual = std::max(residual, std::abs(y[i] - rho * x[i]));
    const bool settled = std::abs(rho - rho_prev) < opts.tol * rho && residual < opts.tol;
    out.iterations = it;
    if (settled) break;
    if (it >= opts.max_iterations)
      throw ConvergenceError("restricted eigenpair did not converge", 2.0 * (1.0 - rho));
    rho_prev = rho;
    const double ny = norm2(y);
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = y[i] / ny;
  }

  out.lambda = std::max(0.0, 2.0 * (1.0 - rho));
  out.vector = x;
  out.seed_distribution.resize(s.size());
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.seed_distribution[i] = std::sqrt(static_cast<double>(g.degree(s[i]))) * x[i];
    total += out.seed_distribution[i];
  }
  for (double& p : out.seed_distribution) p /= total;

  const Cut cut = cut_of(g, s);
  if (out.lambda > cut.conductance_value() + opts.tol)
    throw CertificateViolation("restricted eigenvalue " + std::to_string(out.lambda) +
                               " exceeds the set's conductance");
  return out;
}

double CertificateReport::worst_margin() const noexcept {
  double worst = 0.0;
  for (const auto& st : steps) worst = std::min({worst, st.margin, st.component_margin});
  return worst;
}

CertificateReport certify_lower_bound(const Graph& g, std::span<const Vertex> subset,
                                      std::int64_t horizon, double tol, const EigenOptions& opts) {
  if (horizon < 0) throw DomainError("horizon must be nonnegative");
  CertificateReport report;
  report.pair = restricted_eigenpair(g, subset, opts);
  report.cut = cut_of(g, report.pair.subset);
  const auto& s = report.pair.subset;
  const auto& p0 = report.pair.seed_distribution;
  const double rate = 1.0 - report.pair.lambda / 2.0;
  const double p0_mass = std::accumulate(p0.begin(), p0.end(), 0.0);

  std::vector<double> p(g.vertex_count(), 0.0), next(g.vertex_count()), share(g.vertex_count());
  for (std::size_t i = 0; i < s.size(); ++i) p[s[i]] = p0[i];

  double decay = 1.0;
  for (std::int64_t t = 0;; ++t) {
    CertificateStep st;
    st.t = t;
    st.lower_bound = decay;
    st.component_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
      st.mass_in_set += p[s[i]];
      st.component_margin = std::min(st.component_margin, p[s[i]] - decay * p0[i]);
    }
    st.margin = st.mass_in_set - decay * p0_mass;
    if (t == 0) st.margin = st.component_margin = 0.0;
    if (st.margin < -tol || st.component_margin < -tol)
      throw CertificateViolation("walk retention fell below (1 - lambda/2)^t at t = " + std::to_string(t));
    report.steps.push_back(st);
    if (t == horizon) break;
    lazy_step_into(g, p, next, share, Execution::parallel);
    p.swap(next);
    decay *= rate;
  }
  return report;
}

double retained_mass(const Graph& g, std::span<const double> start, std::span<const Vertex> subset,
                     std::int64_t horizon, Execution exec) {
  std::vector<double> p(start.begin(), start.end()), next(p.size()), share(p.size());
  for (std::int64_t t = 0; t < horizon; ++t) {
    lazy_step_into(g, p, next, share, exec);
    p.swap(next);
  }
  double mass = 0.0;
  for (Vertex v : subset) mass += p[v];
  return mass;
}

SeedChoice best_seed_vertex(const Graph& g, std::span<const Vertex> subset, std::int64_t horizon,
                            Execution exec) {
  if (horizon < 0) throw DomainError("horizon must be nonnegative");
  const std::vector<Vertex> s = normalized_subset(g, subset);
  const auto count = static_cast<std::int64_t>(s.size());
  std::vector<double> achieved(s.size());

  auto evaluate = [&](std::int64_t i) {
    std::vector<double> start(g.vertex_count(), 0.0);
    start[s[static_cast<std::size_t>(i)]] = 1.0;
    achieved[static_cast<std::size_t>(i)] = retained_mass(g, start, s, horizon, Execution::serial);
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) evaluate(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) evaluate(i);
  }

  const auto best = static_cast<std::size_t>(std::max_element(achieved.begin(), achieved.end()) - achieved.begin());
  SeedChoice choice;
  choice.vertex = s[best];
  choice.achieved = achieved[best];
  const double phi = cut_of(g, s).conductance_value();
  choice.guaranteed = std::pow(1.0 - phi / 2.0, static_cast<double>(horizon));
  if (choice.achieved < choice.guaranteed - 1e-12)
    throw CertificateViolation("no vertex of the set retains (1 - phi/2)^T of its mass");
  return choice;
}

}  // namespace sparsecut
