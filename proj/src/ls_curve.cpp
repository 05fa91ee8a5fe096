#include "sparsecut/ls_curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sparsecut/detail/membership.hpp"
#include "sparsecut/error.hpp"

namespace sparsecut {

namespace {

struct Keyed {
  double ratio;
  Vertex v;
};

void sort_keyed(std::vector<Keyed>& keys, std::size_t limit) {
  auto before = [](const Keyed& a, const Keyed& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.v < b.v;
  };
  if (limit < keys.size()) {
    const auto mid = keys.begin() + static_cast<std::ptrdiff_t>(limit);
    std::partial_sort(keys.begin(), mid, keys.end(), before);
    keys.erase(mid, keys.end());
  } else {
    std::sort(keys.begin(), keys.end(), before);
  }
}

}  // namespace

namespace {

std::vector<Vertex> finish_order(std::vector<Keyed>& keys, std::size_t limit) {
  sort_keyed(keys, limit);
  std::vector<Vertex> order(keys.size());
  std::transform(keys.begin(), keys.end(), order.begin(), [](const Keyed& k) { return k.v; });
  return order;
}

}  // namespace

std::vector<Vertex> sweep_order(const Graph& g, std::span<const double> dense, std::size_t limit) {
  if (dense.size() != g.vertex_count())
    throw DomainError("distribution length does not match vertex count");
  std::vector<Keyed> keys;
  keys.reserve(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    keys.push_back({dense[v] / static_cast<double>(g.degree(v)), v});
  return finish_order(keys, limit);
}

std::vector<Vertex> sweep_order(const Graph& g, const SparseDistribution& p, std::size_t limit) {
  std::vector<Keyed> keys;
  keys.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vertex v = p.support[i];
    if (!g.contains(v)) throw DomainError("support vertex out of range");
    keys.push_back({p.mass[i] / static_cast<double>(g.degree(v)), v});
  }
  return finish_order(keys, limit);
}

std::vector<Vertex> sweep_order(const Graph& g, const Distribution& p, std::size_t limit) {
  if (const auto* dense = std::get_if<DenseDistribution>(&p)) return sweep_order(g, dense->mass, limit);
  return sweep_order(g, std::get<SparseDistribution>(p), limit);
}

LSCurve build_curve(const Graph& g, const Distribution& p) {
  LSCurve c;
  c.order = sweep_order(g, p);
  c.x.reserve(c.order.size() + 2);
  c.y.reserve(c.order.size() + 2);
  c.x.push_back(0);
  c.y.push_back(0.0);

  const auto* dense = std::get_if<DenseDistribution>(&p);
  const auto* sparse = std::get_if<SparseDistribution>(&p);
  Volume x = 0;
  double y = 0.0;
  for (Vertex v : c.order) {
    x += g.degree(v);
    y += dense ? dense->mass[v] : sparse->at(v);
    c.x.push_back(x);
    c.y.push_back(y);
  }
  if (x != g.total_volume()) {
    c.x.push_back(g.total_volume());
    c.y.push_back(y);
  }
  return c;
}

double eval(const LSCurve& c, double x) {
  if (!(x >= 0.0) || x > static_cast<double>(c.total_volume()))
    throw DomainError("curve evaluated outside [0, 2m]");
  // first extreme point with x_j >= x
  auto it = std::lower_bound(c.x.begin(), c.x.end(), x,
                             [](Volume xj, double v) { return static_cast<double>(xj) < v; });
  const auto j = static_cast<std::size_t>(it - c.x.begin());
  if (static_cast<double>(c.x[j]) == x) return c.y[j];
  const double x0 = static_cast<double>(c.x[j - 1]);
  const double x1 = static_cast<double>(c.x[j]);
  const double r = (x - x0) / (x1 - x0);
  return (1.0 - r) * c.y[j - 1] + r * c.y[j];
}

std::vector<Cut> level_sets(const Graph& g, const LSCurve& c, Volume vol_cap) {
  if (vol_cap < 1) throw DomainError("volume cap must be at least 1");
  std::vector<Cut> out;
  detail::PrefixScanner scan(g, c.order.size());
  std::vector<Vertex> prefix;
  for (Vertex v : c.order) {
    if (scan.volume() + g.degree(v) > vol_cap) break;
    scan.add(v);
    prefix.push_back(v);
    Cut cut;
    cut.members = prefix;
    std::sort(cut.members.begin(), cut.members.end());
    cut.volume = scan.volume();
    cut.boundary = scan.boundary();
    out.push_back(std::move(cut));
  }
  return out;
}

double envelope_value(const Envelope& e, double x) {
  if (x < 0.0) throw DomainError("envelope evaluated at negative x");
  const double decay = std::pow(1.0 - e.phi1 * e.phi1 / 8.0, static_cast<double>(e.t));
  return x / e.cap + std::sqrt(x) * decay;
}

std::vector<ChordViolation> check_chord_bound(const Graph& g, const LSCurve& c_prev,
                                              const LSCurve& c_next, Volume vol_cap, double tol) {
  std::vector<ChordViolation> out;
  const Volume half = g.edge_count();
  detail::PrefixScanner scan(g, c_next.order.size());
  for (std::size_t j = 1; j <= c_next.order.size(); ++j) {
    scan.add(c_next.order[j - 1]);
    const Volume x = scan.volume();
    if (x > half || x > vol_cap) break;
    const double phi = static_cast<double>(scan.boundary()) / static_cast<double>(x);
    const double xd = static_cast<double>(x);
    const double chord = 0.5 * (eval(c_prev, xd - phi * xd) + eval(c_prev, std::min(xd + phi * xd, static_cast<double>(c_prev.total_volume()))));
    const double value = c_next.y[j];
    if (value > chord + tol) out.push_back({j, x, value, chord});
  }
  return out;
}

}  // namespace sparsecut
