#include "sparsecut/testbed.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "sparsecut/error.hpp"

namespace sparsecut {

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

void add_clique(EdgeList& edges, Vertex first, Vertex size) {
  for (Vertex a = first; a < first + size; ++a)
    for (Vertex b = a + 1; b < first + size; ++b) edges.emplace_back(a, b);
}

PlantedInstance planted(Graph g, Vertex first, Vertex size) {
  std::vector<Vertex> members(size);
  for (Vertex i = 0; i < size; ++i) members[i] = first + i;
  PlantedInstance inst{std::move(g), {}, {}};
  inst.planted = cut_of(inst.graph, members);
  inst.phi_planted = inst.planted.conductance();
  return inst;
}

}  // namespace

PlantedInstance ring_of_cliques(int r, int s) {
  if (r < 3 || s < 3) throw DomainError("ring_of_cliques needs r >= 3 and s >= 3");
  const auto rs = static_cast<Vertex>(r);
  const auto ss = static_cast<Vertex>(s);
  const Vertex n = rs * ss;
  EdgeList edges;
  for (Vertex i = 0; i < rs; ++i) {
    add_clique(edges, i * ss, ss);
    edges.emplace_back((i + 1) * ss - 1, ((i + 1) * ss) % n);
  }
  return planted(Graph::from_edges(n, edges), 0, ss);
}

PlantedInstance barbell(int s) {
  if (s < 2) throw DomainError("barbell needs s >= 2");
  const auto ss = static_cast<Vertex>(s);
  EdgeList edges;
  add_clique(edges, 0, ss);
  add_clique(edges, ss, ss);
  edges.emplace_back(ss - 1, ss);
  return planted(Graph::from_edges(2 * ss, edges), 0, ss);
}

Graph path(Vertex n) {
  if (n < 2) throw DomainError("path needs at least two vertices");
  EdgeList edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph complete(Vertex n) {
  if (n < 2) throw DomainError("complete graph needs at least two vertices");
  EdgeList edges;
  add_clique(edges, 0, n);
  return Graph::from_edges(n, edges);
}

Graph erdos_renyi(Vertex n, double p, std::uint64_t rng_seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(rng_seed);
  // 53 random bits mapped to [0, 1); std distributions are not portable
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  EdgeList edges;
  std::vector<char> touched(n, 0);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (uniform() < p) {
        edges.emplace_back(a, b);
        touched[a] = touched[b] = 1;
      }

  std::vector<Vertex> relabel(n, 0);
  Vertex kept = 0;
  for (Vertex v = 0; v < n; ++v)
    if (touched[v]) relabel[v] = kept++;
  for (auto& [a, b] : edges) {
    a = relabel[a];
    b = relabel[b];
  }
  if (kept == 0) throw DomainError("erdos_renyi produced no edges");
  Graph g = Graph::from_edges(kept, edges);
  g.metadata().isolated_dropped = n - kept;
  return g;
}

PhiK exact_phi_k(const Graph& g, Volume k, Vertex max_vertices) {
  const Vertex n = g.vertex_count();
  if (n > max_vertices || n > 63)
    throw RefusalError("exact_phi_k refuses " + std::to_string(n) + " vertices (limit " +
                       std::to_string(std::min<Vertex>(max_vertices, 63)) + ")");

  // branch on vertices in decreasing degree so the volume bound prunes early
  std::vector<Vertex> by_degree(n);
  for (Vertex v = 0; v < n; ++v) by_degree[v] = v;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&g](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  std::vector<std::uint64_t> adj(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) adj[v] |= std::uint64_t{1} << w;

  bool found = false;
  Ratio best{1, 1};
  std::uint64_t best_set = 0;

  auto members_of = [n](std::uint64_t set) {
    std::vector<Vertex> m;
    for (Vertex v = 0; v < n; ++v)
      if (set >> v & 1U) m.push_back(v);
    return m;
  };

  auto consider = [&](std::uint64_t set, Volume volume, Volume boundary) {
    const Ratio r{boundary, volume};
    if (!found || r < best || (r == best && members_of(set) < members_of(best_set))) {
      found = true;
      best = r;
      best_set = set;
    }
  };

  auto recurse = [&](auto&& self, std::size_t depth, std::uint64_t set, Volume volume, Volume boundary) -> void {
    if (depth == by_degree.size()) {
      if (set != 0) consider(set, volume, boundary);
      return;
    }
    const Vertex v = by_degree[depth];
    self(self, depth + 1, set, volume, boundary);
    const Volume d = g.degree(v);
    if (volume + d > k) return;
    const auto inside = static_cast<Volume>(std::popcount(adj[v] & set));
    self(self, depth + 1, set | (std::uint64_t{1} << v), volume + d, boundary + d - 2 * inside);
  };
  recurse(recurse, 0, 0, 0, 0);

  if (!found) throw DomainError("no nonempty vertex set has volume at most k");
  return {best, cut_of(g, members_of(best_set))};
}

Volume edge_connectivity(const Graph& g) {
  const Vertex n = g.vertex_count();
  if (!g.metadata().connected) return 0;
  if (n < 2) return 0;

  std::vector<std::vector<Volume>> w(n, std::vector<Volume>(n, 0));
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v)) w[v][u] = 1;

  std::vector<Vertex> alive(n);
  for (Vertex v = 0; v < n; ++v) alive[v] = v;
  Volume best = std::numeric_limits<Volume>::max();

  while (alive.size() > 1) {
    std::vector<Volume> attach(n, 0);
    std::vector<char> added(n, 0);
    Vertex prev = alive[0];
    Vertex last = alive[0];
    for (std::size_t round = 0; round < alive.size(); ++round) {
      Vertex pick = n;
      for (Vertex v : alive)
        if (!added[v] && (pick == n || attach[v] > attach[pick])) pick = v;
      added[pick] = 1;
      prev = last;
      last = pick;
      if (round + 1 == alive.size()) best = std::min(best, attach[pick]);
      for (Vertex v : alive) attach[v] += w[pick][v];
    }
    for (Vertex v : alive) {
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    w[prev][prev] = 0;
    alive.erase(std::find(alive.begin(), alive.end(), last));
  }
  return best;
}

std::optional<PhiK> phi_k_by_connectivity(const Graph& g, const Cut& planted, Volume k) {
  if (!g.metadata().connected || planted.volume != k || k >= g.total_volume()) return std::nullopt;
  if (planted.boundary != edge_connectivity(g)) return std::nullopt;
  return PhiK{planted.conductance(), planted};
}

}  // namespace sparsecut
