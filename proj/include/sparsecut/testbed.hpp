#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "sparsecut/graph.hpp"

namespace sparsecut {

/// A generated graph with a known sparse set.
struct PlantedInstance {
  Graph graph;
  Cut planted;
  Ratio phi_planted;
};

/// r cliques of size s on a cycle; the last vertex of clique i is joined to
/// the first vertex of clique i+1. Planted set: clique 0, conductance
/// 2 / (s(s-1) + 2). Requires r >= 3, s >= 3.
PlantedInstance ring_of_cliques(int r, int s);

/// Two s-cliques joined by one bridge (s-1, s). Planted set: the first clique,
/// conductance 1 / (s(s-1) + 1). Requires s >= 2.
PlantedInstance barbell(int s);

Graph path(Vertex n);
Graph complete(Vertex n);

/// G(n, p) with a deterministic generator. Isolated vertices are removed and
/// the rest relabelled in order; metadata records how many were dropped and
/// whether the result is connected.
Graph erdos_renyi(Vertex n, double p, std::uint64_t rng_seed);

struct PhiK {
  Ratio phi;
  Cut witness;
};

inline constexpr Vertex kMaxEnumerationVertices = 24;

/// min phi(S) over nonempty S with vol(S) <= k, by exhaustive branch and bound
/// in exact arithmetic. The witness is the lexicographically smallest sorted
/// member list among minimizers. Throws RefusalError above max_vertices and
/// DomainError when no nonempty set fits.
PhiK exact_phi_k(const Graph& g, Volume k, Vertex max_vertices = kMaxEnumerationVertices);

/// Global minimum edge cut of a connected graph (Stoer-Wagner).
Volume edge_connectivity(const Graph& g);

/// phi_k certified without enumeration: in a connected graph every proper
/// subset has at least lambda(G) boundary edges, so phi_k >= lambda(G) / k.
/// Returns phi_k with `planted` as witness when the planted set attains that
/// bound (boundary = lambda(G), volume = k < 2m); nullopt otherwise.
std::optional<PhiK> phi_k_by_connectivity(const Graph& g, const Cut& planted, Volume k);

}  // namespace sparsecut
