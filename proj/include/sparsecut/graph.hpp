#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sparsecut {

using Vertex = std::uint32_t;
using Volume = std::int64_t;
using Label = std::uint64_t;

namespace detail {
__extension__ typedef __int128 WideProduct;
}

/// Exact nonnegative fraction num/den with den > 0. Kept unreduced so that a
/// conductance prints as boundary/volume.
struct Ratio {
  Volume num = 0;
  Volume den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
    const auto lhs = static_cast<detail::WideProduct>(a.num) * b.den;
    const auto rhs = static_cast<detail::WideProduct>(b.num) * a.den;
    return lhs <=> rhs;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

std::string to_string(const Ratio& r);

struct GraphMetadata {
  /// Repeated edges dropped while loading.
  std::size_t duplicate_edges = 0;
  /// Vertices of degree zero removed by a generator before compaction.
  std::size_t isolated_dropped = 0;
  bool connected = true;
};

/// Immutable simple undirected graph in compressed-row form. Every vertex has
/// degree at least one; neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list over vertices 0..n-1. Duplicate edges (in either
  /// orientation) are collapsed and counted; self-loops, out-of-range ids, and
  /// isolated vertices are rejected with DomainError. `labels`, when given,
  /// names each vertex for output (defaults to the vertex id).
  static Graph from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges,
                          std::vector<Label> labels = {});

  Vertex vertex_count() const noexcept { return static_cast<Vertex>(degree_.size()); }
  std::int64_t edge_count() const noexcept { return total_volume_ / 2; }
  Volume total_volume() const noexcept { return total_volume_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  Volume degree(Vertex v) const noexcept { return degree_[v]; }
  std::span<const Volume> degrees() const noexcept { return degree_; }
  bool contains(Vertex v) const noexcept { return v < vertex_count(); }

  const GraphMetadata& metadata() const noexcept { return meta_; }
  GraphMetadata& metadata() noexcept { return meta_; }

  Label label(Vertex v) const noexcept { return labels_.empty() ? Label{v} : labels_[v]; }
  std::optional<Vertex> find_label(Label l) const;

  /// Structural equality: same vertex count, adjacency and labels.
  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_ &&
           a.label_or_identity() == b.label_or_identity();
  }

 private:
  std::vector<Label> label_or_identity() const;

  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::vector<Volume> degree_;
  std::vector<Label> labels_;
  std::vector<std::pair<Label, Vertex>> label_index_;
  Volume total_volume_ = 0;
  GraphMetadata meta_;
};

/// A vertex set with its exact cut metrics.
struct Cut {
  std::vector<Vertex> members;  // sorted, distinct
  Volume volume = 0;
  Volume boundary = 0;

  Ratio conductance() const noexcept { return {boundary, volume}; }
  double conductance_value() const noexcept { return conductance().value(); }
};

/// Reads "u v" lines; '#' lines and blank lines are skipped. Ids are compacted
/// to 0..n-1 in first-seen order and kept as labels.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Writes one "u v" line per edge using vertex labels, ordered by
/// (larger endpoint, smaller endpoint). When every vertex v > 0 has a
/// neighbor with a smaller id, reloading reproduces the same vertex ids.
void write_edge_list(std::ostream& out, const Graph& g);

/// Exact volume, boundary and conductance of `members`. Throws DomainError on
/// an empty set or out-of-range id. Duplicates are ignored.
Cut cut_of(const Graph& g, std::span<const Vertex> members);

/// Complement V - S as a sorted list.
std::vector<Vertex> complement(const Graph& g, std::span<const Vertex> members);

/// Whether the subgraph induced by `members` is connected (empty sets are not).
bool induces_connected(const Graph& g, std::span<const Vertex> members);

}  // namespace sparsecut
