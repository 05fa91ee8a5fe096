#pragma once

#include <cstddef>
#include <unordered_set>
#include <vector>

#include "sparsecut/graph.hpp"

namespace sparsecut::detail {

// Set of vertices with O(1) lookup. Switches to a hash set when the expected
// size is small relative to n so that local callers never pay O(n).
class Membership {
 public:
  Membership(Vertex n, std::size_t expected) : sparse_(expected * 16 < n) {
    if (sparse_)
      set_.reserve(expected);
    else
      mask_.assign(n, 0);
  }

  bool contains(Vertex v) const {
    return sparse_ ? set_.count(v) != 0 : mask_[v] != 0;
  }

  // Returns false if v was already present.
  bool insert(Vertex v) {
    if (sparse_) return set_.insert(v).second;
    if (mask_[v]) return false;
    mask_[v] = 1;
    return true;
  }

 private:
  bool sparse_;
  std::vector<char> mask_;
  std::unordered_set<Vertex> set_;
};

// Tracks volume and boundary of a growing prefix.
class PrefixScanner {
 public:
  PrefixScanner(const Graph& g, std::size_t expected) : g_(g), in_(g.vertex_count(), expected) {}

  void add(Vertex v) {
    if (!in_.insert(v)) return;
    Volume inside = 0;
    for (Vertex w : g_.neighbors(v))
      if (in_.contains(w)) ++inside;
    volume_ += g_.degree(v);
    boundary_ += g_.degree(v) - 2 * inside;
  }

  Volume volume() const noexcept { return volume_; }
  Volume boundary() const noexcept { return boundary_; }

 private:
  const Graph& g_;
  Membership in_;
  Volume volume_ = 0;
  Volume boundary_ = 0;
};

}  // namespace sparsecut::detail
