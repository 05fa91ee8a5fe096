#include "sparsecut/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "sparsecut/detail/membership.hpp"
#include "sparsecut/error.hpp"

namespace sparsecut {

std::string to_string(const Ratio& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Graph Graph::from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges,
                        std::vector<Label> labels) {
  if (!labels.empty() && labels.size() != n)
    throw DomainError("label count does not match vertex count");

  std::vector<std::pair<Vertex, Vertex>> arcs;
  arcs.reserve(2 * edges.size());
  for (auto [u, w] : edges) {
    if (u >= n || w >= n) throw DomainError("edge endpoint out of range");
    if (u == w) throw DomainError("self-loop at vertex " + std::to_string(u));
    arcs.emplace_back(u, w);
    arcs.emplace_back(w, u);
  }
  std::sort(arcs.begin(), arcs.end());
  const auto last = std::unique(arcs.begin(), arcs.end());
  const std::size_t removed = static_cast<std::size_t>(arcs.end() - last);
  arcs.erase(last, arcs.end());

  Graph g;
  g.meta_.duplicate_edges = removed / 2;
  g.offsets_.assign(std::size_t{n} + 1, 0);
  g.degree_.assign(n, 0);
  g.adjacency_.reserve(arcs.size());
  for (auto [u, w] : arcs) {
    ++g.degree_[u];
    g.adjacency_.push_back(w);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree_[v] == 0) throw DomainError("vertex " + std::to_string(v) + " is isolated");
    g.offsets_[v + 1] = g.offsets_[v] + static_cast<std::size_t>(g.degree_[v]);
  }
  g.total_volume_ = static_cast<Volume>(arcs.size());

  g.labels_ = std::move(labels);
  if (!g.labels_.empty()) {
    g.label_index_.reserve(n);
    for (Vertex v = 0; v < n; ++v) g.label_index_.emplace_back(g.labels_[v], v);
    std::sort(g.label_index_.begin(), g.label_index_.end());
  }

  // connectivity by BFS
  if (n > 0) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Vertex w : g.neighbors(queue[head]))
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    g.meta_.connected = queue.size() == n;
  }
  return g;
}

std::optional<Vertex> Graph::find_label(Label l) const {
  if (labels_.empty()) {
    if (l < vertex_count()) return static_cast<Vertex>(l);
    return std::nullopt;
  }
  auto it = std::lower_bound(label_index_.begin(), label_index_.end(), std::pair<Label, Vertex>{l, 0});
  if (it == label_index_.end() || it->first != l) return std::nullopt;
  return it->second;
}

std::vector<Label> Graph::label_or_identity() const {
  std::vector<Label> out(vertex_count());
  for (Vertex v = 0; v < vertex_count(); ++v) out[v] = label(v);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

Label parse_id(std::string_view token, std::size_t line) {
  Label value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, "expected a nonnegative integer vertex id, got '" + std::string(token) + "'");
  return value;
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::unordered_map<Label, Vertex> ids;
  std::vector<Label> labels;
  std::vector<std::pair<Vertex, Vertex>> edges;

  auto intern = [&](Label l) {
    auto [it, fresh] = ids.try_emplace(l, static_cast<Vertex>(labels.size()));
    if (fresh) labels.push_back(l);
    return it->second;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::string_view tokens[3];
    std::size_t count = 0;
    while (!line.empty() && count < 3) {
      const auto end = line.find_first_of(" \t");
      tokens[count++] = line.substr(0, end);
      line = end == std::string_view::npos ? std::string_view{} : trim(line.substr(end));
    }
    if (count != 2) throw ParseError(line_no, "expected exactly two vertex ids");

    const Label a = parse_id(tokens[0], line_no);
    const Label b = parse_id(tokens[1], line_no);
    if (a == b) throw ParseError(line_no, "self-loop on vertex " + std::to_string(a));
    const Vertex u = intern(a);
    const Vertex w = intern(b);
    edges.emplace_back(u, w);
  }

  const auto n = static_cast<Vertex>(labels.size());
  return Graph::from_edges(n, edges, std::move(labels));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (Vertex hi = 0; hi < g.vertex_count(); ++hi)
    for (Vertex lo : g.neighbors(hi)) {
      if (lo >= hi) break;
      out << g.label(lo) << ' ' << g.label(hi) << '\n';
    }
}

Cut cut_of(const Graph& g, std::span<const Vertex> members) {
  if (members.empty()) throw DomainError("cut of an empty vertex set");
  Cut cut;
  cut.members.assign(members.begin(), members.end());
  std::sort(cut.members.begin(), cut.members.end());
  cut.members.erase(std::unique(cut.members.begin(), cut.members.end()), cut.members.end());
  if (!g.contains(cut.members.back()))
    throw DomainError("vertex id " + std::to_string(cut.members.back()) + " out of range");

  detail::PrefixScanner scan(g, cut.members.size());
  for (Vertex v : cut.members) scan.add(v);
  cut.volume = scan.volume();
  cut.boundary = scan.boundary();
  return cut;
}

std::vector<Vertex> complement(const Graph& g, std::span<const Vertex> members) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : members) {
    if (!g.contains(v)) throw DomainError("vertex id " + std::to_string(v) + " out of range");
    in[v] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

bool induces_connected(const Graph& g, std::span<const Vertex> members) {
  if (members.empty()) return false;
  detail::Membership in(g.vertex_count(), members.size());
  for (Vertex v : members) {
    if (!g.contains(v)) throw DomainError("vertex id " + std::to_string(v) + " out of range");
    in.insert(v);
  }
  detail::Membership seen(g.vertex_count(), members.size());
  std::vector<Vertex> queue{members.front()};
  seen.insert(members.front());
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : g.neighbors(queue[head]))
      if (in.contains(w) && seen.insert(w)) queue.push_back(w);

  std::vector<Vertex> distinct(members.begin(), members.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return queue.size() == distinct.size();
}

}  // namespace sparsecut
