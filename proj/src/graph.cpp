#include "rankgap/graph.hpp"

#include "rankgap/errors.hpp"

#include <algorithm>
#include <string>

namespace rankgap {

Graph::Graph(int n, std::span<const Edge> edges) : adjacency_(static_cast<std::size_t>(n)) {
  if (n < 0) throw InputError("graph: negative vertex count");
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InputError("graph: edge endpoint out of range");
    if (e.u == e.v) throw InputError("graph: loop at vertex " + std::to_string(e.u + 1));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!edge_set_.insert(key(e.u, e.v)).second)
      throw InputError("graph: parallel edge {" + std::to_string(e.u + 1) + "," +
                       std::to_string(e.v + 1) + "}");
    edges_.push_back(e);
    adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, static_cast<int>(nbrs.size()));
  return best;
}

bool Graph::adjacent(int u, int v) const {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return edge_set_.contains(key(u, v));
}

Digraph::Digraph(int n, std::span<const Arc> arcs) : out_(static_cast<std::size_t>(n)) {
  arcs_.reserve(arcs.size());
  for (Arc a : arcs) {
    if (a.tail < 0 || a.head < 0 || a.tail >= n || a.head >= n)
      throw InputError("digraph: arc endpoint out of range");
    if (a.tail == a.head) throw InputError("digraph: loop");
    const auto k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a.tail)) << 32) |
                   static_cast<std::uint32_t>(a.head);
    if (!arc_set_.insert(k).second) throw InputError("digraph: duplicate arc");
    arcs_.push_back(a);
    out_[static_cast<std::size_t>(a.tail)].push_back(a.head);
  }
  std::sort(arcs_.begin(), arcs_.end());
  for (auto& s : out_) std::sort(s.begin(), s.end());
}

bool Digraph::has_arc(int tail, int head) const {
  const auto k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(tail)) << 32) |
                 static_cast<std::uint32_t>(head);
  return arc_set_.contains(k);
}

Coloring::Coloring(std::vector<int> c, int k) : colors(std::move(c)), palette(k) {
  if (k < 0) throw InputError("coloring: negative palette");
  for (int x : colors)
    if (x < 1 || x > k)
      throw InputError("coloring: color " + std::to_string(x) + " outside [1," +
                       std::to_string(k) + "]");
}

int Coloring::colors_used() const {
  std::vector<int> sorted = colors;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

int LineDigraph::index_of(int tail, int head) const {
  const Arc target{tail, head};
  auto it = std::lower_bound(provenance.begin(), provenance.end(), target);
  if (it == provenance.end() || *it != target) return -1;
  return static_cast<int>(it - provenance.begin());
}

LineDigraph line_digraph(const Graph& g) {
  LineDigraph out;
  // Every undirected edge contributes both orientations.
  for (int u = 0; u < g.order(); ++u)
    for (int v : g.neighbors(u)) out.provenance.push_back({u, v});
  // Neighbor lists are sorted, so provenance is already lexicographic.
  std::vector<Arc> arcs;
  for (int i = 0; i < static_cast<int>(out.provenance.size()); ++i) {
    const Arc a = out.provenance[static_cast<std::size_t>(i)];
    for (int w : g.neighbors(a.head)) arcs.push_back({i, out.index_of(a.head, w)});
  }
  out.digraph = Digraph(static_cast<int>(out.provenance.size()), arcs);
  return out;
}

Graph underlying_graph(const Digraph& d) {
  std::vector<Edge> edges;
  for (Arc a : d.arcs()) {
    if (a.tail < a.head || !d.has_arc(a.head, a.tail))
      edges.push_back({std::min(a.tail, a.head), std::max(a.tail, a.head)});
  }
  return Graph(d.order(), edges);
}

Graph line_graph_underlying(const Graph& g) { return underlying_graph(line_digraph(g).digraph); }

Graph disjoint_union(const Graph& g, int copies) {
  if (copies < 1) throw InputError("disjoint_union: copies must be >= 1");
  const int n = g.order();
  std::vector<Edge> edges;
  edges.reserve(g.size() * static_cast<std::size_t>(copies));
  for (int j = 0; j < copies; ++j)
    for (Edge e : g.edges()) edges.push_back({e.u + j * n, e.v + j * n});
  return Graph(n * copies, edges);
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<int> position(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int v = vertices[i];
    if (v < 0 || v >= g.order()) throw InputError("induced_subgraph: vertex out of range");
    if (position[static_cast<std::size_t>(v)] >= 0)
      throw InputError("induced_subgraph: repeated vertex");
    position[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (Edge e : g.edges()) {
    const int a = position[static_cast<std::size_t>(e.u)];
    const int b = position[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return Graph(static_cast<int>(vertices.size()), edges);
}

BigInt central_binomial(int n) {
  if (n < 0) throw InputError("central_binomial: n must be nonnegative");
  const int k = n / 2;
  BigInt c = 1;
  for (int i = 0; i < k; ++i) {
    c *= (n - i);
    c /= (i + 1);
  }
  return c;
}

int central_binomial_inverse(const BigInt& k) {
  int n = 1;
  while (central_binomial(n) < k) ++n;
  return n;
}

bool is_proper(const Graph& g, const Coloring& c) {
  if (c.size() != g.order())
    throw InputError("coloring has " + std::to_string(c.size()) + " entries for a graph on " +
                     std::to_string(g.order()) + " vertices");
  return std::none_of(g.edges().begin(), g.edges().end(),
                      [&](Edge e) { return c[e.u] == c[e.v]; });
}

Coloring canonical_relabel(const Coloring& c) {
  std::vector<int> relabel(static_cast<std::size_t>(c.palette) + 1, 0);
  int next = 0;
  std::vector<int> out(c.colors.size());
  for (std::size_t v = 0; v < c.colors.size(); ++v) {
    int& slot = relabel[static_cast<std::size_t>(c.colors[v])];
    if (slot == 0) slot = ++next;
    out[v] = slot;
  }
  return Coloring(std::move(out), next);
}

}  // namespace rankgap
