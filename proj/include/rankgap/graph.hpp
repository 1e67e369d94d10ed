#pragma once

#include "rankgap/bigcount.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace rankgap {

// Vertices are 0-indexed in memory and 1-indexed in every text format.

/// Undirected edge with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Ordered pair (tail, head).
struct Arc {
  int tail = 0;
  int head = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Simple undirected graph with sorted adjacency lists and a hashed edge set.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adjacency_(static_cast<std::size_t>(n)) {}
  /// Validates the edge list: endpoints in range, no loops, no duplicates.
  /// Pairs may be given in either orientation.
  Graph(int n, std::span<const Edge> edges);

  int order() const { return static_cast<int>(adjacency_.size()); }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;
  bool adjacent(int u, int v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.order() == b.order() && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }

  std::vector<std::vector<int>> adjacency_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> edge_set_;
};

/// Simple digraph: no loops, no duplicate arcs.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int n, std::span<const Arc> arcs);

  int order() const { return static_cast<int>(out_.size()); }
  std::size_t size() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int>& successors(int v) const { return out_[static_cast<std::size_t>(v)]; }
  bool has_arc(int tail, int head) const;

 private:
  std::vector<std::vector<int>> out_;
  std::vector<Arc> arcs_;
  std::unordered_set<std::uint64_t> arc_set_;
};

/// A k-coloring: colors[v] in [1, palette].
struct Coloring {
  std::vector<int> colors;
  int palette = 0;

  Coloring() = default;
  Coloring(std::vector<int> c, int k);

  int size() const { return static_cast<int>(colors.size()); }
  int operator[](int v) const { return colors[static_cast<std::size_t>(v)]; }
  /// Number of distinct colors actually assigned.
  int colors_used() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// The line digraph of a graph together with the arc identity of each of its
/// vertices. provenance[i] is the arc of G that vertex i stands for; the
/// order is lexicographic on (tail, head).
struct LineDigraph {
  Digraph digraph;
  std::vector<Arc> provenance;

  /// Index of the vertex standing for arc (tail, head), or -1.
  int index_of(int tail, int head) const;
};

LineDigraph line_digraph(const Graph& g);
Graph underlying_graph(const Digraph& d);
/// Underlying graph of the line digraph (both steps in one call).
Graph line_graph_underlying(const Graph& g);
Graph disjoint_union(const Graph& g, int copies);
/// Subgraph induced on `vertices`, relabelled in the given order.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// C(n, floor(n/2)), exact.
BigInt central_binomial(int n);
/// min { n >= 1 : k <= C(n, floor(n/2)) }.
int central_binomial_inverse(const BigInt& k);

/// True iff adjacent vertices receive distinct colors. Throws InputError when
/// the coloring length differs from the vertex count.
bool is_proper(const Graph& g, const Coloring& c);

/// Relabels colors by order of first appearance along the vertex order, and
/// sets the palette to the number of colors used.
Coloring canonical_relabel(const Coloring& c);

namespace families {

Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph petersen();
Graph empty(int n);
/// Named graphs accepted on the command line: k<n>, c<n>, p<n>, e<n>, petersen.
Graph named(std::string_view name);
/// One representative per isomorphism class of connected graphs on exactly
/// n vertices (1 <= n <= 6), in a deterministic order.
std::vector<Graph> connected_graphs(int n);

}  // namespace families

}  // namespace rankgap
