#pragma once

#include "rankgap/graph.hpp"

#include <optional>
#include <vector>

namespace rankgap {

/// Exact solvers work on bitset adjacency and refuse graphs above this order.
inline constexpr int kDefaultSizeCap = 64;

struct ChiOptions {
  /// Give up once chi is known to exceed this value (0 = no limit).
  int limit = 0;
  int size_cap = kDefaultSizeCap;
};

struct ChiResult {
  /// Exact chromatic number, or limit + 1 when `above_limit` is set.
  int chi = 0;
  Coloring witness;
  bool above_limit = false;
};

/// Exact chromatic number by DSATUR branch and bound with a clique lower
/// bound. The witness is canonically relabelled and depends only on the graph.
ChiResult chromatic_number(const Graph& g, const ChiOptions& options = {});

/// A proper coloring with at most k colors, or nullopt after an exhaustive
/// search.
std::optional<Coloring> k_coloring(const Graph& g, int k, int size_cap = kDefaultSizeCap);

/// Size of a maximum clique (exact).
int clique_number(const Graph& g, int size_cap = kDefaultSizeCap);

/// Circular distance between residues modulo p.
int circular_distance(int a, int b, int p);

/// A (p,q)-coloring c: V -> {0..p-1} with circular distance >= q on every
/// edge. Returns the lexicographically least such map (vertex order), or
/// nullopt if none exists. Requires p >= 2q >= 2 unless g is edgeless.
std::optional<std::vector<int>> pq_coloring(const Graph& g, int p, int q);

/// True iff `residues` is a valid (p,q)-coloring of g.
bool is_pq_coloring(const Graph& g, std::span<const int> residues, int p, int q);

struct CircularChiResult {
  int p = 0;
  int q = 1;
  std::vector<int> witness;
  double value() const { return static_cast<double>(p) / q; }
};

/// Least p/q (reduced, q <= n) admitting a (p,q)-coloring, found by testing
/// fractions in increasing order. Throws InputError for edgeless graphs.
CircularChiResult circular_chromatic_number(const Graph& g, int size_cap = kDefaultSizeCap);

struct PoljakRodlCheck {
  int lhs = 0;  // chromatic number of the underlying line digraph
  int rhs = 0;  // min { n : chi(G) <= C(n, floor(n/2)) }
  bool equal = false;
};

PoljakRodlCheck poljak_rodl_check(const Graph& g, int size_cap = kDefaultSizeCap);

}  // namespace rankgap
