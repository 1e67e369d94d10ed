#include "rankgap/exact.hpp"

#include "rankgap/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>

namespace rankgap {

namespace {

using Mask = std::uint64_t;

Mask low_bits(int count) { return count >= 64 ? ~Mask{0} : ((Mask{1} << count) - 1); }

void check_cap(const Graph& g, int size_cap, const char* what) {
  const int cap = std::min(size_cap, 64);
  if (g.order() > cap)
    throw ResourceLimit(std::string(what) + ": graph has " + std::to_string(g.order()) +
                        " vertices, cap is " + std::to_string(cap));
}

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(static_cast<std::size_t>(g.order()), 0);
  for (Edge e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= Mask{1} << e.v;
    adj[static_cast<std::size_t>(e.v)] |= Mask{1} << e.u;
  }
  return adj;
}

// DSATUR backtracking for k-colorability. Colors are introduced in order, so
// the first vertex picked (maximum degree) always receives color 1.
class DsaturSearch {
 public:
  DsaturSearch(const Graph& g, int k)
      : n_(g.order()), k_(k), full_(low_bits(k)), adj_(adjacency_masks(g)),
        color_(static_cast<std::size_t>(n_), 0), forbidden_(static_cast<std::size_t>(n_), 0) {
    degree_.reserve(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) degree_.push_back(g.degree(v));
  }

  std::optional<std::vector<int>> run() {
    if (n_ == 0) return std::vector<int>{};
    if (k_ <= 0) return std::nullopt;
    if (solve(0, 0)) return color_;
    return std::nullopt;
  }

 private:
  int pick() const {
    int best = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[static_cast<std::size_t>(v)] != 0) continue;
      const int sat = std::popcount(forbidden_[static_cast<std::size_t>(v)]);
      const int deg = degree_[static_cast<std::size_t>(v)];
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return best;
  }

  bool solve(int colored, int max_used) {
    if (colored == n_) return true;
    const int v = pick();
    const auto vi = static_cast<std::size_t>(v);
    Mask allowed = ~forbidden_[vi] & low_bits(std::min(k_, max_used + 1));
    std::vector<int> touched;
    touched.reserve(static_cast<std::size_t>(degree_[vi]));
    while (allowed) {
      const int bit = std::countr_zero(allowed);
      allowed &= allowed - 1;
      const Mask cbit = Mask{1} << bit;
      color_[vi] = bit + 1;
      touched.clear();
      bool dead = false;
      for (Mask nb = adj_[vi]; nb; nb &= nb - 1) {
        const auto u = static_cast<std::size_t>(std::countr_zero(nb));
        if (color_[u] != 0 || (forbidden_[u] & cbit)) continue;
        forbidden_[u] |= cbit;
        touched.push_back(static_cast<int>(u));
        if ((forbidden_[u] & full_) == full_) dead = true;
      }
      if (!dead && solve(colored + 1, std::max(max_used, bit + 1))) return true;
      for (int u : touched) forbidden_[static_cast<std::size_t>(u)] &= ~cbit;
      color_[vi] = 0;
    }
    return false;
  }

  int n_;
  int k_;
  Mask full_;
  std::vector<Mask> adj_;
  std::vector<int> degree_;
  std::vector<int> color_;
  std::vector<Mask> forbidden_;
};

std::vector<int> greedy_dsatur(const Graph& g) {
  const int n = g.order();
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  std::vector<Mask> seen(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int best = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (color[static_cast<std::size_t>(v)] != 0) continue;
      const int sat = std::popcount(seen[static_cast<std::size_t>(v)]);
      if (sat > best_sat || (sat == best_sat && g.degree(v) > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = g.degree(v);
      }
    }
    const int c = std::countr_zero(~seen[static_cast<std::size_t>(best)]) + 1;
    color[static_cast<std::size_t>(best)] = c;
    for (int u : g.neighbors(best)) seen[static_cast<std::size_t>(u)] |= Mask{1} << (c - 1);
  }
  return color;
}

void max_clique(const std::vector<Mask>& adj, int size, Mask candidates, int& best) {
  if (candidates == 0) {
    best = std::max(best, size);
    return;
  }
  while (candidates) {
    if (size + std::popcount(candidates) <= best) return;
    const int v = std::countr_zero(candidates);
    max_clique(adj, size + 1, candidates & adj[static_cast<std::size_t>(v)], best);
    candidates &= candidates - 1;
  }
}

}  // namespace

int clique_number(const Graph& g, int size_cap) {
  check_cap(g, size_cap, "clique_number");
  int best = 0;
  max_clique(adjacency_masks(g), 0, low_bits(g.order()), best);
  return best;
}

std::optional<Coloring> k_coloring(const Graph& g, int k, int size_cap) {
  check_cap(g, size_cap, "k_coloring");
  if (k > 64) k = 64;
  auto colors = DsaturSearch(g, k).run();
  if (!colors) return std::nullopt;
  return Coloring(canonical_relabel(Coloring(std::move(*colors), k)).colors, k);
}

ChiResult chromatic_number(const Graph& g, const ChiOptions& options) {
  check_cap(g, options.size_cap, "chromatic_number");
  ChiResult result;
  if (g.order() == 0) return result;
  const int lower = std::max(1, clique_number(g, options.size_cap));
  const std::vector<int> greedy = greedy_dsatur(g);
  const int upper = *std::max_element(greedy.begin(), greedy.end());
  for (int k = lower; k <= upper; ++k) {
    if (options.limit > 0 && k > options.limit) {
      result.chi = options.limit + 1;
      result.above_limit = true;
      return result;
    }
    // k == upper always succeeds; running the search there as well keeps the
    // witness a function of the search order alone.
    if (auto c = k_coloring(g, k, options.size_cap)) {
      result.chi = k;
      result.witness = std::move(*c);
      return result;
    }
  }
  throw Error("chromatic_number: search failed to reproduce the greedy bound");
}

int circular_distance(int a, int b, int p) {
  const int d = std::abs(a - b) % p;
  return std::min(d, p - d);
}

bool is_pq_coloring(const Graph& g, std::span<const int> residues, int p, int q) {
  if (static_cast<int>(residues.size()) != g.order()) return false;
  for (int r : residues)
    if (r < 0 || r >= p) return false;
  return std::all_of(g.edges().begin(), g.edges().end(), [&](Edge e) {
    return circular_distance(residues[static_cast<std::size_t>(e.u)],
                             residues[static_cast<std::size_t>(e.v)], p) >= q;
  });
}

namespace {

class CircularSearch {
 public:
  CircularSearch(const Graph& g, int p, int q)
      : g_(g), p_(p), q_(q), residue_(static_cast<std::size_t>(g.order()), -1),
        component_head_(static_cast<std::size_t>(g.order()), false) {
    // Rotating one component keeps a coloring valid, so the least witness
    // puts residue 0 on the first vertex of every component.
    std::vector<int> comp(static_cast<std::size_t>(g.order()), -1);
    for (int s = 0; s < g.order(); ++s) {
      if (comp[static_cast<std::size_t>(s)] >= 0) continue;
      component_head_[static_cast<std::size_t>(s)] = true;
      std::vector<int> stack{s};
      comp[static_cast<std::size_t>(s)] = s;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
          if (comp[static_cast<std::size_t>(u)] < 0) {
            comp[static_cast<std::size_t>(u)] = s;
            stack.push_back(u);
          }
      }
    }
  }

  std::optional<std::vector<int>> run() {
    if (solve(0)) return residue_;
    return std::nullopt;
  }

 private:
  bool fits(int v, int r) const {
    for (int u : g_.neighbors(v)) {
      const int ru = residue_[static_cast<std::size_t>(u)];
      if (ru >= 0 && circular_distance(r, ru, p_) < q_) return false;
    }
    return true;
  }

  bool solve(int v) {
    if (v == g_.order()) return true;
    const auto vi = static_cast<std::size_t>(v);
    const int top = component_head_[vi] ? 1 : p_;
    for (int r = 0; r < top; ++r) {
      if (!fits(v, r)) continue;
      residue_[vi] = r;
      if (solve(v + 1)) return true;
    }
    residue_[vi] = -1;
    return false;
  }

  const Graph& g_;
  int p_;
  int q_;
  std::vector<int> residue_;
  std::vector<bool> component_head_;
};

}  // namespace

std::optional<std::vector<int>> pq_coloring(const Graph& g, int p, int q) {
  if (q < 1 || p < 1) throw InputError("pq_coloring: p and q must be positive");
  if (g.size() > 0 && p < 2 * q) throw InputError("pq_coloring: requires p >= 2q");
  return CircularSearch(g, p, q).run();
}

CircularChiResult circular_chromatic_number(const Graph& g, int size_cap) {
  if (g.size() == 0)
    throw InputError("circular chromatic number is undefined below 2 for an edgeless graph");
  check_cap(g, size_cap, "circular_chromatic_number");
  const int chi = chromatic_number(g, {0, size_cap}).chi;
  const int n = g.order();
  struct Fraction {
    int p, q;
  };
  std::vector<Fraction> candidates;
  for (int q = 1; q <= n; ++q)
    for (int p = 2 * q; p <= chi * q; ++p)
      if (std::gcd(p, q) == 1) candidates.push_back({p, q});
  std::sort(candidates.begin(), candidates.end(), [](Fraction a, Fraction b) {
    return static_cast<long long>(a.p) * b.q < static_cast<long long>(b.p) * a.q;
  });
  for (Fraction f : candidates) {
    if (auto w = pq_coloring(g, f.p, f.q)) return {f.p, f.q, std::move(*w)};
  }
  throw Error("circular_chromatic_number: no fraction up to chi was feasible");
}

PoljakRodlCheck poljak_rodl_check(const Graph& g, int size_cap) {
  const Graph line = line_graph_underlying(g);
  check_cap(g, size_cap, "poljak_rodl_check");
  check_cap(line, size_cap, "poljak_rodl_check (line digraph)");
  PoljakRodlCheck out;
  out.lhs = chromatic_number(line, {0, size_cap}).chi;
  out.rhs = central_binomial_inverse(BigInt(chromatic_number(g, {0, size_cap}).chi));
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace rankgap
