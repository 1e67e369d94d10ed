#include "rankgap/errors.hpp"
#include "rankgap/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <string>

namespace rankgap::families {

Graph complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph cycle(int n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(n, edges);
}

Graph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, edges);
}

Graph petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});          // outer cycle
    edges.push_back({i, i + 5});                // spokes
    edges.push_back({5 + i, 5 + (i + 2) % 5});  // inner pentagram
  }
  return Graph(10, edges);
}

Graph empty(int n) { return Graph(n); }

Graph named(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "petersen") return petersen();
  if (lower.size() >= 2) {
    int n = 0;
    const char* first = lower.data() + 1;
    const char* last = lower.data() + lower.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec == std::errc() && ptr == last && n >= 1) {
      switch (lower[0]) {
        case 'k': return complete(n);
        case 'c': return cycle(n);
        case 'p': return path(n);
        case 'e': return empty(n);
        default: break;
      }
    }
  }
  throw InputError("unknown graph name '" + std::string(name) + "'");
}

namespace {

bool connected_mask(int n, std::uint32_t mask, const std::vector<Edge>& pairs) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  int components = n;
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    if (!(mask >> b & 1U)) continue;
    const int a = find(pairs[b].u), c = find(pairs[b].v);
    if (a != c) {
      parent[static_cast<std::size_t>(a)] = c;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

std::vector<Graph> connected_graphs(int n) {
  if (n < 1 || n > 6) throw InputError("connected_graphs: n must lie in [1, 6]");
  std::vector<Edge> pairs;
  std::vector<int> pair_index(static_cast<std::size_t>(n * n), -1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      pair_index[static_cast<std::size_t>(u * n + v)] = static_cast<int>(pairs.size());
      pair_index[static_cast<std::size_t>(v * n + u)] = static_cast<int>(pairs.size());
      pairs.push_back({u, v});
    }

  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  // Canonical form: the smallest edge mask over all relabellings.
  std::set<std::uint32_t> canon;
  const std::uint32_t limit = 1U << pairs.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (!connected_mask(n, mask, pairs)) continue;
    std::uint32_t best = mask;
    for (const auto& perm : perms) {
      std::uint32_t image = 0;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (mask >> b & 1U) {
          const int u = perm[static_cast<std::size_t>(pairs[b].u)];
          const int v = perm[static_cast<std::size_t>(pairs[b].v)];
          image |= 1U << pair_index[static_cast<std::size_t>(u * n + v)];
        }
      best = std::min(best, image);
    }
    canon.insert(best);
  }

  std::vector<Graph> out;
  for (std::uint32_t mask : canon) {
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1U) edges.push_back(pairs[b]);
    out.emplace_back(n, edges);
  }
  return out;
}

}  // namespace rankgap::families
