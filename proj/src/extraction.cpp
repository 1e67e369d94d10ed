#include "rankgap/extraction.hpp"

#include "rankgap/errors.hpp"
#include "rankgap/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace rankgap {

namespace {

// Tolerance policy: within tol passes, within 10 tol passes with a warning,
// beyond that the extractor refuses.
void gate(double violation, const std::string& what, std::vector<std::string>& warnings) {
  if (violation <= kExtractionTol) return;
  std::ostringstream os;
  os.precision(3);
  os << what << " violated by " << violation;
  if (violation <= 10 * kExtractionTol) {
    warnings.push_back("marginal: " + os.str());
    return;
  }
  throw PreconditionError("extraction: " + os.str());
}

void check_fit(const FactorizationPair& f, const Graph& g, double eps,
               std::optional<double> theta, bool need_symmetric,
               std::vector<std::string>& warnings) {
  if (f.rows() != static_cast<std::size_t>(g.order()))
    throw InputError("extraction: factor rows differ from the vertex count");
  if (f.dim() == 0) throw InputError("extraction: factors have no columns");
  const Matrix p = f.product();
  if (need_symmetric) gate(p.asymmetry(), "symmetry of X Y^t", warnings);
  double diag = 0;
  for (std::size_t v = 0; v < p.rows(); ++v) diag = std::max(diag, std::fabs(p(v, v) - 1.0));
  gate(diag, "unit diagonal", warnings);
  double edge = 0;
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    edge = std::max({edge, std::fabs(p(u, v)) - eps, std::fabs(p(v, u)) - eps});
  }
  gate(edge, "edge bound eps", warnings);
  if (theta) gate(f.max_row_norm() - *theta, "row norm bound theta", warnings);
}

Coloring canonical_from_raw(const std::vector<std::vector<std::size_t>>& raw) {
  std::map<std::vector<std::size_t>, int> ids;
  std::vector<int> colors;
  colors.reserve(raw.size());
  for (const auto& r : raw) {
    const auto it = ids.emplace(r, static_cast<int>(ids.size()) + 1).first;
    colors.push_back(it->second);
  }
  const int k = std::max(1, static_cast<int>(ids.size()));
  return Coloring(std::move(colors), raw.empty() ? 0 : k);
}

// Rows are quantized on a net of radius max(theta, largest row norm) so that
// marginal inputs never fall outside the ball.
ExtractionResult quantize_rows(const Matrix& x, const Graph& g, double theta, double eta) {
  ExtractionResult res;
  const double radius = std::max(theta, x.max_row_norm());
  const Net net = Net::build_grid(static_cast<int>(x.cols()), radius, eta);
  res.net_size = net.size();
  res.net_covering_bound = net.covering_bound();
  res.theta = radius;
  res.eta = eta;
  std::vector<std::vector<std::size_t>> raw;
  for (std::size_t v = 0; v < x.rows(); ++v) {
    raw.push_back({net.nearest_index(x.row(v))});
    res.trace.push_back({static_cast<int>(v), {}, raw.back()});
  }
  res.coloring = canonical_from_raw(raw);
  res.color_count = res.coloring.colors_used();
  res.proper = is_proper(g, res.coloring);
  return res;
}

}  // namespace

ExtractionResult extract_general(const FactorizationPair& f, const Graph& g, double eps,
                                 double theta) {
  if (!(eps >= 0.0) || !(eps < 1.0)) throw InputError("extraction: eps must lie in [0, 1)");
  if (!(theta >= 1.0)) throw InputError("extraction: theta must be at least 1");
  std::vector<std::string> warnings;
  check_fit(f, g, eps, theta, true, warnings);
  const double eta = (1.0 - eps) / (2.0 * theta);
  ExtractionResult res = quantize_rows(f.x(), g, theta, eta);
  res.warnings = std::move(warnings);
  res.bound = floor_pow(4.0L * res.theta * res.theta / (1.0L - eps) + 1.0L,
                        static_cast<long double>(f.dim()));
  return res;
}

ExtractionResult extract_general_symmetric(const FactorizationPair& f, const Graph& g, double eps) {
  if (!(eps >= 0.0) || !(eps < 1.0)) throw InputError("extraction: eps must lie in [0, 1)");
  if (!f.same_factors()) throw InputError("extraction: symmetric variant needs X = Y");
  std::vector<std::string> warnings;
  check_fit(f, g, eps, 1.0, false, warnings);
  const double eta = std::sqrt((1.0 - eps) / 2.0);
  ExtractionResult res = quantize_rows(f.x(), g, 1.0, eta);
  res.warnings = std::move(warnings);
  res.bound = floor_pow(2.0L * std::sqrt(2.0L) / std::sqrt(1.0L - eps) + 1.0L,
                        static_cast<long double>(f.dim()));
  return res;
}

ExtractionResult extract_linedigraph(const FactorizationPair& f, const Graph& g,
                                     const LineDigraph& line, double eps, double theta, double eta,
                                     double alon_c) {
  if (!(eps >= 0.0) || !(eps < 0.5)) throw InputError("extraction: eps must lie in [0, 1/2)");
  if (!(theta >= 1.0)) throw InputError("extraction: theta must be at least 1");
  const double eta_max = (1.0 - 2.0 * eps) / (4.0 * theta);
  if (!(eta > 0.0) || eta > eta_max * (1.0 + 1e-12))
    throw InputError("extraction: eta must lie in (0, (1 - 2 eps) / (4 theta)]");
  if (line.provenance.size() != f.rows() || line.digraph.order() != static_cast<int>(f.rows()))
    throw InputError("extraction: provenance table does not match the factor rows");
  for (const Arc& a : line.provenance)
    if (a.tail < 0 || a.head < 0 || a.tail >= g.order() || a.head >= g.order() ||
        !g.adjacent(a.tail, a.head))
      throw InputError("extraction: provenance names an arc that is not an edge of the graph");

  std::vector<std::string> warnings;
  const Graph base = underlying_graph(line.digraph);
  check_fit(f, base, eps, theta, true, warnings);

  const Matrix& x = f.x();
  const Matrix& y = f.y();
  const double radius = std::max(theta, x.max_row_norm());
  const Net net = Net::build_grid(static_cast<int>(f.dim()), radius, eta);
  const double eps_prime = 2.0 * eta * theta + eps;

  ExtractionResult res;
  res.warnings = std::move(warnings);
  res.net_size = net.size();
  res.net_covering_bound = net.covering_bound();
  res.theta = radius;
  res.eta = eta;
  res.eps_prime = eps_prime;

  std::vector<std::size_t> quantized(f.rows());
  for (std::size_t e = 0; e < f.rows(); ++e) quantized[e] = net.nearest_index(x.row(e));

  const int n = g.order();
  std::vector<std::vector<int>> entering(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < line.provenance.size(); ++e)
    entering[static_cast<std::size_t>(line.provenance[e].head)].push_back(static_cast<int>(e));

  std::vector<std::vector<int>> kept(static_cast<std::size_t>(n));
  std::vector<std::vector<std::size_t>> raw(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto& keep = kept[static_cast<std::size_t>(v)];
    for (int e : entering[static_cast<std::size_t>(v)]) {
      const auto ue = static_cast<std::size_t>(e);
      const bool compatible = std::all_of(keep.begin(), keep.end(), [&](int k) {
        const auto uk = static_cast<std::size_t>(k);
        return std::fabs(dot(x.row(ue), y.row(uk))) <= eps_prime &&
               std::fabs(dot(x.row(uk), y.row(ue))) <= eps_prime;
      });
      if (compatible) keep.push_back(e);
    }
    auto& color = raw[static_cast<std::size_t>(v)];
    for (int e : keep) color.push_back(quantized[static_cast<std::size_t>(e)]);
    std::sort(color.begin(), color.end());
    color.erase(std::unique(color.begin(), color.end()), color.end());
    res.max_kept = std::max(res.max_kept, static_cast<int>(keep.size()));
    res.trace.push_back({v, keep, color});
  }

  res.coloring = canonical_from_raw(raw);
  res.color_count = res.coloring.colors_used();
  res.proper = is_proper(g, res.coloring);

  const int d = static_cast<int>(f.dim());
  if (eps_prime <= 0.5) {
    res.m_bound = m_upper_bound(d, eps_prime, alon_c);
    const MBound& m = *res.m_bound;
    if (m.regime == MRegime::perturbed_identity && !m.value.overflow)
      res.m_bound_respected = BigInt(res.max_kept) <= m.value.value;
    if (m.value.overflow) {
      res.bound.overflow = true;
      res.bound.log2 = std::numeric_limits<long double>::infinity();
    } else {
      res.bound = floor_pow(2.0L * theta / eta + 1.0L,
                            static_cast<long double>(d) * static_cast<long double>(m.value.value));
    }
  } else {
    res.warnings.push_back("eps' exceeds 1/2; no bound on |E'_v| available");
    res.bound.overflow = true;
    res.bound.log2 = std::numeric_limits<long double>::infinity();
  }

  // Separation witnesses: for each arc (u, v) some kept arc entering v has a
  // quantized inner product with y_(u,v) above eps + eta theta, while every
  // kept arc entering u stays below it.
  const double cut = eps + eta * theta;
  for (const Edge& edge : g.edges()) {
    for (const auto& [u, v] : {std::pair{edge.u, edge.v}, std::pair{edge.v, edge.u}}) {
      const int arc = line.index_of(u, v);
      if (arc < 0) throw InputError("extraction: provenance is missing an arc");
      const auto yuv = y.row(static_cast<std::size_t>(arc));
      auto ip = [&](int e) {
        return std::fabs(dot(net.point(quantized[static_cast<std::size_t>(e)]), yuv));
      };
      const auto& kv = kept[static_cast<std::size_t>(v)];
      const auto& ku = kept[static_cast<std::size_t>(u)];
      const bool witness = std::any_of(kv.begin(), kv.end(), [&](int e) { return ip(e) > cut; });
      const bool quiet = std::all_of(ku.begin(), ku.end(), [&](int e) { return ip(e) < cut; });
      ++res.separation_checks;
      if (!(witness && quiet)) ++res.separation_failures;
    }
  }
  return res;
}

ExtractionResult extract_from_matrix(const Matrix& a, const Graph& g, const LineDigraph& line,
                                     double eps, std::optional<double> eta, double alon_c) {
  if (!a.square()) throw InputError("extraction: matrix is not square");
  const Matrix b = 0.5 * (a + a.transpose());
  const BalancedFactorization bal = balanced_rank_factorization(b);
  const double theta = std::max(1.0, bal.pair.max_row_norm());
  const double eta_used = eta ? *eta : (1.0 - 2.0 * eps) / (4.0 * theta);
  ExtractionResult res = extract_linedigraph(bal.pair, g, line, eps, theta, eta_used, alon_c);
  res.factor_rank = bal.rank;
  res.john_bound = std::pow(2.0 * static_cast<double>(numerical_rank(a)), 0.25) * std::sqrt(a.max_abs());
  return res;
}

ExtractionResult extract_from_matrix(const Matrix& a, const Graph& target, double eps) {
  if (!a.square()) throw InputError("extraction: matrix is not square");
  const Matrix b = 0.5 * (a + a.transpose());
  const BalancedFactorization bal = balanced_rank_factorization(b);
  const double theta = std::max(1.0, bal.pair.max_row_norm());
  ExtractionResult res = extract_general(bal.pair, target, eps, theta);
  res.factor_rank = bal.rank;
  res.john_bound = std::pow(2.0 * static_cast<double>(numerical_rank(a)), 0.25) * std::sqrt(a.max_abs());
  return res;
}

ExtractionResult extract_from_representation(const Representation& r, const Graph& g,
                                             const LineDigraph& line, double eps,
                                             std::optional<double> eta, double alon_c) {
  const double eta_used = eta ? *eta : (1.0 - 2.0 * eps) / 4.0;
  return extract_linedigraph(FactorizationPair(r.vectors), g, line, eps, 1.0, eta_used, alon_c);
}

}  // namespace rankgap
