#include "rankgap/reductions.hpp"

#include "rankgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rankgap {

const char* to_string(CompletionKind k) { return k == CompletionKind::psd ? "psd" : "bounded"; }

CompletionKind completion_kind_from(const std::string& s) {
  if (s == "psd") return CompletionKind::psd;
  if (s == "bounded") return CompletionKind::bounded;
  throw InputError("unknown completion kind '" + s + "' (expected psd or bounded)");
}

YesInstance yes_certificate(const Graph& g, const Coloring& c) {
  if (c.palette < 1) throw InputError("certificate: palette must be positive");
  if (!is_proper(g, c)) throw InputError("certificate: coloring is not proper");
  const int k = c.palette, n = g.order();
  YesInstance out{disjoint_union(g, k), {}};
  std::vector<int> colors(static_cast<std::size_t>(k * n));
  for (int j = 0; j < k; ++j)
    for (int v = 0; v < n; ++v) colors[static_cast<std::size_t>(j * n + v)] = (c[v] - 1 + j) % k + 1;
  YesCertificate& cert = out.certificate;
  cert.coloring = Coloring(std::move(colors), k);
  const auto total = static_cast<std::size_t>(k * n);
  cert.b = Matrix(total, total);
  for (std::size_t u = 0; u < total; ++u)
    for (std::size_t v = 0; v < total; ++v)
      cert.b(u, v) = cert.coloring.colors[u] == cert.coloring.colors[v] ? 1.0 : 0.0;
  cert.rank = numerical_rank(cert.b);
  cert.coherence = coherence(cert.b);
  return out;
}

namespace {

std::string describe(const std::string& source, const std::string& reduction) {
  return "source=" + source + " reduction=" + reduction;
}

std::string graph_tag(const Graph& g) {
  std::ostringstream os;
  os << "graph(n=" << g.order() << ",m=" << g.size() << ")";
  return os.str();
}

void check_fitness_params(int d1, int d2, double eps, double theta) {
  if (d1 < 1 || d2 <= d1) throw InputError("reduction: requires 1 <= d1 < d2");
  if (!(eps >= 0.0) || !(eps < 1.0)) throw InputError("reduction: eps must lie in [0, 1)");
  if (!(theta >= 1.0)) throw InputError("reduction: theta must be at least 1");
}

}  // namespace

CopiesReduction reduce_coloring_to_fitness_copies(const Graph& g, int d1, int d2, double eps,
                                                  double theta) {
  check_fitness_params(d1, d2, eps, theta);
  CopiesReduction out;
  out.instance = FitnessInstance{disjoint_union(g, d1), d1, d2, eps, theta, "graph-fitness",
                                 describe(graph_tag(g), "col2fit-copies")};
  out.chi_threshold =
      floor_pow(4.0L * theta * theta / (1.0L - eps) + 1.0L, static_cast<long double>(d2));
  return out;
}

LineReduction reduce_coloring_to_fitness_linedigraph(const Graph& g, int d1, int d2, double eps,
                                                     double theta, double eta, const BigInt& k1,
                                                     const BigInt& k2, double alon_c) {
  check_fitness_params(d1, d2, eps, theta);
  if (eps >= 0.5) throw InputError("line reduction: eps must lie in [0, 1/2)");
  const double eta_max = (1.0 - 2.0 * eps) / (4.0 * theta);
  if (!(eta > 0.0) || eta > eta_max * (1.0 + 1e-12))
    throw InputError("line reduction: eta must lie in (0, (1 - 2 eps) / (4 theta)]");

  LineReduction out;
  out.gadget = line_digraph(g);
  const Graph base = underlying_graph(out.gadget.digraph);
  out.instance = FitnessInstance{disjoint_union(base, d1), d1, d2, eps, theta, "graph-fitness",
                                 describe(graph_tag(g), "col2fit-line")};

  LineConditions& c = out.conditions;
  c.eta_ok = true;
  c.b_d1 = central_binomial(d1);
  c.k1_ok = k1 <= c.b_d1;
  const double eps_prime = std::min(0.5, 2.0 * eta * theta + eps);
  c.m = m_upper_bound(d2, eps_prime, alon_c);
  const long double base_val = 2.0L * theta / eta + 1.0L;
  if (c.m.value.overflow) {
    c.k2_required.overflow = true;
    c.k2_required.log2 = std::numeric_limits<long double>::infinity();
  } else {
    const long double exponent =
        static_cast<long double>(d2) * static_cast<long double>(c.m.value.value);
    c.k2_required = floor_pow(base_val, exponent);
  }
  c.k2_ok = k1 < k2 && !c.k2_required.overflow && k2 >= c.k2_required.value;
  return out;
}

double eps_prime_of(double eps) { return eps / (1.0 + eps); }
double eps_of_prime(double eps_prime) { return eps_prime / (1.0 - eps_prime); }
double theta_prime_of(double theta, double eps, int d2) {
  return theta * theta / ((1.0 + eps) * std::sqrt(static_cast<double>(d2)));
}

PartialMatrix fitting_pattern(const Graph& g, double theta) {
  const auto n = static_cast<std::size_t>(g.order());
  PartialMatrix a(n, theta);
  for (std::size_t v = 0; v < n; ++v) a.set(v, v, 1.0);
  for (const Edge& e : g.edges()) {
    a.set(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v), 0.0);
    a.set(static_cast<std::size_t>(e.v), static_cast<std::size_t>(e.u), 0.0);
  }
  return a;
}

CompletionReduction reduce_fitness_to_completion(const FitnessInstance& inst, CompletionKind kind) {
  if (inst.d1 < 1 || inst.d2 <= inst.d1) throw InputError("fit2comp: requires 1 <= d1 < d2");
  if (!(inst.eps >= 0.0) || !(inst.eps < 1.0)) throw InputError("fit2comp: eps must lie in [0, 1)");
  CompletionReduction out;
  CompletionInstance& c = out.instance;
  c.kind = kind;
  c.d1 = inst.d1;
  c.eps = eps_prime_of(inst.eps);
  const std::string origin = inst.provenance.empty() ? "unknown" : inst.provenance;
  if (kind == CompletionKind::psd) {
    if (inst.theta && *inst.theta != 1.0)
      out.warnings.push_back("psd variant applies to theta = 1 instances; theta ignored");
    c.d2 = inst.d2;
    c.theta = 1.0;
  } else {
    if (!inst.theta) throw InputError("fit2comp: bounded variant needs theta");
    const double theta = *inst.theta;
    const int half = inst.d2 / 2;
    if (!(inst.d1 < half))
      throw PreconditionError("fit2comp: bounded variant requires d1 < floor(d2 / 2)");
    const double need = std::sqrt(1.0 + inst.eps) * std::pow(static_cast<double>(inst.d2), 0.25);
    if (theta < need * (1.0 - 1e-12))
      throw PreconditionError("fit2comp: bounded variant requires theta >= (1 + eps)^(1/2) d2^(1/4)");
    c.d2 = half;
    c.theta = std::max(1.0, theta_prime_of(theta, inst.eps, inst.d2));
  }
  c.partial = fitting_pattern(inst.graph, c.theta);
  c.provenance = origin + " | fit2comp-" + to_string(kind);
  return out;
}

PsdCompletionReport verify_psd_completion(const PartialMatrix& a, const Matrix& b, double eps,
                                          double tol) {
  PsdCompletionReport r;
  r.max_deviation = a.max_deviation(b);
  r.agrees = r.max_deviation <= eps + tol;
  if (b.asymmetry() > tol * std::max(1.0, b.max_abs())) {
    r.psd = false;
  } else {
    r.psd = is_psd(b, tol);
  }
  r.rank = numerical_rank(b);
  if (r.agrees && r.psd && b.max_abs() > 0) r.coherence = coherence(b);
  return r;
}

BoundedCompletionReport verify_bounded_completion(const PartialMatrix& a, const Matrix& b,
                                                  double eps, double theta, double tol) {
  BoundedCompletionReport r;
  r.max_deviation = a.max_deviation(b);
  r.agrees = r.max_deviation <= eps + tol;
  r.max_abs = b.max_abs();
  r.inf_norm_ok = r.max_abs <= theta + tol;
  r.rank = numerical_rank(b);
  return r;
}

namespace {

void check_agreement(const PartialMatrix& a, const Matrix& b, double eps_prime, double tol) {
  if (!(eps_prime >= 0.0) || !(eps_prime < 0.5))
    throw InputError("normalization: eps' must lie in [0, 1/2)");
  if (a.max_deviation(b) > eps_prime + tol)
    throw PreconditionError("normalization: completion does not agree with the partial matrix");
}

}  // namespace

Representation psd_completion_to_representation(const PartialMatrix& a, const Matrix& b,
                                                double eps_prime, double tol) {
  check_agreement(a, b, eps_prime, tol);
  for (std::size_t v = 0; v < b.rows(); ++v)
    if (std::fabs(b(v, v) - 1.0) > eps_prime + tol)
      throw PreconditionError("normalization: diagonal entry outside [1 - eps', 1 + eps']");
  Matrix x = psd_factorize(b).x();
  for (std::size_t v = 0; v < x.rows(); ++v) {
    const double len = x.row_norm(v);
    for (double& t : x.row(v)) t /= len;
  }
  return Representation{std::move(x), eps_of_prime(eps_prime)};
}

NormalizedFactorization bounded_completion_to_factorization(const PartialMatrix& a,
                                                            const Matrix& b, double eps_prime,
                                                            double theta_prime, double tol) {
  check_agreement(a, b, eps_prime, tol);
  if (b.max_abs() > theta_prime + tol)
    throw PreconditionError("normalization: completion has an entry above theta'");
  const Matrix c = 0.5 * (b + b.transpose());
  const BalancedFactorization bal = balanced_rank_factorization(c);

  NormalizedFactorization out;
  out.pre_rescale_max_row_norm = bal.pair.max_row_norm();
  out.rank = bal.rank;
  out.john_bound = bal.john_bound;
  out.eps = eps_of_prime(eps_prime);
  Matrix x = bal.pair.x(), y = bal.pair.y();
  for (std::size_t v = 0; v < x.rows(); ++v) {
    const double s = dot(x.row(v), y.row(v));
    if (!(std::fabs(s - 1.0) <= eps_prime + tol))
      throw PreconditionError("normalization: <x_v, y_v> outside [1 - eps', 1 + eps']");
    const double r = std::sqrt(s);
    for (double& t : x.row(v)) t /= r;
    for (double& t : y.row(v)) t /= r;
  }
  out.pair = FactorizationPair(std::move(x), std::move(y));
  return out;
}

namespace {

double eps_for_alpha(double alpha, double c) {
  auto f = [](double e) { return e * e * std::log2(1.0 / e); };
  const double budget = c / alpha;
  if (f(1.0 / 6.0) <= budget) return 1.0 / 6.0;
  double lo = 0.0, hi = 1.0 / 6.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= budget ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

std::vector<RegimeRecord> hardness_parameter_regimes(const RegimeInputs& in) {
  if (in.d < 1 || !(in.c > 0) || !(in.theta >= 1) || !(in.eps > 0) || in.eps > 1.0 / 6.0 ||
      !(in.beta > 1) || !(in.alpha > 1))
    throw InputError("regimes: need d >= 1, c > 0, theta >= 1, eps in (0, 1/6], beta > 1, alpha > 1");
  const double d = in.d, c = in.c;
  const double log2_theta = std::log2(in.theta);
  const double log2_double_exp = std::exp2(c * d);  // log2 of 2^(2^(c d))
  std::vector<RegimeRecord> out;

  auto record = [&](std::string name, double log2_g, double eps_lo, double eps_hi,
                    double log2_theta_max) {
    RegimeRecord r;
    r.name = std::move(name);
    r.log2_g_max = log2_g;
    r.g_max = std::exp2(log2_g);
    r.eps_lo = eps_lo;
    r.eps_hi = eps_hi;
    r.eps_prime_hi = eps_prime_of(eps_hi);
    r.log2_theta_max = log2_theta_max;
    out.push_back(r);
  };
  auto inv_sqrt3 = [](double log2_g) { return 1.0 / (3.0 * std::exp2(log2_g / 2.0)); };

  // Fitness, first item: small error, g up to c 2^(d/2) / (d^(1/4) max(log theta, d)^(1/2)).
  const double lg1 = std::log2(c) + d / 2.0 - 0.25 * std::log2(d) -
                     0.5 * std::log2(std::max(log2_theta, d));
  record("fitness-item-1", lg1, 0.0, inv_sqrt3(lg1), log2_theta);

  // Fitness, second item at the supplied eps: g up to c d / (eps^2 log(1/eps)).
  const double lg2 = std::log2(c * d / (in.eps * in.eps * std::log2(1.0 / in.eps)));
  record("fitness-item-2", lg2, inv_sqrt3(lg2), 1.0 / 6.0, log2_double_exp);

  // Concrete cases, c' = c.
  const double case1_g = std::log2(c) + d / 2.0 - 0.75 * std::log2(d);
  const double case1_eps = std::exp2(-c * d);
  const double case2_g = in.beta * std::log2(d);
  const double case2_eps = c / std::sqrt(std::pow(d, in.beta - 1.0) * std::log2(d));
  const double case3_g = std::log2(in.alpha * d);
  const double case3_eps = eps_for_alpha(in.alpha, c);
  record("fitness-case-1", case1_g, case1_eps, case1_eps, d);
  record("fitness-case-2", case2_g, case2_eps, case2_eps, log2_double_exp);
  record("fitness-case-3", case3_g, case3_eps, case3_eps, log2_double_exp);
  record("psd-case-1", case1_g, case1_eps, case1_eps, 0.0);
  record("psd-case-2", case2_g, case2_eps, case2_eps, 0.0);
  record("psd-case-3", case3_g, case3_eps, case3_eps, 0.0);
  return out;
}

constexpr std::size_t kMaxPaddedOrder = 20000;

PadResult pad_instance(const CompletionInstance& inst, double target) {
  if (!(target > 0.0)) throw InputError("pad: target fraction must be positive");
  PadResult out{inst, 0, false, {}};
  const std::size_t missing = inst.partial.missing_count();
  const double current = inst.partial.missing_fraction();
  if (missing == 0 || target >= current) {
    out.noop = true;
    out.notice = "target is not below the current missing fraction; nothing to pad";
    return out;
  }
  auto fits = [&](std::size_t m) {
    return static_cast<double>(missing) / (static_cast<double>(m) * static_cast<double>(m)) <= target;
  };
  auto m = std::max(inst.partial.size(),
                    static_cast<std::size_t>(std::sqrt(static_cast<double>(missing) / target)));
  while (m > inst.partial.size() && fits(m - 1)) --m;
  while (!fits(m)) ++m;
  if (m > kMaxPaddedOrder)
    throw ResourceLimit("pad: padded order " + std::to_string(m) + " exceeds the cap of " +
                        std::to_string(kMaxPaddedOrder));
  out.added = m - inst.partial.size();
  out.instance.partial = inst.partial.padded(out.added);
  out.instance.provenance = inst.provenance + " | pad+" + std::to_string(out.added);
  return out;
}

FitnessInstance fitness_to_orthodim(const FitnessInstance& inst) {
  FitnessInstance out = inst;
  out.theta.reset();
  out.problem = "ortho-dim";
  out.provenance = inst.provenance + " | fit2od";
  return out;
}

}  // namespace rankgap
