#include "rankgap/cli.hpp"

#include "rankgap/bounds.hpp"
#include "rankgap/errors.hpp"
#include "rankgap/exact.hpp"
#include "rankgap/extraction.hpp"
#include "rankgap/io.hpp"
#include "rankgap/linalg.hpp"
#include "rankgap/nets.hpp"
#include "rankgap/random.hpp"
#include "rankgap/reductions.hpp"
#include "rankgap/representations.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace rankgap::cli {

namespace {

using io::format_double;

struct Options {
  std::string input;
  std::string graph;
  std::string matrix;
  std::string rep;
  std::string instance;
  std::string cert;
  std::string coloring;
  std::string out;
  std::string format = "text";
  std::string kind = "psd";
  std::string k1;
  std::string k2;
  std::optional<double> eps;
  std::optional<double> theta;
  std::optional<double> eta;
  std::optional<int> d1;
  std::optional<int> d2;
  std::optional<int> dim;
  int copies = 1;
  int restarts = 50;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double alon_c = kDefaultAlonConstant;
  double target = 0.05;
  double beta = 2.0;
  double alpha = 2.0;
  bool trace = false;
};

/// Ordered key/value lines, printed as `key value` or `key=value`.
class Report {
 public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  template <class T>
    requires std::is_integral_v<T>
  void add(const std::string& key, T value) { add(key, std::to_string(value)); }

  void print(std::ostream& os, bool kv) const {
    for (const auto& [k, v] : lines_) os << k << (kv ? "=" : " ") << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

class Context {
 public:
  Context(const Options& o, std::ostream& out) : opt(o), out_(out) {}

  const Options& opt;
  Report report;
  std::ostringstream payload;

  bool kv() const { return opt.format == "kv"; }

  // Reports go to stdout; payload blocks go to --out when given, else stdout.
  void flush() {
    report.print(out_, kv());
    const std::string body = payload.str();
    if (body.empty()) return;
    if (opt.out.empty()) {
      out_ << body;
      return;
    }
    std::ofstream f(opt.out);
    if (!f) throw InputError("cannot open output file '" + opt.out + "'");
    f << body;
  }

 private:
  std::ostream& out_;
};

std::ifstream open_file(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("missing ") + what + " file");
  std::ifstream f(path);
  if (!f) throw InputError(std::string("cannot open ") + what + " file '" + path + "'");
  return f;
}

Graph load_graph(const Options& o) {
  if (!o.graph.empty()) {
    if (!o.input.empty()) throw InputError("give either an input file or --graph, not both");
    return families::named(o.graph);
  }
  auto f = open_file(o.input, "graph");
  return io::read_graph(f);
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw InputError(std::string("missing required flag ") + flag);
  return *v;
}

BigInt parse_big(const std::string& s, const char* flag) {
  if (s.empty()) throw InputError(std::string("missing required flag ") + flag);
  for (char ch : s)
    if (ch < '0' || ch > '9') throw InputError(std::string(flag) + " must be a nonnegative integer");
  return BigInt(s);
}

std::string residues_line(const std::vector<int>& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " " : "") + std::to_string(r[i]);
  return s;
}

void report_extraction(Context& ctx, const ExtractionResult& r) {
  ctx.report.add("proper", r.proper);
  ctx.report.add("colors", r.color_count);
  ctx.report.add("bound", r.bound.to_string());
  ctx.report.add("net_size", r.net_size);
  ctx.report.add("net_covering_bound", r.net_covering_bound.to_string());
  ctx.report.add("theta", r.theta);
  ctx.report.add("eta", r.eta);
  if (r.m_bound) {
    ctx.report.add("eps_prime", r.eps_prime);
    ctx.report.add("max_kept", r.max_kept);
    ctx.report.add("m_bound", r.m_bound->value.to_string());
    ctx.report.add("m_bound_respected", r.m_bound_respected);
    ctx.report.add("separation_failures", r.separation_failures);
  }
  if (r.factor_rank) {
    ctx.report.add("factor_rank", r.factor_rank);
    ctx.report.add("john_bound", r.john_bound);
  }
  for (const auto& w : r.warnings) ctx.report.add("warning", w);
  io::write_coloring(ctx.payload, r.coloring);
  if (ctx.opt.trace) io::write_trace(ctx.payload, r.trace);
}

// ---- graph ----------------------------------------------------------------

int graph_info(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  ctx.report.add("vertices", g.order());
  ctx.report.add("edges", g.size());
  ctx.report.add("max_degree", g.max_degree());
  return 0;
}

int graph_line_digraph(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  const LineDigraph line = line_digraph(g);
  const Graph base = underlying_graph(line.digraph);
  ctx.report.add("vertices", base.order());
  ctx.report.add("arcs", line.digraph.size());
  ctx.report.add("edges", base.size());
  io::write_graph(ctx.payload, base);
  io::write_provenance(ctx.payload, line.provenance);
  return 0;
}

int graph_union(Context& ctx) {
  if (ctx.opt.copies < 1) throw InputError("--copies must be positive");
  const Graph u = disjoint_union(load_graph(ctx.opt), ctx.opt.copies);
  ctx.report.add("vertices", u.order());
  ctx.report.add("edges", u.size());
  io::write_graph(ctx.payload, u);
  return 0;
}

// ---- solve ----------------------------------------------------------------

int solve_chi(Context& ctx) {
  const ChiResult r = chromatic_number(load_graph(ctx.opt));
  ctx.report.add("chi", r.chi);
  io::write_coloring(ctx.payload, r.witness);
  return 0;
}

int solve_chi_c(Context& ctx) {
  const CircularChiResult r = circular_chromatic_number(load_graph(ctx.opt));
  ctx.report.add("chi_c", std::to_string(r.p) + "/" + std::to_string(r.q));
  ctx.report.add("value", r.value());
  ctx.report.add("residues", residues_line(r.witness));
  return 0;
}

int solve_od2(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  const double eps = need(ctx.opt.eps, "--eps");
  ctx.report.add("od2", od2_exact(g, eps));
  if (g.size() == 0) {
    ctx.report.add("note", "edgeless graph: one dimension suffices");
    return 0;
  }
  const Od2Threshold t = od2_threshold(g);
  ctx.report.add("chi_c", std::to_string(t.p) + "/" + std::to_string(t.q));
  ctx.report.add("threshold", t.threshold);
  return 0;
}

int solve_od_eps(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  SearchOptions so;
  so.restarts = ctx.opt.restarts;
  so.seed = ctx.opt.seed;
  const SearchOutcome r = od_eps_upper(g, need(ctx.opt.dim, "--dim"), need(ctx.opt.eps, "--eps"), so);
  ctx.report.add("found", r.witness.has_value());
  ctx.report.add("attempts", r.attempts);
  ctx.report.add("best_penalty", r.best_penalty);
  if (r.witness) {
    io::write_representation(ctx.payload, *r.witness);
  } else {
    ctx.report.add("note", "no witness found at budget " + std::to_string(so.restarts) +
                               " restarts; this is not a lower bound");
  }
  return 0;
}

// ---- reduce ---------------------------------------------------------------

int reduce_copies(Context& ctx) {
  const CopiesReduction r = reduce_coloring_to_fitness_copies(
      load_graph(ctx.opt), need(ctx.opt.d1, "--d1"), need(ctx.opt.d2, "--d2"),
      ctx.opt.eps.value_or(0.0), ctx.opt.theta.value_or(1.0));
  ctx.report.add("vertices", r.instance.graph.order());
  ctx.report.add("chi_threshold", r.chi_threshold.to_string());
  io::write_fitness(ctx.payload, r.instance);
  return 0;
}

int reduce_line(Context& ctx) {
  const double eps = ctx.opt.eps.value_or(0.0);
  const double theta = ctx.opt.theta.value_or(1.0);
  const double eta = ctx.opt.eta.value_or((1.0 - 2.0 * eps) / (4.0 * theta));
  const LineReduction r = reduce_coloring_to_fitness_linedigraph(
      load_graph(ctx.opt), need(ctx.opt.d1, "--d1"), need(ctx.opt.d2, "--d2"), eps, theta, eta,
      parse_big(ctx.opt.k1, "--k1"), parse_big(ctx.opt.k2, "--k2"), ctx.opt.alon_c);
  const LineConditions& c = r.conditions;
  ctx.report.add("vertices", r.instance.graph.order());
  ctx.report.add("b_d1", c.b_d1.str());
  ctx.report.add("k1_ok", c.k1_ok);
  ctx.report.add("m_bound", c.m.value.to_string());
  ctx.report.add("k2_required", c.k2_required.to_string());
  ctx.report.add("k2_ok", c.k2_ok);
  ctx.report.add("conditions", c.met() ? "met" : "unmet");
  if (!c.met()) ctx.report.add("warning", "conditions unmet; instance emitted anyway");
  io::write_fitness(ctx.payload, r.instance);
  return 0;
}

int reduce_fit2comp(Context& ctx) {
  auto f = open_file(ctx.opt.input, "fitness instance");
  const FitnessInstance inst = io::read_fitness(f);
  const CompletionReduction r = reduce_fitness_to_completion(inst, completion_kind_from(ctx.opt.kind));
  ctx.report.add("kind", to_string(r.instance.kind));
  ctx.report.add("d1", r.instance.d1);
  ctx.report.add("d2", r.instance.d2);
  ctx.report.add("eps", r.instance.eps);
  ctx.report.add("theta", r.instance.theta);
  ctx.report.add("missing_fraction", r.instance.partial.missing_fraction());
  for (const auto& w : r.warnings) ctx.report.add("warning", w);
  io::write_completion(ctx.payload, r.instance);
  return 0;
}

int reduce_pad(Context& ctx) {
  auto f = open_file(ctx.opt.input, "completion instance");
  const PadResult r = pad_instance(io::read_completion(f), ctx.opt.target);
  ctx.report.add("added", r.added);
  ctx.report.add("order", r.instance.partial.size());
  ctx.report.add("missing_fraction", r.instance.partial.missing_fraction());
  if (r.noop) ctx.report.add("notice", r.notice);
  io::write_completion(ctx.payload, r.instance);
  return 0;
}

// ---- cert -----------------------------------------------------------------

int cert_yes(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  Coloring c;
  if (!ctx.opt.coloring.empty()) {
    auto f = open_file(ctx.opt.coloring, "coloring");
    c = io::read_coloring(f);
  } else {
    c = chromatic_number(g).witness;
  }
  const YesInstance y = yes_certificate(g, c);
  ctx.report.add("vertices", y.graph.order());
  ctx.report.add("rank", y.certificate.rank);
  ctx.report.add("coherence", y.certificate.coherence);
  io::write_certificate(ctx.payload, "psd", y.certificate);
  return 0;
}

Matrix load_candidate(const Options& o) {
  if (!o.cert.empty()) {
    auto f = open_file(o.cert, "certificate");
    return io::read_certificate(f).b;
  }
  auto f = open_file(o.matrix, "matrix");
  return io::read_matrix(f);
}

CompletionInstance load_instance(const Options& o) {
  auto f = open_file(o.instance.empty() ? o.input : o.instance, "completion instance");
  return io::read_completion(f);
}

int cert_verify_psd(Context& ctx) {
  const CompletionInstance inst = load_instance(ctx.opt);
  const Matrix b = load_candidate(ctx.opt);
  const PsdCompletionReport r = verify_psd_completion(inst.partial, b, inst.eps, ctx.opt.tol);
  const bool rank_ok = r.rank <= static_cast<std::size_t>(inst.d1);
  ctx.report.add("agrees", r.agrees);
  ctx.report.add("max_deviation", r.max_deviation);
  ctx.report.add("psd", r.psd);
  ctx.report.add("rank", r.rank);
  ctx.report.add("rank_le_d1", rank_ok);
  if (r.coherence) ctx.report.add("coherence", *r.coherence);
  const bool pass = r.ok() && rank_ok;
  ctx.report.add("verdict", pass ? "pass" : "fail");
  return pass ? 0 : 1;
}

int cert_verify_inf(Context& ctx) {
  const CompletionInstance inst = load_instance(ctx.opt);
  const Matrix b = load_candidate(ctx.opt);
  const BoundedCompletionReport r =
      verify_bounded_completion(inst.partial, b, inst.eps, inst.theta, ctx.opt.tol);
  const bool rank_ok = r.rank <= static_cast<std::size_t>(inst.d1);
  ctx.report.add("agrees", r.agrees);
  ctx.report.add("max_deviation", r.max_deviation);
  ctx.report.add("inf_norm_ok", r.inf_norm_ok);
  ctx.report.add("max_abs", r.max_abs);
  ctx.report.add("rank", r.rank);
  ctx.report.add("rank_le_d1", rank_ok);
  const bool pass = r.ok() && rank_ok;
  ctx.report.add("verdict", pass ? "pass" : "fail");
  return pass ? 0 : 1;
}

// ---- extract --------------------------------------------------------------

Representation load_rep(const Options& o) {
  auto f = open_file(o.rep, "representation");
  return io::read_representation(f);
}

Matrix load_matrix(const Options& o) {
  auto f = open_file(o.matrix, "matrix");
  return io::read_matrix(f);
}

int extract_general_cmd(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  const double eps = ctx.opt.eps.value_or(0.0);
  ExtractionResult r;
  if (!ctx.opt.rep.empty()) {
    r = extract_general_symmetric(FactorizationPair(load_rep(ctx.opt).vectors), g, eps);
  } else {
    r = extract_from_matrix(load_matrix(ctx.opt), g, eps);
  }
  report_extraction(ctx, r);
  return r.proper ? 0 : 1;
}

int extract_line_cmd(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  const double eps = ctx.opt.eps.value_or(0.0);
  const ExtractionResult r =
      extract_from_representation(load_rep(ctx.opt), g, line_digraph(g), eps, ctx.opt.eta, ctx.opt.alon_c);
  report_extraction(ctx, r);
  return r.proper ? 0 : 1;
}

int extract_matrix_cmd(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  const double eps = ctx.opt.eps.value_or(0.0);
  const ExtractionResult r =
      extract_from_matrix(load_matrix(ctx.opt), g, line_digraph(g), eps, ctx.opt.eta, ctx.opt.alon_c);
  report_extraction(ctx, r);
  return r.proper ? 0 : 1;
}

// ---- bounds, net ----------------------------------------------------------

int bounds_m(Context& ctx) {
  const MBound m = m_upper_bound(need(ctx.opt.dim, "--d"), need(ctx.opt.eps, "--eps"), ctx.opt.alon_c);
  if (ctx.kv()) {
    ctx.report.add("m", m.value.to_string());
    ctx.report.add("m_lower", m_lower_bound(*ctx.opt.dim, *ctx.opt.eps));
    ctx.report.add("regime", m.regime == MRegime::perturbed_identity ? "perturbed-identity"
                                                                       : "alon-exponential");
  } else {
    ctx.payload << m.value.to_string() << '\n';
  }
  return 0;
}

int bounds_regimes(Context& ctx) {
  RegimeInputs in;
  in.d = need(ctx.opt.dim, "--d");
  in.c = ctx.opt.alon_c;
  in.theta = ctx.opt.theta.value_or(1.0);
  in.eps = ctx.opt.eps.value_or(1.0 / 6.0);
  in.beta = ctx.opt.beta;
  in.alpha = ctx.opt.alpha;
  for (const RegimeRecord& r : hardness_parameter_regimes(in)) {
    std::ostringstream os;
    os << "g_max=" << format_double(r.g_max) << " log2_g_max=" << format_double(r.log2_g_max)
       << " eps=[" << format_double(r.eps_lo) << "," << format_double(r.eps_hi) << "]"
       << " eps_prime_hi=" << format_double(r.eps_prime_hi)
       << " log2_theta_max=" << format_double(r.log2_theta_max)
       << " proven_for_this_d=unknown";
    ctx.report.add(r.name, os.str());
  }
  ctx.report.add("note", "formulas hold for sufficiently large d; the threshold is unquantified");
  return 0;
}

int net_build(Context& ctx) {
  const Net net = Net::build_grid(need(ctx.opt.dim, "--d"), ctx.opt.theta.value_or(1.0),
                                  need(ctx.opt.eta, "--eta"));
  ctx.report.add("size", net.size());
  ctx.report.add("covering_bound", net.covering_bound().to_string());
  ctx.report.add("spacing", net.spacing());
  io::write_net(ctx.payload, net);
  return 0;
}

// ---- pipeline -------------------------------------------------------------

int pipeline_demo(Context& ctx) {
  const Graph g = load_graph(ctx.opt);
  bool all_ok = true;
  auto step = [&](const std::string& name, bool ok, const std::string& detail) {
    ctx.report.add("step", name + " " + (ok ? "ok" : "FAIL") + (detail.empty() ? "" : " " + detail));
    all_ok = all_ok && ok;
  };

  const ChiResult chi = chromatic_number(g);
  step("chromatic-number", true, "chi=" + std::to_string(chi.chi));

  const LineDigraph line = line_digraph(g);
  const Graph base = underlying_graph(line.digraph);
  const ChiResult chi_line = chromatic_number(base);
  const int predicted = central_binomial_inverse(BigInt(chi.chi));
  step("line-digraph", chi_line.chi == predicted,
       "vertices=" + std::to_string(base.order()) + " chi=" + std::to_string(chi_line.chi) +
           " predicted=" + std::to_string(predicted));

  const int d1 = ctx.opt.d1.value_or(chi_line.chi);
  const int d2 = ctx.opt.d2.value_or(2 * d1 + 1);
  if (chi_line.chi > d1) {
    step("coloring", false, "d1 is below the chromatic number of the line digraph");
    ctx.flush();
    return 1;
  }
  const std::optional<Coloring> col = k_coloring(base, d1);
  step("coloring", col.has_value() && is_proper(base, *col), "palette=" + std::to_string(d1));
  if (!col) {
    ctx.flush();
    return 1;
  }

  const double eps = ctx.opt.eps.value_or(0.0);
  const double eta = (1.0 - 2.0 * eps) / 4.0;
  const LineReduction red = reduce_coloring_to_fitness_linedigraph(
      g, d1, d2, eps, 1.0, eta, BigInt(chi.chi), BigInt(chi.chi) + 1, ctx.opt.alon_c);
  step("reduction", red.conditions.k1_ok,
       "vertices=" + std::to_string(red.instance.graph.order()) + " k1_le_b_d1=" +
           (red.conditions.k1_ok ? "true" : "false"));

  const YesInstance yes = yes_certificate(base, *col);
  step("certificate", yes.graph == red.instance.graph && yes.certificate.rank == static_cast<std::size_t>(d1),
       "rank=" + std::to_string(yes.certificate.rank) + " coherence=" + format_double(yes.certificate.coherence));

  const CompletionReduction comp = reduce_fitness_to_completion(red.instance, CompletionKind::psd);
  const PsdCompletionReport ver = verify_psd_completion(comp.instance.partial, yes.certificate.b, comp.instance.eps);
  step("verify", ver.ok() && ver.rank <= static_cast<std::size_t>(d1) && ver.max_deviation == 0.0,
       "agrees=" + std::string(ver.agrees ? "true" : "false") + " psd=" + (ver.psd ? "true" : "false") +
           " rank=" + std::to_string(ver.rank));

  // Recover a representation of one copy from the certificate, rotate it, and
  // extract a coloring of the original graph.
  std::vector<std::size_t> first(static_cast<std::size_t>(base.order()));
  for (std::size_t i = 0; i < first.size(); ++i) first[i] = i;
  Matrix x = psd_factorize(yes.certificate.b.principal(first)).x();
  Rng rng(ctx.opt.seed, "pipeline/rotation");
  x = x * random_orthogonal(x.cols(), rng);
  const ExtractionResult ext =
      extract_linedigraph(FactorizationPair(x), g, line, eps, 1.0, eta, ctx.opt.alon_c);
  step("extract", ext.proper, "colors=" + std::to_string(ext.color_count) +
                                  " max_kept=" + std::to_string(ext.max_kept));
  ctx.report.add("result", all_ok ? "pass" : "fail");
  io::write_coloring(ctx.payload, ext.coloring);
  return all_ok ? 0 : 1;
}

struct Leaf {
  CLI::App* app;
  std::function<int(Context&)> run;
};

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gap-coloring reductions, completion certificates and coloring extraction"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--graph", o.graph, "named graph: k<n>, c<n>, p<n>, e<n>, petersen");
  app.add_option("--matrix", o.matrix, "matrix file");
  app.add_option("--rep", o.rep, "representation file");
  app.add_option("--instance", o.instance, "completion instance file");
  app.add_option("--cert", o.cert, "certificate file");
  app.add_option("--coloring", o.coloring, "coloring file");
  app.add_option("--eps", o.eps, "error parameter");
  app.add_option("--theta", o.theta, "entry or row-norm bound");
  app.add_option("--eta", o.eta, "net covering radius");
  app.add_option("--d1", o.d1, "YES-side rank");
  app.add_option("--d2", o.d2, "NO-side rank");
  app.add_option("--dim,--d", o.dim, "dimension");
  app.add_option("--copies", o.copies, "number of disjoint copies");
  app.add_option("--k1", o.k1, "YES-side chromatic bound (integer)");
  app.add_option("--k2", o.k2, "NO-side chromatic bound (integer)");
  app.add_option("--kind", o.kind, "completion variant")->check(CLI::IsMember({"psd", "bounded"}));
  app.add_option("--target", o.target, "target missing fraction for pad");
  app.add_option("--beta", o.beta, "regime exponent beta");
  app.add_option("--alpha", o.alpha, "regime exponent alpha");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--tol", o.tol, "verification tolerance");
  app.add_option("--alon-c", o.alon_c, "constant in the exponential m bound")->check(CLI::PositiveNumber);
  app.add_option("--restarts", o.restarts, "search restarts")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "write the payload here instead of stdout");
  app.add_option("--format", o.format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
  app.add_flag("--trace", o.trace, "emit per-vertex extraction trace");

  std::vector<Leaf> leaves;
  auto group = [&](const char* name, const char* help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, std::function<int(Context&)> run) {
    CLI::App* l = parent->add_subcommand(name, help);
    l->fallthrough();
    l->add_option("input", o.input, "input file");
    leaves.push_back({l, std::move(run)});
  };

  CLI::App* graph = group("graph", "graph constructions");
  leaf(graph, "info", "vertex and edge counts", graph_info);
  leaf(graph, "line-digraph", "underlying graph of the line digraph with provenance", graph_line_digraph);
  leaf(graph, "union", "disjoint union of --copies copies", graph_union);
  CLI::App* solve = group("solve", "exact and search solvers");
  leaf(solve, "chi", "chromatic number and witness", solve_chi);
  leaf(solve, "chi-c", "circular chromatic number", solve_chi_c);
  leaf(solve, "od2", "exact decision of od_eps <= 2", solve_od2);
  leaf(solve, "od-eps", "search for an eps-orthonormal representation", solve_od_eps);
  CLI::App* reduce = group("reduce", "reductions");
  leaf(reduce, "col2fit-copies", "coloring to fitness via disjoint copies", reduce_copies);
  leaf(reduce, "col2fit-line", "coloring to fitness via line digraphs", reduce_line);
  leaf(reduce, "fit2comp", "fitness to completion (--kind psd|bounded)", reduce_fit2comp);
  leaf(reduce, "pad", "pad a completion instance with zero rows", reduce_pad);
  CLI::App* cert = group("cert", "certificates");
  leaf(cert, "yes", "planted low-rank certificate", cert_yes);
  leaf(cert, "verify-psd", "verify a PSD completion", cert_verify_psd);
  leaf(cert, "verify-inf", "verify a bounded completion", cert_verify_inf);
  CLI::App* extract = group("extract", "coloring extraction");
  leaf(extract, "general", "net quantization of a fitting factorization", extract_general_cmd);
  leaf(extract, "line", "line-digraph extraction from a representation", extract_line_cmd);
  leaf(extract, "from-matrix", "line-digraph extraction from a fitting matrix", extract_matrix_cmd);
  CLI::App* bounds = group("bounds", "bound formulas");
  leaf(bounds, "m", "upper bound on m(d, eps)", bounds_m);
  leaf(bounds, "regimes", "parameter regimes of the hardness formulas", bounds_regimes);
  CLI::App* net = group("net", "eta-nets");
  leaf(net, "build", "grid net for B_d(theta)", net_build);
  CLI::App* pipeline = group("pipeline", "end-to-end runs");
  leaf(pipeline, "demo", "graph to certificate to extraction", pipeline_demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const Leaf& l : leaves) {
    if (!l.app->parsed()) continue;
    Context ctx(o, out);
    try {
      const int code = l.run(ctx);
      ctx.flush();
      return code;
    } catch (const ResourceLimit& e) {
      err << "resource limit: " << e.what() << '\n';
      return 3;
    } catch (const InputError& e) {
      err << "input error: " << e.what() << '\n';
      return 2;
    } catch (const PreconditionError& e) {
      err << "precondition failed: " << e.what() << '\n';
      return 2;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  err << app.help();
  return 2;
}

}  // namespace rankgap::cli
