#include "rankgap/io.hpp"

#include "rankgap/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace rankgap::io {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  double x = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(x))
    throw InputError("expected a finite number, got '" + token + "'");
  return x;
}

namespace {

long long parse_int(const std::string& token) {
  long long x = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw InputError("expected an integer, got '" + token + "'");
  return x;
}

int parse_count(const std::string& token, long long lo, long long hi, const char* what) {
  const long long v = parse_int(token);
  if (v < lo || v > hi)
    throw InputError(std::string(what) + " out of range: " + token);
  return static_cast<int>(v);
}

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-blank line split on whitespace. Lines whose first token is "c"
  // are comments and skipped unless keep_comments is set.
  bool next(std::vector<std::string>& tokens, bool keep_comments = false) {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (tokens.empty()) continue;
      if (tokens[0] == "c" && !keep_comments) continue;
      return true;
    }
    return false;
  }

  std::vector<std::string> require(const char* what) {
    std::vector<std::string> t;
    if (!next(t)) fail(std::string("unexpected end of input, expected ") + what);
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(line_no_) + ": " + msg);
  }

  void expect(const std::vector<std::string>& t, const char* head, std::size_t arity) const {
    if (t.empty() || t[0] != head || t.size() != arity)
      fail(std::string("expected '") + head + "' line with " + std::to_string(arity - 1) + " fields");
  }

 private:
  std::istream& is_;
  int line_no_ = 0;
};

constexpr long long kMaxOrder = 1'000'000;

std::string join_rest(const std::vector<std::string>& t, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < t.size(); ++i) {
    if (i > from) s += ' ';
    s += t[i];
  }
  return s;
}

Matrix read_rows(LineReader& r, std::size_t rows, std::size_t cols) {
  std::vector<double> data;
  data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto t = r.require("matrix row");
    if (t.size() != cols) r.fail("matrix row has " + std::to_string(t.size()) + " entries, expected " + std::to_string(cols));
    for (const auto& tok : t) data.push_back(parse_double(tok));
  }
  return Matrix(rows, cols, std::move(data));
}

void write_rows(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Coloring read_coloring_block(LineReader& r) {
  const auto h = r.require("coloring header");
  r.expect(h, "coloring", 3);
  const int n = parse_count(h[1], 0, kMaxOrder, "vertex count");
  const int k = parse_count(h[2], 0, kMaxOrder, "palette");
  std::vector<int> colors;
  while (static_cast<int>(colors.size()) < n) {
    const auto t = r.require("colors");
    for (const auto& tok : t) colors.push_back(parse_count(tok, 1, k, "color"));
  }
  if (static_cast<int>(colors.size()) != n) r.fail("too many colors");
  return Coloring(std::move(colors), k);
}

Matrix read_matrix_block(LineReader& r) {
  const auto h = r.require("matrix header");
  r.expect(h, "matrix", 3);
  const auto rows = static_cast<std::size_t>(parse_count(h[1], 0, kMaxOrder, "rows"));
  const auto cols = static_cast<std::size_t>(parse_count(h[2], 0, kMaxOrder, "cols"));
  return read_rows(r, rows, cols);
}

PartialMatrix read_partial_block(LineReader& r, std::vector<std::string> h) {
  r.expect(h, "pmatrix", 3);
  const auto n = static_cast<std::size_t>(parse_count(h[1], 0, kMaxOrder, "order"));
  PartialMatrix a(n, parse_double(h[2]));
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = r.require("pmatrix row");
    if (t.size() != n) r.fail("pmatrix row has the wrong length");
    for (std::size_t j = 0; j < n; ++j)
      if (t[j] != "NA") a.set(i, j, parse_double(t[j]));
  }
  return a;
}

}  // namespace

void write_graph(std::ostream& os, const Graph& g, const Meta& meta) {
  for (const auto& [k, v] : meta) os << "c " << k << (v.empty() ? "" : " ") << v << '\n';
  os << "p edge " << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

void write_provenance(std::ostream& os, const std::vector<Arc>& provenance) {
  for (std::size_t i = 0; i < provenance.size(); ++i)
    os << "v " << i + 1 << ' ' << provenance[i].tail + 1 << ' ' << provenance[i].head + 1 << '\n';
}

GraphFile read_graph_file(std::istream& is) {
  LineReader r(is);
  GraphFile out;
  std::vector<std::string> t;
  int n = -1;
  std::size_t m = 0;
  std::vector<Edge> edges;
  while (r.next(t, true)) {
    if (t[0] == "c") {
      if (t.size() >= 2) out.meta.emplace_back(t[1], join_rest(t, 2));
    } else if (t[0] == "p") {
      if (n >= 0) r.fail("duplicate 'p' line");
      if (t.size() != 4 || t[1] != "edge") r.fail("expected 'p edge <n> <m>'");
      n = parse_count(t[2], 0, kMaxOrder, "vertex count");
      m = static_cast<std::size_t>(parse_count(t[3], 0, kMaxOrder * kMaxOrder, "edge count"));
    } else if (t[0] == "e") {
      if (n < 0) r.fail("'e' line before 'p' line");
      r.expect(t, "e", 3);
      edges.push_back({parse_count(t[1], 1, n, "vertex") - 1, parse_count(t[2], 1, n, "vertex") - 1});
    } else if (t[0] == "v") {
      r.expect(t, "v", 4);
      const int idx = parse_count(t[1], 1, kMaxOrder, "provenance index");
      if (idx != static_cast<int>(out.provenance.size()) + 1) r.fail("provenance indices must be consecutive");
      out.provenance.push_back({parse_count(t[2], 1, kMaxOrder, "tail") - 1,
                                parse_count(t[3], 1, kMaxOrder, "head") - 1});
    } else {
      r.fail("unrecognized line '" + t[0] + "'");
    }
  }
  if (n < 0) throw InputError("graph: missing 'p edge' line");
  if (edges.size() != m) throw InputError("graph: edge count does not match the 'p' line");
  out.graph = Graph(n, edges);
  return out;
}

Graph read_graph(std::istream& is) { return read_graph_file(is).graph; }

void write_coloring(std::ostream& os, const Coloring& c) {
  os << "coloring " << c.size() << ' ' << c.palette << '\n';
  for (int v : c.colors) os << v << '\n';
}

Coloring read_coloring(std::istream& is) {
  LineReader r(is);
  return read_coloring_block(r);
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << "matrix " << m.rows() << ' ' << m.cols() << '\n';
  write_rows(os, m);
}

Matrix read_matrix(std::istream& is) {
  LineReader r(is);
  return read_matrix_block(r);
}

void write_partial(std::ostream& os, const PartialMatrix& a) {
  os << "pmatrix " << a.size() << ' ' << format_double(a.theta()) << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) os << ' ';
      const auto v = a.at(i, j);
      os << (v ? format_double(*v) : "NA");
    }
    os << '\n';
  }
}

PartialMatrix read_partial(std::istream& is) {
  LineReader r(is);
  return read_partial_block(r, r.require("pmatrix header"));
}

void write_fitness(std::ostream& os, const FitnessInstance& inst) {
  Meta meta{{"problem", inst.problem},
            {"d1", std::to_string(inst.d1)},
            {"d2", std::to_string(inst.d2)},
            {"eps", format_double(inst.eps)}};
  if (inst.theta) meta.emplace_back("theta", format_double(*inst.theta));
  meta.emplace_back("provenance", inst.provenance);
  write_graph(os, inst.graph, meta);
}

FitnessInstance read_fitness(std::istream& is) {
  GraphFile f = read_graph_file(is);
  FitnessInstance inst;
  inst.graph = std::move(f.graph);
  inst.theta.reset();
  bool have_d1 = false, have_d2 = false, have_eps = false;
  for (const auto& [k, v] : f.meta) {
    if (k == "problem") inst.problem = v;
    else if (k == "d1") { inst.d1 = parse_count(v, 1, kMaxOrder, "d1"); have_d1 = true; }
    else if (k == "d2") { inst.d2 = parse_count(v, 1, kMaxOrder, "d2"); have_d2 = true; }
    else if (k == "eps") { inst.eps = parse_double(v); have_eps = true; }
    else if (k == "theta") inst.theta = parse_double(v);
    else if (k == "provenance") inst.provenance = v;
  }
  if (!have_d1 || !have_d2 || !have_eps)
    throw InputError("fitness instance: header needs d1, d2 and eps");
  return inst;
}

void write_completion(std::ostream& os, const CompletionInstance& inst) {
  os << "d1 " << inst.d1 << '\n'
     << "d2 " << inst.d2 << '\n'
     << "eps " << format_double(inst.eps) << '\n'
     << "theta " << format_double(inst.theta) << '\n'
     << "kind " << to_string(inst.kind) << '\n'
     << "provenance " << inst.provenance << '\n';
  write_partial(os, inst.partial);
}

CompletionInstance read_completion(std::istream& is) {
  LineReader r(is);
  CompletionInstance inst;
  std::vector<std::string> t;
  int seen = 0;
  while (true) {
    t = r.require("instance header or pmatrix");
    if (t[0] == "pmatrix") break;
    if (t.size() < 2 && t[0] != "provenance") r.fail("header line '" + t[0] + "' has no value");
    if (t[0] == "d1") inst.d1 = parse_count(t[1], 1, kMaxOrder, "d1");
    else if (t[0] == "d2") inst.d2 = parse_count(t[1], 1, kMaxOrder, "d2");
    else if (t[0] == "eps") inst.eps = parse_double(t[1]);
    else if (t[0] == "theta") inst.theta = parse_double(t[1]);
    else if (t[0] == "kind") inst.kind = completion_kind_from(t[1]);
    else if (t[0] == "provenance") inst.provenance = join_rest(t, 1);
    else r.fail("unknown header '" + t[0] + "'");
    ++seen;
  }
  if (seen < 5) throw InputError("completion instance: incomplete header");
  inst.partial = read_partial_block(r, t);
  return inst;
}

void write_certificate(std::ostream& os, const std::string& kind, const YesCertificate& cert) {
  os << "cert " << kind << '\n';
  write_coloring(os, cert.coloring);
  write_matrix(os, cert.b);
}

YesCertificate read_certificate(std::istream& is, std::string* kind) {
  LineReader r(is);
  const auto h = r.require("cert header");
  r.expect(h, "cert", 2);
  if (kind) *kind = h[1];
  YesCertificate cert;
  cert.coloring = read_coloring_block(r);
  cert.b = read_matrix_block(r);
  if (cert.b.rows() != static_cast<std::size_t>(cert.coloring.size()) || !cert.b.square())
    throw InputError("certificate: matrix size does not match the coloring");
  return cert;
}

void write_representation(std::ostream& os, const Representation& rep) {
  os << "rep " << rep.size() << ' ' << rep.dim() << ' ' << format_double(rep.eps) << '\n';
  write_rows(os, rep.vectors);
}

Representation read_representation(std::istream& is) {
  LineReader r(is);
  const auto h = r.require("rep header");
  r.expect(h, "rep", 4);
  const auto n = static_cast<std::size_t>(parse_count(h[1], 0, kMaxOrder, "rows"));
  const auto d = static_cast<std::size_t>(parse_count(h[2], 0, kMaxOrder, "dimension"));
  const double eps = parse_double(h[3]);
  return Representation{read_rows(r, n, d), eps};
}

void write_net(std::ostream& os, const Net& net) {
  os << "net " << net.dim() << ' ' << format_double(net.theta()) << ' ' << format_double(net.eta())
     << ' ' << net.size() << '\n';
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto p = net.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) os << ' ';
      os << format_double(p[k]);
    }
    os << '\n';
  }
}

void write_trace(std::ostream& os, const std::vector<TraceEntry>& trace) {
  for (const TraceEntry& t : trace) {
    os << "v " << t.vertex + 1 << " kept";
    if (t.kept.empty()) os << " -";
    for (int a : t.kept) os << ' ' << a + 1;
    os << " color";
    for (std::size_t p : t.net_points) os << ' ' << p + 1;
    os << '\n';
  }
}

}  // namespace rankgap::io
