#include "rankgap/representations.hpp"

#include "rankgap/errors.hpp"
#include "rankgap/exact.hpp"
#include "rankgap/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rankgap {

FitReport check_eps_fit(const Matrix& a, const Graph& g, double eps, double tol) {
  const auto n = static_cast<std::size_t>(g.order());
  if (a.rows() != n || a.cols() != n) throw InputError("fit check: matrix size differs from graph order");
  FitReport r;
  for (std::size_t v = 0; v < n; ++v) r.worst_diagonal = std::max(r.worst_diagonal, std::fabs(a(v, v) - 1.0));
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    r.worst_edge = std::max({r.worst_edge, std::fabs(a(u, v)), std::fabs(a(v, u))});
  }
  r.ok = r.worst_diagonal <= tol && r.worst_edge <= eps + tol;
  return r;
}

bool is_valid_representation(const Representation& r, const Graph& g) {
  if (r.size() != static_cast<std::size_t>(g.order())) return false;
  for (std::size_t v = 0; v < r.size(); ++v)
    if (std::fabs(r.vectors.row_norm(v) - 1.0) > 1e-9) return false;
  return check_eps_fit(r.gram(), g, r.eps, 1e-9).ok;
}

Representation representation_from_coloring(const Graph& g, const Coloring& c) {
  if (!is_proper(g, c)) throw InputError("representation: coloring is not proper");
  Representation r{Matrix(static_cast<std::size_t>(g.order()), static_cast<std::size_t>(c.palette)), 0.0};
  for (int v = 0; v < g.order(); ++v) r.vectors(static_cast<std::size_t>(v), static_cast<std::size_t>(c[v] - 1)) = 1.0;
  return r;
}

Representation embed(const Representation& r, std::size_t dim) {
  if (dim < r.dim()) throw InputError("embed: target dimension is smaller than the source");
  Representation out{Matrix(r.size(), dim), r.eps};
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t k = 0; k < r.dim(); ++k) out.vectors(i, k) = r.vectors(i, k);
  return out;
}

namespace {

struct PenaltyEval {
  double penalty = 0;
  double worst = 0;  // max over edges of |<x_u, x_v>| - eps
};

PenaltyEval evaluate(const Matrix& x, const Graph& g, double eps) {
  PenaltyEval out{0.0, -eps};
  for (const Edge& e : g.edges()) {
    const double excess = std::fabs(dot(x.row(static_cast<std::size_t>(e.u)), x.row(static_cast<std::size_t>(e.v)))) - eps;
    out.worst = std::max(out.worst, excess);
    if (excess > 0) out.penalty += excess * excess;
  }
  return out;
}

void normalize_rows(Matrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double len = x.row_norm(i);
    if (len == 0.0) throw PreconditionError("search: zero row cannot be normalized");
    for (double& v : x.row(i)) v /= len;
  }
}

// One restart. Returns the final iterate; `result` holds its penalty.
Matrix descend(Matrix x, const Graph& g, double eps, int iterations, PenaltyEval& result) {
  const std::size_t n = x.rows(), d = x.cols();
  // A slightly stricter target gives the iterate room to land strictly inside.
  const double target = eps > 0 ? eps * (1.0 - 1e-6) : 0.0;
  PenaltyEval cur = evaluate(x, g, target);
  double step = 0.1;
  for (int it = 0; it < iterations && cur.penalty > 0; ++it) {
    Matrix grad(n, d);
    for (const Edge& e : g.edges()) {
      const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
      const double ip = dot(x.row(u), x.row(v));
      const double excess = std::fabs(ip) - target;
      if (excess <= 0) continue;
      const double w = 2.0 * excess * (ip >= 0 ? 1.0 : -1.0);
      for (std::size_t k = 0; k < d; ++k) {
        grad(u, k) += w * x(v, k);
        grad(v, k) += w * x(u, k);
      }
    }
    // Project onto the tangent space of each sphere.
    for (std::size_t i = 0; i < n; ++i) {
      const double radial = dot(grad.row(i), x.row(i));
      for (std::size_t k = 0; k < d; ++k) grad(i, k) -= radial * x(i, k);
    }
    bool moved = false;
    for (double a = std::min(1.0, 2.0 * step); a >= 1e-12; a *= 0.5) {
      Matrix trial = x - a * grad;
      bool degenerate = false;
      for (std::size_t i = 0; i < n && !degenerate; ++i) degenerate = trial.row_norm(i) == 0.0;
      if (degenerate) continue;
      normalize_rows(trial);
      const PenaltyEval next = evaluate(trial, g, target);
      if (next.penalty < cur.penalty) {
        x = std::move(trial);
        cur = next;
        step = a;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  result = evaluate(x, g, eps);
  return x;
}

bool success(const PenaltyEval& e) { return e.penalty < 1e-14 && e.worst <= 1e-9; }

}  // namespace

SearchOutcome od_eps_upper(const Graph& g, int d, double eps, const SearchOptions& options) {
  if (d < 1) throw InputError("od search: dimension must be positive");
  if (!(eps >= 0.0) || !(eps < 1.0)) throw InputError("od search: eps must lie in [0, 1)");
  if (options.restarts < 1) throw InputError("od search: restarts must be positive");
  const auto n = static_cast<std::size_t>(g.order());
  const auto dim = static_cast<std::size_t>(d);

  SearchOutcome out;
  out.best_penalty = std::numeric_limits<double>::infinity();
  auto attempt = [&](Matrix start) -> bool {
    ++out.attempts;
    PenaltyEval eval;
    Matrix x = descend(std::move(start), g, eps, options.max_iterations, eval);
    out.best_penalty = std::min(out.best_penalty, eval.penalty);
    if (!success(eval)) return false;
    out.witness = Representation{std::move(x), eps};
    return true;
  };

  if (options.warm_start) {
    const Matrix& w = *options.warm_start;
    if (w.rows() != n || w.cols() > dim) throw InputError("od search: warm start has the wrong shape");
    Matrix start(n, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < w.cols(); ++k) start(i, k) = w(i, k);
    normalize_rows(start);
    if (attempt(std::move(start))) return out;
  }
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(options.seed, "od-eps/restart/" + std::to_string(r));
    Matrix start(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
      double len = 0;
      while (len < 1e-6) {
        for (std::size_t k = 0; k < dim; ++k) start(i, k) = rng.normal();
        len = start.row_norm(i);
      }
    }
    normalize_rows(start);
    if (attempt(std::move(start))) return out;
  }
  return out;
}

Od2Threshold od2_threshold(const Graph& g) {
  const CircularChiResult c = circular_chromatic_number(g);
  return {c.p, c.q, std::cos(std::numbers::pi * c.q / c.p)};
}

bool od2_exact(const Graph& g, double eps) {
  if (!(eps >= 0.0) || !(eps < 1.0)) throw InputError("od2: eps must lie in [0, 1)");
  if (g.size() == 0) return true;
  return eps >= od2_threshold(g).threshold - 1e-12;
}

}  // namespace rankgap
