#pragma once

#include "rankgap/graph.hpp"
#include "rankgap/matrix.hpp"

#include <cstdint>
#include <optional>

namespace rankgap {

/// Unit vectors x_v (rows of `vectors`) with |<x_u, x_v>| <= eps on edges.
struct Representation {
  Matrix vectors;
  double eps = 0;

  std::size_t size() const { return vectors.rows(); }
  std::size_t dim() const { return vectors.cols(); }
  Matrix gram() const { return rankgap::gram(vectors); }
};

struct FitReport {
  bool ok = false;
  double worst_diagonal = 0;  // max |A_vv - 1|
  double worst_edge = 0;      // max |A_uv| over edges, both orientations
};

/// A eps-fits G: unit diagonal within tol and edge entries within eps + tol.
FitReport check_eps_fit(const Matrix& a, const Graph& g, double eps, double tol = 0.0);

/// Row norms within 1e-9 of 1 and the Gram matrix eps-fits g within 1e-9.
bool is_valid_representation(const Representation& r, const Graph& g);

/// Vertex with color i receives e_i; dimension k, eps 0.
Representation representation_from_coloring(const Graph& g, const Coloring& c);

/// Zero-pads a representation to a larger dimension.
Representation embed(const Representation& r, std::size_t dim);

struct SearchOptions {
  int restarts = 50;
  int max_iterations = 4000;
  std::uint64_t seed = 1;
  /// Tried before the random restarts; rows are normalized first.
  std::optional<Matrix> warm_start;
};

struct SearchOutcome {
  std::optional<Representation> witness;
  /// Restarts consumed including the successful one; the warm start counts as one.
  int attempts = 0;
  double best_penalty = 0;
};

/// Projected-gradient search over unit vectors minimizing
/// sum over edges of max(0, |<x_u, x_v>| - eps)^2. Absence of a witness is not
/// a lower bound.
SearchOutcome od_eps_upper(const Graph& g, int d, double eps, const SearchOptions& options = {});

struct Od2Threshold {
  int p = 0;
  int q = 1;
  /// cos(pi q / p)
  double threshold = 0;
};

/// Circular chromatic number p/q of g and the smallest eps admitting a planar
/// representation. Throws InputError for edgeless graphs.
Od2Threshold od2_threshold(const Graph& g);

/// Exact decision of od_eps(g) <= 2 with a 1e-12 guard band. Edgeless graphs
/// are trivially representable in one dimension and return true.
bool od2_exact(const Graph& g, double eps);

}  // namespace rankgap
