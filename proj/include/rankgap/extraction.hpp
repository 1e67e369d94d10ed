#pragma once

#include "rankgap/bigcount.hpp"
#include "rankgap/bounds.hpp"
#include "rankgap/graph.hpp"
#include "rankgap/linalg.hpp"
#include "rankgap/representations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rankgap {

inline constexpr double kExtractionTol = 1e-7;

struct TraceEntry {
  int vertex = 0;
  /// Kept arcs (line-digraph vertex indices); empty for the general extractor.
  std::vector<int> kept;
  /// Sorted, deduplicated net-point indices forming the raw color.
  std::vector<std::size_t> net_points;
};

struct ExtractionResult {
  Coloring coloring;
  int color_count = 0;
  /// Bound on the number of colors (may overflow).
  BigCount bound;
  std::size_t net_size = 0;
  BigCount net_covering_bound;
  double theta = 0;
  double eta = 0;
  bool proper = false;
  std::vector<TraceEntry> trace;
  std::vector<std::string> warnings;

  // Line-digraph extractor only.
  double eps_prime = 0;
  int max_kept = 0;
  std::optional<MBound> m_bound;
  /// max |E'_v| <= m bound; only asserted in the constant-free regime.
  bool m_bound_respected = true;
  std::size_t separation_checks = 0;
  std::size_t separation_failures = 0;

  // Matrix wrappers only.
  std::size_t factor_rank = 0;
  double john_bound = 0;
};

/// Quantize x_v to the nearest point of an eta-net with eta = (1 - eps) / (2 theta).
ExtractionResult extract_general(const FactorizationPair& f, const Graph& g, double eps,
                                 double theta);

/// X = Y with unit rows; eta = sqrt((1 - eps) / 2).
ExtractionResult extract_general_symmetric(const FactorizationPair& f, const Graph& g, double eps);

/// Factorization over the underlying line digraph of g, rows indexed as in
/// `line.provenance`. Colors v by the set of net points of a greedy maximal
/// nearly-orthogonal subset of the arcs entering v.
ExtractionResult extract_linedigraph(const FactorizationPair& f, const Graph& g,
                                     const LineDigraph& line, double eps, double theta, double eta,
                                     double alon_c = kDefaultAlonConstant);

/// Symmetrize A, factor it with balanced row norms, take theta as the larger
/// of 1 and the factor row norms, then run the line-digraph extractor.
/// eta defaults to (1 - 2 eps) / (4 theta).
ExtractionResult extract_from_matrix(const Matrix& a, const Graph& g, const LineDigraph& line,
                                     double eps, std::optional<double> eta = std::nullopt,
                                     double alon_c = kDefaultAlonConstant);

/// General-graph variant: symmetrize, factor, run extract_general.
ExtractionResult extract_from_matrix(const Matrix& a, const Graph& target, double eps);

/// Representation of the underlying line digraph with theta = 1.
ExtractionResult extract_from_representation(const Representation& r, const Graph& g,
                                             const LineDigraph& line, double eps,
                                             std::optional<double> eta = std::nullopt,
                                             double alon_c = kDefaultAlonConstant);

}  // namespace rankgap
