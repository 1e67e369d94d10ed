#pragma once

#include "rankgap/bigcount.hpp"
#include "rankgap/bounds.hpp"
#include "rankgap/graph.hpp"
#include "rankgap/linalg.hpp"
#include "rankgap/partial.hpp"
#include "rankgap/representations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rankgap {

/// A graph together with the gap parameters of a fitness or
/// orthogonality-dimension instance and a record of where it came from.
struct FitnessInstance {
  Graph graph;
  int d1 = 1;
  int d2 = 2;
  double eps = 0;
  /// Absent for orthogonality-dimension instances.
  std::optional<double> theta = 1.0;
  std::string problem = "graph-fitness";
  std::string provenance;
};

enum class CompletionKind { psd, bounded };
const char* to_string(CompletionKind k);
CompletionKind completion_kind_from(const std::string& s);

struct CompletionInstance {
  PartialMatrix partial;
  int d1 = 1;
  int d2 = 2;
  double eps = 0;
  double theta = 1;
  CompletionKind kind = CompletionKind::psd;
  std::string provenance;
  bool psd_required() const { return kind == CompletionKind::psd; }
};

struct YesCertificate {
  Matrix b;
  std::size_t rank = 0;
  double coherence = 0;
  /// Coloring of the union graph whose standard-basis Gram is b.
  Coloring coloring;
};

struct YesInstance {
  Graph graph;
  YesCertificate certificate;
};

/// Disjoint union of k copies of g, copy j colored by c shifted by j modulo k,
/// and the 0/1 Gram matrix of the standard-basis assignment.
YesInstance yes_certificate(const Graph& g, const Coloring& c);

struct CopiesReduction {
  FitnessInstance instance;
  /// chi(G) at or above this certifies the NO side.
  BigCount chi_threshold;
};

CopiesReduction reduce_coloring_to_fitness_copies(const Graph& g, int d1, int d2, double eps,
                                                  double theta);

struct LineConditions {
  bool eta_ok = false;
  bool k1_ok = false;
  bool k2_ok = false;
  BigInt b_d1;
  MBound m;
  /// (2 theta / eta + 1)^(d2 m)
  BigCount k2_required;
  bool met() const { return eta_ok && k1_ok && k2_ok; }
};

struct LineReduction {
  FitnessInstance instance;
  LineDigraph gadget;
  LineConditions conditions;
};

/// d1 copies of the underlying line digraph, with a report on the three
/// conditions tying (k1, k2) to (d1, d2, eps, theta, eta). Unmet conditions
/// are reported, not rejected. Throws InputError for eps or eta out of range.
LineReduction reduce_coloring_to_fitness_linedigraph(const Graph& g, int d1, int d2, double eps,
                                                     double theta, double eta, const BigInt& k1,
                                                     const BigInt& k2,
                                                     double alon_c = kDefaultAlonConstant);

double eps_prime_of(double eps);        // eps / (1 + eps)
double eps_of_prime(double eps_prime);  // eps' / (1 - eps')
double theta_prime_of(double theta, double eps, int d2);

struct CompletionReduction {
  CompletionInstance instance;
  std::vector<std::string> warnings;
};

/// Partial matrix with 1 on the diagonal, 0 on edges, missing elsewhere.
PartialMatrix fitting_pattern(const Graph& g, double theta = 1.0);

CompletionReduction reduce_fitness_to_completion(const FitnessInstance& inst, CompletionKind kind);

struct PsdCompletionReport {
  bool agrees = false;
  double max_deviation = 0;
  bool psd = false;
  std::size_t rank = 0;
  std::optional<double> coherence;
  bool ok() const { return agrees && psd; }
};

PsdCompletionReport verify_psd_completion(const PartialMatrix& a, const Matrix& b, double eps,
                                          double tol = 1e-9);

struct BoundedCompletionReport {
  bool agrees = false;
  double max_deviation = 0;
  bool inf_norm_ok = false;
  double max_abs = 0;
  std::size_t rank = 0;
  bool ok() const { return agrees && inf_norm_ok; }
};

BoundedCompletionReport verify_bounded_completion(const PartialMatrix& a, const Matrix& b,
                                                  double eps, double theta, double tol = 1e-9);

/// Factor a PSD completion and normalize its rows. Result eps is eps'/(1-eps').
Representation psd_completion_to_representation(const PartialMatrix& a, const Matrix& b,
                                                double eps_prime, double tol = 1e-9);

struct NormalizedFactorization {
  FactorizationPair pair;
  /// Largest row norm of the balanced factorization before the diagonal rescale.
  double pre_rescale_max_row_norm = 0;
  std::size_t rank = 0;
  double john_bound = 0;
  double eps = 0;
};

/// Symmetrize, factor with balanced row norms, rescale each pair (x_v, y_v) by
/// <x_v, y_v>^(1/2) so the product has unit diagonal.
NormalizedFactorization bounded_completion_to_factorization(const PartialMatrix& a,
                                                            const Matrix& b, double eps_prime,
                                                            double theta_prime,
                                                            double tol = 1e-9);

struct RegimeRecord {
  std::string name;
  /// Largest admissible g (as a real number) and its log2.
  double g_max = 0;
  double log2_g_max = 0;
  double eps_lo = 0;
  double eps_hi = 0;
  /// Upper end of the error range after the completion transform eps/(1+eps).
  double eps_prime_hi = 0;
  /// log2 of the largest admissible theta (may be astronomically large).
  double log2_theta_max = 0;
  /// The formulas carry an unquantified "sufficiently large d" requirement.
  bool proven_range_unknown = true;
};

struct RegimeInputs {
  int d = 100;
  double c = kDefaultAlonConstant;
  double theta = 1.0;
  double eps = 1.0 / 6.0;
  double beta = 2.0;
  double alpha = 2.0;
};

/// Admissible (g, eps, theta) ranges from the hardness formulas, evaluated with
/// the supplied constant c (and c' = c where a second constant appears).
std::vector<RegimeRecord> hardness_parameter_regimes(const RegimeInputs& in);

struct PadResult {
  CompletionInstance instance;
  std::size_t added = 0;
  bool noop = false;
  std::string notice;
};

/// Append the fewest zero rows and columns that bring the missing fraction to
/// at most `target`.
PadResult pad_instance(const CompletionInstance& inst, double target);

/// Identity on the graph: relabel a fitness instance as an orthogonality-
/// dimension instance and drop theta.
FitnessInstance fitness_to_orthodim(const FitnessInstance& inst);

}  // namespace rankgap
