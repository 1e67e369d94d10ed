#pragma once

#include "rankgap/matrix.hpp"
#include "rankgap/random.hpp"

#include <optional>
#include <vector>

namespace rankgap {

/// Eigenpairs of a symmetric matrix; values sorted in decreasing order and
/// `vectors` holding the matching unit eigenvectors as columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi rotations. The input is symmetrized as (A + A^t)/2.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// Thin SVD A = U diag(sigma) V^t with sigma decreasing, computed by
/// one-sided (Hestenes) Jacobi rotations.
struct Svd {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};
Svd svd(const Matrix& a);

/// Relative tolerance used when a caller passes none: 1e-9 * max(n, m).
double default_rank_tol(const Matrix& a);

/// Count of singular values above tol * sigma_max; 0 for the zero matrix.
/// A negative tol selects default_rank_tol.
std::size_t numerical_rank(const Matrix& a, double tol = -1);

/// Minimum eigenvalue >= -tol * (spectral radius + 1). Throws InputError if
/// the matrix is not square or asymmetric beyond tol * max(1, |A|_inf).
bool is_psd(const Matrix& a, double tol = 1e-9);

/// (n/d) * max_i |P_U e_i|^2 for the row space U of a symmetric matrix,
/// with d its numerical rank. Throws PreconditionError for the zero matrix.
double coherence(const Matrix& a, double tol = -1);

/// X and Y with A = X Y^t; max_row_norm is kept equal to the largest
/// Euclidean row norm over both factors.
class FactorizationPair {
 public:
  FactorizationPair() = default;
  FactorizationPair(Matrix x, Matrix y);
  /// The symmetric case X = Y.
  explicit FactorizationPair(Matrix x);

  const Matrix& x() const { return x_; }
  const Matrix& y() const { return y_; }
  std::size_t rows() const { return x_.rows(); }
  std::size_t dim() const { return x_.cols(); }
  double max_row_norm() const { return max_row_norm_; }
  bool same_factors() const { return x_ == y_; }
  Matrix product() const { return multiply_transposed(x_, y_); }

 private:
  Matrix x_;
  Matrix y_;
  double max_row_norm_ = 0;
};

/// A = X X^t with X of width numerical_rank(A). Throws PreconditionError if
/// A is not PSD.
FactorizationPair psd_factorize(const Matrix& a, double tol = -1);

struct BalancedFactorization {
  FactorizationPair pair;
  std::size_t rank = 0;
  /// rank^(1/4) * |A|_inf^(1/2); reported next to pair.max_row_norm(), not enforced.
  double john_bound = 0;
  /// |A - X Y^t|_inf
  double reconstruction_error = 0;
  int balancing_rounds = 0;
};

/// Rank factorization from the SVD, then diagonal rescaling X -> XD,
/// Y -> YD^-1 until the largest row norms of X and Y agree within 1%.
BalancedFactorization balanced_rank_factorization(const Matrix& a, double tol = -1);

/// Uniformly random d x d orthogonal matrix (Gram-Schmidt on Gaussian columns).
Matrix random_orthogonal(std::size_t d, Rng& rng);

}  // namespace rankgap
