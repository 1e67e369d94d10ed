#pragma once

#include "rankgap/bigcount.hpp"
#include "rankgap/matrix.hpp"

namespace rankgap {

inline constexpr double kDefaultAlonConstant = 1.0;

enum class MRegime {
  /// eps < 1/sqrt(d): floor(d (1 - eps^2) / (1 - d eps^2)), constant-free.
  perturbed_identity,
  /// eps in [1/sqrt(d), 1/2]: floor(2^(c d eps^2 log2(1/eps))), depends on c.
  alon_exponential,
};

struct MBound {
  BigCount value;
  MRegime regime = MRegime::perturbed_identity;
};

/// Upper bound on m(d, eps), the largest number of rows of a symmetric rank-d
/// matrix with unit diagonal and off-diagonal magnitudes <= eps.
/// Throws InputError for d < 1, eps outside [0, 1/2], or c <= 0.
MBound m_upper_bound(int d, double eps, double c = kDefaultAlonConstant);

/// Known lower bound on m(d, eps): d + 1 when eps >= 1/d (regular simplex),
/// else d (orthonormal basis). Same input checks as m_upper_bound.
int m_lower_bound(int d, double eps);

/// d+1 unit rows in R^d with pairwise inner products -1/d (Helmert basis).
Matrix simplex_witness(int d);

/// Closed-form Gram of the regular simplex: 1 on the diagonal, -1/d elsewhere.
Matrix simplex_gram(int d);

/// floor((2 theta / eta + 1)^d), the covering-number bound for B_d(theta).
BigCount net_size_bound(int d, double theta, double eta);

}  // namespace rankgap
