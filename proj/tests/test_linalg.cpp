#include "oracles.hpp"
#include "rankgap/errors.hpp"
#include "rankgap/linalg.hpp"
#include "rankgap/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace rankgap;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.normal();
  return m;
}

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("matrix basics") {
  const Matrix a{{1, 2}, {3, 4}};
  CHECK(a.transpose() == Matrix{{1, 3}, {2, 4}});
  CHECK(a * Matrix::identity(2) == a);
  CHECK(a.max_abs() == 4);
  CHECK(a.asymmetry() == 1);
  CHECK(gram(Matrix{{3, 4}}) == Matrix{{25}});
  CHECK(multiply_transposed(a, a) == a * a.transpose());
  const std::size_t idx[] = {1};
  CHECK(a.principal(idx) == Matrix{{4}});
  CHECK(a.row_block(1, 1) == Matrix{{3, 4}});
  CHECK(a.max_row_norm() == doctest::Approx(5.0));
}

TEST_CASE("symmetric eigendecomposition agrees with Eigen") {
  Rng rng(7, "test/eig");
  for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
    const Matrix b = random_matrix(n, n, rng);
    const Matrix a = b + b.transpose();
    const SymmetricEigen e = symmetric_eigen(a);
    std::vector<double> ref = oracle::eigenvalues(a);
    std::reverse(ref.begin(), ref.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(e.values[i] == doctest::Approx(ref[i]).epsilon(1e-9));
    // A V = V diag(values)
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.values[i];
    CHECK(max_diff(a * e.vectors, e.vectors * d) < 1e-9 * (1 + a.max_abs()));
    CHECK(max_diff(e.vectors.transpose() * e.vectors, Matrix::identity(n)) < 1e-10);
  }
}

TEST_CASE("svd reconstructs and matches Eigen ranks") {
  Rng rng(11, "test/svd");
  for (auto [r, c, k] : std::vector<std::array<std::size_t, 3>>{{6, 4, 4}, {4, 9, 2}, {10, 10, 3}, {8, 5, 1}}) {
    const Matrix a = random_matrix(r, k, rng) * random_matrix(k, c, rng);
    const Svd s = svd(a);
    CHECK(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()));
    Matrix us = s.u;
    for (std::size_t i = 0; i < us.rows(); ++i)
      for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= s.sigma[j];
    CHECK(max_diff(us * s.v.transpose(), a) < 1e-9 * (1 + a.max_abs()));
    CHECK(numerical_rank(a) == k);
    CHECK(static_cast<int>(numerical_rank(a)) == oracle::rank(a, default_rank_tol(a)));
  }
  CHECK(numerical_rank(Matrix(3, 3)) == 0);
}

TEST_CASE("psd test") {
  CHECK(is_psd(Matrix{{2, 1}, {1, 2}}));
  CHECK_FALSE(is_psd(Matrix{{1, 2}, {2, 1}}));
  CHECK(is_psd(Matrix{{1, 1}, {1, 1}}));
  CHECK_THROWS_AS(is_psd(Matrix{{1, 1}, {0, 1}}), InputError);
}

TEST_CASE("coherence") {
  // Identity: every coordinate vector lies in the row space, mu = (n/n) * 1.
  CHECK(coherence(Matrix::identity(4)) == doctest::Approx(1.0));
  // Rank one along e_1 in R^4: mu = (4/1) * 1.
  Matrix e(4, 4);
  e(0, 0) = 1;
  CHECK(coherence(e) == doctest::Approx(4.0));
  // All-ones: U spans (1,1,1,1)/2, |P e_i|^2 = 1/4, mu = 4 * 1/4.
  CHECK(coherence(Matrix(4, 4, 1.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(coherence(Matrix(3, 3)), PreconditionError);
}

TEST_CASE("psd factorization") {
  Rng rng(3, "test/psdf");
  const Matrix x = random_matrix(7, 3, rng);
  const Matrix a = gram(x);
  const FactorizationPair f = psd_factorize(a);
  CHECK(f.dim() == 3);
  CHECK(f.same_factors());
  CHECK(max_diff(f.product(), a) < 1e-9 * a.max_abs());
  CHECK_THROWS_AS(psd_factorize(Matrix{{1, 2}, {2, 1}}), PreconditionError);
}

TEST_CASE("balanced rank factorization equalizes row norms") {
  Rng rng(5, "test/bal");
  for (int t = 0; t < 5; ++t) {
    Matrix x = random_matrix(9, 3, rng);
    const Matrix y = random_matrix(9, 3, rng);
    for (std::size_t i = 0; i < 9; ++i) x(i, 0) *= 20;  // skew the scales
    const Matrix a = multiply_transposed(x, y);
    const BalancedFactorization b = balanced_rank_factorization(a);
    CHECK(b.rank == 3);
    CHECK(b.reconstruction_error < 1e-9 * a.max_abs());
    const double nx = b.pair.x().max_row_norm();
    const double ny = b.pair.y().max_row_norm();
    CHECK(std::abs(nx - ny) <= 0.01 * std::max(nx, ny) + 1e-12);
    CHECK(b.john_bound == doctest::Approx(std::pow(3.0, 0.25) * std::sqrt(a.max_abs())));
  }
}

TEST_CASE("random orthogonal matrices") {
  Rng rng(9, "test/orth");
  const Matrix q = random_orthogonal(6, rng);
  CHECK(max_diff(q * q.transpose(), Matrix::identity(6)) < 1e-12);
  Rng again(9, "test/orth");
  CHECK(random_orthogonal(6, again) == q);
}

TEST_CASE("rng determinism and label separation") {
  Rng a(1, "x"), b(1, "x"), c(1, "y");
  const auto va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
  Rng u(2, "u");
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(u.below(7) < 7);
  }
}

TEST_CASE("absolute inner product is Lipschitz") {
  Rng rng(12, "test/claim");
  for (int t = 0; t < 1000; ++t) {
    const Matrix m = random_matrix(3, 5, rng);
    const auto x = m.row(0), y = m.row(1), z = m.row(2);
    std::vector<double> diff(5);
    for (int k = 0; k < 5; ++k) diff[k] = x[k] - z[k];
    CHECK(std::abs(std::abs(dot(x, y)) - std::abs(dot(z, y))) <= norm(diff) * norm(y) + 1e-12);
  }
}

TEST_CASE("coherence lies in [1, n/d]") {
  Rng rng(13, "test/coh");
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 8, d = 1 + t % 5;
    const Matrix a = gram(random_matrix(n, d, rng));
    const double mu = coherence(a);
    CHECK(mu >= 1 - 1e-9);
    CHECK(mu <= static_cast<double>(n) / d + 1e-9);
  }
}

TEST_CASE("factorization examples") {
  CHECK((psd_factorize(Matrix::identity(2)).product() - Matrix::identity(2)).max_abs() < 1e-12);
  const FactorizationPair ones = psd_factorize(Matrix(3, 3, 1.0));
  CHECK(ones.dim() == 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(ones.x()(i, 0)) == doctest::Approx(1.0));
  const BalancedFactorization id = balanced_rank_factorization(Matrix::identity(5));
  CHECK(id.pair.max_row_norm() == doctest::Approx(1.0));
  CHECK(id.pair.max_row_norm() <= std::pow(5.0, 0.25));
  Rng rng(14, "test/bal2");
  const Matrix x = random_matrix(10, 3, rng);
  Matrix a = gram(x);
  a = (1.0 / a.max_abs()) * a;
  const BalancedFactorization b = balanced_rank_factorization(a);
  CHECK(b.reconstruction_error <= 1e-8 * a.max_abs());
  CHECK(b.rank == 3);
  const double recomputed = std::max(b.pair.x().max_row_norm(), b.pair.y().max_row_norm());
  CHECK(std::abs(recomputed - b.pair.max_row_norm()) <= 1e-12);
  CHECK(is_psd(gram(random_matrix(6, 9, rng))));
  CHECK(numerical_rank(Matrix(4, 4, 1.0)) == 1);
  CHECK_THROWS(balanced_rank_factorization(Matrix(3, 3)));
}
