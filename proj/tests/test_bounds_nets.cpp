#include "rankgap/bigcount.hpp"
#include "rankgap/bounds.hpp"
#include "rankgap/errors.hpp"
#include "rankgap/linalg.hpp"
#include "rankgap/nets.hpp"
#include "rankgap/random.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace rankgap;

TEST_CASE("big counts") {
  CHECK(floor_exp2(10).value == 1024);
  CHECK(floor_exp2(0.5).value == 1);
  CHECK(floor_pow(3, 4).value == 81);
  CHECK(floor_exp2(300).value == BigInt(1) << 300);
  CHECK(log2_of(BigInt(1024)) == doctest::Approx(10.0));
}

TEST_CASE("m upper bound: perturbed identity regime") {
  // floor(d (1 - eps^2) / (1 - d eps^2)) computed by hand.
  CHECK(m_upper_bound(10, 0.1).value.value == 11);     // 9.9 / 0.9
  CHECK(m_upper_bound(4, 0.25).value.value == 5);      // 3.75 / 0.75
  CHECK(m_upper_bound(5, 0.0).value.value == 5);
  CHECK(m_upper_bound(1, 0.3).value.value == 1);       // 0.91 / 0.91
  CHECK(m_upper_bound(10, 0.1).regime == MRegime::perturbed_identity);
}

TEST_CASE("m upper bound at the simplex pinch") {
  const MBound m = m_upper_bound(2, 0.5);
  CHECK(m.regime == MRegime::perturbed_identity);
  CHECK(m.value.value == 3);  // 2 * 0.75 / 0.5
}

TEST_CASE("m upper bound: exponential regime") {
  // d = 16, eps = 1/2: 1/sqrt(d) = 1/4 <= eps, exponent = c * 16 * 1/4 * 1 = 4c.
  const MBound m = m_upper_bound(16, 0.5);
  CHECK(m.regime == MRegime::alon_exponential);
  CHECK(m.value.value == 16);
  CHECK(m_upper_bound(16, 0.5, 2.0).value.value == 256);
}

TEST_CASE("m upper bound input validation") {
  CHECK_THROWS_AS(m_upper_bound(0, 0.1), InputError);
  CHECK_THROWS_AS(m_upper_bound(3, 0.6), InputError);
  CHECK_THROWS_AS(m_upper_bound(3, -0.1), InputError);
  CHECK_THROWS_AS(m_upper_bound(3, 0.1, 0.0), InputError);
}

TEST_CASE("simplex witness") {
  for (int d = 1; d <= 6; ++d) {
    const Matrix w = simplex_witness(d);
    CHECK(w.rows() == static_cast<std::size_t>(d + 1));
    CHECK(w.cols() == static_cast<std::size_t>(d));
    const Matrix g = gram(w);
    CHECK((g - simplex_gram(d)).max_abs() < 1e-14);
    CHECK(numerical_rank(g) == static_cast<std::size_t>(d));
  }
  const Matrix g2 = simplex_gram(2);
  CHECK(g2(0, 0) == 1.0);
  CHECK(g2(0, 1) == -0.5);
}

TEST_CASE("net size bound") {
  CHECK(net_size_bound(2, 1, 0.5).value == 25);  // (4 + 1)^2
  CHECK(net_size_bound(3, 2, 0.4).value == 1331);
}

TEST_CASE("grid nets cover the ball") {
  struct P { int d; double theta, eta; };
  for (P p : {P{1, 1, 0.3}, P{2, 1, 0.5}, P{3, 2, 0.4}, P{4, 1, 0.6}}) {
    const Net net = Net::build_grid(p.d, p.theta, p.eta);
    CHECK(net.size() > 0);
    for (std::size_t i = 0; i < net.size(); ++i) {
      double s = 0;
      for (double c : net.point(i)) s += c * c;
      CHECK(std::sqrt(s) <= p.theta * (1 + 1e-12));
    }
    Rng rng(4, "test/net");
    std::vector<double> x(p.d);
    for (int t = 0; t < 2000; ++t) {
      double r2 = 0;
      for (auto& c : x) { c = rng.uniform(-p.theta, p.theta); r2 += c * c; }
      if (r2 > p.theta * p.theta) continue;
      // Brute-force nearest distance must be attained by the net query.
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_i = 0;
      for (std::size_t i = 0; i < net.size(); ++i) {
        double s = 0;
        for (int k = 0; k < p.d; ++k) s += (x[k] - net.point(i)[k]) * (x[k] - net.point(i)[k]);
        if (s < best) { best = s; best_i = i; }
      }
      CHECK(net.nearest_index(x) == best_i);
      CHECK(std::sqrt(best) < p.eta);
    }
  }
}

TEST_CASE("net errors and resource limits") {
  const Net net = Net::build_grid(2, 1, 0.5);
  CHECK_THROWS_AS(net.nearest_index(std::vector<double>{2.0, 0.0}), InputError);
  CHECK_THROWS_AS(net.nearest_index(std::vector<double>{0.0}), InputError);
  CHECK_THROWS_AS(Net::build_grid(20, 1, 0.01), ResourceLimit);
  CHECK_THROWS_AS(Net::build_grid(2, 1, 0.0), InputError);
  CHECK(net.covering_bound().value == 25);
}

TEST_CASE("m bound examples and the known interval") {
  CHECK(m_upper_bound(4, 1 / std::sqrt(8.0)).value.value == 7);  // 4 (7/8) / (1/2)
  for (int d = 2; d <= 8; ++d) {
    // The simplex saturates the perturbed-identity bound at eps = 1/d.
    CHECK(m_upper_bound(d, 1.0 / d).value.value == d + 1);
    CHECK(m_lower_bound(d, 1.0 / d) == d + 1);
    CHECK(m_lower_bound(d, 0.5 / d) == d);
  }
  CHECK(m_lower_bound(2, 0.5) == 3);
  CHECK_THROWS_AS(m_lower_bound(2, 0.7), InputError);
}

TEST_CASE("simplex witnesses in low dimension") {
  const Matrix w1 = simplex_witness(1);
  CHECK(std::abs(w1(0, 0)) == doctest::Approx(1.0));
  CHECK(w1(0, 0) * w1(1, 0) == doctest::Approx(-1.0));
  const Matrix g3 = gram(simplex_witness(3));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(g3(i, j) == doctest::Approx(i == j ? 1.0 : -1.0 / 3));
  CHECK(numerical_rank(g3) == 3);
  const FactorizationPair f = psd_factorize(gram(simplex_witness(2)));
  CHECK(f.dim() == 2);
  for (std::size_t i = 0; i < 3; ++i) CHECK(f.x().row_norm(i) == doctest::Approx(1.0));
}

TEST_CASE("one-dimensional and trivial nets") {
  const Net n1 = Net::build_grid(1, 1, 1);
  CHECK(n1.size() <= 3);
  CHECK(n1.nearest(std::vector<double>{0.4})[0] == doctest::Approx(0.0));
  const Net big = Net::build_grid(2, 1, 2);
  CHECK(big.size() <= 9);
  Rng rng(6, "test/net-trivial");
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x{rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)};
    const auto p = big.nearest(x);
    CHECK(std::hypot(x[0] - p[0], x[1] - p[1]) < 2.0);
  }
}

TEST_CASE("quantization is idempotent") {
  const Net net = Net::build_grid(3, 2, 0.4);
  Rng rng(8, "test/net-idem");
  for (std::size_t i = 0; i < net.size(); i += 7) {
    const auto p = net.point(i);
    const std::vector<double> copy(p.begin(), p.end());
    CHECK(net.nearest_index(copy) == i);
  }
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto p = net.nearest(x);
    const std::vector<double> q(p.begin(), p.end());
    const auto p2 = net.nearest(q);
    CHECK(std::equal(p.begin(), p.end(), p2.begin()));
  }
}
