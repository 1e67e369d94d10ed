#include "rankgap/bounds.hpp"

#include "rankgap/errors.hpp"

#include <cmath>
#include <cstdint>

namespace rankgap {

MBound m_upper_bound(int d, double eps, double c) {
  if (d < 1) throw InputError("m bound: d must be positive");
  if (!(eps >= 0.0) || eps > 0.5) throw InputError("m bound: eps must lie in [0, 1/2]");
  if (!(c > 0.0)) throw InputError("m bound: Alon constant must be positive");

  MBound out;
  if (eps < 1.0 / std::sqrt(static_cast<double>(d))) {
    const long double e2 = static_cast<long double>(eps) * eps;
    const long double v = d * (1.0L - e2) / (1.0L - d * e2);
    const long double r = std::round(v);
    const long double fl = std::fabs(v - r) <= 1e-9L * std::fmax(1.0L, r) ? r : std::floor(v);
    out.regime = MRegime::perturbed_identity;
    out.value.log2 = std::log2(fl);
    if (fl < 9.0e18L) {
      out.value.value = static_cast<std::uint64_t>(fl);
    } else {
      out.value = floor_exp2(out.value.log2);
    }
    return out;
  }
  out.regime = MRegime::alon_exponential;
  const long double exponent =
      static_cast<long double>(c) * d * eps * eps * std::log2(1.0L / eps);
  out.value = floor_exp2(exponent);
  return out;
}

int m_lower_bound(int d, double eps) {
  if (d < 1) throw InputError("m bound: d must be positive");
  if (!(eps >= 0.0 && eps <= 0.5)) throw InputError("m bound: eps must lie in [0, 1/2]");
  return eps * d >= 1.0 ? d + 1 : d;
}

Matrix simplex_witness(int d) {
  if (d < 1) throw InputError("simplex_witness: d must be positive");
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  // Rows of the Helmert matrix orthogonal to the all-ones vector give d
  // orthonormal vectors h_k in R^(d+1); vertex i is (h_1[i], ..., h_d[i]).
  Matrix h(static_cast<std::size_t>(d), n);
  for (std::size_t k = 1; k <= static_cast<std::size_t>(d); ++k) {
    const double denom = std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) h(k - 1, i) = 1.0 / denom;
    h(k - 1, k) = -static_cast<double>(k) / denom;
  }
  const double scale = std::sqrt(static_cast<double>(n) / d);
  Matrix x(n, static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < static_cast<std::size_t>(d); ++k) x(i, k) = scale * h(k, i);
  return x;
}

Matrix simplex_gram(int d) {
  if (d < 1) throw InputError("simplex_gram: d must be positive");
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  Matrix g(n, n, -1.0 / d);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 1.0;
  return g;
}

BigCount net_size_bound(int d, double theta, double eta) {
  if (d < 1 || !(theta > 0) || !(eta > 0)) throw InputError("net bound: invalid parameters");
  return floor_pow(2.0L * theta / eta + 1.0L, d);
}

}  // namespace rankgap
