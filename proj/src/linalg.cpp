#include "rankgap/linalg.hpp"

#include "rankgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rankgap {

SymmetricEigen symmetric_eigen(const Matrix& input) {
  if (!input.square()) throw InputError("symmetric_eigen: matrix is not square");
  const std::size_t n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::identity(n);

  auto off_norm2 = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return s;
  };
  double total = 0;
  for (double x : a.data()) total += x * x;

  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = off_norm2();
    if (off == 0.0 || off <= 1e-34 * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Svd svd(const Matrix& a) {
  if (a.rows() < a.cols()) {
    Svd t = svd(a.transpose());
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  const std::size_t n = a.rows(), m = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(m);
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < n; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (gamma == 0.0 || std::fabs(gamma) <= 1e-16 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::hypot(zeta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < m; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }

  std::vector<double> sigma(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += w(i, j) * w(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });
  Svd out{Matrix(n, m), std::vector<double>(m), Matrix(m, m)};
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.u(i, k) = sigma[j] > 0 ? w(i, j) / sigma[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) out.v(i, k) = v(i, j);
  }
  return out;
}

double default_rank_tol(const Matrix& a) {
  return 1e-9 * static_cast<double>(std::max(a.rows(), a.cols()));
}

std::size_t numerical_rank(const Matrix& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  if (tol < 0) tol = default_rank_tol(a);
  const std::vector<double> sigma = svd(a).sigma;
  if (sigma.front() == 0.0) return 0;
  const double cut = tol * sigma.front();
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cut; }));
}

namespace {

void require_symmetric(const Matrix& a, double tol, const char* what) {
  if (!a.square()) throw InputError(std::string(what) + ": matrix is not square");
  if (a.asymmetry() > tol * std::max(1.0, a.max_abs()))
    throw InputError(std::string(what) + ": matrix is not symmetric; symmetrize it first");
}

// Eigenvalue indices sorted by decreasing magnitude, truncated to the
// numerical rank.
std::vector<std::size_t> dominant(const SymmetricEigen& e, double tol) {
  std::vector<std::size_t> idx(e.values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return std::fabs(e.values[i]) > std::fabs(e.values[j]);
  });
  if (idx.empty()) return idx;
  const double top = std::fabs(e.values[idx.front()]);
  const auto keep = std::count_if(idx.begin(), idx.end(),
                                  [&](std::size_t i) { return std::fabs(e.values[i]) > tol * top; });
  idx.resize(static_cast<std::size_t>(keep));
  return idx;
}

}  // namespace

bool is_psd(const Matrix& a, double tol) {
  require_symmetric(a, tol, "is_psd");
  if (a.rows() == 0) return true;
  const SymmetricEigen e = symmetric_eigen(a);
  const double radius = std::max(std::fabs(e.values.front()), std::fabs(e.values.back()));
  return e.values.back() >= -tol * (radius + 1.0);
}

double coherence(const Matrix& a, double tol) {
  require_symmetric(a, 1e-9, "coherence");
  if (tol < 0) tol = default_rank_tol(a);
  if (a.rows() == 0 || a.max_abs() == 0.0)
    throw PreconditionError("coherence is undefined for the zero matrix");
  const SymmetricEigen e = symmetric_eigen(a);
  const std::vector<std::size_t> basis = dominant(e, tol);
  const std::size_t n = a.rows();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double proj = 0;
    for (std::size_t k : basis) proj += e.vectors(i, k) * e.vectors(i, k);
    worst = std::max(worst, proj);
  }
  return static_cast<double>(n) / static_cast<double>(basis.size()) * worst;
}

FactorizationPair::FactorizationPair(Matrix x, Matrix y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.rows() || x_.cols() != y_.cols())
    throw InputError("factorization: X and Y must have the same shape");
  max_row_norm_ = std::max(x_.max_row_norm(), y_.max_row_norm());
}

FactorizationPair::FactorizationPair(Matrix x) : x_(std::move(x)) {
  y_ = x_;
  max_row_norm_ = x_.max_row_norm();
}

FactorizationPair psd_factorize(const Matrix& a, double tol) {
  if (tol < 0) tol = default_rank_tol(a);
  if (!is_psd(a)) throw PreconditionError("psd_factorize: matrix is not positive semi-definite");
  const SymmetricEigen e = symmetric_eigen(a);
  const std::size_t n = a.rows();
  std::size_t d = 0;
  const double top = n == 0 ? 0.0 : e.values.front();
  while (d < n && top > 0 && e.values[d] > tol * top) ++d;
  Matrix x(n, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double scale = std::sqrt(e.values[k]);
    for (std::size_t i = 0; i < n; ++i) x(i, k) = e.vectors(i, k) * scale;
  }
  FactorizationPair pair(std::move(x));
  if ((a - pair.product()).max_abs() > 1e-8 * a.max_abs())
    throw Error("psd_factorize: reconstruction error above 1e-8 relative");
  return pair;
}

BalancedFactorization balanced_rank_factorization(const Matrix& a, double tol) {
  if (!a.square()) throw InputError("balanced_rank_factorization: matrix is not square");
  if (a.rows() == 0 || a.max_abs() == 0.0)
    throw PreconditionError("balanced_rank_factorization: zero matrix has no rank factorization");
  if (tol < 0) tol = default_rank_tol(a);
  const Svd s = svd(a);
  const std::size_t n = a.rows();
  std::size_t d = 0;
  while (d < s.sigma.size() && s.sigma[d] > tol * s.sigma.front()) ++d;

  Matrix x(n, d), y(n, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double root = std::sqrt(s.sigma[k]);
    for (std::size_t i = 0; i < n; ++i) {
      x(i, k) = s.u(i, k) * root;
      y(i, k) = s.v(i, k) * root;
    }
  }

  BalancedFactorization out;
  out.rank = d;
  for (int round = 0; round < 50; ++round) {
    const double mx = x.max_row_norm(), my = y.max_row_norm();
    if (std::fabs(mx - my) <= 0.01 * std::max(mx, my)) break;
    out.balancing_rounds = round + 1;
    // Per-column step: equalize column norms of X and Y.
    for (std::size_t k = 0; k < d; ++k) {
      double cx = 0, cy = 0;
      for (std::size_t i = 0; i < n; ++i) {
        cx += x(i, k) * x(i, k);
        cy += y(i, k) * y(i, k);
      }
      if (cx == 0.0 || cy == 0.0) continue;
      const double scale = std::pow(cy / cx, 0.25);
      for (std::size_t i = 0; i < n; ++i) {
        x(i, k) *= scale;
        y(i, k) /= scale;
      }
    }
    // Global step: a scalar D that equalizes the largest row norms exactly.
    const double scale = std::sqrt(y.max_row_norm() / x.max_row_norm());
    x = scale * x;
    y = (1.0 / scale) * y;
  }
  out.pair = FactorizationPair(std::move(x), std::move(y));
  out.john_bound = std::pow(static_cast<double>(d), 0.25) * std::sqrt(a.max_abs());
  out.reconstruction_error = (a - out.pair.product()).max_abs();
  if (out.reconstruction_error > 1e-8 * a.max_abs())
    throw Error("balanced_rank_factorization: reconstruction error above 1e-8 relative");
  return out;
}

Matrix random_orthogonal(std::size_t d, Rng& rng) {
  Matrix q(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double len = 0;
    while (len < 1e-6) {
      for (std::size_t i = 0; i < d; ++i) q(i, j) = rng.normal();
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = 0; k < j; ++k) {
          double proj = 0;
          for (std::size_t i = 0; i < d; ++i) proj += q(i, j) * q(i, k);
          for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
        }
      len = 0;
      for (std::size_t i = 0; i < d; ++i) len += q(i, j) * q(i, j);
      len = std::sqrt(len);
    }
    for (std::size_t i = 0; i < d; ++i) q(i, j) /= len;
  }
  return q;
}

}  // namespace rankgap
