#include "rankgap/partial.hpp"

#include "rankgap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rankgap {

PartialMatrix::PartialMatrix(std::size_t n, double theta)
    : n_(n), theta_(theta), values_(n * n, 0.0), mask_(n * n, 0) {
  if (!(theta >= 1.0) || !std::isfinite(theta))
    throw InputError("partial matrix: theta must be a finite number >= 1");
}

std::optional<double> PartialMatrix::at(std::size_t i, std::size_t j) const {
  if (!present(i, j)) return std::nullopt;
  return values_[i * n_ + j];
}

void PartialMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw InputError("partial matrix: index out of range");
  if (!std::isfinite(value) || std::fabs(value) > theta_)
    throw InputError("partial matrix: entry magnitude exceeds theta");
  values_[i * n_ + j] = value;
  mask_[i * n_ + j] = 1;
}

void PartialMatrix::clear(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw InputError("partial matrix: index out of range");
  values_[i * n_ + j] = 0.0;
  mask_[i * n_ + j] = 0;
}

std::size_t PartialMatrix::missing_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 0));
}

double PartialMatrix::missing_fraction() const {
  if (n_ == 0) return 0.0;
  return static_cast<double>(missing_count()) / static_cast<double>(n_ * n_);
}

double PartialMatrix::max_deviation(const Matrix& b) const {
  if (b.rows() != n_ || b.cols() != n_)
    throw InputError("partial matrix: candidate completion has the wrong dimension");
  double worst = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (present(i, j)) worst = std::max(worst, std::fabs(values_[i * n_ + j] - b(i, j)));
  return worst;
}

PartialMatrix PartialMatrix::padded(std::size_t extra) const {
  const std::size_t m = n_ + extra;
  PartialMatrix out(m, theta_);
  std::fill(out.mask_.begin(), out.mask_.end(), 1);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      out.values_[i * m + j] = values_[i * n_ + j];
      out.mask_[i * m + j] = mask_[i * n_ + j];
    }
  return out;
}

}  // namespace rankgap
