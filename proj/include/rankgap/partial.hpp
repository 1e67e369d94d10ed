#pragma once

#include "rankgap/matrix.hpp"

#include <optional>
#include <vector>

namespace rankgap {

/// Square matrix whose entries are either a real in [-theta, theta] or missing.
class PartialMatrix {
 public:
  PartialMatrix() = default;
  /// All entries start out missing. Requires theta >= 1.
  PartialMatrix(std::size_t n, double theta);

  std::size_t size() const { return n_; }
  double theta() const { return theta_; }

  bool present(std::size_t i, std::size_t j) const { return mask_[i * n_ + j] != 0; }
  std::optional<double> at(std::size_t i, std::size_t j) const;
  /// Throws InputError when |value| > theta or value is not finite.
  void set(std::size_t i, std::size_t j, double value);
  void clear(std::size_t i, std::size_t j);

  std::size_t missing_count() const;
  double missing_fraction() const;

  /// max |A_ij - B_ij| over present entries (0 when nothing is present).
  double max_deviation(const Matrix& b) const;

  /// Copy enlarged to n + extra with the new rows and columns present and zero.
  PartialMatrix padded(std::size_t extra) const;

  friend bool operator==(const PartialMatrix&, const PartialMatrix&) = default;

 private:
  std::size_t n_ = 0;
  double theta_ = 1;
  std::vector<double> values_;
  std::vector<unsigned char> mask_;
};

}  // namespace rankgap
