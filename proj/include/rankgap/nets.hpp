#pragma once

#include "rankgap/bigcount.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace rankgap {

inline constexpr std::size_t kNetSizeCap = 10'000'000;

/// An eta-net for the closed ball B_d(theta) built from an axis-aligned grid.
/// Immutable once built; nearest() is safe to call concurrently.
class Net {
 public:
  /// Grid spacing s = 2 eta / (sqrt(d) (1 + 1e-9)); grid points within
  /// theta + s sqrt(d)/2 of the origin, each clamped onto B_d(theta).
  /// Throws ResourceLimit when the projected size exceeds `cap`.
  static Net build_grid(int d, double theta, double eta, std::size_t cap = kNetSizeCap);

  /// Volume estimate of the point count build_grid would produce.
  static double projected_size(int d, double theta, double eta);

  int dim() const { return d_; }
  double theta() const { return theta_; }
  double eta() const { return eta_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return count_; }
  std::span<const double> point(std::size_t i) const {
    return {points_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }

  /// Index of a closest point, lowest index on ties. Throws InputError when
  /// |x| > theta beyond a 1e-9 relative slack or the dimension is wrong.
  std::size_t nearest_index(std::span<const double> x) const;
  std::span<const double> nearest(std::span<const double> x) const {
    return point(nearest_index(x));
  }

  /// (2 theta / eta + 1)^d, the covering-number bound the grid is compared to.
  BigCount covering_bound() const;

 private:
  using Cell = std::vector<std::int64_t>;
  struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept;
  };

  Cell cell_of(std::span<const double> p) const;

  int d_ = 0;
  double theta_ = 0;
  double eta_ = 0;
  double spacing_ = 0;
  std::size_t count_ = 0;
  std::vector<double> points_;
  std::unordered_map<Cell, std::vector<std::uint32_t>, CellHash> buckets_;
};

}  // namespace rankgap
