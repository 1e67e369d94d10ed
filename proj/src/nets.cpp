#include "rankgap/nets.hpp"

#include "rankgap/bounds.hpp"
#include "rankgap/errors.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace rankgap {

namespace {

double grid_spacing(int d, double eta) {
  return 2.0 * eta / (std::sqrt(static_cast<double>(d)) * (1.0 + 1e-9));
}

void validate(int d, double theta, double eta) {
  if (d < 1) throw InputError("net: dimension must be positive");
  if (!(theta > 0) || !std::isfinite(theta)) throw InputError("net: theta must be positive");
  if (!(eta > 0) || eta > 2 * theta) throw InputError("net: eta must lie in (0, 2 theta]");
}

double slack(double theta) { return 1e-9 * std::max(1.0, theta); }

}  // namespace

std::size_t Net::CellHash::operator()(const Cell& c) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t v : c) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

double Net::projected_size(int d, double theta, double eta) {
  validate(d, theta, eta);
  const double s = grid_spacing(d, eta);
  const double r = theta + s * std::sqrt(static_cast<double>(d)) / 2.0;
  const double half = d / 2.0;
  const double log_volume =
      half * std::log(std::numbers::pi) - std::lgamma(half + 1.0) + d * std::log(r / s);
  // One cell's worth of boundary layer keeps the estimate above the exact count.
  const double log_shell = d * std::log((r + s * std::sqrt(static_cast<double>(d))) / r);
  return std::exp(log_volume + log_shell);
}

Net Net::build_grid(int d, double theta, double eta, std::size_t cap) {
  validate(d, theta, eta);
  const double projected = projected_size(d, theta, eta);
  if (projected > static_cast<double>(cap))
    throw ResourceLimit("net: projected size " + std::to_string(static_cast<long double>(projected)) +
                        " exceeds the cap of " + std::to_string(cap) + " points");

  Net net;
  net.d_ = d;
  net.theta_ = theta;
  net.eta_ = eta;
  net.spacing_ = grid_spacing(d, eta);
  const double s = net.spacing_;
  const double reach = theta + s * std::sqrt(static_cast<double>(d)) / 2.0;
  const auto kmax = static_cast<std::int64_t>(std::floor(reach / s));

  // Clamping can send several grid points to one boundary point; keep the first.
  std::map<std::vector<double>, std::size_t> seen;
  std::vector<std::int64_t> k(static_cast<std::size_t>(d));
  std::vector<double> p(static_cast<std::size_t>(d));
  std::function<void(int, double)> walk = [&](int axis, double partial) {
    if (axis == d) {
      const double len = std::sqrt(partial);
      for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = static_cast<double>(k[static_cast<std::size_t>(i)]) * s;
      if (len > theta)
        for (double& x : p) x *= theta / len;
      if (seen.emplace(p, net.count_).second) {
        net.points_.insert(net.points_.end(), p.begin(), p.end());
        ++net.count_;
      }
      return;
    }
    for (std::int64_t i = -kmax; i <= kmax; ++i) {
      const double c = static_cast<double>(i) * s;
      const double next = partial + c * c;
      if (next > reach * reach) continue;
      k[static_cast<std::size_t>(axis)] = i;
      walk(axis + 1, next);
    }
  };
  walk(0, 0.0);
  if (net.count_ > std::numeric_limits<std::uint32_t>::max())
    throw ResourceLimit("net: too many points for the index");

  for (std::size_t i = 0; i < net.count_; ++i)
    net.buckets_[net.cell_of(net.point(i))].push_back(static_cast<std::uint32_t>(i));
  return net;
}

Net::Cell Net::cell_of(std::span<const double> p) const {
  Cell c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = std::llround(p[i] / spacing_);
  return c;
}

std::size_t Net::nearest_index(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != d_) throw InputError("net: query has the wrong dimension");
  double sq = 0;
  for (double v : x) sq += v * v;
  if (std::sqrt(sq) > theta_ + slack(theta_))
    throw InputError("net: query point lies outside the ball");

  // Every point of the ball has a net point within eta. A stored point sits
  // within s sqrt(d)/2 of its cell centre, so all candidates closer than eta
  // live in cells whose centres are within eta + s sqrt(d)/2 of x.
  const double s = spacing_;
  const double radius = eta_ + 2e-9 + s * std::sqrt(static_cast<double>(d_)) / 2.0;
  std::size_t best = count_;
  double best_d2 = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t idx) {
    const auto q = point(idx);
    double d2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (q[i] - x[i]) * (q[i] - x[i]);
    if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
      best_d2 = d2;
      best = idx;
    }
  };

  Cell cell(x.size());
  std::function<void(std::size_t, double)> walk = [&](std::size_t axis, double partial) {
    if (axis == x.size()) {
      const auto it = buckets_.find(cell);
      if (it != buckets_.end())
        for (std::uint32_t idx : it->second) consider(idx);
      return;
    }
    const double lo = (x[axis] - radius) / s;
    const double hi = (x[axis] + radius) / s;
    for (auto i = static_cast<std::int64_t>(std::ceil(lo)); i <= static_cast<std::int64_t>(std::floor(hi)); ++i) {
      const double gap = static_cast<double>(i) * s - x[axis];
      const double next = partial + gap * gap;
      if (next > radius * radius) continue;
      cell[axis] = i;
      walk(axis + 1, next);
    }
  };
  walk(0, 0.0);
  if (best == count_)
    for (std::size_t i = 0; i < count_; ++i) consider(i);
  return best;
}

BigCount Net::covering_bound() const { return net_size_bound(d_, theta_, eta_); }

}  // namespace rankgap
