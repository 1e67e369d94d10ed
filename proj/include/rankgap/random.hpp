#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rankgap {

/// Deterministic generator. Every stream derives from one run seed plus a
/// label, so independent subcommands never share draws. Floating-point
/// variates are produced here rather than by <random> distributions, whose
/// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view label);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  Rng split(std::string_view label) { return Rng(next_u64(), label); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

std::uint64_t label_hash(std::string_view label);

}  // namespace rankgap
