#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qam/config.hpp"
#include "qam/generator.hpp"

namespace qam {

using ArgVector = std::vector<double>;

/// Quasi-arithmetic mean: inverse of the compensated average of g(v_i).
/// The g-values are summed in sorted order, so the result does not depend on
/// the order of `v`. The inversion is bracketed by [min v, max v].
double qa_mean(const Generator& g, std::span<const double> v);

/// Deterministic generator of argument vectors. Entries are uniform on
/// [lo + h, hi - h] with h = (hi - lo) / 1000.
class VectorSampler {
 public:
  VectorSampler(std::uint64_t seed, std::size_t count, std::size_t n_min = 2,
                std::size_t n_max = 8);

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t count() const noexcept { return count_; }
  std::size_t n_min() const noexcept { return n_min_; }
  std::size_t n_max() const noexcept { return n_max_; }

  /// The full deterministic batch for `interval`.
  std::vector<ArgVector> draw(const Interval& interval) const;

 private:
  std::uint64_t seed_;
  std::size_t count_;
  std::size_t n_min_;
  std::size_t n_max_;
};

using Probe = std::array<double, 3>;  // (x, y, z) with y != z

/// Max over probes of |r_f - r_g| with r(x,y,z) = (f(x)-f(z)) / (f(y)-f(z)).
double pal91_ratio_distance(const Generator& f, const Generator& g,
                            std::span<const Probe> probes);

/// All (x, y, z) triples with y != z over k equally spaced interior points.
std::vector<Probe> standard_probes(const Interval& interval, std::size_t k = 7);

}  // namespace qam
