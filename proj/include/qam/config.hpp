#pragma once

#include <cstddef>
#include <cstdint>

namespace qam {

struct Tolerances {
  double tol_inv = 1e-12;     // relative residual of bisection inversion
  double tol_eq = 1e-9;       // sup-norm on normalized generators
  double tol_cmp = 1e-10;     // absolute, on mean values
  double eps_mono = 1e-9;     // relative monotonicity slack
  double refine_tol = 1e-10;  // dyadic partition refinement
};

inline constexpr std::size_t kDefaultGrid = 4097;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// True when n >= 33 and n - 1 is a power of two.
constexpr bool valid_grid_size(std::size_t n) noexcept {
  if (n < 33) return false;
  const std::size_t m = n - 1;
  return (m & (m - 1)) == 0;
}

}  // namespace qam
