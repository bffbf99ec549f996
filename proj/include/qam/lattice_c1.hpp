#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qam/envelope.hpp"
#include "qam/grid_function.hpp"

namespace qam {

/// Finite family of continuous functions on a shared interval together with
/// the base partition (uniform, `grid_n` nodes) used by the Delta construction.
struct FunctionFamily {
  Interval interval;
  std::size_t grid_n;
  std::vector<RealFunction> members;

  /// Members interpolated linearly from grid samples (all on one grid).
  static FunctionFamily from_grids(std::span<const GridFunction> grids);
  FunctionFamily negated() const;
};

/// delta(x, y) = min over members of f(x) - f(y), for x <= y.
double small_delta(const FunctionFamily& family, double x, double y);

/// Delta(x, y): infimum over partitions of [x, y] of the summed delta, by
/// dyadic refinement of the base partition (grid nodes inside [x, y] plus the
/// endpoints). Each base cell is refined until two consecutive levels each
/// change its sum by less than its width-proportional share of `refine_tol`. Throws
/// NoConvergenceError (carrying the best value) past depth 20.
double capital_delta(const FunctionFamily& family, double x, double y,
                     double refine_tol = Tolerances{}.refine_tol);

/// Order-supremum h of the family for the order "a below b iff a - b is
/// nonincreasing": h(x) = Delta(x, x0) for x <= x0, -Delta(x0, x) beyond,
/// sampled on the base grid. h(x0) = 0.
GridFunction sup_order(const FunctionFamily& family, double x0,
                       double refine_tol = Tolerances{}.refine_tol);

/// Order-infimum, computed as -sup_order of the negated family.
GridFunction inf_order(const FunctionFamily& family, double x0,
                       double refine_tol = Tolerances{}.refine_tol);

/// Independent check of sup_order for piecewise-C1 members: cumulative
/// trapezoid of the pointwise max of nodal finite-difference derivatives,
/// zero at x0.
GridFunction derivative_envelope_oracle(const FunctionFamily& family, double x0);

/// Envelope generator of a C1 family: s is the order-supremum (infimum) of
/// log|f'|, u = int_{x0} exp(s). Dominance certificates are attached, plus
/// minimality certificates for the option bounds.
EnvelopeResult envelope_generator_c1(std::span<const Generator> family, EnvelopeKind kind,
                                     const EnvelopeOptions& opts = {});

/// log|f'| of each member as functions on the family interval.
FunctionFamily log_derivative_family(std::span<const Generator> family, std::size_t grid_n);

}  // namespace qam
