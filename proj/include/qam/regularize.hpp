#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qam/generator.hpp"
#include "qam/mean.hpp"

namespace qam {

/// Upper: heal kinks with left slope >= right slope; the projected mean
/// dominates the input. Lower: the reverse.
enum class Projection { Upper, Lower };

struct RegularizationTrace {
  std::vector<Generator> iterates;          // f_1 = input, ..., f_{k+1} = m_f
  std::vector<std::size_t> kinks_remaining;  // per iterate
  std::vector<double> healed;                // kink location removed at each step
  std::vector<double> pal91_distances;       // per iterate, against m_f
};

struct Regularization {
  Generator projection;  // m_f
  RegularizationTrace trace;
  double anchor;
};

/// One slope-matching step on a piecewise generator. Below `z_minus` the
/// generator is rescaled about f(z_minus) by right/left slope; above `z_plus`
/// about f(z_plus) by left/right slope; in between it is unchanged. Both
/// kinks become differentiability points.
Generator regularize_step(const Generator& f, std::optional<double> z_minus,
                          std::optional<double> z_plus, Projection direction);

/// Midpoint of the largest kink-free gap.
double default_regularization_anchor(const Generator& f);

/// Iterates regularize_step one kink at a time, nearest to the anchor first,
/// until no kink remains. Throws SlopeOrderViolation when the kinks all point
/// the other way and EmptyProjection when they are mixed.
Regularization regularize(const Generator& f, Projection direction,
                          std::optional<double> anchor = std::nullopt);

/// Ratio-criterion distances of every iterate to m.
std::vector<double> pal91_convergence_report(const RegularizationTrace& trace,
                                             const Generator& m,
                                             std::span<const Probe> probes);
std::vector<double> pal91_convergence_report(const RegularizationTrace& trace,
                                             const Generator& m);

}  // namespace qam
