#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qam/compare.hpp"
#include "qam/config.hpp"
#include "qam/generator.hpp"
#include "qam/grid_function.hpp"

namespace qam {

/// sup: least upper bound of the family's means; inf: greatest lower bound.
enum class EnvelopeKind { Sup, Inf };

std::string to_string(EnvelopeKind kind);

struct NamedGenerator {
  std::string name;
  Generator generator;
};

struct EnvelopeOptions {
  std::size_t grid_n = kDefaultGrid;  // nodes of the output generator
  std::size_t oversample = 8;         // quadrature nodes per output cell
  std::optional<double> anchor;       // defaults to the interval midpoint
  Tolerances tol{};
  /// Candidate bounds; those bounding the whole family receive a
  /// minimality certificate.
  std::vector<NamedGenerator> bounds;
};

/// Pointwise envelope of f''/f' over a C2 family (G for sup, H for inf),
/// sampled on the quadrature grid.
struct RatioEnvelope {
  EnvelopeKind kind;
  GridFunction G;
  double anchor;
};

/// The order-supremum s of the family's log-derivatives (order-infimum for
/// inf), anchored so that s(anchor) = 0.
struct LogDerivativeEnvelope {
  EnvelopeKind kind;
  GridFunction s;
  double anchor;
  std::vector<GridFunction> family_logds;
};

struct BoundCertificate {
  std::string name;
  ComparisonVerdict verdict;  // compare_ratio(u, bound)
};

struct EnvelopeResult {
  EnvelopeKind kind;
  Generator generator;
  std::variant<RatioEnvelope, LogDerivativeEnvelope> envelope;
  /// compare_ratio(member, u), one per family member, in family order.
  std::vector<ComparisonVerdict> dominance_certificates;
  std::vector<BoundCertificate> minimality_certificates;

  /// Every certificate reads in the direction the kind requires.
  bool certified() const;
};

/// Quadrature grid size for an output grid of n nodes.
std::size_t quadrature_size(const EnvelopeOptions& opts);

/// Anchor from options, validated to lie strictly inside the interval.
double resolve_anchor(const Interval& interval, const EnvelopeOptions& opts);

/// Shared interval of a nonempty family; throws IntervalMismatch otherwise.
Interval family_interval(std::span<const Generator> family);

/// Fills dominance certificates for `family` and minimality certificates for
/// every option bound that bounds the family in the kind's direction.
void attach_certificates(EnvelopeResult& result, std::span<const Generator> family,
                         const EnvelopeOptions& opts);

/// Builds the output generator from quadrature-grid samples of u' (given as
/// its logarithm) anchored at `anchor`: u is the cumulative trapezoid of
/// exp(log_slope), downsampled by `factor` with exact slope samples kept.
Generator generator_from_log_slope(const GridFunction& log_slope, double anchor,
                                   std::size_t factor);

}  // namespace qam
