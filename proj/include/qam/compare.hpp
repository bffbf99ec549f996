#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qam/config.hpp"
#include "qam/generator.hpp"
#include "qam/mean.hpp"

namespace qam {

enum class Relation { LEQ, GEQ, EQUIV, INCOMPARABLE, UNKNOWN };
enum class Method { Ratio, Convexity, Empirical };

std::string to_string(Relation r);
std::string to_string(Method m);

/// True for LEQ and EQUIV.
inline bool holds_leq(Relation r) { return r == Relation::LEQ || r == Relation::EQUIV; }
inline bool holds_geq(Relation r) { return r == Relation::GEQ || r == Relation::EQUIV; }

/// Outcome of one comparability test of QA_f against QA_g.
///
/// `margin` is the worst violation seen in the tested direction(s): for a
/// verdict that holds it is at most the slack in use; for INCOMPARABLE it is
/// the smaller of the two directional violations. Grid-based methods record
/// violating abscissa pairs in `grid_witnesses`; the empirical method records
/// counterexample vectors in `witnesses` (one per failed direction).
struct ComparisonVerdict {
  Relation relation = Relation::UNKNOWN;
  Method method = Method::Empirical;
  double margin = 0.0;
  std::vector<ArgVector> witnesses;
  std::vector<std::pair<double, double>> grid_witnesses;
  std::string note;
};

struct CompareOptions {
  std::size_t grid_n = kDefaultGrid;
  Tolerances tol{};
};

/// QA_f <= QA_g iff g'/f' is nondecreasing (both canonicalized increasing).
/// Throws DerivativeUnavailable for grid generators without slope samples.
ComparisonVerdict compare_ratio(const Generator& f, const Generator& g,
                                const CompareOptions& opts = {});

/// QA_f <= QA_g iff f o g^{-1} is concave, tested through secant slopes on a
/// uniform grid of the image g(I).
ComparisonVerdict compare_convexity(const Generator& f, const Generator& g,
                                    const CompareOptions& opts = {});

/// Direct test of the definition on sampled vectors. Can refute, never prove.
ComparisonVerdict compare_empirical(const Generator& f, const Generator& g,
                                    const VectorSampler& sampler,
                                    const CompareOptions& opts = {});

/// Runs every applicable method (ratio is skipped when a derivative is not
/// represented) and merges the verdicts.
struct ComparisonReport {
  Relation relation = Relation::UNKNOWN;
  std::vector<ComparisonVerdict> verdicts;
  bool consistent = true;  // no two methods returned opposite directed verdicts
};

ComparisonReport compare_all(const Generator& f, const Generator& g,
                             const VectorSampler& sampler, const CompareOptions& opts = {});

/// Classification of a sequence as nondecreasing / nonincreasing within a
/// slack of eps_mono * max(range, max |value|).
struct MonotoneCheck {
  double slack = 0.0;
  double worst_drop = 0.0;  // largest s[i] - s[i+1]
  double worst_rise = 0.0;  // largest s[i+1] - s[i]
  std::size_t drop_at = 0;
  std::size_t rise_at = 0;
  bool nondecreasing() const { return worst_drop <= slack; }
  bool nonincreasing() const { return worst_rise <= slack; }
};

MonotoneCheck check_monotone(const std::vector<double>& seq, double eps_mono);

}  // namespace qam
