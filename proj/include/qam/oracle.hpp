#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qam/compare.hpp"
#include "qam/envelope.hpp"
#include "qam/mean.hpp"

namespace qam {

/// Named reference generators on one interval: powers (only when lo > 0),
/// exponentials and two single-kink piecewise-linear generators.
class Catalog {
 public:
  static Catalog standard(const Interval& interval);

  const Interval& interval() const noexcept { return interval_; }
  const std::vector<NamedGenerator>& generators() const noexcept { return generators_; }
  /// Members without kinks (usable as family members of the C1 pathway).
  std::vector<NamedGenerator> smooth() const;
  const Generator& at(const std::string& name) const;

 private:
  explicit Catalog(Interval interval) : interval_(interval) {}
  Interval interval_;
  std::vector<NamedGenerator> generators_;
};

inline constexpr double kCatalogPowers[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0};
inline constexpr double kCatalogExponentials[] = {-1.0, 1.0, 2.0};

struct CheckRecord {
  std::string check;    // "dominance" or "minimality"
  std::string subject;  // family member index or catalog name
  Method method;
  Relation relation;
  double margin;
  bool passed;
  std::vector<ArgVector> witnesses;
};

struct VerificationReport {
  bool passed = true;
  std::vector<CheckRecord> checks;
  double worst_ratio_margin = 0.0;
  double worst_empirical_margin = 0.0;
  std::size_t witness_count = 0;
};

/// Dominance of every member (ratio and empirical) and minimality against
/// every catalog member that bounds the whole family (ratio and empirical).
VerificationReport verify_envelope(const EnvelopeResult& result,
                                   std::span<const Generator> family, const Catalog& catalog,
                                   const VectorSampler& sampler,
                                   const CompareOptions& opts = {});

struct UqaReport {
  double catalog_bound;   // best bounding catalog mean at v
  double envelope_mean;   // envelope mean at v
  std::string attained_by;
  bool consistent;        // envelope_mean on the right side within tol_cmp
};

/// Sup: min over dominating catalog means at v versus the envelope mean
/// (which must not exceed it). Inf dually. Throws NoUpperBoundInCatalog when
/// no catalog member bounds the family.
UqaReport uqa_lqa_report(std::span<const Generator> family, std::span<const double> v,
                         const Catalog& catalog, const EnvelopeResult& envelope,
                         const CompareOptions& opts = {});

struct SuiteCheck {
  std::string name;
  bool passed;
  double worst;  // largest observed error or margin
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool passed() const;
};

struct SuiteConfig {
  std::size_t grid_n = kDefaultGrid;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 1000;
};

/// "means", "compare", "envelopes", "regularize".
const std::vector<std::string>& suite_names();
/// Throws InvalidArgument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg = {});

}  // namespace qam
