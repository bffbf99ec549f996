#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qam/compare.hpp"
#include "qam/envelope.hpp"
#include "qam/generator.hpp"
#include "qam/oracle.hpp"
#include "qam/regularize.hpp"

namespace qam {

using Json = nlohmann::ordered_json;

/// "a,b" -> Interval.
Interval parse_interval(const std::string& text);
/// Comma-separated reals.
std::vector<double> parse_reals(const std::string& text);

/// Generator from a JSON descriptor or the shorthand `power:2`, `log`,
/// `exp:1.5`. A JSON "interval" member overrides `fallback`.
Generator parse_generator(const std::string& text, std::optional<Interval> fallback);
Generator generator_from_json(const Json& j, std::optional<Interval> fallback);
Json generator_to_json(const Generator& g);

/// {"interval": [a, b], "members": [...]}; members may be shorthand strings.
struct FamilyFile {
  Interval interval;
  std::vector<Generator> members;
};
FamilyFile family_from_json(const Json& j, std::optional<Interval> fallback);

Json to_json(const ComparisonVerdict& v);
Json to_json(const ComparisonReport& r);
Json to_json(const EnvelopeResult& r);
Json to_json(const RegularizationTrace& t);
Json to_json(const VerificationReport& r);
Json to_json(const UqaReport& r);

/// CSV with header x,value,derivative (derivative omitted when the
/// generator has none). Reals are printed with 17 significant digits.
void write_generator_csv(std::ostream& out, const Generator& g, std::size_t n);
/// Inverse of write_generator_csv: a grid generator, Hermite when the
/// derivative column is present.
Generator read_generator_csv(std::istream& in);
/// x,G,u,du (C2 pathway) or x,s,u,du (C1 pathway) on the output grid.
void write_envelope_csv(std::ostream& out, const EnvelopeResult& r);

std::string format_real(double x);

}  // namespace qam
