#include "qam/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <type_traits>
#include <variant>

#include "qam/error.hpp"

namespace qam {
namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

double to_real(const std::string& token) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    parse_error("not a number: '" + token + "'");
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
  if (used != token.size()) parse_error("not a number: '" + token + "'");
  return x;
}

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    parse_error(std::string("descriptor needs a numeric \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

Interval interval_of(const Json& j, std::optional<Interval> fallback) {
  if (j.is_object() && j.contains("interval")) {
    const Json& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
      parse_error("\"interval\" must be [lo, hi]");
    }
    return Interval(iv[0].get<double>(), iv[1].get<double>());
  }
  if (!fallback) parse_error("no interval given (use --interval or an \"interval\" member)");
  return *fallback;
}

std::vector<double> reals(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    parse_error(std::string("descriptor needs an array \"") + key + "\"");
  }
  std::vector<double> out;
  for (const Json& x : j.at(key)) {
    if (!x.is_number()) parse_error(std::string("\"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Generator from_shorthand(const std::string& text, std::optional<Interval> fallback) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::optional<double> arg =
      colon == std::string::npos ? std::nullopt : std::optional(to_real(text.substr(colon + 1)));
  if (!fallback) parse_error("no interval given for '" + text + "' (use --interval)");
  if (name == "log" && !arg) return Generator::log(*fallback);
  if (name == "power" && arg) return Generator::power(*arg, *fallback);
  if (name == "exp" && arg) return Generator::exponential(*arg, *fallback);
  parse_error("unknown generator shorthand '" + text + "'");
}

std::vector<double> to_vector(const GridFunction& g) {
  return {g.values().begin(), g.values().end()};
}

Json interval_json(const Interval& I) { return Json::array({I.lo(), I.hi()}); }

Json witness_json(const std::vector<ArgVector>& witnesses) {
  Json out = Json::array();
  for (const ArgVector& v : witnesses) out.push_back(v);
  return out;
}

}  // namespace

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

Interval parse_interval(const std::string& text) {
  const std::vector<double> v = parse_reals(text);
  if (v.size() != 2) parse_error("interval must be 'lo,hi'");
  return Interval(v[0], v[1]);
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(to_real(token));
  if (out.empty()) parse_error("expected a comma-separated list of reals");
  return out;
}

Generator parse_generator(const std::string& text, std::optional<Interval> fallback) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      parse_error(std::string("invalid JSON: ") + e.what());
    }
    return generator_from_json(j, fallback);
  }
  return from_shorthand(text, fallback);
}

Generator generator_from_json(const Json& j, std::optional<Interval> fallback) {
  if (j.is_string()) return from_shorthand(j.get<std::string>(), fallback);
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    parse_error("generator descriptor needs a \"family\" string");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "grid") {
    const Interval I = j.contains("lo") || j.contains("hi")
                           ? Interval(number(j, "lo"), number(j, "hi"))
                           : interval_of(j, fallback);
    std::vector<double> values = reals(j, "values");
    GridFunction v(I, std::move(values));
    if (j.contains("slopes")) return Generator::grid(v, GridFunction(I, reals(j, "slopes")));
    return Generator::grid(v);
  }
  const Interval I = interval_of(j, fallback);
  if (family == "power") return Generator::power(number(j, "p"), I);
  if (family == "log") return Generator::log(I);
  if (family == "exp") return Generator::exponential(number(j, "p"), I);
  if (!j.contains("base")) parse_error("\"" + family + "\" descriptor needs a \"base\"");
  const Generator base = generator_from_json(j.at("base"), I);
  if (family == "affine") return Generator::affine(base, number(j, "alpha"), number(j, "beta"));
  if (family == "piecewise") {
    if (j.contains("scale")) {
      return Generator::piecewise_segments(base, reals(j, "breaks"), reals(j, "scale"),
                                           reals(j, "offset"));
    }
    if (!j.contains("kinks") || !j.at("kinks").is_array()) {
      parse_error("piecewise descriptor needs \"kinks\" or \"breaks\"/\"scale\"/\"offset\"");
    }
    KinkSpec kinks;
    for (const Json& k : j.at("kinks")) {
      kinks.push_back({number(k, "z"), number(k, "left"), number(k, "right")});
    }
    return Generator::piecewise(base, kinks);
  }
  parse_error("unknown generator family '" + family + "'");
}

Json generator_to_json(const Generator& g) {
  Json j;
  std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, PowerDesc>) {
          j = {{"family", "power"}, {"p", d.p}};
        } else if constexpr (std::is_same_v<D, LogDesc>) {
          j = {{"family", "log"}};
        } else if constexpr (std::is_same_v<D, ExpDesc>) {
          j = {{"family", "exp"}, {"p", d.p}};
        } else if constexpr (std::is_same_v<D, AffineDesc>) {
          j = {{"family", "affine"},
               {"base", generator_to_json(d.base)},
               {"alpha", d.alpha},
               {"beta", d.beta}};
        } else if constexpr (std::is_same_v<D, PiecewiseDesc>) {
          j = {{"family", "piecewise"},
               {"base", generator_to_json(d.base)},
               {"breaks", d.breaks},
               {"scale", d.scale},
               {"offset", d.offset}};
        } else {
          j = {{"family", "grid"},
               {"lo", g.interval().lo()},
               {"hi", g.interval().hi()},
               {"values", to_vector(d.values)}};
          if (d.slopes) j["slopes"] = to_vector(*d.slopes);
        }
      },
      g.descriptor().node);
  if (g.family() != Family::Grid) j["interval"] = interval_json(g.interval());
  return j;
}

FamilyFile family_from_json(const Json& j, std::optional<Interval> fallback) {
  if (!j.is_object() || !j.contains("members") || !j.at("members").is_array()) {
    parse_error("family file needs a \"members\" array");
  }
  const Interval I = interval_of(j, fallback);
  FamilyFile f{I, {}};
  for (const Json& m : j.at("members")) {
    Generator g = generator_from_json(m, I);
    if (!(g.interval() == I)) {
      throw Error(ErrorKind::IntervalMismatch, "family members must share the family interval");
    }
    f.members.push_back(std::move(g));
  }
  if (f.members.empty()) parse_error("family has no members");
  return f;
}

Json to_json(const ComparisonVerdict& v) {
  Json j{{"relation", to_string(v.relation)},
         {"method", to_string(v.method)},
         {"margin", v.margin}};
  j["witness"] = v.witnesses.empty() ? Json(nullptr) : Json(v.witnesses.front());
  if (!v.grid_witnesses.empty()) {
    Json pairs = Json::array();
    for (const auto& [a, b] : v.grid_witnesses) pairs.push_back({a, b});
    j["grid_witnesses"] = pairs;
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const ComparisonReport& r) {
  Json methods = Json::array();
  for (const ComparisonVerdict& v : r.verdicts) methods.push_back(to_json(v));
  return {{"relation", to_string(r.relation)}, {"consistent", r.consistent}, {"methods", methods}};
}

Json to_json(const EnvelopeResult& r) {
  Json dominance = Json::array();
  for (std::size_t i = 0; i < r.dominance_certificates.size(); ++i) {
    Json c = to_json(r.dominance_certificates[i]);
    c["member"] = i;
    dominance.push_back(c);
  }
  Json minimality = Json::array();
  for (const BoundCertificate& b : r.minimality_certificates) {
    Json c = to_json(b.verdict);
    c["bound"] = b.name;
    minimality.push_back(c);
  }
  const double anchor = std::visit([](const auto& e) { return e.anchor; }, r.envelope);
  return {{"kind", to_string(r.kind)},
          {"pathway", std::holds_alternative<RatioEnvelope>(r.envelope) ? "c2" : "c1"},
          {"anchor", anchor},
          {"certified", r.certified()},
          {"dominance", dominance},
          {"minimality", minimality}};
}

Json to_json(const RegularizationTrace& t) {
  Json iterates = Json::array();
  for (const Generator& g : t.iterates) iterates.push_back(generator_to_json(g));
  return {{"steps", t.healed.size()},
          {"healed", t.healed},
          {"kinks_remaining", t.kinks_remaining},
          {"pal91_distances", t.pal91_distances},
          {"iterates", iterates}};
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const CheckRecord& c : r.checks) {
    checks.push_back({{"check", c.check},
                      {"subject", c.subject},
                      {"method", to_string(c.method)},
                      {"relation", to_string(c.relation)},
                      {"margin", c.margin},
                      {"passed", c.passed},
                      {"witnesses", witness_json(c.witnesses)}});
  }
  return {{"passed", r.passed},
          {"witness_count", r.witness_count},
          {"worst_ratio_margin", r.worst_ratio_margin},
          {"worst_empirical_margin", r.worst_empirical_margin},
          {"checks", checks}};
}

Json to_json(const UqaReport& r) {
  return {{"catalog_bound", r.catalog_bound},
          {"attained_by", r.attained_by},
          {"envelope_mean", r.envelope_mean},
          {"consistent", r.consistent}};
}

void write_generator_csv(std::ostream& out, const Generator& g, std::size_t n) {
  const bool deriv = g.has_derivative();
  out << (deriv ? "x,value,derivative\n" : "x,value\n");
  const Interval& I = g.interval();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = I.node(i, n);
    out << format_real(x) << ',' << format_real(g.value(x));
    if (deriv) out << ',' << format_real(g.derivative(x));
    out << '\n';
  }
}

Generator read_generator_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) parse_error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool deriv = false;
  if (line == "x,value,derivative") {
    deriv = true;
  } else if (line != "x,value") {
    parse_error("CSV header must be x,value[,derivative]");
  }
  std::vector<double> xs;
  std::vector<double> values;
  std::vector<double> slopes;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<double> row = parse_reals(line);
    if (row.size() != (deriv ? 3u : 2u)) parse_error("CSV row has the wrong column count");
    xs.push_back(row[0]);
    values.push_back(row[1]);
    if (deriv) slopes.push_back(row[2]);
  }
  if (xs.size() < 2) parse_error("CSV needs at least two rows");
  const Interval I(xs.front(), xs.back());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expected = I.node(i, xs.size());
    if (std::abs(xs[i] - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
      parse_error("CSV abscissae must be uniform");
    }
  }
  GridFunction v(I, std::move(values));
  if (deriv) return Generator::grid(v, GridFunction(I, std::move(slopes)));
  return Generator::grid(v);
}

void write_envelope_csv(std::ostream& out, const EnvelopeResult& r) {
  const bool c2 = std::holds_alternative<RatioEnvelope>(r.envelope);
  const GridFunction& env =
      c2 ? std::get<RatioEnvelope>(r.envelope).G : std::get<LogDerivativeEnvelope>(r.envelope).s;
  const Generator& u = r.generator;
  const std::size_t n = env.size();
  out << (c2 ? "x,G,u,du\n" : "x,s,u,du\n");
  for (std::size_t i = 0; i < n; ++i) {
    const double x = env.node(i);
    out << format_real(x) << ',' << format_real(env[i]) << ',' << format_real(u.value(x)) << ','
        << format_real(u.derivative(x)) << '\n';
  }
}

}  // namespace qam
