#include "qam/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "qam/error.hpp"
#include "qam/io.hpp"
#include "qam/lattice_c1.hpp"
#include "qam/lattice_smooth.hpp"
#include "qam/oracle.hpp"
#include "qam/regularize.hpp"

namespace qam {
namespace {

constexpr double kCrossTolerance = 1e-5;

struct RunConfig {
  std::optional<std::string> interval;
  std::size_t grid_n = kDefaultGrid;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 1000;
  Tolerances tol{};
  std::string output_path;
};

std::optional<Interval> interval_of(const RunConfig& cfg) {
  if (!cfg.interval) return std::nullopt;
  return parse_interval(*cfg.interval);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// A path to an existing file, or the descriptor text itself.
std::string file_or_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << content;
}

CompareOptions compare_options(const RunConfig& cfg) { return {cfg.grid_n, cfg.tol}; }

int cmd_eval(const RunConfig& cfg, const std::string& gen, const std::string& vec,
             std::ostream& out) {
  const std::vector<double> v = parse_reals(vec);
  std::optional<Interval> I = interval_of(cfg);
  if (!I) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    I = *mn < *mx ? Interval(*mn, *mx) : Interval(*mn, *mn + std::max(1.0, std::abs(*mn)));
  }
  const Generator g = parse_generator(file_or_text(gen), I);
  out << format_real(qa_mean(g, v)) << '\n';
  return 0;
}

int cmd_compare(const RunConfig& cfg, const std::string& fs, const std::string& gs,
                const std::string& method, std::ostream& out) {
  const std::optional<Interval> I = interval_of(cfg);
  const Generator f = parse_generator(file_or_text(fs), I);
  const Generator g = parse_generator(file_or_text(gs), I);
  const CompareOptions opts = compare_options(cfg);
  const VectorSampler sampler(cfg.seed, cfg.samples);
  Json j;
  if (method == "all") {
    j = to_json(compare_all(f, g, sampler, opts));
  } else if (method == "ratio") {
    j = to_json(compare_ratio(f, g, opts));
  } else if (method == "convexity") {
    j = to_json(compare_convexity(f, g, opts));
  } else {
    j = to_json(compare_empirical(f, g, sampler, opts));
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_envelope(const RunConfig& cfg, EnvelopeKind kind, const std::string& family_path,
                 const std::string& pathway, std::optional<double> anchor, std::ostream& out) {
  const FamilyFile fam = family_from_json(parse_json(file_or_text(family_path)), interval_of(cfg));
  const Catalog catalog = Catalog::standard(fam.interval);
  EnvelopeOptions opts;
  opts.grid_n = cfg.grid_n;
  opts.anchor = anchor;
  opts.tol = cfg.tol;
  opts.bounds = catalog.generators();

  std::vector<std::pair<std::string, EnvelopeResult>> results;
  if (pathway != "c1") results.emplace_back("c2", envelope_generator_c2(fam.members, kind, opts));
  if (pathway != "c2") results.emplace_back("c1", envelope_generator_c1(fam.members, kind, opts));

  const VectorSampler sampler(cfg.seed, cfg.samples);
  bool ok = true;
  Json j{{"kind", to_string(kind)}, {"interval", {fam.interval.lo(), fam.interval.hi()}}};
  Json envelopes = Json::array();
  for (const auto& [name, r] : results) {
    const VerificationReport v =
        verify_envelope(r, fam.members, catalog, sampler, compare_options(cfg));
    ok = ok && r.certified() && v.passed && v.witness_count == 0;
    Json e = to_json(r);
    e["verification"] = to_json(v);
    envelopes.push_back(e);
    if (!cfg.output_path.empty()) {
      std::ostringstream csv;
      write_envelope_csv(csv, r);
      write_file(cfg.output_path + (results.size() > 1 ? "_" + name : "") + ".csv", csv.str());
    }
  }
  j["envelopes"] = envelopes;
  if (results.size() == 2) {
    const double d =
        normalized_distance(results[0].second.generator, results[1].second.generator, cfg.grid_n);
    j["cross_distance"] = d;
    ok = ok && d <= kCrossTolerance;
  }
  j["passed"] = ok;
  out << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

int cmd_regularize(const RunConfig& cfg, const std::string& gen, const std::string& direction,
                   std::optional<double> anchor, std::ostream& out) {
  const Generator f = parse_generator(file_or_text(gen), interval_of(cfg));
  const Projection p = direction == "upper" ? Projection::Upper : Projection::Lower;
  const Regularization r = regularize(f, p, anchor);
  const Json trace = to_json(r.trace);
  Json j{{"direction", direction},
         {"anchor", r.anchor},
         {"steps", r.trace.healed.size()},
         {"pal91_distances", r.trace.pal91_distances},
         {"projection", generator_to_json(r.projection)}};
  if (!cfg.output_path.empty()) {
    std::ostringstream csv;
    write_generator_csv(csv, r.projection, cfg.grid_n);
    write_file(cfg.output_path + ".csv", csv.str());
    write_file(cfg.output_path + "_trace.json", trace.dump(2) + "\n");
  } else {
    j["trace"] = trace;
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
  const std::vector<std::string> names =
      suite == "all" ? suite_names() : std::vector<std::string>{suite};
  const SuiteConfig sc{cfg.grid_n, cfg.seed, cfg.samples};
  bool ok = true;
  Json suites = Json::array();
  for (const std::string& name : names) {
    const SuiteReport r = run_suite(name, sc);
    ok = ok && r.passed();
    Json checks = Json::array();
    for (const SuiteCheck& c : r.checks) {
      checks.push_back(
          {{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"detail", c.detail}});
    }
    suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}});
  }
  out << Json{{"passed", ok}, {"suites", suites}}.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-arithmetic means: evaluation, comparison, envelopes, regularization"};
  app.name("qam");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--interval", cfg.interval, "Working interval 'lo,hi'");
  app.add_option("--grid", cfg.grid_n, "Grid size (2^k + 1, at least 33)")
      ->check([](const std::string& s) -> std::string {
        try {
          return valid_grid_size(std::stoull(s)) ? "" : "grid must be 2^k + 1 and at least 33";
        } catch (const std::exception&) {
          return "grid must be an integer";
        }
      });
  app.add_option("--seed", cfg.seed, "Sampler seed")->envname("QAM_SEED");
  app.add_option("--samples", cfg.samples, "Sampled vectors per empirical test")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.output_path, "Output path prefix for CSV/JSON artifacts");
  app.add_option("--tol-eq", cfg.tol.tol_eq, "Equivalence tolerance on normalized generators")->check(CLI::PositiveNumber);
  app.add_option("--tol-cmp", cfg.tol.tol_cmp, "Absolute tolerance on mean values")->check(CLI::PositiveNumber);
  app.add_option("--eps-mono", cfg.tol.eps_mono, "Relative slack of monotonicity tests")->check(CLI::PositiveNumber);
  app.add_option("--refine-tol", cfg.tol.refine_tol, "Partition refinement tolerance")->check(CLI::PositiveNumber);

  std::string gen;
  std::string vec;
  auto* eval = app.add_subcommand("eval", "Evaluate a quasi-arithmetic mean");
  eval->add_option("--gen", gen, "Generator: JSON descriptor, shorthand or file")->required();
  eval->add_option("--vec", vec, "Comma-separated arguments")->required();

  std::string f;
  std::string g;
  std::string method = "all";
  auto* compare = app.add_subcommand("compare", "Decide QA_f <= QA_g");
  compare->add_option("--f", f)->required();
  compare->add_option("--g", g)->required();
  compare->add_option("--method", method)
      ->check(CLI::IsMember({"ratio", "convexity", "empirical", "all"}));

  std::string family;
  std::string pathway = "both";
  std::optional<double> anchor;
  auto add_envelope = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--family", family, "Family file {\"interval\":[a,b],\"members\":[...]}")
        ->required();
    sub->add_option("--pathway", pathway)->check(CLI::IsMember({"c1", "c2", "both"}));
    sub->add_option("--anchor", anchor);
    return sub;
  };
  auto* sup = add_envelope("sup", "Least upper bound generator of a family");
  auto* inf = add_envelope("inf", "Greatest lower bound generator of a family");

  std::string direction = "upper";
  auto* reg = app.add_subcommand("regularize", "Project a kinked generator onto C1");
  reg->add_option("--gen", gen, "Piecewise generator: JSON descriptor or file")->required();
  reg->add_option("--direction", direction)->check(CLI::IsMember({"upper", "lower"}));
  reg->add_option("--anchor", anchor);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--suite", suite)->check([](const std::string& s) -> std::string {
    const auto& names = suite_names();
    return s == "all" || std::find(names.begin(), names.end(), s) != names.end()
               ? ""
               : "unknown suite " + s;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(cfg, gen, vec, out);
    if (compare->parsed()) return cmd_compare(cfg, f, g, method, out);
    if (sup->parsed()) return cmd_envelope(cfg, EnvelopeKind::Sup, family, pathway, anchor, out);
    if (inf->parsed()) return cmd_envelope(cfg, EnvelopeKind::Inf, family, pathway, anchor, out);
    if (reg->parsed()) return cmd_regularize(cfg, gen, direction, anchor, out);
    if (verify->parsed()) return cmd_verify(cfg, suite, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace qam
