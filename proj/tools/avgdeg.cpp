// avgdeg: command-line front end.
//
// Every command prints one JSON document {"header": {...}, "result": {...}}.
// The header carries the tool version; the result depends only on the
// inputs and flags. Exit codes: 0 ok, 1 other numerical failure, 2 bad input
// or schema violation, 3 quadrature failure, 4 fixed-point count mismatch.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avgdeg/avgdeg.hpp"
#include "avgdeg/json_io.hpp"

using namespace avgdeg;
using io::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;  // file path or "-" for stdin
  std::string preset_name;
  double tol = kDefaultIntegralTol;
  std::vector<double> bracket;
  std::vector<double> eps;
  std::vector<double> targets;
  int steps = 4096;
  int grid = 200;
  std::string out;
  std::string csv_dir;
  int scan = -1;
  int m = 4;
};

json read_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

std::optional<presets::Preset> load_preset(const Options& o) {
  if (o.preset_name.empty()) return std::nullopt;
  return presets::preset(o.preset_name);
}

PerturbationSpec load_spec(const Options& o) {
  if (!o.input.empty() && !o.preset_name.empty()) {
    throw InvalidArgument("give either a spec file or --preset, not both");
  }
  if (!o.preset_name.empty()) {
    auto p = presets::preset(o.preset_name);
    if (!p.spec) throw InvalidArgument("preset '" + o.preset_name + "' is not a perturbation spec");
    return *p.spec;
  }
  if (o.input.empty()) throw InvalidArgument("missing spec file (or --preset NAME)");
  return io::spec_from_json(read_json(o.input));
}

FixedPointOptions fixed_point_options(const Options& o) {
  if (o.steps < 2 || o.steps % 2 != 0) throw InvalidArgument("--steps must be even and >= 2");
  if (o.grid < 2) throw InvalidArgument("--grid must be >= 2");
  return FixedPointOptions{o.grid, FlowOptions{o.steps, 1e-4, 1e4, false}};
}

std::optional<Bracket> flag_bracket(const Options& o) {
  if (o.bracket.empty()) return std::nullopt;
  if (o.bracket.size() != 2 || !(o.bracket[0] > 0.0 && o.bracket[0] < o.bracket[1])) {
    throw InvalidArgument("--bracket needs LO HI with 0 < LO < HI");
  }
  return Bracket{o.bracket[0], o.bracket[1]};
}

// --bracket wins, then the preset's bracket, then a window around the
// averaged roots.
Bracket simulation_bracket(const Options& o, const std::vector<Root>& roots) {
  if (auto b = flag_bracket(o)) return *b;
  if (auto p = load_preset(o); p && !p->eps_list.empty()) {
    return p->bracket;
  }
  if (roots.empty()) throw InvalidArgument("no averaged roots to place a bracket around; pass --bracket");
  return {0.5 * roots.front().z, 1.5 * roots.back().z};
}

std::vector<double> eps_list(const Options& o, const PerturbationSpec& spec) {
  std::vector<double> eps = o.eps;
  if (eps.empty()) {
    if (auto p = load_preset(o); p && !p->eps_list.empty()) eps = p->eps_list;
  }
  if (eps.empty() && spec.epsilon() > 0.0) eps = {spec.epsilon()};
  if (eps.empty()) throw InvalidArgument("no eps given (use --eps)");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw InvalidArgument("eps values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw InvalidArgument("eps list must be strictly descending");
  }
  return eps;
}

json averaging_json(const AveragingSummary& s) {
  const long nonzero = std::count(s.nonzero.begin(), s.nonzero.end(), true);
  return json{{"I", s.integrals},
              {"nonzero", nonzero},
              {"lower_bound", s.lower_bound},
              {"h", io::to_json(s.h)},
              {"descartes", descartes_bound(s.h)}};
}

std::string eps_tag(double eps) {
  std::ostringstream os;
  os << std::setprecision(6) << eps;
  return os.str();
}

// CSV of (r0, P(r0), P(r0) - r0) over the bracket; returns the file name.
std::string write_scan_csv(const std::string& dir, const PerturbationSpec& spec, Bracket bracket,
                           const FixedPointOptions& fp) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / ("return_map_eps_" + eps_tag(spec.epsilon()) + ".csv");
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << "r0,r1,displacement\n" << std::setprecision(17);
  for (const auto& s : scan_return_map(spec, bracket, fp.grid_points, fp.flow)) {
    out << s.r0 << ',' << s.r1 << ',' << s.r1 - s.r0 << '\n';
  }
  return path.string();
}

// --- commands ----------------------------------------------------------------

json cmd_integrals(const Options& o, bool with_h) {
  const auto s = summarize(normalized(load_spec(o)), o.tol);
  json r = averaging_json(s);
  if (!with_h) {
    r.erase("h");
    r.erase("descartes");
  }
  return r;
}

json cmd_roots(const Options& o) {
  const auto s = summarize(normalized(load_spec(o)), o.tol);
  const auto report = positive_roots(s.h, flag_bracket(o).value_or(Bracket{}));
  json r = averaging_json(s);
  r["roots"] = io::to_json(report).at("roots");
  r["bracket"] = {report.bracket.lo, report.bracket.hi};
  return r;
}

json synthesis_json(const SynthesisResult& syn, std::span<const double> betas,
                    std::span<const double> targets, const PerturbationSpec& realized) {
  return json{{"targets", targets},
              {"beta", betas},
              {"c", syn.coefficients},
              {"condition", syn.condition},
              {"b", realized.b()},
              {"verification", io::to_json(syn.verification).at("roots")}};
}

std::vector<double> targets_for(const Options& o) {
  if (!o.targets.empty()) return o.targets;
  if (auto p = load_preset(o)) return p->targets;
  return {};
}

json cmd_synthesize(const Options& o) {
  const auto spec = normalized(load_spec(o));
  const auto targets = targets_for(o);
  if (targets.empty()) throw InvalidArgument("synthesize needs --targets");
  const auto betas = active_exponents(spec, o.tol);
  if (targets.size() + 1 != betas.size()) {
    throw InvalidArgument("need " + std::to_string(betas.size() - (betas.empty() ? 0 : 1)) +
                          " targets for this spec, got " + std::to_string(targets.size()));
  }
  const auto syn = synthesize(betas, targets);
  const auto realized = realize_coefficients(spec, syn.coefficients, o.tol);
  json r = synthesis_json(syn, betas, targets, realized);
  r["spec"] = io::to_json(realized);
  return r;
}

json cmd_simulate(const Options& o) {
  const auto base = normalized(load_spec(o));
  const auto fp = fixed_point_options(o);
  const auto s = summarize(base, o.tol);
  const auto bracket = simulation_bracket(o, positive_roots(s.h).roots);
  json sims = json::array();
  for (double eps : eps_list(o, base)) {
    const auto spec = base.with_epsilon(eps);
    json entry = io::to_json(find_fixed_points(spec, bracket, 1e-10, fp));
    entry["eps"] = eps;
    if (!o.csv_dir.empty()) entry["csv"] = write_scan_csv(o.csv_dir, spec, bracket, fp);
    sims.push_back(entry);
  }
  return json{{"bracket", {bracket.lo, bracket.hi}}, {"simulations", sims}};
}

json cmd_continuation(const Options& o) {
  const auto base = normalized(load_spec(o));
  const auto s = summarize(base, o.tol);
  const auto roots = positive_roots(s.h).roots;
  const auto bracket = simulation_bracket(o, roots);
  const auto eps = eps_list(o, base);
  const auto fp = fixed_point_options(o);
  std::vector<FixedPointReport> reports;
  for (double e : eps) reports.push_back(find_fixed_points(base.with_epsilon(e), bracket, 1e-10, fp));
  json tables = json::array();
  for (const auto& z : roots) {
    if (z.z < bracket.lo || z.z > bracket.hi) continue;
    json t = io::to_json(continuation_from_reports(reports, eps, z.z));
    t["root"] = z.z;
    tables.push_back(t);
  }
  return json{{"bracket", {bracket.lo, bracket.hi}}, {"tables", tables}};
}

json cmd_classify(const Options& o) {
  if (o.scan >= 0) {
    const auto sum = scan_systems(o.scan);
    json failures = json::array();
    for (const auto& f : sum.failures) failures.push_back({{"system", io::to_json(f.system)}, {"reason", f.reason}});
    if (!sum.failures.empty()) {
      std::cerr << "avgdeg: " << sum.failures.size() << " systems without a valid certificate\n";
    }
    return json{{"max_exp", sum.max_exponent},
                {"systems", sum.systems},
                {"certified", sum.certified},
                {"by_property", sum.by_property},
                {"by_case", sum.by_label},
                {"failures", failures}};
  }
  MonomialSystem sys;
  if (!o.preset_name.empty()) {
    const auto p = presets::preset(o.preset_name);
    if (!p.monomial) throw InvalidArgument("preset '" + o.preset_name + "' is not a monomial system");
    sys = *p.monomial;
  } else if (!o.input.empty()) {
    sys = io::monomial_from_json(read_json(o.input));
  } else {
    throw InvalidArgument("classify needs a system file, --preset or --scan N");
  }
  json r = io::to_json(classify(sys));
  r["input"] = io::to_json(sys);
  return r;
}

// synthesize (when targets are given) -> averaged roots -> fixed points per
// eps -> continuation per root. Throws Mismatch, after filling `result`,
// when the fixed-point count differs from the number of predicted roots.
json run_pipeline(const Options& o, json& result) {
  auto spec = normalized(load_spec(o));
  const auto targets = targets_for(o);
  const auto fp = fixed_point_options(o);

  if (!targets.empty()) {
    const auto betas = active_exponents(spec, o.tol);
    if (targets.size() + 1 != betas.size()) {
      throw InvalidArgument("targets count must equal the number of nonzero integrals minus one (" +
                            std::to_string(betas.empty() ? 0 : betas.size() - 1) + "), got " +
                            std::to_string(targets.size()));
    }
    const auto syn = synthesize(betas, targets);
    spec = realize_coefficients(spec, syn.coefficients, o.tol);
    result["synthesis"] = synthesis_json(syn, betas, targets, spec);
  } else {
    result["synthesis"] = nullptr;
  }

  const auto s = summarize(spec, o.tol);
  const json avg = averaging_json(s);
  for (const auto& [k, v] : avg.items()) result[k] = v;
  const auto all_roots = positive_roots(s.h).roots;
  const auto bracket = simulation_bracket(o, all_roots);
  std::vector<Root> roots;
  for (const auto& z : all_roots) {
    if (z.z > bracket.lo && z.z < bracket.hi) roots.push_back(z);
  }
  result["roots"] = io::to_json(RootReport{roots, descartes_bound(s.h), bracket}).at("roots");
  result["predicted"] = roots.size();
  result["bracket"] = {bracket.lo, bracket.hi};

  const auto eps = eps_list(o, spec);
  std::vector<FixedPointReport> reports;
  json sims = json::array();
  bool counts_match = true;
  for (double e : eps) {
    const auto se = spec.with_epsilon(e);
    reports.push_back(find_fixed_points(se, bracket, 1e-10, fp));
    json entry = io::to_json(reports.back());
    entry["eps"] = e;
    entry["count"] = reports.back().cycles.size();
    entry["matches"] = reports.back().cycles.size() == roots.size();
    counts_match = counts_match && reports.back().cycles.size() == roots.size();
    if (!o.csv_dir.empty()) entry["csv"] = write_scan_csv(o.csv_dir, se, bracket, fp);
    sims.push_back(entry);
  }
  result["simulations"] = sims;

  json tables = json::array();
  for (const auto& z : roots) {
    try {
      json t = io::to_json(continuation_from_reports(reports, eps, z.z));
      t["root"] = z.z;
      tables.push_back(t);
    } catch (const ContinuationError& e) {
      tables.push_back({{"root", z.z}, {"error", e.what()}});
      counts_match = false;
    }
  }
  result["continuation"] = tables;
  result["spec"] = io::to_json(spec);
  if (!counts_match) throw Mismatch("simulated fixed-point count differs from the averaged prediction");
  return result;
}

json cmd_repro(const std::string& which, Options o) {
  o.preset_name = which == "lienard" ? "lienard" + std::to_string(o.m) : which;
  o.input.clear();
  const auto p = presets::preset(o.preset_name);
  json result;
  bool mismatch = false;
  try {
    run_pipeline(o, result);
  } catch (const Mismatch&) {
    mismatch = true;
  }
  // claims of the preset, checked against what the pipeline produced
  json checks = json::array();
  if (p.lower_bound) {
    checks.push_back({{"name", "lower bound"},
                      {"expected", *p.lower_bound},
                      {"ok", result.at("lower_bound") == *p.lower_bound}});
    for (const auto& sim : result.at("simulations")) {
      checks.push_back({{"name", "fixed points at eps " + eps_tag(sim.at("eps"))},
                        {"expected", *p.lower_bound},
                        {"ok", sim.at("count") == *p.lower_bound}});
    }
  }
  if (!p.targets.empty()) {
    const auto& last = result.at("simulations").back().at("certificates");
    for (std::size_t i = 0; i < p.targets.size(); ++i) {
      bool near = false;
      for (const auto& c : last) near = near || std::abs(c.at("r").get<double>() - p.targets[i]) <= 0.05 * p.targets[i];
      checks.push_back({{"name", "fixed point within 5% of target " + eps_tag(p.targets[i])}, {"ok", near}});
    }
  }
  result["preset"] = p.name;
  result["expected"] = p.expected;
  result["checks"] = checks;
  const bool all_ok = std::all_of(checks.begin(), checks.end(), [](const json& c) { return c.at("ok") == true; });
  if (mismatch || !all_ok) {
    result["ok"] = false;
    throw std::pair<json, std::string>(result, "reproduction of '" + p.name + "' did not match");
  }
  result["ok"] = true;
  return result;
}

json cmd_preset(const std::string& name) {
  if (name.empty()) return json{{"presets", presets::preset_names()}};
  const auto p = presets::preset(name);
  json r{{"name", p.name}, {"expected", p.expected}};
  if (p.spec) r["spec"] = io::to_json(*p.spec);
  if (p.monomial) r["system"] = io::to_json(*p.monomial);
  if (p.lower_bound) r["lower_bound"] = *p.lower_bound;
  if (!p.targets.empty()) r["targets"] = p.targets;
  if (!p.eps_list.empty()) {
    r["eps"] = p.eps_list;
    r["bracket"] = {p.bracket.lo, p.bracket.hi};
  }
  return r;
}

void emit(const Options& o, const std::string& command, const json& result) {
  const json doc{{"header", {{"tool", "avgdeg"}, {"version", kVersion}, {"command", command}}},
                 {"result", result}};
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InvalidArgument("cannot write '" + o.out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Averaging, limit-cycle certification and monomial classification for planar systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto spec_flags = [&o](CLI::App* c) {
    c->add_option("spec", o.input, "spec JSON file ('-' for stdin)");
    c->add_option("--preset", o.preset_name, "use a built-in preset instead of a file");
    c->add_option("--tol", o.tol, "integral tolerance")->check(CLI::PositiveNumber);
    c->add_option("--out", o.out, "write the JSON report to FILE");
  };
  auto flow_flags = [&o](CLI::App* c) {
    c->add_option("--bracket", o.bracket, "radius window LO HI")->expected(2);
    c->add_option("--eps", o.eps, "eps values, descending")->delimiter(',');
    c->add_option("--steps", o.steps, "RK4 steps per revolution");
    c->add_option("--grid", o.grid, "log-grid points for the fixed-point search");
    c->add_option("--csv", o.csv_dir, "write return-map scans as CSV into DIR");
  };

  auto* integrals = app.add_subcommand("integrals", "angular integrals and lower bound");
  spec_flags(integrals);
  auto* averaged = app.add_subcommand("averaged", "averaged function h");
  spec_flags(averaged);
  auto* roots = app.add_subcommand("roots", "positive roots of h");
  spec_flags(roots);
  roots->add_option("--bracket", o.bracket, "root window LO HI")->expected(2);
  auto* synth = app.add_subcommand("synthesize", "choose b so h vanishes at the targets");
  spec_flags(synth);
  synth->add_option("--targets", o.targets, "target radii")->delimiter(',');
  auto* simulate = app.add_subcommand("simulate", "return-map fixed points");
  spec_flags(simulate);
  flow_flags(simulate);
  auto* cont = app.add_subcommand("continuation", "fixed points versus eps");
  spec_flags(cont);
  flow_flags(cont);
  auto* cls = app.add_subcommand("classify", "no-cycle certificate for a monomial system");
  cls->add_option("system", o.input, "system JSON file ('-' for stdin)");
  cls->add_option("--preset", o.preset_name, "built-in monomial preset");
  cls->add_option("--scan", o.scan, "classify every system with exponents <= N")->check(CLI::Range(0, 6));
  cls->add_option("--out", o.out, "write the JSON report to FILE");
  auto* pipeline = app.add_subcommand("pipeline", "synthesize, simulate and continue in one run");
  spec_flags(pipeline);
  flow_flags(pipeline);
  pipeline->add_option("--targets", o.targets, "target radii")->delimiter(',');
  auto* repro = app.add_subcommand("repro", "rerun a worked example and check its claims");
  std::string which;
  repro->add_option("example", which, "example1, example2, vdp or lienard")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "vdp", "lienard"}));
  repro->add_option("--m", o.m, "monomial count for lienard")->check(CLI::Range(4, 9));
  repro->add_option("--steps", o.steps, "RK4 steps per revolution");
  repro->add_option("--csv", o.csv_dir, "write return-map scans as CSV into DIR");
  repro->add_option("--out", o.out, "write the JSON report to FILE");

  auto* catalog = app.add_subcommand("preset", "list presets, or print one as JSON");
  std::string preset_arg;
  catalog->add_option("name", preset_arg, "preset name");
  catalog->add_option("--out", o.out, "write the JSON to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    json result;
    if (command == "integrals") result = cmd_integrals(o, false);
    else if (command == "averaged") result = cmd_integrals(o, true);
    else if (command == "roots") result = cmd_roots(o);
    else if (command == "synthesize") result = cmd_synthesize(o);
    else if (command == "simulate") result = cmd_simulate(o);
    else if (command == "continuation") result = cmd_continuation(o);
    else if (command == "preset") result = cmd_preset(preset_arg);
    else if (command == "classify") {
      result = cmd_classify(o);
      emit(o, command, result);
      return result.contains("failures") && !result.at("failures").empty() ? 1 : 0;
    } else if (command == "pipeline") {
      try {
        run_pipeline(o, result);
      } catch (const Mismatch& e) {
        emit(o, command, result);
        std::cerr << "avgdeg: " << e.what() << "\n";
        return 4;
      }
    } else if (command == "repro") {
      try {
        result = cmd_repro(which, o);
      } catch (const std::pair<json, std::string>& failed) {
        emit(o, command, failed.first);
        std::cerr << "avgdeg: " << failed.second << "\n";
        return 4;
      }
    }
    emit(o, command, result);
    return 0;
  } catch (const ContinuationError& e) {
    std::cerr << "avgdeg: " << e.what() << "\n";
    return 4;
  } catch (const InvalidArgument& e) {
    std::cerr << "avgdeg: " << e.what() << "\n";
    return 2;
  } catch (const SynthesisError& e) {
    std::cerr << "avgdeg: " << e.what() << "\n";
    return 2;
  } catch (const QuadratureError& e) {
    std::cerr << "avgdeg: " << e.what() << "\n";
    return 3;
  } catch (const AmbiguousIntegral& e) {
    std::cerr << "avgdeg: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "avgdeg: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "avgdeg: " << e.what() << "\n";
    return 2;
  }
}
