#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logtr/io.hpp"
#include "logtr/parallel.hpp"
#include "logtr/suites.hpp"

using namespace logtr;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitUnsupported = 3;

int exit_code_for(Err kind) {
  switch (kind) {
    case Err::ParseError:
    case Err::NonSimpleRamification:
    case Err::DySingularAtRamification:
    case Err::SharedZeroLoci:
    case Err::VitalAtLogCutConflict:
    case Err::CollisionOfSpecialPoints:
      return kExitInvalidInput;
    default:
      return kExitUnsupported;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliOptions {
  std::string file;
  long h = 1, n = 1;
  std::string format = "text";
  std::string tolerance;
  std::string eps_schedule;
  long truncation = 0;
  long h_max = 4, n_max = 4;
  int threads = 1;
};

SuiteConfig suite_config(const CliOptions& o) {
  SuiteConfig cfg;
  cfg.threads = o.threads;
  if (o.truncation > 0) cfg.fd.engine.truncation_override = o.truncation;
  cfg.fd.engine.h_max = std::max(o.h_max, cfg.hk_bound / 2 + 1);
  cfg.fd.engine.n_max = std::max(o.n_max, cfg.hk_bound + 2);
  cfg.fd.engine = engine_config_from_env(cfg.fd.engine);
  if (!o.tolerance.empty()) cfg.fd.tolerance = Rat::parse(o.tolerance);
  if (!o.eps_schedule.empty()) cfg.fd.eps_schedule = parse_eps_schedule(o.eps_schedule);
  return cfg;
}

void print_reports(const std::vector<CheckReport>& reps, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    std::cout << reports_to_json(reps) << "\n";
    return;
  }
  for (auto& r : reps) std::cout << r.str() << "\n";
  size_t passed = 0;
  for (auto& r : reps) passed += r.pass;
  std::cout << passed << "/" << reps.size() << " checks passed\n";
}

int cmd_validate(const CliOptions& o) {
  CurveSpec spec = parse_curve_file(read_file(o.file));
  AdmissReport rep = Curve::validate(spec);
  if (parse_format(o.format) == OutputFormat::Json)
    std::cout << admissibility_to_json(rep) << "\n";
  else
    std::cout << rep.str();
  if (rep.admissible) return kExitPass;
  return rep.unsupported ? kExitUnsupported : kExitInvalidInput;
}

int cmd_omega(const CliOptions& o) {
  CurveSpec spec = parse_curve_file(read_file(o.file));
  Curve curve = Curve::analyze(spec);
  EngineConfig ecfg = engine_config_from_env();
  ecfg.h_max = o.h_max;
  ecfg.n_max = o.n_max;
  if (o.truncation > 0) ecfg.truncation_override = o.truncation;
  Engine engine(curve, ecfg);
  if (2 * o.h + o.n - 2 <= 0) {
    std::cerr << "(h,n) = (" << o.h << "," << o.n << ") is outside the stable range\n";
    return kExitUnsupported;
  }
  const PoleSum& w = engine.omega(o.h, o.n);
  switch (parse_format(o.format)) {
    case OutputFormat::Text: std::cout << w.str_text(curve.var()) << "\n"; break;
    case OutputFormat::Latex: std::cout << w.str_latex(curve.var()) << "\n"; break;
    case OutputFormat::Json: std::cout << polesum_to_json(w, curve.var()) << "\n"; break;
  }
  return kExitPass;
}

int cmd_free_energy(const CliOptions& o) {
  CurveSpec spec = parse_curve_file(read_file(o.file));
  Curve curve = Curve::analyze(spec);
  EngineConfig ecfg = engine_config_from_env();
  ecfg.h_max = std::max(o.h_max, o.h);
  ecfg.n_max = o.n_max;
  if (o.truncation > 0) ecfg.truncation_override = o.truncation;
  Engine engine(curve, ecfg);
  Checker chk(engine);
  if (o.h < 1) {
    std::cerr << "free energies start at h = 1\n";
    return kExitUnsupported;
  }
  if (o.h == 1) {
    auto f1 = chk.free_energy_f1();
    std::cout << f1.value.str();
    if (f1.tau_omitted) std::cout << "   [tau term omitted]";
    std::cout << "\n";
    return f1.tau_omitted ? kExitUnsupported : kExitPass;
  }
  std::cout << chk.free_energy(o.h).str() << "\n";
  return kExitPass;
}

int cmd_check(const CliOptions& o, const std::string& suite, const std::string& corrupt) {
  CurveSpec spec = parse_curve_file(read_file(o.file));
  Curve curve = Curve::analyze(spec);
  SuiteConfig cfg = suite_config(o);
  std::vector<CheckReport> reports;
  auto append = [&](std::vector<CheckReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  if (!corrupt.empty()) {
    // test hook: recompute a suite against a corrupted cache entry
    auto comma = corrupt.find(',');
    long ch = std::stol(corrupt.substr(0, comma));
    long cn = std::stol(corrupt.substr(comma + 1));
    Engine engine(curve, cfg.fd.engine);
    engine.corrupt_cache(ch, cn);
    Checker chk(engine);
    // compare the corrupted cache entry against freshly recomputed data
    append({chk.vital_loop(ch), chk.route_equivalence(ch)});
    print_reports(reports, parse_format(o.format));
    return all_pass(reports) ? kExitPass : kExitCheckFailed;
  }
  if (suite == "loops" || suite == "all") append(run_loop_suite(curve, cfg));
  if (suite == "projection" || suite == "all") append(run_projection_suite(curve, cfg));
  if (suite == "dilaton" || suite == "all") append(run_dilaton_suite(curve, cfg));
  if (suite == "lemma31" || suite == "all") append(run_lemma31_suite(curve, cfg));
  if (suite == "variational-time" || suite == "all")
    append(run_variational_suite(curve, cfg, false, true));
  if (suite == "variational-vital" || suite == "all")
    append(run_variational_suite(curve, cfg, true, false));
  if (reports.empty()) {
    std::cerr << "unknown suite '" << suite << "'\n";
    return kExitInvalidInput;
  }
  print_reports(reports, parse_format(o.format));
  return all_pass(reports) ? kExitPass : kExitCheckFailed;
}

int cmd_paper_examples(const CliOptions& o, const std::string& only) {
  SuiteConfig cfg = suite_config(o);
  std::vector<CheckReport> reports = run_paper_examples(only, cfg);
  print_reports(reports, parse_format(o.format));
  return all_pass(reports) ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic engine and verifier for logarithmic topological recursion on genus-0 curves"};
  app.set_help_flag("--help", "print help and exit");  // frees -h / --h
  app.require_subcommand(1);
  CliOptions o;

  auto add_common = [&](CLI::App* cmd, bool with_file = true) {
    cmd->set_help_flag("--help", "print help and exit");
    if (with_file) cmd->add_option("file", o.file, "curve file (JSON)")->required();
    cmd->add_option("--format", o.format, "text | json | latex");
    cmd->add_option("--truncation", o.truncation, "series truncation override");
    cmd->add_option("--tolerance", o.tolerance, "FD comparison tolerance (fraction)");
    cmd->add_option("--eps-schedule", o.eps_schedule, "comma-separated decreasing epsilons");
    cmd->add_option("--hmax", o.h_max, "recursion depth bound in h");
    cmd->add_option("--nmax", o.n_max, "recursion bound in n");
    cmd->add_option("--threads", o.threads, "suite fan-out threads (1 = serial, 0 = all)");
  };

  auto* validate = app.add_subcommand("validate", "admissibility report for a curve file");
  add_common(validate);

  auto* omega = app.add_subcommand("omega", "compute a correlator");
  add_common(omega);
  omega->add_option("--h", o.h, "genus index")->required();
  omega->add_option("--n", o.n, "number of points")->required();

  auto* free_energy = app.add_subcommand("free-energy", "compute F_h");
  add_common(free_energy);
  free_energy->add_option("--h", o.h, "genus index")->required();

  std::string suite = "all", corrupt, only;
  auto* check = app.add_subcommand("check", "run verification suites");
  add_common(check);
  check->add_option("--suite", suite,
                    "loops | projection | dilaton | lemma31 | variational-time | variational-vital | all");
  check->add_option("--corrupt-cache", corrupt, "test hook: corrupt cached omega h,n")
      ->group("");  // hidden

  auto* examples = app.add_subcommand("paper-examples", "reproduce the built-in example families");
  add_common(examples, false);
  examples->add_option("--only", only, "sw-half | strip");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInvalidInput : kExitPass;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(o);
    if (app.got_subcommand(omega)) return cmd_omega(o);
    if (app.got_subcommand(free_energy)) return cmd_free_energy(o);
    if (app.got_subcommand(check)) return cmd_check(o, suite, corrupt);
    if (app.got_subcommand(examples)) return cmd_paper_examples(o, only);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
