#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fraceig/asymptotics.hpp"
#include "fraceig/dirichlet.hpp"
#include "fraceig/eigenpair.hpp"
#include "fraceig/io.hpp"
#include "suites.hpp"

namespace fraceig::cli {

namespace {

using json = nlohmann::json;

struct Options {
  std::string domain;
  double s = std::nan("");
  double p = std::nan("");
  double t = 4.0;
  double tol = 1e-8;
  int max_iter = 500;
  std::uint64_t seed = 42;
  int threads = 1;
  std::string out;
  std::string problem;
  std::string trace;
  std::string s_list;
  std::string s_range;
  double s_base = std::nan("");
  std::string suite;
  bool inject_violation = false;
};

void add_common(CLI::App* cmd, Options& o, bool needs_s, bool needs_p) {
  cmd->add_option("--domain", o.domain, "domain spec JSON")->required();
  auto* s = cmd->add_option("--s", o.s, "order s in (0,1)");
  if (needs_s) s->required();
  auto* p = cmd->add_option("--p", o.p, "exponent p > 1");
  if (needs_p) p->required();
  cmd->add_option("--t", o.t, "relative ball factor")->capture_default_str();
  cmd->add_option("--tol", o.tol, "relative tolerance")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "outer iteration cap")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for randomized checks")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (FRACEIG_THREADS overrides)")->capture_default_str();
  cmd->add_option("--out", o.out, "output file");
}

SolverConfig make_config(const Options& o) {
  SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iter_outer = o.max_iter;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (const char* env = std::getenv("FRACEIG_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) throw InvalidInput("FRACEIG_THREADS must be a positive integer");
    cfg.threads = static_cast<int>(n);
  }
  if (cfg.threads < 1) throw InvalidInput("--threads must be at least 1");
  cfg.validate();
  return cfg;
}

DomainPtr load_domain(const Options& o) { return build_domain(io::load_domain_spec(o.domain), o.t); }

std::string or_default(const std::string& v, const std::string& d) { return v.empty() ? d : v; }

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

int cmd_eig(const Options& o, std::ostream& out) {
  const FracParams params(o.s, o.p, o.t);
  const auto cfg = make_config(o);
  const auto dom = load_domain(o);
  const std::string path = or_default(o.out, "eigenpair.json");
  try {
    const auto e = first_eigenpair(dom, params, cfg);
    io::write_text_file(path, io::eigenpair_to_json(e, params, *dom).dump(2) + "\n");
    if (!o.trace.empty()) {
      std::ostringstream csv;
      io::write_trace_csv(csv, e.trace);
      io::write_text_file(o.trace, csv.str());
    }
    out << "lambda " << fmt(e.lambda) << (e.noise_limited ? " (residual limited by rounding)" : "") << "\n";
    return kOk;
  } catch (const EigenNonConvergence& ex) {
    std::ostringstream csv;
    io::write_trace_csv(csv, ex.trace());
    io::write_text_file(or_default(o.trace, path + ".trace.csv"), csv.str());
    throw;
  }
}

json with_params(json j, const Options& o) {
  if (!std::isnan(o.s)) j["s"] = o.s;
  if (!std::isnan(o.p)) j["p"] = o.p;
  return j;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto cfg = make_config(o);
  const auto dom = load_domain(o);
  const auto prob = io::problem_from_json(with_params(io::read_json_file(o.problem), o), dom);
  const auto sol = solve_dirichlet(prob, cfg);
  auto j = io::grid_function_to_json(sol.w);
  j["residual"] = sol.residual;
  j["iterations"] = sol.iterations;
  j["noise_limited"] = sol.noise_limited;
  io::write_text_file(or_default(o.out, "solution.json"), j.dump(2) + "\n");
  out << "residual " << fmt(sol.residual) << " iterations " << sol.iterations
      << (sol.noise_limited ? " (limited by rounding)" : "") << "\n";
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.s_list.empty() == o.s_range.empty()) throw InvalidInput("give exactly one of --s-list and --s-range");
  const auto s_values = o.s_list.empty() ? parse_s_range(o.s_range) : parse_s_list(o.s_list);
  (void)FracParams(0.5, o.p, o.t);
  const auto cfg = make_config(o);
  const auto dom = load_domain(o);
  auto report = s_sweep(dom, o.p, s_values, o.s_base, cfg);
  if (o.inject_violation) {
    // Test hook: corrupt the last converged row so the detector must fire.
    for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
      if (it->ok) {
        it->lambda *= 0.5;
        it->weighted_lambda *= 0.5;
        break;
      }
    }
  }
  weighted_monotonicity_violations(report);

  const std::string prefix = or_default(o.out, "sweep");
  std::ostringstream csv, plot;
  io::write_sweep_csv(csv, report);
  io::write_sweep_plot(plot, report);
  io::write_text_file(prefix + ".csv", csv.str());
  io::write_text_file(prefix + ".plot", plot.str());
  io::write_text_file(prefix + ".json", io::sweep_to_json(report).dump(2) + "\n");

  bool all_ok = true;
  for (const auto& row : report.rows) {
    out << "s " << row.s << " lambda " << fmt(row.lambda) << (row.ok ? "" : " FAILED") << "\n";
    all_ok = all_ok && row.ok;
  }
  out << "violations " << report.violations << "\n";
  if (report.violations > 0) return kCheckFailed;
  return all_ok ? kOk : kNonConvergence;
}

int cmd_poincare(const Options& o, std::ostream& out) {
  const FracParams params(o.s, o.p, o.t);
  const auto cfg = make_config(o);
  const auto dom = load_domain(o);
  const double I = poincare_constant(*dom, params, cfg.threads);
  out << "I " << fmt(I) << "\n";
  if (!o.out.empty()) {
    io::write_text_file(o.out, json{{"I", I}, {"s", o.s}, {"p", o.p}, {"t", o.t}, {"h", dom->h()}}.dump(2) + "\n");
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.suite != "all" && !suites::known(o.suite)) throw InvalidInput("unknown suite: " + o.suite);
  const FracParams params(o.s, o.p, o.t);
  const auto cfg = make_config(o);
  const auto spec = io::load_domain_spec(o.domain);
  const auto dom = build_domain(spec, o.t);

  std::vector<std::string> todo = o.suite == "all" ? suites::names() : std::vector<std::string>{o.suite};
  json report = json::array();
  bool ok = true;
  for (const auto& name : todo) {
    suites::SuiteResult r;
    const bool inapplicable =
        (name == "holder" && !(params.sp() > dom->dim())) || (name == "equivalence" && params.t() != 4.0);
    if (o.suite == "all" && inapplicable) {
      r = {.name = name, .passed = true, .skipped = true};
    } else {
      r = suites::run(name, spec, dom, params, cfg);
    }
    ok = ok && r.passed;
    report.push_back(suites::to_json(r));
    out << (r.skipped ? "SKIP " : r.passed ? "PASS " : "FAIL ") << name << " " << (r.trials - r.failures) << "/"
        << r.trials << " worst " << fmt(r.worst) << "\n";
  }
  io::write_text_file(or_default(o.out, "verify.json"),
                      json{{"seed", cfg.seed}, {"s", o.s}, {"p", o.p}, {"suites", report}}.dump(2) + "\n");
  return ok ? kOk : kCheckFailed;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const FracParams params(o.s, std::isnan(o.p) ? 2.0 : o.p, o.t);
  if (params.p() != 2.0) throw InvalidInput("the dense oracle needs p = 2");
  (void)make_config(o);
  const auto dom = load_domain(o);
  if (!o.problem.empty()) {
    const auto prob = io::problem_from_json(with_params(io::read_json_file(o.problem), o), dom);
    if (prob.F) throw InvalidInput("the dense oracle takes F = none");
    const auto w = p2_dirichlet_oracle(dom, prob.params, prob.f);
    io::write_text_file(or_default(o.out, "oracle_solution.json"), io::grid_function_to_json(w).dump(2) + "\n");
    out << "solved " << dom->omega_count() << " cells\n";
    return kOk;
  }
  const auto e = p2_oracle(dom, params);
  io::write_text_file(or_default(o.out, "oracle.json"), io::eigenpair_to_json(e, params, *dom).dump(2) + "\n");
  out << "lambda " << fmt(e.lambda) << "\n";
  return kOk;
}

}  // namespace

std::vector<double> parse_s_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("bad --s-list entry: " + item);
    }
    if (used != item.size()) throw InvalidInput("bad --s-list entry: " + item);
    v.push_back(x);
  }
  if (v.empty()) throw InvalidInput("--s-list is empty");
  return v;
}

std::vector<double> parse_s_range(const std::string& text) {
  const auto parts = [&] {
    std::vector<std::string> p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) p.push_back(item);
    return p;
  }();
  if (parts.size() != 3) throw InvalidInput("--s-range must look like a:b:step");
  const auto nums = parse_s_list(parts[0] + "," + parts[1] + "," + parts[2]);
  const double a = nums[0], b = nums[1], step = nums[2];
  if (!(step > 0.0) || b < a) throw InvalidInput("--s-range needs a <= b and step > 0");
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 10000) throw InvalidInput("--s-range has too many points");
  std::vector<double> v;
  for (long k = 0; k < count; ++k) v.push_back(std::round((a + k * step) * 1e12) / 1e12);
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fraceig: truncated fractional p-Laplacian eigenpairs, Dirichlet solves and checks"};
  app.require_subcommand(1);
  Options o;

  auto* eig = app.add_subcommand("eig", "first eigenpair");
  add_common(eig, o, true, true);
  eig->add_option("--trace", o.trace, "per-iteration CSV");

  auto* solve = app.add_subcommand("solve", "Dirichlet problem");
  add_common(solve, o, false, false);
  solve->add_option("--problem", o.problem, "problem JSON")->required();

  auto* sweep = app.add_subcommand("sweep", "eigenvalues across s");
  add_common(sweep, o, false, true);
  sweep->add_option("--s-list", o.s_list, "comma-separated s values");
  sweep->add_option("--s-range", o.s_range, "a:b:step, inclusive");
  sweep->add_option("--s-base", o.s_base, "reference s (one of the sweep values)")->required();
  sweep->add_flag("--inject-violation", o.inject_violation)->group("");

  auto* poincare = app.add_subcommand("poincare", "discrete Poincare constant");
  add_common(poincare, o, true, true);

  auto* verify = app.add_subcommand("verify", "randomized property suites");
  add_common(verify, o, true, true);
  std::string suite_help = "one of all";
  for (const auto& n : suites::names()) suite_help += "|" + n;
  verify->add_option("--suite", o.suite, suite_help)->required();

  auto* oracle = app.add_subcommand("oracle", "dense p = 2 reference");
  add_common(oracle, o, true, false);
  oracle->add_option("--problem", o.problem, "problem JSON; solves instead of the eigenproblem");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kInvalidInput;
  }

  try {
    if (*eig) return cmd_eig(o, out);
    if (*solve) return cmd_solve(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*poincare) return cmd_poincare(o, out);
    if (*verify) return cmd_verify(o, out);
    return cmd_oracle(o, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

}  // namespace fraceig::cli
