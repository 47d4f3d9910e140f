// Command line driver: single solves, benchmark sweeps and gamma-spectrum
// tables for the level-dependent multigrid Helmholtz solver.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmg/analysis.hpp"
#include "hmg/cycle.hpp"
#include "hmg/krylov.hpp"
#include "hmg/problems.hpp"

using json = nlohmann::json;
using namespace hmg;

namespace {

constexpr double kPi = std::numbers::pi;

/// Accepts "0.5236", "pi", "pi/6", "2*pi/15".
double parse_angle(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(c); }), s.end());
  const std::size_t at = s.find("pi");
  if (at == std::string::npos) return std::stod(s);

  double factor = 1.0;
  if (at > 0) {
    if (s[at - 1] != '*') throw ConfigError("bad angle '" + text + "'");
    factor = std::stod(s.substr(0, at - 1));
  }
  double divisor = 1.0;
  if (at + 2 < s.size()) {
    if (s[at + 2] != '/') throw ConfigError("bad angle '" + text + "'");
    divisor = std::stod(s.substr(at + 3));
  }
  return factor * kPi / divisor;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

Variant parse_variant(const std::string& name) {
  if (name == "csg") return Variant::Csg;
  if (name == "csl") return Variant::Csl;
  if (name == "unperturbed") return Variant::Unperturbed;
  throw ConfigError("unknown variant '" + name + "' (csg | csl | unperturbed)");
}

SmootherSpec parse_smoother(const std::string& text) {
  // "gmres:3" (default), "jacobi:0.6667:2"
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ConfigError("empty smoother spec");
  if (parts[0] == "gmres") {
    GmresSmoother g;
    if (parts.size() > 1) g.steps = std::stoi(parts[1]);
    return g;
  }
  if (parts[0] == "jacobi") {
    WeightedJacobi j;
    if (parts.size() > 1) j.omega = Complex(std::stod(parts[1]));
    if (parts.size() > 2) j.sweeps = std::stoi(parts[2]);
    return j;
  }
  throw ConfigError("unknown smoother '" + text + "' (gmres[:m] | jacobi[:omega[:sweeps]])");
}

struct Options {
  std::string problem;
  std::string method = "lvl-mg";
  double k = 40.0;
  double f = 20.0;
  double k0 = 1.0;
  int n = 128;
  int nx = 0, ny = 0, nz = 0;  // wedge overrides; default derived from n
  std::string bc = "ecs";
  std::string theta_max = "pi/6";
  std::string ecs_angle = "pi/6";
  std::string smoother = "gmres:3";
  std::string variant = "csg";
  bool no_rhs_scaling = false;
  int nu1 = 1, nu2 = 1;
  int restart = 10;
  double tol = 1e-7;
  int maxiter = 400;
  int max_levels = 0;
  unsigned seed = 0;
  std::string out;
  std::string history;
  std::string config_file;

  // sweep
  std::string sweep_param;
  std::string sweep_values;

  // spectrum
  std::string dtheta = "pi/42";
  int dim = 2;
};

ProblemInstance make_problem(const Options& opt) {
  const double ecs = parse_angle(opt.ecs_angle);
  if (opt.problem == "constant-k") {
    const ConstantKBc bc = opt.bc == "dirichlet" ? ConstantKBc::AllDirichlet
                                                 : ConstantKBc::AllEcs;
    if (opt.bc != "dirichlet" && opt.bc != "ecs")
      throw ConfigError("unknown bc '" + opt.bc + "' (ecs | dirichlet)");
    return constant_k(opt.k, opt.n, bc, ecs);
  }
  if (opt.problem == "wedge2d") {
    const int nx = opt.nx > 0 ? opt.nx : opt.n;
    const int ny = opt.ny > 0 ? opt.ny : 2 * nx;
    return wedge_2d(opt.f, nx, ny, ecs);
  }
  if (opt.problem == "wedge3d") {
    const int nx = opt.nx > 0 ? opt.nx : opt.n;
    const int ny = opt.ny > 0 ? opt.ny : 2 * nx;
    const int nz = opt.nz > 0 ? opt.nz : nx;
    return wedge_3d(opt.f, nx, ny, nz, ecs);
  }
  if (opt.problem == "ionization") return ionization(opt.k0, opt.n, ecs);
  throw ConfigError("unknown problem '" + opt.problem +
                    "' (constant-k | wedge2d | wedge3d | ionization)");
}

CycleConfig make_cycle_config(const Options& opt, bool fixed_angle) {
  CycleConfig cfg;
  cfg.nu1 = opt.nu1;
  cfg.nu2 = opt.nu2;
  cfg.smoother = parse_smoother(opt.smoother);
  cfg.variant = parse_variant(opt.variant);
  if (opt.no_rhs_scaling) cfg.rhs_scaling = false;
  cfg.theta_max = parse_angle(opt.theta_max);
  cfg.fixed_angle = fixed_angle;
  if (opt.max_levels > 0) cfg.max_levels = opt.max_levels;
  cfg.validate();
  return cfg;
}

struct RunResult {
  ConvergenceReport report;
  int levels = 0;
  double dtheta = 0.0;
};

RunResult run_method(const Options& opt, const ProblemInstance& problem) {
  RunResult out;
  if (opt.method == "lvl-mg") {
    const Hierarchy h = build_hierarchy(problem, make_cycle_config(opt, false));
    out.levels = h.levels();
    out.dtheta = h.schedule().dtheta;
    auto [x, rep] = solve(h, problem.rhs, opt.tol, opt.maxiter);
    out.report = std::move(rep);
    return out;
  }
  if (opt.method == "mg-fgmres" || opt.method == "mg-fgmres-restarted") {
    const Hierarchy h = build_hierarchy(problem, make_cycle_config(opt, true));
    out.levels = h.levels();
    out.dtheta = 0.0;
    LevelOperator plain(problem.grid, problem.k2, PerturbationScheme::unperturbed());
    FgmresOptions fopts;
    fopts.tol = opt.tol;
    fopts.maxiter = opt.maxiter;
    if (opt.method == "mg-fgmres-restarted") fopts.restart = opt.restart;
    auto [x, rep] = fgmres(
        plain, problem.rhs,
        [&h](const Field& r, WorkMeter& m) { return precondition(h, r, &m); }, fopts);
    out.report = std::move(rep);
    return out;
  }
  throw ConfigError("unknown method '" + opt.method +
                    "' (lvl-mg | mg-fgmres | mg-fgmres-restarted)");
}

json params_json(const Options& opt) {
  json p = {{"method", opt.method},
            {"theta_max", parse_angle(opt.theta_max)},
            {"ecs_angle", parse_angle(opt.ecs_angle)},
            {"smoother", opt.smoother},
            {"variant", opt.variant},
            {"rhs_scaling", !opt.no_rhs_scaling},
            {"nu1", opt.nu1},
            {"nu2", opt.nu2},
            {"tol", opt.tol},
            {"maxiter", opt.maxiter},
            {"seed", opt.seed}};
  if (opt.problem == "constant-k") {
    p["k"] = opt.k;
    p["n"] = opt.n;
    p["bc"] = opt.bc;
  } else if (opt.problem == "wedge2d" || opt.problem == "wedge3d") {
    p["f"] = opt.f;
    p["nx"] = opt.nx > 0 ? opt.nx : opt.n;
    p["ny"] = opt.ny > 0 ? opt.ny : 2 * (opt.nx > 0 ? opt.nx : opt.n);
    if (opt.problem == "wedge3d") p["nz"] = opt.nz > 0 ? opt.nz : (opt.nx > 0 ? opt.nx : opt.n);
  } else if (opt.problem == "ionization") {
    p["k0"] = opt.k0;
    p["n"] = opt.n;
  }
  if (opt.method == "mg-fgmres-restarted") p["restart"] = opt.restart;
  return p;
}

void write_history_csv(const std::string& path, const ConvergenceReport& rep) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write history file '" + path + "'");
  f << "iteration,residual,rel_residual\n";
  const double norm_b = rep.residual_history.empty() ? 1.0 : rep.residual_history.front();
  for (std::size_t i = 0; i < rep.residual_history.size(); ++i)
    f << i << ',' << format_full(rep.residual_history[i]) << ','
      << format_full(norm_b > 0.0 ? rep.residual_history[i] / norm_b : 0.0) << '\n';
}

void write_report_json(const std::string& path, const Options& opt,
                       const ConvergenceReport& rep) {
  json doc = {{"problem", opt.problem},
              {"method", opt.method},
              {"params", params_json(opt)},
              {"iterations", rep.iterations},
              {"converged", rep.converged},
              {"final_rel_residual", rep.final_relative_residual()},
              {"wall_seconds", rep.wall_seconds},
              {"work_units", rep.work_units},
              {"residual_history_file",
               opt.history.empty() ? json(nullptr) : json(opt.history)}};
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write report file '" + path + "'");
  f << doc.dump(2) << '\n';
}

void print_warnings(const ProblemInstance& p) {
  for (const std::string& w : p.warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_solve(const Options& opt) {
  const ProblemInstance problem = make_problem(opt);
  print_warnings(problem);

  const RunResult run = run_method(opt, problem);
  const ConvergenceReport& rep = run.report;

  std::printf("problem: %s  method: %s\n", problem.label.c_str(), opt.method.c_str());
  std::printf("unknowns: %zu  levels: %d  dtheta: %.6f\n", problem.grid->unknown_count(),
              run.levels, run.dtheta);
  std::printf("iterations: %d  converged: %s  final_rel_residual: %.3e\n", rep.iterations,
              rep.converged ? "yes" : "no", rep.final_relative_residual());
  std::printf("wall_seconds: %.3f  work_units: %lld\n", rep.wall_seconds, rep.work_units);

  if (!opt.history.empty()) write_history_csv(opt.history, rep);
  if (!opt.out.empty()) write_report_json(opt.out, opt, rep);
  return rep.converged ? 0 : 2;
}

int cmd_sweep(const Options& opt) {
  if (opt.sweep_param.empty() || opt.sweep_values.empty())
    throw ConfigError("sweep needs --param and --values");

  std::vector<std::string> values;
  std::stringstream ss(opt.sweep_values);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(item);
  }
  if (values.empty()) throw ConfigError("empty sweep list");

  std::ostringstream table;
  table << opt.sweep_param << ",iterations,work_units,wall_seconds\n";
  bool all_converged = true;
  for (const std::string& v : values) {
    Options point = opt;
    if (opt.sweep_param == "n") point.n = std::stoi(v);
    else if (opt.sweep_param == "k") point.k = std::stod(v);
    else if (opt.sweep_param == "f") point.f = std::stod(v);
    else if (opt.sweep_param == "k0") point.k0 = std::stod(v);
    else if (opt.sweep_param == "theta-max") point.theta_max = v;
    else throw ConfigError("unknown sweep parameter '" + opt.sweep_param +
                           "' (n | k | f | k0 | theta-max)");

    const ProblemInstance problem = make_problem(point);
    print_warnings(problem);
    const RunResult run = run_method(point, problem);
    all_converged = all_converged && run.report.converged;

    const double pval = opt.sweep_param == "theta-max" ? parse_angle(v) : std::stod(v);
    table << format_full(pval) << ',' << run.report.iterations << ','
          << run.report.work_units << ',' << format_full(run.report.wall_seconds) << '\n';
    std::printf("%s = %s: iterations %d, work_units %lld, wall %.3f s%s\n",
                opt.sweep_param.c_str(), v.c_str(), run.report.iterations,
                run.report.work_units, run.report.wall_seconds,
                run.report.converged ? "" : "  [not converged]");
  }

  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) throw ConfigError("cannot write sweep table '" + opt.out + "'");
    f << table.str();
  } else {
    std::fputs(table.str().c_str(), stdout);
  }
  return all_converged ? 0 : 2;
}

int cmd_spectrum(const Options& opt) {
  const double dtheta = parse_angle(opt.dtheta);
  const Variant variant = parse_variant(opt.variant);
  if (variant == Variant::Unperturbed)
    throw ConfigError("spectrum needs a perturbed variant (csg | csl)");

  const auto table = gamma_spectrum_table(opt.n, opt.k, dtheta, opt.dim, variant);

  std::ostringstream csv;
  csv << "l,re_gamma,im_gamma\n";
  double max_mod = 0.0;
  int resonant = 0;
  for (const GammaEntry& e : table) {
    if (!std::isfinite(e.gamma.real()) || !std::isfinite(e.gamma.imag())) {
      ++resonant;
      continue;
    }
    max_mod = std::max(max_mod, std::abs(e.gamma));
    csv << e.index << ',' << format_full(e.gamma.real()) << ','
        << format_full(e.gamma.imag()) << '\n';
  }

  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) throw ConfigError("cannot write spectrum table '" + opt.out + "'");
    f << csv.str();
  } else {
    std::fputs(csv.str().c_str(), stdout);
  }

  const Complex marker = std::polar(1.0, -dtheta) - 1.0;
  std::printf("modes: %zu  max|gamma|: %.6f  smooth-limit marker e^{-i dtheta}-1: (%.6f, %.6f)\n",
              table.size(), max_mod, marker.real(), marker.imag());
  if (resonant > 0) std::printf("resonant modes skipped: %d\n", resonant);
  return 0;
}

/// Fills options from a JSON config file for every flag the user did not set.
void apply_config_file(const CLI::App& cmd, Options& opt) {
  if (opt.config_file.empty()) return;
  std::ifstream f(opt.config_file);
  if (!f) throw ConfigError("cannot read config file '" + opt.config_file + "'");
  json doc;
  f >> doc;

  auto unset = [&cmd](const std::string& flag) {
    const CLI::Option* o = cmd.get_option_no_throw("--" + flag);
    return o != nullptr && o->count() == 0;
  };
  auto load_str = [&](const char* key, std::string& dst) {
    if (doc.contains(key) && unset(key)) dst = doc[key].is_string()
                                                   ? doc[key].get<std::string>()
                                                   : doc[key].dump();
  };
  auto load_num = [&](const char* key, auto& dst) {
    if (doc.contains(key) && unset(key)) dst = doc[key];
  };

  load_str("problem", opt.problem);
  load_str("method", opt.method);
  load_num("k", opt.k);
  load_num("f", opt.f);
  load_num("k0", opt.k0);
  load_num("n", opt.n);
  load_num("nx", opt.nx);
  load_num("ny", opt.ny);
  load_num("nz", opt.nz);
  load_str("bc", opt.bc);
  load_str("theta-max", opt.theta_max);
  load_str("ecs-angle", opt.ecs_angle);
  load_str("smoother", opt.smoother);
  load_str("variant", opt.variant);
  load_num("nu1", opt.nu1);
  load_num("nu2", opt.nu2);
  load_num("restart", opt.restart);
  load_num("tol", opt.tol);
  load_num("maxiter", opt.maxiter);
  load_num("max-levels", opt.max_levels);
  load_num("seed", opt.seed);
}

void add_common_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--problem", opt.problem,
                  "constant-k | wedge2d | wedge3d | ionization");
  cmd->add_option("--method", opt.method, "lvl-mg | mg-fgmres | mg-fgmres-restarted");
  cmd->add_option("--k", opt.k, "wavenumber (constant-k)");
  cmd->add_option("--f", opt.f, "frequency (wedge)");
  cmd->add_option("--k0", opt.k0, "asymptotic momentum (ionization)");
  cmd->add_option("--n", opt.n, "grid points per axis (power of two)");
  cmd->add_option("--nx", opt.nx, "wedge x resolution");
  cmd->add_option("--ny", opt.ny, "wedge y resolution");
  cmd->add_option("--nz", opt.nz, "wedge z resolution");
  cmd->add_option("--bc", opt.bc, "constant-k boundaries: ecs | dirichlet");
  cmd->add_option("--theta-max", opt.theta_max, "coarsest-level rotation, e.g. pi/6");
  cmd->add_option("--ecs-angle", opt.ecs_angle, "absorbing-layer rotation angle");
  cmd->add_option("--smoother", opt.smoother, "gmres[:m] | jacobi[:omega[:sweeps]]");
  cmd->add_option("--variant", opt.variant, "csg | csl | unperturbed");
  cmd->add_flag("--no-rhs-scaling", opt.no_rhs_scaling,
                "disable the e^{-i dtheta} coarse rhs scaling (Csg)");
  cmd->add_option("--nu1", opt.nu1, "presmoothing applications");
  cmd->add_option("--nu2", opt.nu2, "postsmoothing applications");
  cmd->add_option("--restart", opt.restart, "FGMRES restart window");
  cmd->add_option("--tol", opt.tol, "relative residual tolerance");
  cmd->add_option("--maxiter", opt.maxiter, "iteration cap");
  cmd->add_option("--max-levels", opt.max_levels, "cap on hierarchy depth");
  cmd->add_option("--seed", opt.seed, "recorded in reports; no randomized components");
  cmd->add_option("--out", opt.out, "write a JSON report (solve) or CSV table (sweep)");
  cmd->add_option("--history", opt.history, "write the residual history CSV");
  cmd->add_option("--config", opt.config_file, "JSON file with the same keys as the flags");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-dependent multigrid solver for indefinite Helmholtz problems"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run one solve");
  add_common_flags(solve_cmd, opt);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter");
  add_common_flags(sweep_cmd, opt);
  sweep_cmd->add_option("--param", opt.sweep_param, "n | k | f | k0 | theta-max");
  sweep_cmd->add_option("--values", opt.sweep_values, "comma-separated sweep values");

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "gamma spectrum table");
  spectrum_cmd->add_option("--n", opt.n, "fine-grid points per axis");
  spectrum_cmd->add_option("--k", opt.k, "wavenumber");
  spectrum_cmd->add_option("--dtheta", opt.dtheta, "per-level angle, e.g. pi/42");
  spectrum_cmd->add_option("--dim", opt.dim, "1 or 2 (Dirichlet tensor modes)");
  spectrum_cmd->add_option("--variant", opt.variant, "csg | csl");
  spectrum_cmd->add_option("--out", opt.out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      apply_config_file(*solve_cmd, opt);
      return cmd_solve(opt);
    }
    if (sweep_cmd->parsed()) {
      apply_config_file(*sweep_cmd, opt);
      return cmd_sweep(opt);
    }
    if (spectrum_cmd->parsed()) return cmd_spectrum(opt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
