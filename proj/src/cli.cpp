#include "qsl/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

namespace qsl {

namespace {

const std::vector<std::string> kProcessNames = {"nonlocal", "dephasing", "depolarizing",
                                                "amplitude"};
const std::vector<std::string> kBoundNames = {"nsl", "csl",  "icsl", "bqsl", "bqsl-sep",
                                              "misl", "esl", "oqsl", "all"};

bool known_name(const std::vector<std::string>& names, const std::string& s) {
  return std::find(names.begin(), names.end(), s) != names.end();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw OutOfRange("config error: value '" + s + "' for '" + key + "' is not a number");
  }
}

std::size_t parse_size(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw OutOfRange("config error: value '" + s + "' for '" + key + "' is not a count");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> split_doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split_list(s)) out.push_back(parse_double(item, key));
  return out;
}

// key=value configuration file; '#' starts a comment line.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw OutOfRange("config error: cannot read '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw OutOfRange("config error: expected key=value, got '" + line + "'");
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

double real_expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  Complex t = 0.0;
  for (std::size_t r = 0; r < rho.rows(); ++r)
    for (std::size_t k = 0; k < rho.cols(); ++k) t += rho(r, k) * op(k, r);
  return t.real();
}

void emit_bound_header(std::ostream& out) {
  out << "t_final,bound_kind,numerator,lambda,bound_value,tightness,argmin_alpha\n";
}

void emit_bound_row(std::ostream& out, const BoundReport& r) {
  out << format_number(r.t_final) << ',' << r.kind << ',' << format_number(r.numerator) << ','
      << format_number(r.lambda) << ',' << format_number(r.bound_value) << ','
      << format_number(r.tightness) << ',' << r.argmin_alpha << '\n';
}

std::vector<std::string> applicable_bounds(const Process& proc, double p) {
  if (proc.is_unitary()) return {"nsl", "csl", "icsl", "bqsl", "oqsl", "esl"};
  std::vector<std::string> kinds = {"nsl", "bqsl", "bqsl-sep", "oqsl", "esl"};
  if (p == 0.0 || p == 1.0) kinds.push_back("misl");
  return kinds;
}

// Shared per-configuration evaluation context with lazily built trajectories.
struct BoundContext {
  Process proc;
  DensityOperator rho0;
  double t_final;
  std::size_t steps;
  std::optional<Trajectory> s_traj;
  std::optional<Trajectory> h_traj;

  BoundContext(const Process& pr, double p, double t, std::size_t n)
      : proc(pr), rho0(make_psi_p(p)), t_final(t), steps(n), p_value(p) {}

  const Trajectory& schrodinger() {
    if (!s_traj) s_traj = evolve(proc, rho0.mat, t_final, steps, Picture::schrodinger);
    return *s_traj;
  }
  const Trajectory& heisenberg() {
    if (!h_traj)
      h_traj = evolve(proc, optimal_chsh_operator(p_value).mat, t_final, steps,
                      Picture::heisenberg);
    return *h_traj;
  }

  BoundReport compute(const std::string& kind, const std::string& picture, double hbar) {
    if (kind == "nsl") return bound_negativity(schrodinger(), proc);
    if (kind == "csl") return bound_concurrence(schrodinger(), proc, hbar);
    if (kind == "icsl") return bound_i_concurrence(schrodinger(), proc);
    if (kind == "esl") return bound_entropy(schrodinger(), proc);
    if (kind == "misl") return bound_mutual_info(schrodinger(), proc);
    if (kind == "bqsl-sep")
      return bound_bell_separable(proc, optimal_chsh_settings(p_value), rho0, t_final, steps);
    if (kind == "bqsl" || kind == "oqsl") {
      BoundReport r = kind == "bqsl" ? bound_bell(heisenberg(), rho0, proc)
                                     : bound_observable(heisenberg(), rho0, proc);
      if (picture == "schrodinger" && !r.indeterminate) {
        // Equivalent numerator from the state trajectory: tr(rho_T B_0)
        // equals tr(rho_0 B_T) for the dual pictures, so the bound is
        // unchanged up to integration error.
        const Observable b0 = optimal_chsh_operator(p_value);
        const Trajectory& st = schrodinger();
        const double num = std::abs(real_expectation(st.states.back(), b0.mat) -
                                    real_expectation(st.states.front(), b0.mat));
        r.numerator = num;
        r.bound_value = num / (r.lambda * schatten_norm(rho0.mat, SchattenOrder::one));
        r.tightness = t_final > 0.0 ? r.bound_value / t_final : 0.0;
      }
      return r;
    }
    throw OutOfRange("unknown bound kind '" + kind + "'");
  }

 private:
  double p_value;
};

// --- figure reproduction ---

constexpr int kFigureSamples = 200;

struct FigureCurve {
  std::string name;      // file suffix, e.g. "p0.50"
  std::string quantity;  // nsl | csl | bqsl | negativity | concurrence_sq
};

struct FigureGroup {
  Process proc;
  double p = 0.5;
  double t_max = 0.1;
  std::vector<FigureCurve> curves;
};

std::string p_label(double p) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "p%.2f", p);
  return buf;
}

std::vector<FigureGroup> figure_groups(const std::string& figure) {
  std::vector<FigureGroup> groups;
  auto open_figure = [&](Process (*make)(double, double), const std::string& quantity,
                         std::vector<double> ps, double t_max) {
    for (double p : ps)
      groups.push_back({make(1.0, 1.0), p, t_max, {{p_label(p), quantity}}});
  };

  if (figure == "fig1") {
    groups.push_back({Process::nonlocal_unitary(1.0, 0.1), 0.0, 0.7,
                      {{"nsl", "nsl"}, {"csl", "csl"}}});
  } else if (figure == "fig2") {
    open_figure(&Process::pure_dephasing, "bqsl", {0.25, 0.50, 0.66}, 0.15);
  } else if (figure == "fig3a") {
    open_figure(&Process::depolarizing, "nsl", {0.50, 0.66}, 0.5);
  } else if (figure == "fig3b") {
    open_figure(&Process::depolarizing, "bqsl", {0.25, 0.50, 0.66}, 0.5);
  } else if (figure == "fig4a" || figure == "fig6a-appendix") {
    open_figure(&Process::amplitude_damping, "nsl", {0.25, 0.50, 0.66}, 0.5);
  } else if (figure == "fig4b" || figure == "fig6b-appendix") {
    open_figure(&Process::amplitude_damping, "bqsl", {0.25, 0.50, 0.66}, 0.5);
  } else if (figure == "fig5-appendix") {
    for (double theta : {0.5, 2.0}) {
      std::ostringstream label;
      label << "theta" << theta;
      groups.push_back({Process::nonlocal_unitary(theta, 0.1), 0.0, 0.7 / theta,
                        {{label.str() + "_negativity", "negativity"},
                         {label.str() + "_concurrence_sq", "concurrence_sq"},
                         {label.str() + "_nsl", "nsl"},
                         {label.str() + "_csl", "csl"}}});
    }
  } else {
    throw OutOfRange("unknown figure '" + figure + "'");
  }
  return groups;
}

}  // namespace

const std::vector<std::string>& known_figures() {
  static const std::vector<std::string> figures = {
      "fig1", "fig2", "fig3a", "fig3b", "fig4a", "fig4b",
      "fig5-appendix", "fig6a-appendix", "fig6b-appendix"};
  return figures;
}

void validate_config(const RunConfig& cfg) {
  if (!known_name(kProcessNames, cfg.process))
    throw OutOfRange("unknown process '" + cfg.process + "'");
  if (!known_name(kBoundNames, cfg.bound))
    throw OutOfRange("unknown bound kind '" + cfg.bound + "'");
  if (cfg.picture != "schrodinger" && cfg.picture != "heisenberg")
    throw OutOfRange("picture must be schrodinger or heisenberg");
  if (!(cfg.t_final > 0.0)) throw OutOfRange("t_final must be positive");
  if (cfg.steps != 0 && (cfg.steps < 2 || cfg.steps % 2 != 0))
    throw OutOfRange("steps must be an even count of at least 2");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw OutOfRange("p must lie in [0, 1]");
  if (cfg.gamma < 0.0) throw OutOfRange("gamma must be nonnegative");
  if (!(cfg.hbar > 0.0)) throw OutOfRange("hbar must be positive");
}

Process process_from_config(const RunConfig& cfg) {
  if (cfg.process == "nonlocal") return Process::nonlocal_unitary(cfg.theta, cfg.mu_z);
  if (cfg.process == "dephasing") return Process::pure_dephasing(cfg.gamma, cfg.gamma);
  if (cfg.process == "depolarizing") return Process::depolarizing(cfg.gamma, cfg.gamma);
  if (cfg.process == "amplitude") return Process::amplitude_damping(cfg.gamma, cfg.gamma);
  throw OutOfRange("unknown process '" + cfg.process + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  if (std::abs(v) < 1e-12) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const int decimals = std::max(0, 11 - exponent);
  char buf[64];
  const auto result =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, result.ptr);
}

int cmd_bound(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    validate_config(cfg);
    const Process proc = process_from_config(cfg);
    const std::size_t steps = cfg.steps != 0 ? cfg.steps : default_steps(cfg.t_final);
    BoundContext ctx(proc, cfg.p, cfg.t_final, steps);

    const std::vector<std::string> kinds =
        cfg.bound == "all" ? applicable_bounds(proc, cfg.p) : std::vector<std::string>{cfg.bound};

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) {
        diag << "error: cannot open '" << cfg.out << "' for writing\n";
        return 1;
      }
      sink = &file;
    }

    emit_bound_header(*sink);
    bool violated = false;
    for (const std::string& kind : kinds) {
      BoundReport report;
      try {
        report = ctx.compute(kind, cfg.picture, cfg.hbar);
      } catch (const SupportEscape& e) {
        diag << kind << ": inapplicable (" << e.what() << ")\n";
        continue;
      }
      if (report.indeterminate)
        diag << kind << ": indeterminate (vanishing measure change and speed)\n";
      emit_bound_row(*sink, report);
      if (report.bound_value > cfg.t_final + tol_bound) violated = true;
    }
    return violated ? 2 : 0;
  } catch (const Error& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir, std::ostream& diag) {
  try {
    std::vector<std::string> figures;
    if (figure == "all")
      figures = known_figures();
    else
      figures.push_back(figure);

    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);

    for (const std::string& fig : figures) {
      for (const FigureGroup& group : figure_groups(fig)) {
        std::map<std::string, std::string> outputs;
        for (const FigureCurve& curve : group.curves) outputs[curve.name] = "T,value\n";

        for (int k = 1; k <= kFigureSamples; ++k) {
          const double t = group.t_max * k / kFigureSamples;
          BoundContext ctx(group.proc, group.p, t, default_steps(t));
          for (const FigureCurve& curve : group.curves) {
            double value = 0.0;
            if (curve.quantity == "nsl" || curve.quantity == "csl" ||
                curve.quantity == "bqsl") {
              value = ctx.compute(curve.quantity, "heisenberg", 1.0).bound_value;
            } else if (curve.quantity == "negativity") {
              value = negativity(DensityOperator(ctx.schrodinger().states.back(), 2, 2));
            } else if (curve.quantity == "concurrence_sq") {
              value = concurrence_sq(DensityOperator(ctx.schrodinger().states.back(), 2, 2));
            } else {
              throw OutOfRange("unknown figure quantity '" + curve.quantity + "'");
            }
            outputs[curve.name] += format_number(t);
            outputs[curve.name] += ',';
            outputs[curve.name] += format_number(value);
            outputs[curve.name] += '\n';
          }
        }

        for (const FigureCurve& curve : group.curves) {
          const std::filesystem::path path = dir / (fig + "_" + curve.name + ".csv");
          std::ofstream file(path);
          if (!file) {
            diag << "error: cannot open '" << path.string() << "' for writing\n";
            return 1;
          }
          file << outputs[curve.name];
        }
      }
    }
    return 0;
  } catch (const Error& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_sweep(const SweepRequest& req, std::ostream& out, std::ostream& diag) {
  try {
    if (req.processes.empty()) throw OutOfRange("sweep needs at least one process");
    if (req.ps.empty()) throw OutOfRange("sweep needs at least one p");
    if (req.t_finals.empty()) throw OutOfRange("sweep needs at least one t_final");
    for (const std::string& name : req.processes)
      if (!known_name(kProcessNames, name)) throw OutOfRange("unknown process '" + name + "'");
    for (double p : req.ps)
      if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("p must lie in [0, 1]");
    for (double t : req.t_finals)
      if (!(t > 0.0)) throw OutOfRange("t_final must be positive");
    for (double g : req.gammas)
      if (g < 0.0) throw OutOfRange("gamma must be nonnegative");
    if (req.steps != 0 && (req.steps < 2 || req.steps % 2 != 0))
      throw OutOfRange("steps must be an even count of at least 2");

    std::ofstream file;
    std::ostream* sink = &out;
    if (!req.out.empty()) {
      file.open(req.out);
      if (!file) {
        diag << "error: cannot open '" << req.out << "' for writing\n";
        return 1;
      }
      sink = &file;
    }

    *sink << "process,rate,p,t_final,steps,nsl,csl,icsl,bqsl,bqsl_sep,esl\n";
    bool violated = false;
    const std::vector<std::string> columns = {"nsl", "csl", "icsl", "bqsl", "bqsl-sep", "esl"};
    for (const std::string& name : req.processes) {
      const bool nonlocal = name == "nonlocal";
      const std::vector<double>& rates = nonlocal ? req.thetas : req.gammas;
      if (rates.empty())
        throw OutOfRange("sweep needs rates (" + std::string(nonlocal ? "theta" : "gamma") +
                         ") for process '" + name + "'");
      for (double rate : rates) {
        for (double p : req.ps) {
          for (double t : req.t_finals) {
            RunConfig cfg;
            cfg.process = name;
            if (nonlocal) {
              cfg.theta = rate;
              cfg.mu_z = req.mu_z;
            } else {
              cfg.gamma = rate;
            }
            cfg.p = p;
            cfg.t_final = t;
            const std::size_t steps = req.steps != 0 ? req.steps : default_steps(t);
            BoundContext ctx(process_from_config(cfg), p, t, steps);

            *sink << name << ',' << format_number(rate) << ',' << format_number(p) << ','
                  << format_number(t) << ',' << steps;
            for (const std::string& kind : columns) {
              const bool applicable = nonlocal ? (kind != "bqsl-sep") : (kind == "nsl" ||
                                      kind == "bqsl" || kind == "bqsl-sep" || kind == "esl");
              *sink << ',';
              if (!applicable) continue;
              const BoundReport report = ctx.compute(kind, "heisenberg", 1.0);
              *sink << format_number(report.bound_value);
              if (report.bound_value > t + tol_bound) violated = true;
            }
            *sink << '\n';
          }
        }
      }
    }
    return violated ? 2 : 0;
  } catch (const Error& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    validate_config(cfg);
    if (cfg.picture != "schrodinger")
      throw OutOfRange("verify requires the schrodinger picture");
    const Process proc = process_from_config(cfg);
    const std::size_t steps = cfg.steps != 0 ? cfg.steps : default_steps(cfg.t_final);
    const Trajectory traj =
        evolve(proc, make_psi_p(cfg.p).mat, cfg.t_final, steps, Picture::schrodinger);

    std::vector<std::pair<std::string, RateMeasure>> measures = {
        {"negativity", RateMeasure::negativity}, {"entropy", RateMeasure::entropy}};
    if (proc.is_unitary())
      measures.insert(measures.begin() + 1, {"concurrence_sq", RateMeasure::concurrence_sq});

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) {
        diag << "error: cannot open '" << cfg.out << "' for writing\n";
        return 1;
      }
      sink = &file;
    }

    *sink << "measure,max_excess,worst_time,points\n";
    bool violated = false;
    for (const auto& [name, measure] : measures) {
      const RateCheckReport report = verify_rate_inequality(traj, measure, proc);
      *sink << name << ',' << format_number(report.max_excess) << ','
            << format_number(report.worst_time) << ',' << report.points << '\n';
      if (report.max_excess > 0.0) violated = true;
    }
    return violated ? 2 : 0;
  } catch (const Error& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
}

namespace {

// Applies config-file entries to options the command line left untouched.
struct ConfigBinding {
  CLI::Option* option = nullptr;
  std::function<void(const std::string&)> apply;
};

class ConfigMerger {
 public:
  void bind(CLI::Option* option, const std::string& key,
            std::function<void(const std::string&)> apply) {
    bindings_[key] = ConfigBinding{option, std::move(apply)};
  }

  void merge(const std::string& path) const {
    if (path.empty()) return;
    for (const auto& [key, value] : read_config_file(path)) {
      const auto it = bindings_.find(key);
      if (it == bindings_.end()) throw OutOfRange("config error: unknown key '" + key + "'");
      if (it->second.option->count() > 0) continue;  // command line wins
      it->second.apply(value);
    }
  }

 private:
  std::map<std::string, ConfigBinding> bindings_;
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"speed limits on two-qubit correlation measures"};
  app.require_subcommand(1);

  RunConfig bound_cfg;
  std::string bound_config;
  CLI::App* bound_cmd = app.add_subcommand("bound", "compute speed-limit bounds as CSV");
  ConfigMerger bound_merge;
  {
    auto* o_process = bound_cmd->add_option("--process", bound_cfg.process,
                                            "nonlocal|dephasing|depolarizing|amplitude");
    auto* o_gamma = bound_cmd->add_option("--gamma", bound_cfg.gamma, "open-process rate");
    auto* o_theta = bound_cmd->add_option("--theta", bound_cfg.theta, "nonlocal coupling");
    auto* o_muz = bound_cmd->add_option("--mu-z", bound_cfg.mu_z, "nonlocal sz(x)sz coupling");
    auto* o_p = bound_cmd->add_option("--p", bound_cfg.p, "initial-state parameter");
    auto* o_t = bound_cmd->add_option("--t-final", bound_cfg.t_final, "evolution time");
    auto* o_steps = bound_cmd->add_option("--steps", bound_cfg.steps,
                                          "integration steps (default 2000 per unit time)");
    auto* o_bound = bound_cmd->add_option("--bound", bound_cfg.bound,
                                          "nsl|csl|icsl|bqsl|bqsl-sep|misl|esl|oqsl|all");
    auto* o_picture = bound_cmd->add_option("--picture", bound_cfg.picture,
                                            "schrodinger|heisenberg");
    auto* o_out = bound_cmd->add_option("--out", bound_cfg.out, "output CSV path");
    auto* o_hbar = bound_cmd->add_option("--hbar", bound_cfg.hbar, "reduced Planck constant");
    bound_cmd->add_option("--config", bound_config, "key=value configuration file");

    bound_merge.bind(o_process, "process", [&](const std::string& v) { bound_cfg.process = v; });
    bound_merge.bind(o_gamma, "gamma",
                     [&](const std::string& v) { bound_cfg.gamma = parse_double(v, "gamma"); });
    bound_merge.bind(o_theta, "theta",
                     [&](const std::string& v) { bound_cfg.theta = parse_double(v, "theta"); });
    bound_merge.bind(o_muz, "mu-z",
                     [&](const std::string& v) { bound_cfg.mu_z = parse_double(v, "mu-z"); });
    bound_merge.bind(o_p, "p", [&](const std::string& v) { bound_cfg.p = parse_double(v, "p"); });
    bound_merge.bind(o_t, "t-final",
                     [&](const std::string& v) { bound_cfg.t_final = parse_double(v, "t-final"); });
    bound_merge.bind(o_steps, "steps",
                     [&](const std::string& v) { bound_cfg.steps = parse_size(v, "steps"); });
    bound_merge.bind(o_bound, "bound", [&](const std::string& v) { bound_cfg.bound = v; });
    bound_merge.bind(o_picture, "picture", [&](const std::string& v) { bound_cfg.picture = v; });
    bound_merge.bind(o_out, "out", [&](const std::string& v) { bound_cfg.out = v; });
    bound_merge.bind(o_hbar, "hbar",
                     [&](const std::string& v) { bound_cfg.hbar = parse_double(v, "hbar"); });
  }

  std::string reproduce_figure;
  std::string reproduce_out = ".";
  CLI::App* reproduce_cmd =
      app.add_subcommand("reproduce", "write per-curve CSV files for a figure");
  reproduce_cmd->add_option("--figure", reproduce_figure, "figure id or 'all'")->required();
  reproduce_cmd->add_option("--out", reproduce_out, "output directory");

  SweepRequest sweep_req;
  std::string sweep_config;
  std::string sweep_processes, sweep_gammas, sweep_thetas, sweep_ps, sweep_ts;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "bounds over a parameter grid as CSV");
  ConfigMerger sweep_merge;
  {
    auto* o_process = sweep_cmd->add_option("--process", sweep_processes,
                                            "comma-separated process list");
    auto* o_gamma = sweep_cmd->add_option("--gamma", sweep_gammas, "comma-separated rates");
    auto* o_theta = sweep_cmd->add_option("--theta", sweep_thetas, "comma-separated couplings");
    auto* o_muz = sweep_cmd->add_option("--mu-z", sweep_req.mu_z, "nonlocal sz(x)sz coupling");
    auto* o_p = sweep_cmd->add_option("--p", sweep_ps, "comma-separated p values");
    auto* o_t = sweep_cmd->add_option("--t-final", sweep_ts, "comma-separated times");
    auto* o_steps = sweep_cmd->add_option("--steps", sweep_req.steps,
                                          "integration steps (default 2000 per unit time)");
    auto* o_out = sweep_cmd->add_option("--out", sweep_req.out, "output CSV path");
    sweep_cmd->add_option("--config", sweep_config, "key=value configuration file");

    sweep_merge.bind(o_process, "process", [&](const std::string& v) { sweep_processes = v; });
    sweep_merge.bind(o_gamma, "gamma", [&](const std::string& v) { sweep_gammas = v; });
    sweep_merge.bind(o_theta, "theta", [&](const std::string& v) { sweep_thetas = v; });
    sweep_merge.bind(o_muz, "mu-z",
                     [&](const std::string& v) { sweep_req.mu_z = parse_double(v, "mu-z"); });
    sweep_merge.bind(o_p, "p", [&](const std::string& v) { sweep_ps = v; });
    sweep_merge.bind(o_t, "t-final", [&](const std::string& v) { sweep_ts = v; });
    sweep_merge.bind(o_steps, "steps",
                     [&](const std::string& v) { sweep_req.steps = parse_size(v, "steps"); });
    sweep_merge.bind(o_out, "out", [&](const std::string& v) { sweep_req.out = v; });
  }

  RunConfig verify_cfg;
  verify_cfg.picture = "schrodinger";
  std::string verify_config;
  CLI::App* verify_cmd = app.add_subcommand("verify", "rate-inequality checks along a trajectory");
  ConfigMerger verify_merge;
  {
    auto* o_process = verify_cmd->add_option("--process", verify_cfg.process,
                                             "nonlocal|dephasing|depolarizing|amplitude");
    auto* o_gamma = verify_cmd->add_option("--gamma", verify_cfg.gamma, "open-process rate");
    auto* o_theta = verify_cmd->add_option("--theta", verify_cfg.theta, "nonlocal coupling");
    auto* o_muz = verify_cmd->add_option("--mu-z", verify_cfg.mu_z, "nonlocal sz(x)sz coupling");
    auto* o_p = verify_cmd->add_option("--p", verify_cfg.p, "initial-state parameter");
    auto* o_t = verify_cmd->add_option("--t-final", verify_cfg.t_final, "evolution time");
    auto* o_steps = verify_cmd->add_option("--steps", verify_cfg.steps,
                                           "integration steps (default 2000 per unit time)");
    auto* o_picture = verify_cmd->add_option("--picture", verify_cfg.picture,
                                             "schrodinger|heisenberg");
    auto* o_out = verify_cmd->add_option("--out", verify_cfg.out, "output CSV path");
    verify_cmd->add_option("--config", verify_config, "key=value configuration file");

    verify_merge.bind(o_process, "process",
                      [&](const std::string& v) { verify_cfg.process = v; });
    verify_merge.bind(o_gamma, "gamma",
                      [&](const std::string& v) { verify_cfg.gamma = parse_double(v, "gamma"); });
    verify_merge.bind(o_theta, "theta",
                      [&](const std::string& v) { verify_cfg.theta = parse_double(v, "theta"); });
    verify_merge.bind(o_muz, "mu-z",
                      [&](const std::string& v) { verify_cfg.mu_z = parse_double(v, "mu-z"); });
    verify_merge.bind(o_p, "p",
                      [&](const std::string& v) { verify_cfg.p = parse_double(v, "p"); });
    verify_merge.bind(o_t, "t-final", [&](const std::string& v) {
      verify_cfg.t_final = parse_double(v, "t-final");
    });
    verify_merge.bind(o_steps, "steps",
                      [&](const std::string& v) { verify_cfg.steps = parse_size(v, "steps"); });
    verify_merge.bind(o_picture, "picture",
                      [&](const std::string& v) { verify_cfg.picture = v; });
    verify_merge.bind(o_out, "out", [&](const std::string& v) { verify_cfg.out = v; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (bound_cmd->parsed()) {
      bound_merge.merge(bound_config);
      return cmd_bound(bound_cfg, std::cout, std::cerr);
    }
    if (reproduce_cmd->parsed()) {
      return cmd_reproduce(reproduce_figure, reproduce_out, std::cerr);
    }
    if (sweep_cmd->parsed()) {
      sweep_merge.merge(sweep_config);
      sweep_req.processes = split_list(sweep_processes);
      sweep_req.gammas = split_doubles(sweep_gammas, "gamma");
      sweep_req.thetas = split_doubles(sweep_thetas, "theta");
      sweep_req.ps = split_doubles(sweep_ps, "p");
      sweep_req.t_finals = split_doubles(sweep_ts, "t-final");
      return cmd_sweep(sweep_req, std::cout, std::cerr);
    }
    if (verify_cmd->parsed()) {
      verify_merge.merge(verify_config);
      return cmd_verify(verify_cfg, std::cout, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "error: no subcommand given\n";
  return 1;
}

}  // namespace qsl
