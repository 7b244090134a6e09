// Copyright 2026 The jacobs-ladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The `jacobs-ladder` command line: eval, tabulate, verify, scan, moments.
// Exit codes: 0 pass/success, 1 verification failed, 2 usage, 3 numerical.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jacobs_ladder/errors.hpp"
#include "jacobs_ladder/ladder.hpp"
#include "jacobs_ladder/multiplicative.hpp"
#include "jacobs_ladder/quadrature.hpp"
#include "jacobs_ladder/zeta_core.hpp"

namespace jl::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kNumerical = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct USpecFlags {
  bool allow_microscopic = false;
  bool allow_wide_u = false;
};

// Resolves a U spec at T: a positive real, `T/log2T`, `gram-gap` (2 pi / log T),
// `1/T^2` (needs allow_microscopic) or `T/logT` (needs allow_wide_u).
inline double resolve_u(const std::string& spec, double T, const USpecFlags& flags) {
  if (!(T > 1.0)) throw UsageError("--U: T must exceed 1");
  const double L = std::log(T);
  if (spec == "T/log2T" || spec == "T/ln2T") return T / (L * L);
  if (spec == "gram-gap") return kTwoPi / L;
  if (spec == "1/T^2") {
    if (!flags.allow_microscopic) throw UsageError("--U 1/T^2 requires --allow-microscopic");
    return 1.0 / (T * T);
  }
  if (spec == "T/logT" || spec == "T/lnT") {
    if (!flags.allow_wide_u) throw UsageError("--U T/logT requires --allow-wide-u");
    return T / L;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(spec, &used);
  } catch (const std::exception&) {
    throw UsageError("--U: cannot parse '" + spec + "'");
  }
  if (used != spec.size() || !(value > 0.0) || !std::isfinite(value)) {
    throw UsageError("--U: '" + spec + "' is not a positive real or known preset");
  }
  return value;
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes `text` to `path` through a temporary file and rename; empty path
// means `out`.
inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc | std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

struct CommonOptions {
  double T = 0.0;
  std::string U = "T/log2T";
  int n = 0;
  double tol = 1e-9;
  double eps = 0.01;
  double c0 = 0.0;
  double T0 = 1e3;
  std::string checkpoints;
  std::string out;
  std::string format;
  std::string formula;
  USpecFlags flags;

  Constants constants() const {
    Constants k;
    k.eps = eps;
    k.c0 = c0;
    k.T0 = T0;
    try {
      k.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return k;
  }
};

// Checkpoint table bound to an optional file; saved back after the command.
class TableSession {
 public:
  explicit TableSession(const std::string& path) : path_(path) {
    table_ = path.empty() ? CheckpointTable() : CheckpointTable::load_or_empty(path);
    rows_ = table_.grid().size();
  }
  CheckpointTable& table() { return table_; }
  void save() {
    if (!path_.empty() && table_.grid().size() != rows_) table_.save(path_);
    rows_ = table_.grid().size();
  }

 private:
  std::string path_;
  CheckpointTable table_;
  std::size_t rows_ = 0;
};

inline void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--n", o.n, "Iteration depth n >= 0")->check(CLI::NonNegativeNumber);
  app->add_option("--tol", o.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app->add_option("--eps", o.eps, "Epsilon of the lower bound (0 < eps < 1)");
  app->add_option("--c0", o.c0, "Free constant c0 of G");
  app->add_option("--T0", o.T0, "Numerical domain threshold");
  app->add_option("--checkpoints", o.checkpoints, "Checkpoint file for F(T)");
  app->add_option("--out", o.out, "Output path (default: standard output)");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_flag("--allow-microscopic", o.flags.allow_microscopic, "Admit U = 1/T^2");
  app->add_flag("--allow-wide-u", o.flags.allow_wide_u, "Admit T/log^2 T < U <= T/log T");
}

inline Formula formula_or_throw(const std::string& name) {
  const auto f = parse_formula(name);
  if (!f) throw UsageError("--formula: unknown formula '" + name + "'");
  return *f;
}

inline VerificationRequest make_request(const CommonOptions& o, double T) {
  VerificationRequest req;
  req.T = T;
  req.n = o.n;
  req.tol = o.tol;
  req.formula = formula_or_throw(o.formula);
  req.allow_wide_u = o.flags.allow_wide_u;
  if (req.formula != Formula::hl_law) req.U = resolve_u(o.U, T, o.flags);
  return req;
}

inline std::string report_csv_header() { return "formula,T,U,n,lhs,rhs,ratio,tolerance_used,pass,error\n"; }

inline std::string report_csv_row(const VerificationReport& r) {
  std::string s(formula_name(r.formula));
  for (double v : {r.T, r.U}) s += "," + format_g17(v);
  s += "," + std::to_string(r.n);
  for (double v : {r.lhs, r.rhs, r.ratio, r.tolerance_used}) s += "," + format_g17(v);
  s += r.inconclusive ? ",inconclusive," : (r.pass ? ",true," : ",false,");
  return s + "\n";
}

// ---- commands ----

inline int cmd_eval(double t, bool oracle, int digits, const CommonOptions& o, std::ostream& out) {
  double z = 0.0;
  double th = 0.0;
  if (oracle) {
    OraclePrecision prec{digits};
    try {
      prec.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const OracleValue v = oracle_evaluate(t, prec);
    z = v.rotated.real();
    th = v.theta;
  } else {
    z = hardy_z(t);
    th = theta(t);
  }
  write_output(o.out, "t,Z,theta\n" + format_g17(t) + "," + format_g17(z) + "," + format_g17(th) + "\n", out);
  return kPass;
}

inline int cmd_tabulate(double t_min, double t_max, int points, const CommonOptions& o, std::ostream& out) {
  if (!(t_min <= t_max)) throw UsageError("--t-min must not exceed --t-max");
  if (points < 1) throw UsageError("--points must be >= 1");
  if (points == 1 && t_min != t_max) throw UsageError("--points 1 needs --t-min == --t-max");
  if (!o.format.empty() && o.format != "csv") throw UsageError("tabulate writes csv only");
  TableSession session(o.checkpoints);
  Ladder ladder(o.constants(), session.table(), o.tol);
  std::string text = "t";
  for (int k = 1; k <= o.n + 1; ++k) text += ",phi" + std::to_string(k);
  text += ",gap_ratio\n";
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? t_min : t_min + (t_max - t_min) * static_cast<double>(i) / (points - 1);
    const IterationChain chain = ladder.phi1_iterate(t, o.n);
    text += format_g17(t);
    for (std::size_t k = 1; k < chain.values.size(); ++k) text += "," + format_g17(chain.values[k]);
    const double gap = (t - chain.values[1]) / ((1.0 - ladder.constants().c) * t / std::log(t));
    text += "," + format_g17(gap) + "\n";
  }
  session.save();
  write_output(o.out, text, out);
  return kPass;
}

inline int cmd_verify(const CommonOptions& o, std::ostream& out) {
  if (o.formula.empty()) throw UsageError("verify needs --formula");
  if (!(o.T > 0.0)) throw UsageError("verify needs --T");
  const Constants k = o.constants();
  VerificationRequest req = make_request(o, o.T);
  try {
    req.validate(k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  TableSession session(o.checkpoints);
  Ladder ladder(k, session.table(), std::min(o.tol, CheckpointTable::kDefaultTol));
  const VerificationReport r = verify(ladder, req);
  session.save();
  if (o.format == "csv") {
    write_output(o.out, report_csv_header() + report_csv_row(r), out);
  } else {
    write_output(o.out, to_json(r) + "\n", out);
  }
  return r.pass ? kPass : kFail;
}

inline int cmd_scan(const std::vector<double>& grid, const CommonOptions& o, std::ostream& out) {
  if (o.formula.empty()) throw UsageError("scan needs --formula");
  if (grid.empty()) throw UsageError("scan needs --T-grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw UsageError("--T-grid must be strictly ascending");
  }
  const Constants k = o.constants();
  const std::string name(formula_name(formula_or_throw(o.formula)));
  TableSession session(o.checkpoints);
  Ladder ladder(k, session.table(), std::min(o.tol, CheckpointTable::kDefaultTol));

  std::vector<std::optional<VerificationReport>> rows;
  std::vector<std::string> errors;
  for (double T : grid) {
    try {
      VerificationRequest req = make_request(o, T);
      req.validate(k);
      rows.emplace_back(verify(ladder, req));
      errors.emplace_back();
    } catch (const UsageError& e) {
      rows.emplace_back();
      errors.emplace_back(e.what());
    } catch (const std::invalid_argument& e) {
      rows.emplace_back();
      errors.emplace_back(e.what());
    } catch (const NumericalError& e) {
      rows.emplace_back();
      errors.emplace_back(e.what());
    }
  }
  session.save();

  // Trend: |ratio - 1| non-increasing along the grid over the rows that ran.
  bool trend = true;
  double previous = std::numeric_limits<double>::infinity();
  bool all_pass = true;
  std::size_t failed_rows = 0;
  for (const auto& r : rows) {
    if (!r) {
      ++failed_rows;
      all_pass = false;
      continue;
    }
    all_pass = all_pass && r->pass;
    const double dev = std::fabs(r->ratio - 1.0);
    if (dev > previous) trend = false;
    previous = dev;
  }

  std::string text;
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["reports"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i]) {
        doc["reports"].push_back(to_json_value(*rows[i]));
      } else {
        doc["reports"].push_back({{"T", grid[i]}, {"error", errors[i]}});
      }
    }
    doc["trend_non_increasing"] = trend;
    text = doc.dump() + "\n";
  } else {
    text = report_csv_header();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i]) {
        text += report_csv_row(*rows[i]);
      } else {
        std::string msg = errors[i];
        for (char& ch : msg) {
          if (ch == ',' || ch == '\n') ch = ';';
        }
        text += name + "," + format_g17(grid[i]) + ",,,,,,,false," + msg + "\n";
      }
    }
    text += std::string("# trend_non_increasing=") + (trend ? "true" : "false") + "\n";
  }
  write_output(o.out, text, out);
  if (failed_rows == rows.size()) return kNumerical;
  return all_pass ? kPass : kFail;
}

inline int cmd_moments(const std::vector<double>& grid, const CommonOptions& o, std::ostream& out) {
  if (grid.empty()) throw UsageError("moments needs --T or --T-grid");
  TableSession session(o.checkpoints);
  std::string text = "T,F,err,ratio\n";
  for (double T : grid) {
    if (!(T >= 10.0)) throw UsageError("moments: T must be >= 10");
    const IntegralResult f = hl_integral(T, o.tol, session.table());
    text += format_g17(T) + "," + format_g17(f.value) + "," + format_g17(f.err_estimate) + "," +
            format_g17(f.value / (T * std::log(T))) + "\n";
    session.save();
  }
  write_output(o.out, text, out);
  return kPass;
}

// Entry point; args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  // `zeta eval` and `ladder tabulate` are spellings of `eval` and `tabulate`.
  if (args.size() >= 2 && ((args[0] == "zeta" && args[1] == "eval") || (args[0] == "ladder" && args[1] == "tabulate"))) {
    args.erase(args.begin());
  }

  CLI::App app{"Jacob's ladder numerics for the Riemann zeta function", "jacobs-ladder"};
  app.require_subcommand(1, 1);
  CommonOptions o;

  double t = 0.0;
  bool oracle = false;
  int digits = 20;
  auto* eval = app.add_subcommand("eval", "Z(t) and theta(t) at one point");
  eval->add_option("--t", t, "Ordinate t >= 0")->required();
  eval->add_flag("--oracle", oracle, "Use the arbitrary-precision evaluator");
  eval->add_option("--digits", digits, "Oracle digits");
  eval->add_option("--out", o.out, "Output path");

  double t_min = 0.0;
  double t_max = 0.0;
  int points = 1;
  auto* tabulate = app.add_subcommand("tabulate", "phi_1 chains on a grid of t");
  tabulate->add_option("--t-min", t_min)->required();
  tabulate->add_option("--t-max", t_max)->required();
  tabulate->add_option("--points", points)->required();
  tabulate->add_option("--depth", o.n, "Iteration depth n")->check(CLI::NonNegativeNumber);
  add_common(tabulate, o);

  auto* verify_cmd = app.add_subcommand("verify", "Check one formula at one (T, U, n)");
  verify_cmd->add_option("--formula", o.formula)->required();
  verify_cmd->add_option("--T", o.T)->required();
  verify_cmd->add_option("--U", o.U, "U spec");
  add_common(verify_cmd, o);

  std::vector<double> grid;
  auto* scan = app.add_subcommand("scan", "Check one formula along a T grid");
  scan->add_option("--formula", o.formula)->required();
  scan->add_option("--T-grid", grid)->required()->delimiter(',');
  scan->add_option("--U", o.U, "U spec");
  add_common(scan, o);

  auto* moments = app.add_subcommand("moments", "F(T) and F(T) / (T log T)");
  moments->add_option("--T", o.T);
  moments->add_option("--T-grid", grid)->delimiter(',');
  add_common(moments, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(t, oracle, digits, o, out);
    if (tabulate->parsed()) return cmd_tabulate(t_min, t_max, points, o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (scan->parsed()) return cmd_scan(grid, o, out);
    if (moments->parsed()) {
      if (o.T > 0.0) grid.insert(grid.begin(), o.T);
      return cmd_moments(grid, o, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainExitError& e) {
    err << "numerical error (ladder): " << e.what() << "\n";
    return kNumerical;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const FormatError& e) {
    err << "checkpoint error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace jl::cli
