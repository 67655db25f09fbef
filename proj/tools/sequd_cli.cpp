// Copyright 2026 The sequd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sequd: command-line front end.
//
//   sequd optimize --s 0.25 --n 2
//   sequd curves --steps 101 --out curves.csv --svg curves.svg
//   sequd simulate --kind seq --s 0.25 --n 2 --trials 1000000 --seed 7 --out tally.json
//   sequd neumark --s 0.25 --out residuals.json --matrix u.csv
//   sequd b92 session.json --out key.json
//
// Results go to --out, or stdout when it is omitted. Exit status is 0 on
// success, 1 for I/O failures and 2 for invalid parameters.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sequd/sequd.hpp"

namespace {

using sequd::io::Json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

/// Flat key/value report rendered as a JSON object or a two-row CSV.
std::string render_flat(const Json& j, const std::string& format) {
  if (format == "json") return sequd::io::dump(j);
  std::string header;
  std::string values;
  for (const auto& [key, value] : j.items()) {
    if (!header.empty()) {
      header += ',';
      values += ',';
    }
    header += key;
    values += value.is_number_float() ? sequd::io::format_number(value.get<double>()) : value.dump();
  }
  return header + "\n" + values + "\n";
}

struct OptimizeArgs {
  double s = 0.0;
  int n = 2;
  std::string out;
  std::string format = "json";
};

void cmd_optimize(const OptimizeArgs& a) {
  using sequd::io::round12;
  const auto opt = sequd::optimize_two_observer(a.s);
  const double pn = sequd::optimal_n_observer(a.s, a.n);
  const double root = 1.0 - std::sqrt(a.s);
  Json j;
  j["s"] = round12(a.s);
  j["n"] = a.n;
  j["t_star"] = round12(opt.t_star);
  j["q_star"] = round12(opt.q_star);
  j["p_star"] = round12(opt.p_star);
  j["p_closed_form"] = round12(root * root);
  j["closed_form_gap"] = round12(opt.closed_form_gap);
  j["p_n_observer"] = round12(pn);
  j["at_least_one"] = round12(1.0 - a.s);
  emit(render_flat(j, a.format), a.out);
}

struct CurvesArgs {
  double s_min = 0.0;
  double s_max = 1.0;
  int steps = 101;
  std::string out;
  std::string svg;
  std::string format = "csv";
};

void cmd_curves(const CurvesArgs& a) {
  const auto curve = sequd::make_curve(a.s_min, a.s_max, a.steps);
  if (a.format == "csv") {
    emit(sequd::io::curve_to_csv(curve), a.out);
  } else {
    using sequd::io::round12;
    Json j;
    auto column = [](const std::vector<double>& v) {
      Json arr = Json::array();
      for (double x : v) arr.push_back(round12(x));
      return arr;
    };
    j["s"] = column(curve.s_grid);
    j["p_seq"] = column(curve.p_seq);
    j["p1"] = column(curve.p1);
    j["p2"] = column(curve.p2);
    j["p3"] = column(curve.p3);
    j["at_least_one"] = column(curve.at_least_one);
    emit(sequd::io::dump(j), a.out);
  }
  if (!a.svg.empty()) emit(sequd::io::curve_to_svg(curve), a.svg);
}

struct SimulateArgs {
  std::string kind = "seq";
  double s = 0.0;
  int n = 2;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out;
};

void cmd_simulate(const SimulateArgs& a) {
  const auto kind = sequd::parse_strategy_kind(a.kind);
  if (a.trials < 1) throw sequd::DomainError("--trials must be >= 1");
  sequd::io::TallyMeta meta;
  meta.kind = std::string(sequd::to_string(kind));
  meta.s = a.s;
  meta.seed = a.seed;
  sequd::TallyReport report;
  if (kind == sequd::StrategyKind::kSequential) {
    const auto chain = sequd::build_chain(a.s, a.n);
    meta.n = a.n;
    meta.analytic_joint = sequd::chain_joint_success(chain);
    meta.analytic_at_least_one = sequd::chain_at_least_one(chain);
    report = sequd::simulate_chain(chain, a.trials, a.seed, a.workers);
  } else {
    meta.n = 2;
    meta.analytic_joint = sequd::strategy_closed_form(kind, a.s);
    meta.analytic_at_least_one = sequd::strategy_at_least_one(a.s);
    report = sequd::simulate_strategy(kind, a.s, a.trials, a.seed, a.workers);
  }
  emit(sequd::io::dump(sequd::io::tally_to_json(report, meta)), a.out);
}

struct NeumarkArgs {
  double s = 0.0;
  std::string out;
  std::string matrix;
  std::string format = "json";
};

void cmd_neumark(const NeumarkArgs& a) {
  using sequd::io::round12;
  const auto d = sequd::build_dilation(a.s);
  const auto meas = sequd::build_intermediate_ud(sequd::make_state_pair(a.s), d.q(), d.q());
  const auto st1 = sequd::dilation_statistics(d, 1);
  const auto st2 = sequd::dilation_statistics(d, 2);
  Json j;
  j["s"] = round12(a.s);
  j["q"] = round12(d.q());
  j["theta"] = round12(d.theta);
  j["theta_prime"] = round12(d.theta_prime);
  j["unitarity_residual"] = round12(sequd::unitarity_residual(d.u));
  j["action_residual"] = round12(sequd::dilation_action_residual(d));
  j["povm_equivalence_residual"] = round12(sequd::povm_equivalence(d, meas));
  j["v1_v2_overlap"] = round12(std::abs(sequd::inner_product(d.v1, d.v2)));
  j["wrong_outcome_probability"] = round12(std::max(st1.probs[2], st2.probs[1]));
  emit(render_flat(j, a.format), a.out);
  if (!a.matrix.empty()) emit(sequd::io::matrix_to_csv(d.u), a.matrix);
}

struct B92Args {
  std::string config;
  std::optional<double> s;
  std::optional<std::uint64_t> rounds;
  std::optional<std::string> mode;
  std::optional<std::string> eve;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string out;
};

void cmd_b92(const B92Args& a) {
  Json raw;
  try {
    raw = Json::parse(read_file(a.config));
  } catch (const Json::parse_error& e) {
    throw sequd::io::FormatError("", std::string("config is not valid JSON: ") + e.what());
  }
  // Flags take precedence over file values.
  if (a.s) raw["s"] = *a.s;
  if (a.rounds) raw["rounds"] = *a.rounds;
  if (a.mode) raw["mode"] = *a.mode;
  if (a.eve) raw["eve"] = *a.eve;
  if (a.seed) raw["seed"] = *a.seed;
  const auto cfg = sequd::io::session_config_from_json(raw);
  const auto report = sequd::run_session(cfg, a.workers);
  emit(sequd::io::dump(sequd::io::key_report_to_json(cfg, report)), a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential unambiguous state discrimination toolkit"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"csv", "json"});

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Optimal two-observer and n-observer joint success");
  optimize->add_option("--s", opt.s, "Overlap of the two states, 0 < s < 1")->required();
  optimize->add_option("--n", opt.n, "Number of observers")->capture_default_str();
  optimize->add_option("--out", opt.out, "Output path (stdout if omitted)");
  optimize->add_option("--format", opt.format, "csv or json")->check(formats)->capture_default_str();

  CurvesArgs cur;
  auto* curves = app.add_subcommand("curves", "Joint success of the four strategies over a grid of s");
  curves->add_option("--s-min", cur.s_min)->capture_default_str();
  curves->add_option("--s-max", cur.s_max)->capture_default_str();
  curves->add_option("--steps", cur.steps)->capture_default_str();
  curves->add_option("--out", cur.out, "Output path (stdout if omitted)");
  curves->add_option("--svg", cur.svg, "Also write an SVG plot here");
  curves->add_option("--format", cur.format, "csv or json")->check(formats)->capture_default_str();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo tally of a strategy");
  simulate->add_option("--kind", sim.kind, "1, 2, 3 or seq")->capture_default_str();
  simulate->add_option("--s", sim.s, "Overlap of the two states, 0 < s < 1")->required();
  simulate->add_option("--n", sim.n, "Observers in the sequential chain")->capture_default_str();
  simulate->add_option("--trials", sim.trials)->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--workers", sim.workers, "Worker threads (0 = all cores)")->capture_default_str();
  simulate->add_option("--out", sim.out, "Output path (stdout if omitted)");
  std::string sim_format = "json";
  simulate->add_option("--format", sim_format, "json")->check(CLI::IsMember({"json"}));

  NeumarkArgs neu;
  auto* neumark = app.add_subcommand("neumark", "Build and check the qubit-qutrit dilation");
  neumark->add_option("--s", neu.s, "Overlap of the two states, 0 < s < 1")->required();
  neumark->add_option("--out", neu.out, "Residual report path (stdout if omitted)");
  neumark->add_option("--matrix", neu.matrix, "Write U as CSV (6 rows x 12 reals)");
  neumark->add_option("--format", neu.format, "csv or json")->check(formats)->capture_default_str();

  B92Args key;
  auto* b92 = app.add_subcommand("b92", "Multi-party B92 key distribution session");
  b92->add_option("config", key.config, "Session config JSON")->required();
  b92->add_option("--s", key.s);
  b92->add_option("--rounds", key.rounds);
  b92->add_option("--mode", key.mode, "two_qubit or one_qubit_sequential");
  b92->add_option("--eve", key.eve, "none or intercept_ud");
  b92->add_option("--seed", key.seed);
  b92->add_option("--workers", key.workers, "Worker threads (0 = all cores)")->capture_default_str();
  b92->add_option("--out", key.out, "Output path (stdout if omitted)");
  std::string b92_format = "json";
  b92->add_option("--format", b92_format, "json")->check(CLI::IsMember({"json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*optimize) cmd_optimize(opt);
    if (*curves) cmd_curves(cur);
    if (*simulate) cmd_simulate(sim);
    if (*neumark) cmd_neumark(neu);
    if (*b92) cmd_b92(key);
  } catch (const sequd::io::FormatError& e) {
    std::cerr << "error";
    if (!e.field().empty()) std::cerr << " in field '" << e.field() << "'";
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const sequd::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
