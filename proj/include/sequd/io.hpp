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

#pragma once

// File formats. Every floating-point value is written with 12 significant
// digits ("%.12g"); JSON numbers are rounded to 12 digits before emission so
// the shortest round-trip form never carries more.
//
//   curve CSV      s,p_seq,p1,p2,p3,at_least_one
//   unitary CSV    6 rows, each re(U_r0),im(U_r0),...,re(U_r5),im(U_r5)
//   tally JSON     see tally_to_json
//   key JSON       see key_report_to_json

#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sequd/b92.hpp"
#include "sequd/errors.hpp"
#include "sequd/linalg.hpp"
#include "sequd/sequential.hpp"
#include "sequd/strategies.hpp"

namespace sequd::io {

using Json = nlohmann::ordered_json;

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double round12(double x) { return std::stod(format_number(x)); }

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// A malformed input file; `field()` names the offending entry.
class FormatError : public DomainError {
 public:
  FormatError(std::string field, const std::string& what) : DomainError(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// ---------------------------------------------------------------- tallies

struct TallyMeta {
  std::string kind;
  double s = 0.0;
  int n = 2;
  std::uint64_t seed = 0;
  double analytic_joint = 0.0;
  double analytic_at_least_one = 0.0;
};

inline Json tally_to_json(const TallyReport& t, const TallyMeta& meta) {
  Json j;
  j["kind"] = meta.kind;
  j["s"] = round12(meta.s);
  j["n"] = meta.n;
  j["seed"] = meta.seed;
  j["trials"] = t.trials;
  j["prepared"] = {t.prepared[0], t.prepared[1]};
  j["joint_success"] = {t.joint_success[0], t.joint_success[1]};
  j["at_least_one"] = t.at_least_one;
  j["error_count"] = t.error_count;
  j["observer_success"] = t.observer_success;
  j["estimated_joint_probability"] = round12(t.joint_probability());
  j["joint_stderr"] = round12(t.joint_stderr());
  j["at_least_one_rate"] = round12(t.at_least_one_rate());
  j["at_least_one_stderr"] = round12(t.at_least_one_stderr());
  j["analytic_joint_probability"] = round12(meta.analytic_joint);
  j["analytic_at_least_one"] = round12(meta.analytic_at_least_one);
  return j;
}

inline TallyReport tally_from_json(const Json& j) {
  TallyReport t;
  t.trials = j.at("trials").get<std::uint64_t>();
  t.prepared = {j.at("prepared").at(0).get<std::uint64_t>(), j.at("prepared").at(1).get<std::uint64_t>()};
  t.joint_success = {j.at("joint_success").at(0).get<std::uint64_t>(),
                     j.at("joint_success").at(1).get<std::uint64_t>()};
  t.at_least_one = j.at("at_least_one").get<std::uint64_t>();
  t.error_count = j.at("error_count").get<std::uint64_t>();
  t.observer_success = j.at("observer_success").get<std::vector<std::uint64_t>>();
  return t;
}

// ------------------------------------------------------------ key reports

inline Json rate_entry(const KeyReport& r, std::uint64_t count) {
  Json e;
  e["rate"] = round12(r.rate(count));
  e["stderr"] = round12(r.stderr_of(count));
  return e;
}

inline Json key_report_to_json(const SessionConfig& cfg, const KeyReport& r) {
  Json j;
  j["config"] = {{"s", round12(cfg.s)},
                 {"rounds", cfg.rounds},
                 {"mode", std::string(to_string(cfg.mode))},
                 {"eve", std::string(to_string(cfg.eve))},
                 {"seed", cfg.seed}};
  j["rounds"] = r.rounds;
  j["both_sifted"] = r.both_sifted;
  j["bob_sifted"] = r.bob_sifted;
  j["charlie_sifted"] = r.charlie_sifted;
  j["eve_known"] = r.eve_known;
  j["errors_bob"] = r.errors_bob;
  j["errors_charlie"] = r.errors_charlie;
  j["rates"] = {{"both_sifted", rate_entry(r, r.both_sifted)},
                {"bob_sifted", rate_entry(r, r.bob_sifted)},
                {"charlie_sifted", rate_entry(r, r.charlie_sifted)},
                {"eve_known", rate_entry(r, r.eve_known)},
                {"errors_bob", rate_entry(r, r.errors_bob)},
                {"errors_charlie", rate_entry(r, r.errors_charlie)}};
  Json expected;
  expected["both_sifted_no_eve"] = round12(both_sifted_rate(cfg));
  if (cfg.eve == EveMode::kInterceptUD) expected["eve_known"] = round12(eve_knowledge_rate(cfg));
  j["expected"] = expected;
  return j;
}

inline KeyReport key_report_from_json(const Json& j) {
  KeyReport r;
  r.rounds = j.at("rounds").get<std::uint64_t>();
  r.both_sifted = j.at("both_sifted").get<std::uint64_t>();
  r.bob_sifted = j.at("bob_sifted").get<std::uint64_t>();
  r.charlie_sifted = j.at("charlie_sifted").get<std::uint64_t>();
  r.eve_known = j.at("eve_known").get<std::uint64_t>();
  r.errors_bob = j.at("errors_bob").get<std::uint64_t>();
  r.errors_charlie = j.at("errors_charlie").get<std::uint64_t>();
  return r;
}

/// Session config file: {"s": <real>, "rounds": <int>, "mode": "two_qubit" |
/// "one_qubit_sequential", "eve": "none" | "intercept_ud", "seed": <int>}.
/// Only "s" is required; the defaults are 1000000 rounds, sequential mode,
/// no Eve and seed 0. Unknown keys are rejected.
inline SessionConfig session_config_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("", "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "s" && key != "rounds" && key != "mode" && key != "eve" && key != "seed") {
      throw FormatError(key, "unknown config field '" + key + "'");
    }
  }
  SessionConfig cfg;
  cfg.rounds = 1000000;
  if (!j.contains("s")) throw FormatError("s", "missing required field 's'");
  if (!j["s"].is_number()) throw FormatError("s", "field 's' must be a number");
  cfg.s = j["s"].get<double>();
  if (j.contains("rounds")) {
    if (!j["rounds"].is_number_unsigned()) throw FormatError("rounds", "field 'rounds' must be a positive integer");
    cfg.rounds = j["rounds"].get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw FormatError("seed", "field 'seed' must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  try {
    if (j.contains("mode")) {
      if (!j["mode"].is_string()) throw DomainError("field 'mode' must be a string");
      cfg.mode = parse_session_mode(j["mode"].get<std::string>());
    }
  } catch (const DomainError& e) {
    throw FormatError("mode", e.what());
  }
  try {
    if (j.contains("eve")) {
      if (!j["eve"].is_string()) throw DomainError("field 'eve' must be a string");
      cfg.eve = parse_eve_mode(j["eve"].get<std::string>());
    }
  } catch (const DomainError& e) {
    throw FormatError("eve", e.what());
  }
  return cfg;
}

// -------------------------------------------------------------------- CSV

inline constexpr std::string_view kCurveHeader = "s,p_seq,p1,p2,p3,at_least_one";

inline std::string curve_to_csv(const StrategyCurve& c) {
  std::ostringstream os;
  os << kCurveHeader << "\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << format_number(c.s_grid[i]) << ',' << format_number(c.p_seq[i]) << ',' << format_number(c.p1[i]) << ','
       << format_number(c.p2[i]) << ',' << format_number(c.p3[i]) << ',' << format_number(c.at_least_one[i])
       << "\n";
  }
  return os.str();
}

inline StrategyCurve curve_from_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != kCurveHeader) throw FormatError("header", "unexpected curve CSV header");
  StrategyCurve c;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != 6) throw FormatError("row", "curve CSV row needs 6 columns");
    c.s_grid.push_back(row[0]);
    c.p_seq.push_back(row[1]);
    c.p1.push_back(row[2]);
    c.p2.push_back(row[3]);
    c.p3.push_back(row[4]);
    c.at_least_one.push_back(row[5]);
  }
  return c;
}

inline std::string matrix_to_csv(const ComplexMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ',';
      os << format_number(m(r, c).real()) << ',' << format_number(m(r, c).imag());
    }
    os << "\n";
  }
  return os.str();
}

// -------------------------------------------------------------------- SVG

/// Static line plot of the four joint-success curves on [0,1] x [0,1].
/// Series order and dash styles: sequential solid, strategy 1 dotted,
/// strategy 2 dot-dashed, strategy 3 dashed.
inline std::string curve_to_svg(const StrategyCurve& c) {
  constexpr double width = 480.0;
  constexpr double height = 360.0;
  constexpr double margin = 48.0;
  const double pw = width - 2 * margin;
  const double ph = height - 2 * margin;
  auto px = [&](double s) { return margin + s * pw; };
  auto py = [&](double p) { return height - margin - p * ph; };

  struct Series {
    const std::vector<double>* ys;
    const char* label;
    const char* dash;
  };
  const Series series[] = {{&c.p_seq, "sequential", ""},
                           {&c.p1, "strategy 1", "2,4"},
                           {&c.p2, "strategy 2", "10,4,2,4"},
                           {&c.p3, "strategy 3", "8,6"}};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = k / 4.0;
    os << "<text x=\"" << px(v) << "\" y=\"" << height - margin + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
       << format_number(v) << "</text>\n";
    os << "<text x=\"" << margin - 6 << "\" y=\"" << py(v) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
       << format_number(v) << "</text>\n";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 8 << "\" font-size=\"13\" text-anchor=\"middle\">s</text>\n";
  os << "<text x=\"14\" y=\"" << height / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << height / 2 << ")\">P_s</text>\n";
  int row = 0;
  for (const auto& se : series) {
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    if (*se.dash) os << " stroke-dasharray=\"" << se.dash << "\"";
    os << " points=\"";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i > 0) os << ' ';
      os << format_number(px(c.s_grid[i])) << ',' << format_number(py((*se.ys)[i]));
    }
    os << "\"><title>" << se.label << "</title></polyline>\n";
    const double ly = margin + 14 + 16 * row++;
    os << "<line x1=\"" << width - margin - 110 << "\" y1=\"" << ly << "\" x2=\"" << width - margin - 80 << "\" y2=\""
       << ly << "\" stroke=\"black\"";
    if (*se.dash) os << " stroke-dasharray=\"" << se.dash << "\"";
    os << "/>\n<text x=\"" << width - margin - 74 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << se.label
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sequd::io
