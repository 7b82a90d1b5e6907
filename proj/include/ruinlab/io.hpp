#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ruinlab/bounds.hpp"
#include "ruinlab/game.hpp"
#include "ruinlab/montecarlo.hpp"
#include "ruinlab/stats.hpp"
#include "ruinlab/tail.hpp"
#include "ruinlab/walk.hpp"

namespace ruinlab {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal, '.' separator, no grouping.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Finite numbers as JSON numbers, everything else as null.
inline Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const Quantity& q) {
  return Json{{"value", number_or_null(q.value())}, {"ln", number_or_null(q.ln)}, {"log_space", q.overflowed()}};
}

inline Json to_json(const Estimate& e) {
  return Json{{"mean", e.mean},         {"stderr", e.std_error}, {"ci_low", e.ci_low},
              {"ci_high", e.ci_high},   {"replicas", e.replicas}, {"censored", e.censored},
              {"seed", e.seed},         {"level", e.level}};
}

inline std::string to_string(WallKind k) { return k == WallKind::absorbing ? "absorbing" : "reflecting"; }

inline WallKind parse_wall_kind(const std::string& s) {
  if (s == "absorbing") return WallKind::absorbing;
  if (s == "reflecting") return WallKind::reflecting;
  throw ConfigError("wall_kind", "expected absorbing|reflecting, got '" + s + "'");
}

inline Json to_json(const WalkSpec& w) {
  Json j{{"up_step", w.up_step},
         {"up_prob", w.up_prob},
         {"down_step", w.down_step},
         {"start", w.start},
         {"wall", w.upper.position},
         {"wall_kind", to_string(w.upper.kind)}};
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

inline WalkSpec walk_from_json(const Json& j) {
  WalkSpec w;
  w.up_step = j.at("up_step").get<Position>();
  w.up_prob = j.at("up_prob").get<double>();
  w.down_step = j.value("down_step", Position{1});
  w.start = j.at("start").get<Position>();
  w.upper.position = j.at("wall").get<Position>();
  w.upper.kind = parse_wall_kind(j.at("wall_kind").get<std::string>());
  w.note = j.value("note", std::string{});
  w.validate();
  return w;
}

inline std::string to_string(Rule r) { return r == Rule::local ? "local" : "semilocal"; }
inline std::string to_string(Coupling c) { return c == Coupling::coupled ? "coupled" : "independent"; }

inline Json to_json(const GameConfig& c) {
  Json j{{"n", c.n},
         {"initial_weights", c.initial_weights},
         {"c_inc", c.c_inc},
         {"c_dec", c.c_dec},
         {"rule", to_string(c.rule)},
         {"coupling", to_string(c.coupling)},
         {"w0", c.cap()}};
  if (c.selection == WinnerSelection::alive_uniform) j["selection"] = "alive-uniform";
  return j;
}

inline Json to_json(const BoundReport& r) {
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = number_or_null(v);
  Json j{{"name", r.name}, {"inputs", inputs}};
  if (r.lower) j["lower"] = number_or_null(*r.lower);
  if (r.upper) j["upper"] = number_or_null(*r.upper);
  Json values = Json::object();
  for (const auto& [k, v] : r.scalars) values[k] = number_or_null(v);
  for (const auto& [k, q] : r.entries) values[k] = to_json(q);
  if (!values.empty()) j["values"] = values;
  Json flags = Json::object();
  for (const auto& [k, b] : r.flags) flags[k] = b;
  if (!flags.empty()) j["flags"] = flags;
  j["conditions_met"] = r.conditions_met;
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const TailResult& t) {
  return Json{{"t", t.t},
              {"n", t.n},
              {"alpha", t.alpha},
              {"threshold", t.threshold},
              {"s_max", t.s_max},
              {"prob", t.prob},
              {"holds", t.holds},
              {"prob_above_mean", t.prob_above_mean},
              {"middle_band", t.middle_band},
              {"median_piece_ok", t.median_piece_ok}};
}

inline Json to_json(const Configuration& c) { return Json{{"survivors", c.survivors}, {"weights", c.weights}}; }

inline Json to_json(const EffRecReport& r) {
  Json configs = Json::array();
  for (const auto& g : r.configs_observed) {
    Json cj = to_json(g.config);
    cj["frequency"] = g.frequency;
    cj["merged"] = g.merged;
    configs.push_back(cj);
  }
  Json argmax = to_json(r.argmax);
  argmax["merged"] = r.argmax_merged;
  return Json{{"lhs", to_json(r.lhs)},
              {"t_one", to_json(r.t_one)},
              {"continuation_max", to_json(r.continuation_max)},
              {"argmax", argmax},
              {"configs_observed", configs},
              {"slack", r.slack},
              {"verdict", r.verdict},
              {"inconclusive", r.inconclusive},
              {"equality", r.equality},
              {"audit_ok", r.audit_ok},
              {"notes", r.notes}};
}

inline void write_estimate_csv(std::ostream& out, const std::string& quantity, const Estimate& e) {
  out << "quantity,mean,stderr,ci_low,ci_high,replicas,censored,seed\n";
  out << quantity << ',' << format_number(e.mean) << ',' << format_number(e.std_error) << ','
      << format_number(e.ci_low) << ',' << format_number(e.ci_high) << ',' << e.replicas << ',' << e.censored
      << ',' << e.seed << '\n';
}

inline void write_trace_csv(std::ostream& out, const std::vector<ReplicaRecord>& records) {
  out << "replica,steps,stopped,final_alive,final_total\n";
  for (const auto& r : records)
    out << r.replica << ',' << r.steps << ',' << (r.stopped ? 1 : 0) << ',' << r.final_alive << ','
        << r.final_total << '\n';
}

inline void write_region_csv(std::ostream& out, const TailRegion& region) {
  out << "t,n,threshold,s_max,prob,holds\n";
  for (const auto& c : region.cells)
    out << c.t << ',' << c.n << ',' << format_number(c.threshold) << ',' << c.s_max << ','
        << format_number(c.prob) << ',' << (c.holds ? "true" : "false") << '\n';
}

}  // namespace ruinlab
