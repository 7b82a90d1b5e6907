#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "experiment_spec.hpp"
#include "ruinlab/ruinlab.hpp"

namespace ruinlab::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::int64_t to_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError(what + ": not an integer: '" + s + "'");
  return v;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- game flags

struct GameFlags {
  int players = 0;
  std::string weights;
  std::int64_t initial = 0;
  std::int64_t c_inc = 0;
  std::int64_t c_dec = 1;
  std::string rule = "local";
  std::string coupling = "coupled";
  std::string selection = "slot";
  std::int64_t w0 = 0;

  void add(CLI::App* app, bool full = true) {
    app->add_option("--players", players, "player count n")->required();
    app->add_option("--weights", weights, "initial weights I1,..,In");
    app->add_option("--initial", initial, "common initial weight I");
    app->add_option("--c-inc", c_inc, "winner award")->required();
    app->add_option("--c-dec", c_dec, "per-step payment");
    if (!full) return;
    app->add_option("--rule", rule, "local|semilocal");
    app->add_option("--coupling", coupling, "coupled|independent");
    app->add_option("--selection", selection, "winner draw: slot|alive");
    app->add_option("--w0", w0, "semilocal cap (default: initial total)");
  }

  GameConfig build() const {
    const bool has_weights = !weights.empty(), has_initial = initial != 0;
    if (has_weights == has_initial) throw UsageError("exactly one of --weights or --initial is required");
    GameConfig c;
    c.n = players;
    if (has_weights) {
      for (const auto& w : split(weights, ',')) c.initial_weights.push_back(to_int(w, "--weights"));
    } else {
      c.initial_weights.assign(static_cast<std::size_t>(std::max(players, 0)), initial);
    }
    c.c_inc = c_inc;
    c.c_dec = c_dec;
    if (rule == "local") c.rule = Rule::local;
    else if (rule == "semilocal") c.rule = Rule::semilocal;
    else throw UsageError("--rule: expected local|semilocal");
    if (coupling == "coupled") c.coupling = Coupling::coupled;
    else if (coupling == "independent") c.coupling = Coupling::independent;
    else throw UsageError("--coupling: expected coupled|independent");
    if (selection == "slot") c.selection = WinnerSelection::slot_uniform;
    else if (selection == "alive") c.selection = WinnerSelection::alive_uniform;
    else throw UsageError("--selection: expected slot|alive");
    if (w0 != 0) c.w0 = w0;
    c.validate();
    return c;
  }
};

struct McFlags {
  std::int64_t replicas = 10'000;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 1'000'000;
  double level = kDefaultConfidence;

  void add(CLI::App* app) {
    app->add_option("--replicas", replicas, "replica count");
    app->add_option("--seed", seed, "base seed");
    app->add_option("--max-steps", max_steps, "per-replica step cap (censoring)");
    app->add_option("--level", level, "confidence level for intervals");
  }

  McOptions build() const {
    McOptions o;
    o.replicas = replicas;
    o.seed = seed;
    o.max_steps = max_steps;
    o.level = level;
    o.validate();
    return o;
  }
};

StopCondition parse_stop(const std::string& token, const GameConfig& config) {
  if (token == "one-survivor") return StopCondition::one_survivor();
  if (token == "first-bankruptcy") return StopCondition::first_bankruptcy();
  if (token == "max-steps") return StopCondition::max_steps_only();
  if (token == "total-half") {
    if (config.cap() % 2 != 0) throw UsageError("--stop total-half needs an even w0");
    return StopCondition::total_at_most(config.cap() / 2);
  }
  auto param = [&](const std::string& prefix) -> std::optional<std::int64_t> {
    if (token.rfind(prefix, 0) != 0) return std::nullopt;
    return to_int(token.substr(prefix.size()), "--stop");
  };
  if (auto w = param("reach:")) return StopCondition::some_weight_reaches(*w);
  if (auto x = param("total-at-most:")) return StopCondition::total_at_most(*x);
  throw UsageError("--stop: expected one-survivor|first-bankruptcy|total-half|reach:W|total-at-most:X|max-steps");
}

// ---------------------------------------------------------------- walk flags

struct WalkFlags {
  std::string model = "walk";
  // explicit walk
  std::int64_t up_step = 0;
  double up_prob = 0.0;
  std::int64_t down_step = 1;
  std::int64_t start = -1;
  std::int64_t wall = 0;
  std::string wall_kind = "absorbing";
  // game-derived models
  int n = 0;
  std::int64_t w0 = 0;
  std::int64_t k = 2;
  std::int64_t c_inc = 0;

  void add(CLI::App* app) {
    app->add_option("--model", model, "walk|poorest|total|total-halved");
    app->add_option("--up-step", up_step);
    app->add_option("--up-prob", up_prob);
    app->add_option("--down-step", down_step);
    app->add_option("--start", start);
    app->add_option("--wall", wall);
    app->add_option("--wall-kind", wall_kind, "absorbing|reflecting");
    app->add_option("--n", n);
    app->add_option("--w0", w0);
    app->add_option("--k", k);
    app->add_option("--c-inc", c_inc);
  }

  WalkSpec build() const {
    WalkSpec s;
    if (model == "walk") {
      s.up_step = up_step;
      s.up_prob = up_prob;
      s.down_step = down_step;
      s.upper = {wall, parse_wall_kind(wall_kind)};
      s.start = start;
    } else if (model == "poorest") {
      s = poorest_walk(n, w0, k, c_inc);
    } else if (model == "total") {
      s = total_walk(n, w0, k, c_inc);
    } else if (model == "total-halved") {
      s = total_walk_halved(n, w0, c_inc);
    } else {
      throw UsageError("--model: expected walk|poorest|total|total-halved");
    }
    if (model != "walk" && start >= 0) s.start = start;
    s.validate();
    return s;
  }

  Json inputs(const WalkSpec& s) const {
    Json j{{"walk", to_json(s)}};
    if (model != "walk") {
      j["n"] = n;
      j["w0"] = w0;
      if (model != "total-halved") j["k"] = k;
      j["c_inc"] = c_inc;
    }
    return j;
  }
};

// --------------------------------------------------------------- the app

struct Invocation {
  CLI::App app{"Simulator and exact solvers for multiplayer ruin games", "ruinlab"};
  std::string out_path;

  GameFlags game;
  McFlags mc;
  std::string stop = "one-survivor";
  std::string trace_path;

  WalkFlags walk;
  std::int64_t from = -1, to = 0;

  // bounds
  double b_initial = 0, b_target = 0, b_w1 = 0, b_w2 = 0, b_t = 0, b_x = 0, b_y = 0, b_w0 = 0, b_c_inc = 0,
         b_c_dec = 1;
  int b_n = 0, b_k = 0;

  // tail
  std::int64_t t = 0, tn = 0, t_max = 0, n_max = 0;
  double alpha = kAnticbAlpha;
  std::string summary_path;

  // verify
  std::string grid_n, grid_target, grid_w0, points;
  std::int64_t v_c_inc = 0, v_initial = 0;
  int v_n = 0;
  std::int64_t horizon = 1'000'000;

  CLI::App *simulate, *exact, *bounds, *tail, *verify;

  Invocation() {
    app.require_subcommand(1);
    simulate = app.add_subcommand("simulate", "Monte Carlo stop-time estimate (CSV)");
    game.add(simulate);
    mc.add(simulate);
    simulate->add_option("--stop", stop, "one-survivor|first-bankruptcy|total-half|reach:W|total-at-most:X|max-steps");
    simulate->add_option("--trace", trace_path, "per-replica CSV records");
    simulate->add_option("--out", out_path, "output file (default stdout)");

    exact = app.add_subcommand("exact", "Exact walk solvers (JSON)");
    exact->require_subcommand(1);
    for (const char* name : {"hit-prob", "absorb-time", "first-passage", "e-vector"}) {
      CLI::App* sub = exact->add_subcommand(name);
      walk.add(sub);
      sub->add_option("--out", out_path);
      if (std::string(name) == "first-passage") {
        sub->add_option("--from", from, "start position (default: walk start)");
        sub->add_option("--to", to, "target position");
      }
    }

    bounds = app.add_subcommand("bounds", "Closed-form bounds (JSON)");
    bounds->require_subcommand(1);
    auto bsub = [&](const char* name) {
      CLI::App* sub = bounds->add_subcommand(name);
      sub->add_option("--out", out_path);
      return sub;
    };
    CLI::App* s = bsub("ruin");
    s->add_option("--initial", b_initial)->required();
    s->add_option("--target", b_target)->required();
    s->add_option("--n", b_n)->required();
    s = bsub("pstar");
    s->add_option("--initial", b_initial)->required();
    s->add_option("--w1", b_w1)->required();
    s->add_option("--w2", b_w2)->required();
    s->add_option("--n", b_n)->required();
    s = bsub("drift");
    s->add_option("--t", b_t)->required();
    s->add_option("--n", b_n)->required();
    s->add_option("--c-inc", b_c_inc)->required();
    s->add_option("--c-dec", b_c_dec);
    s = bsub("sp");
    s->add_option("--k", b_k)->required();
    s->add_option("--n", b_n)->required();
    s->add_option("--w0", b_w0)->required();
    s = bsub("st2");
    s->add_option("--x", b_x)->required();
    s->add_option("--y", b_y)->required();
    s->add_option("--n", b_n)->required();
    s->add_option("--w0", b_w0)->required();
    s->add_option("--c-inc", b_c_inc)->required();
    s = bsub("semilocal");
    s->add_option("--n", b_n)->required();
    s->add_option("--initial", b_initial)->required();
    s->add_option("--c-inc", b_c_inc)->required();

    tail = app.add_subcommand("tail", "Binomial lower tail checks");
    tail->require_subcommand(1);
    s = tail->add_subcommand("check");
    s->add_option("--t", t)->required();
    s->add_option("--n", tn)->required();
    s->add_option("--alpha", alpha);
    s->add_option("--out", out_path);
    s = tail->add_subcommand("region");
    s->add_option("--t-max", t_max)->required();
    s->add_option("--n-max", n_max)->required();
    s->add_option("--alpha", alpha);
    s->add_option("--summary", summary_path, "JSON summary of the failing region");
    s->add_option("--out", out_path);

    verify = app.add_subcommand("verify", "Bound-domination grids and Monte Carlo checks (JSON)");
    verify->require_subcommand(1);
    s = verify->add_subcommand("eff-rec");
    game.add(s, false);
    mc.add(s);
    s->add_option("--out", out_path);
    s = verify->add_subcommand("fact-a");
    s->add_option("--n", grid_n);
    s->add_option("--target", grid_target);
    s->add_option("--out", out_path);
    s = verify->add_subcommand("lemma-a1");
    s->add_option("--n", grid_n);
    s->add_option("--w0", grid_w0);
    s->add_option("--c-inc", v_c_inc, "award (default 2n)");
    s->add_option("--out", out_path);
    s = verify->add_subcommand("lemma-a2");
    s->add_option("--n", grid_n);
    s->add_option("--w0", grid_w0);
    s->add_option("--c-inc", v_c_inc, "award (default 2n)");
    s->add_option("--out", out_path);
    s = verify->add_subcommand("pstar");
    mc.add(s);
    s->add_option("--horizon", horizon);
    s->add_option("--points", points, "n/I/W1/W2;... (default: built-in 10-point grid)");
    s->add_option("--out", out_path);
    s = verify->add_subcommand("semilocal");
    s->add_option("--n", v_n)->required();
    s->add_option("--initial", v_initial)->required();
    s->add_option("--c-inc", v_c_inc)->required();
    s->add_option("--out", out_path);
  }

  CLI::App* chosen(CLI::App* parent) const { return parent->get_subcommands().front(); }

  int dispatch(std::ostream& out) {
    if (simulate->parsed()) return run_simulate(out);
    if (exact->parsed()) return run_exact(chosen(exact)->get_name(), out);
    if (bounds->parsed()) return run_bounds(chosen(bounds)->get_name(), out);
    if (tail->parsed()) return run_tail(chosen(tail)->get_name(), out);
    return run_verify(chosen(verify)->get_name(), out);
  }

  int run_simulate(std::ostream& out) {
    GameConfig config = game.build();
    StopCondition sc = parse_stop(stop, config);
    McOptions opt = mc.build();
    std::vector<ReplicaRecord> records;
    Estimate e = estimate_stop_time(config, sc, opt, trace_path.empty() ? nullptr : &records);
    std::ostringstream csv;
    write_estimate_csv(csv, "stop_time:" + stop, e);
    emit(csv.str(), out_path, out);
    if (!trace_path.empty()) {
      std::ostringstream tr;
      write_trace_csv(tr, records);
      write_file(trace_path, tr.str());
    }
    return kExitOk;
  }

  int run_exact(const std::string& what, std::ostream& out) {
    WalkSpec spec = walk.build();
    Json j{{"model", walk.model}, {"inputs", walk.inputs(spec)}};
    if (what == "hit-prob") {
      j["result"] = exact_hit_probability(spec);
    } else if (what == "absorb-time") {
      j["result"] = exact_expected_absorption(spec);
    } else if (what == "first-passage") {
      const Position src = from >= 0 ? from : spec.start;
      j["inputs"]["from"] = src;
      j["inputs"]["to"] = to;
      j["result"] = exact_first_passage(spec, src, to);
      if (walk.model == "total-halved") {
        St2Lower b = st2_lower(2.0 * src, 2.0 * to, walk.n, static_cast<double>(walk.w0),
                               static_cast<double>(walk.c_inc));
        j["st2_lower"] = to_json(b.value);
        j["st2_conditions_met"] = b.conditions_met;
      }
    } else {
      EVector ev = solve_e_recurrence(spec);
      Json values = Json::array();
      double sum = 0.0;
      for (Position x = 1; x <= ev.wall; ++x) {
        values.push_back(ev.at(x));
        sum += ev.at(x);
      }
      j["result"] = {{"e", values}, {"sum", sum}};
      j["residual"] = e_recurrence_residual(spec, ev);
    }
    emit(dump(j), out_path, out);
    return kExitOk;
  }

  int run_bounds(const std::string& what, std::ostream& out) {
    BoundReport r;
    r.name = what;
    if (what == "ruin") {
      Interval iv = ruin_prob_bounds(b_initial, b_target, b_n);
      r.inputs = {{"initial", b_initial}, {"target", b_target}, {"n", b_n}};
      r.lower = iv.lower;
      r.upper = iv.upper;
    } else if (what == "pstar") {
      r.inputs = {{"initial", b_initial}, {"w1", b_w1}, {"w2", b_w2}, {"n", b_n}};
      r.upper = pstar_upper(b_initial, b_w1, b_w2, b_n);
      r.notes.push_back("event: some player reaches W1 and fewer than two players reach W2");
    } else if (what == "drift") {
      r.inputs = {{"t", b_t}, {"n", b_n}, {"c_inc", b_c_inc}, {"c_dec", b_c_dec}};
      r.scalars.push_back({"expected_gain", expected_drift(b_t, b_n, b_c_inc, b_c_dec)});
    } else if (what == "sp") {
      r.inputs = {{"k", b_k}, {"n", b_n}, {"w0", b_w0}};
      SpUpper sp = sp_upper(b_k, b_n, b_w0);
      r.entries = {{"product_form", sp.product}, {"stated_form", sp.stated}};
      r.flags.push_back({"product_larger", sp.product_larger});
      r.upper = std::min(sp.product.value(), sp.stated.value());
    } else if (what == "st2") {
      r.inputs = {{"x", b_x}, {"y", b_y}, {"n", b_n}, {"w0", b_w0}, {"c_inc", b_c_inc}};
      St2Lower b = st2_lower(b_x, b_y, b_n, b_w0, b_c_inc);
      r.entries = {{"lower", b.value}};
      r.lower = b.value.value();
      r.conditions_met = b.conditions_met;
      if (!b.conditions_met) r.notes.push_back("c_inc/2 < n");
    } else {
      r = semilocal_report(b_n, b_initial, b_c_inc);
    }
    emit(dump(to_json(r)), out_path, out);
    return kExitOk;
  }

  int run_tail(const std::string& what, std::ostream& out) {
    if (what == "check") {
      emit(dump(to_json(anticb_check(t, tn, alpha))), out_path, out);
      return kExitOk;
    }
    TailRegion region = anticb_region(t_max, n_max, alpha);
    std::ostringstream csv;
    write_region_csv(csv, region);
    emit(csv.str(), out_path, out);
    if (!summary_path.empty()) {
      Json per_n = Json::object();
      for (std::size_t i = 0; i < region.failing_per_n.size(); ++i)
        per_n[std::to_string(i + 2)] = region.failing_per_n[i];
      Json j{{"t_max", region.t_max},
             {"n_max", region.n_max},
             {"alpha", region.alpha},
             {"cells", region.cells.size()},
             {"failing", region.failing},
             {"largest_failing_t", region.largest_failing_t},
             {"failing_per_n", per_n}};
      write_file(summary_path, dump(j));
    }
    return kExitOk;
  }

  std::vector<int> ints(const std::string& text, const std::string& fallback) {
    std::vector<int> v;
    for (std::int64_t x : parse_int_list(text.empty() ? fallback : text)) v.push_back(static_cast<int>(x));
    return v;
  }

  std::vector<std::int64_t> longs(const std::string& text, const std::string& fallback) {
    return parse_int_list(text.empty() ? fallback : text);
  }

  std::optional<std::int64_t> c_inc_opt() const {
    return v_c_inc > 0 ? std::optional<std::int64_t>(v_c_inc) : std::nullopt;
  }

  int run_verify(const std::string& what, std::ostream& out) {
    Json j{{"check", what}};
    bool ok = true;
    if (what == "eff-rec") {
      GameConfig config = game.build();
      McOptions opt = mc.build();
      j["inputs"] = {{"config", to_json(config)}, {"replicas", opt.replicas}, {"seed", opt.seed},
                     {"max_steps", opt.max_steps}};
      j["report"] = to_json(verify_eff_rec(config, opt));
    } else if (what == "fact-a") {
      auto ns = ints(grid_n, "2:6");
      auto targets = longs(grid_target, "5,10,20");
      j["inputs"] = {{"n", ns}, {"target", targets}};
      Json cells = Json::array();
      for (const auto& c : verify::fact_a(ns, targets)) {
        cells.push_back({{"n", c.n}, {"target", c.target}, {"initial", c.initial}, {"exact", c.exact},
                         {"lower", c.lower}, {"upper", c.upper}, {"ok", c.ok}});
        ok = ok && c.ok;
      }
      j["cells"] = cells;
    } else if (what == "lemma-a1") {
      auto ns = ints(grid_n, "3:6");
      auto w0s = longs(grid_w0, "1:60");
      j["inputs"] = {{"n", ns}, {"w0", w0s}, {"c_inc", v_c_inc > 0 ? Json(v_c_inc) : Json("2n")}};
      Json cells = Json::array();
      std::int64_t product_fail = 0, e_fail = 0, e_shift_fail = 0, residual_fail = 0;
      double residual_max = 0.0;
      for (const auto& c : verify::lemma_a1(ns, w0s, c_inc_opt())) {
        cells.push_back({{"n", c.n}, {"k", c.k}, {"w0", c.w0}, {"c_inc", c.c_inc}, {"wall", c.wall},
                         {"absorption", c.absorption}, {"e_sum", c.e_sum}, {"product_bound", c.product_bound},
                         {"stated_bound", c.stated_bound}, {"residual", c.residual},
                         {"product_ok", c.product_ok}, {"e_bound_ok", c.e_bound_ok},
                         {"first_e_violation", c.first_e_violation},
                         {"e_bound_shifted_ok", c.e_bound_shifted_ok}, {"routes_agree", c.routes_agree}});
        product_fail += !c.product_ok;
        e_fail += !c.e_bound_ok;
        e_shift_fail += !c.e_bound_shifted_ok;
        residual_fail += !(c.residual_ok && c.routes_agree);
        residual_max = std::max(residual_max, c.residual);
        ok = ok && c.ok();
      }
      j["summary"] = {{"cells", cells.size()},       {"product_bound_failures", product_fail},
                      {"e_bound_failures", e_fail}, {"e_bound_shifted_failures", e_shift_fail},
                      {"residual_failures", residual_fail}, {"residual_max", residual_max}};
      j["cells"] = cells;
    } else if (what == "lemma-a2") {
      auto ns = ints(grid_n, "4,6");
      auto w0s = longs(grid_w0, "2:40:2");
      j["inputs"] = {{"n", ns}, {"w0", w0s}, {"c_inc", v_c_inc > 0 ? Json(v_c_inc) : Json("2n")}};
      Json cells = Json::array();
      std::int64_t failures = 0;
      for (const auto& c : verify::lemma_a2(ns, w0s, c_inc_opt())) {
        cells.push_back({{"n", c.n}, {"w0", c.w0}, {"c_inc", c.c_inc}, {"from", c.from}, {"to", c.to},
                         {"exact", c.exact}, {"bound", c.bound}, {"conditions_met", c.conditions_met},
                         {"ok", c.ok}});
        failures += !c.ok;
        ok = ok && c.ok;
      }
      j["summary"] = {{"cells", cells.size()}, {"failures", failures}};
      j["cells"] = cells;
    } else if (what == "pstar") {
      McOptions opt = mc.build();
      std::vector<verify::PstarPoint> pts;
      if (points.empty()) {
        pts = verify::default_pstar_points();
      } else {
        for (const auto& item : split(points, ';')) {
          auto f = split(item, '/');
          if (f.size() != 4) throw UsageError("--points: expected n/I/W1/W2 items separated by ';'");
          pts.push_back({static_cast<int>(to_int(f[0], "--points")), to_int(f[1], "--points"),
                         to_int(f[2], "--points"), to_int(f[3], "--points")});
        }
      }
      j["inputs"] = {{"replicas", opt.replicas}, {"seed", opt.seed}, {"horizon", horizon}};
      Json cells = Json::array();
      bool all = true;
      for (const auto& c : verify::pstar_grid(pts, horizon, opt)) {
        cells.push_back({{"n", c.point.n}, {"initial", c.point.initial}, {"w1", c.point.target1},
                         {"w2", c.point.target2}, {"estimate", to_json(c.estimate)}, {"bound", c.bound},
                         {"verdict", c.verdict}});
        all = all && c.verdict;
      }
      j["cells"] = cells;
      j["stochastic_verdict"] = all;
    } else {
      verify::SemilocalDeskCheck d = verify::semilocal_desk_check(v_n, v_initial, v_c_inc);
      j["report"] = to_json(d.report);
      j["s_half_model"] = d.s_half_model;
      j["s_one_model"] = d.s_one_model;
      j["direction_ok"] = d.direction_ok;
      ok = d.direction_ok && d.report.conditions_met;
    }
    j["all_ok"] = ok;
    emit(dump(j), out_path, out);
    return ok ? kExitOk : kExitCheckFailed;
  }
};

// Pulls "--name value" out of args and returns the value, if present.
std::optional<std::string> take_flag(std::vector<std::string>& args, const std::string& name) {
  auto it = std::find(args.begin(), args.end(), name);
  if (it == args.end()) return std::nullopt;
  if (std::next(it) == args.end()) throw UsageError(name + " needs a value");
  std::string value = *std::next(it);
  args.erase(it, std::next(it, 2));
  return value;
}

std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto config_path = take_flag(args, "--config");
  if (!config_path) return args;
  Json j;
  try {
    j = Json::parse(read_file(*config_path));
  } catch (const Json::parse_error& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  ExperimentSpec base = ExperimentSpec::from_json(j);
  ExperimentSpec extra = ExperimentSpec::from_args(args);
  if (!extra.command.empty() && extra.command != base.command)
    throw UsageError("--config: command on the command line differs from the config file");
  for (const auto& [k, v] : extra.options) base.options[k] = v;
  return base.to_args();
}

}  // namespace

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& item : split(text, ',')) {
    auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(to_int(parts[0], "grid"));
    } else if (parts.size() == 2 || parts.size() == 3) {
      std::int64_t lo = to_int(parts[0], "grid"), hi = to_int(parts[1], "grid");
      std::int64_t step = parts.size() == 3 ? to_int(parts[2], "grid") : 1;
      if (step <= 0 || hi < lo) throw UsageError("grid: bad range '" + item + "'");
      for (std::int64_t x = lo; x <= hi; x += step) out.push_back(x);
    } else {
      throw UsageError("grid: bad item '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("grid: empty list");
  return out;
}

int run_cli(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> args = expand_config(raw);
    auto write_config = take_flag(args, "--write-config");
    Invocation inv;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      inv.app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << inv.app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << inv.app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    if (write_config) write_file(*write_config, dump(ExperimentSpec::from_args(args).to_json()));
    return inv.dispatch(out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ruinlab::cli
