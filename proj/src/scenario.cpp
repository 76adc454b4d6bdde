#include "swarmkit/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace swarm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
}

// Unknown keys are hard errors so sweep typos cannot pass silently.
void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
}

double num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where + " must be a boolean");
  return j.get<bool>();
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  return j.get<std::string>();
}

void parse_params(const json& j, SwarmParams& p) {
  expect_object(j, "params");
  expect_keys(j, {"N", "d", "R", "R_min", "R_max", "R_s", "V_max", "dt", "L", "T_w"}, "params");
  if (j.contains("N")) p.N = integer(j["N"], "params.N");
  if (j.contains("d")) p.d = integer(j["d"], "params.d");
  if (j.contains("R")) p.R = num(j["R"], "params.R");
  if (j.contains("R_min")) p.R_min = num(j["R_min"], "params.R_min");
  if (j.contains("R_max")) p.R_max = num(j["R_max"], "params.R_max");
  if (j.contains("R_s")) p.R_s = num(j["R_s"], "params.R_s");
  if (j.contains("V_max")) p.V_max = num(j["V_max"], "params.V_max");
  if (j.contains("dt")) p.dt = num(j["dt"], "params.dt");
  if (j.contains("L")) p.L = integer(j["L"], "params.L");
  if (j.contains("T_w")) p.T_w = num(j["T_w"], "params.T_w");
}

void parse_dynamics(const json& j, DynamicsSpec& d) {
  expect_object(j, "dynamics");
  expect_keys(j, {"kind", "m", "mu", "sigma_a"}, "dynamics");
  if (j.contains("kind")) {
    const std::string k = str(j["kind"], "dynamics.kind");
    if (k == "first_order") d.kind = DynKind::FirstOrder;
    else if (k == "second_order") d.kind = DynKind::SecondOrder;
    else fail("dynamics.kind must be first_order or second_order");
  }
  if (j.contains("m")) d.m = num(j["m"], "dynamics.m");
  if (j.contains("mu")) d.mu = num(j["mu"], "dynamics.mu");
  if (j.contains("sigma_a")) d.sigma_a = num(j["sigma_a"], "dynamics.sigma_a");
}

void parse_profile(const json& j, ProfileSpec& p) {
  expect_object(j, "controller.profile");
  expect_keys(j, {"kind", "a", "b", "c", "g", "R_a"}, "controller.profile");
  if (j.contains("kind")) {
    const std::string k = str(j["kind"], "controller.profile.kind");
    if (k == "lj") p.kind = ProfileSpec::Kind::LJ;
    else if (k == "power_law") p.kind = ProfileSpec::Kind::PowerLaw;
    else fail("controller.profile.kind must be lj or power_law");
  }
  if (j.contains("a")) p.a = num(j["a"], "controller.profile.a");
  if (j.contains("b")) p.b = num(j["b"], "controller.profile.b");
  if (j.contains("c")) p.c = num(j["c"], "controller.profile.c");
  if (j.contains("g")) p.g = num(j["g"], "controller.profile.g");
  if (j.contains("R_a")) p.R_a = num(j["R_a"], "controller.profile.R_a");
}

void parse_controller(const json& j, ControllerSpec& c) {
  expect_object(j, "controller");
  expect_keys(j,
              {"law", "G_r", "G_n", "alpha", "lj", "sigma_m", "compass", "G", "F_max",
               "mass", "profile"},
              "controller");
  if (j.contains("law")) {
    const std::string k = str(j["law"], "controller.law");
    if (k == "displacement") c.law = ControlLaw::Displacement;
    else if (k == "adaptive") c.law = ControlLaw::Adaptive;
    else if (k == "radial_only") c.law = ControlLaw::RadialOnly;
    else if (k == "spears") c.law = ControlLaw::Spears;
    else fail("controller.law must be displacement, adaptive, radial_only or spears");
  }
  if (j.contains("G_r")) c.G_r = num(j["G_r"], "controller.G_r");
  if (j.contains("G_n")) c.G_n = num(j["G_n"], "controller.G_n");
  if (j.contains("alpha")) c.alpha = num(j["alpha"], "controller.alpha");
  if (j.contains("lj")) {
    expect_object(j["lj"], "controller.lj");
    expect_keys(j["lj"], {"a", "b", "c"}, "controller.lj");
    if (j["lj"].contains("a")) c.lj.a = num(j["lj"]["a"], "controller.lj.a");
    if (j["lj"].contains("b")) c.lj.b = num(j["lj"]["b"], "controller.lj.b");
    if (j["lj"].contains("c")) c.lj.c = num(j["lj"]["c"], "controller.lj.c");
  }
  if (j.contains("sigma_m")) c.sigma_m = num(j["sigma_m"], "controller.sigma_m");
  if (j.contains("compass")) c.compass = boolean(j["compass"], "controller.compass");
  if (j.contains("G")) c.G = num(j["G"], "controller.G");
  if (j.contains("F_max")) c.F_max = num(j["F_max"], "controller.F_max");
  if (j.contains("mass")) c.mass = num(j["mass"], "controller.mass");
  if (j.contains("profile")) parse_profile(j["profile"], c.profile);
}

void parse_initial(const json& j, InitSpec& ini) {
  expect_object(j, "initial");
  expect_keys(j, {"kind", "r", "delta", "side"}, "initial");
  if (j.contains("kind")) {
    const std::string k = str(j["kind"], "initial.kind");
    if (k == "disk") ini.kind = InitSpec::Kind::Disk;
    else if (k == "lattice") ini.kind = InitSpec::Kind::Lattice;
    else if (k == "origin") ini.kind = InitSpec::Kind::Origin;
    else if (k == "box") ini.kind = InitSpec::Kind::Box;
    else fail("initial.kind must be disk, lattice, origin or box");
  }
  if (j.contains("r")) ini.r = num(j["r"], "initial.r");
  if (j.contains("delta")) ini.delta = num(j["delta"], "initial.delta");
  if (j.contains("side")) ini.side = num(j["side"], "initial.side");
}

void parse_events(const json& j, std::vector<EventSpec>& events) {
  if (!j.is_array()) fail("events must be an array");
  for (const auto& e : j) {
    expect_object(e, "events[]");
    expect_keys(e, {"t", "kind", "fraction", "L"}, "events[]");
    EventSpec ev;
    if (!e.contains("t") || !e.contains("kind")) fail("events[] need t and kind");
    ev.t = num(e["t"], "events[].t");
    const std::string k = str(e["kind"], "events[].kind");
    if (k == "remove") {
      ev.kind = EventSpec::Kind::Remove;
      if (!e.contains("fraction")) fail("remove event needs fraction");
      ev.fraction = num(e["fraction"], "events[].fraction");
    } else if (k == "set_L") {
      ev.kind = EventSpec::Kind::SetL;
      if (!e.contains("L")) fail("set_L event needs L");
      ev.L = integer(e["L"], "events[].L");
    } else if (k == "reset_gains") {
      ev.kind = EventSpec::Kind::ResetGains;
    } else {
      fail("events[].kind must be remove, set_L or reset_gains");
    }
    events.push_back(ev);
  }
}

void parse_thresholds(const json& j, Thresholds& t) {
  expect_object(j, "thresholds");
  expect_keys(j, {"e_theta", "e_L"}, "thresholds");
  if (j.contains("e_theta")) t.e_theta = num(j["e_theta"], "thresholds.e_theta");
  if (j.contains("e_L")) t.e_L = num(j["e_L"], "thresholds.e_L");
}

std::vector<double> num_list(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + " must be a nonempty array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(num(v, where + "[]"));
  return out;
}

void parse_tune(const json& j, TuneSpec& t) {
  expect_object(j, "tune");
  expect_keys(j, {"G_r", "G_n", "trials"}, "tune");
  if (!j.contains("G_r") || !j.contains("G_n")) fail("tune needs G_r and G_n arrays");
  t.G_r = num_list(j["G_r"], "tune.G_r");
  t.G_n = num_list(j["G_n"], "tune.G_n");
  if (j.contains("trials")) t.trials = integer(j["trials"], "tune.trials");
  if (t.trials < 1) fail("tune.trials must be >= 1");
}

void parse_sweep(const json& j, SweepSpec& s) {
  expect_object(j, "sweep");
  expect_keys(j, {"path", "values", "trials", "keep_series"}, "sweep");
  if (!j.contains("path") || !j.contains("values")) fail("sweep needs path and values");
  s.path = str(j["path"], "sweep.path");
  s.values = num_list(j["values"], "sweep.values");
  if (j.contains("trials")) s.trials = integer(j["trials"], "sweep.trials");
  if (j.contains("keep_series"))
    s.keep_series = boolean(j["keep_series"], "sweep.keep_series");
  if (s.trials < 1) fail("sweep.trials must be >= 1");
}

void parse_rigidity(const json& j, RigiditySpec& r) {
  expect_object(j, "rigidity");
  expect_keys(j, {"count", "vacancies"}, "rigidity");
  if (j.contains("count")) r.count = integer(j["count"], "rigidity.count");
  if (j.contains("vacancies")) r.vacancies = integer(j["vacancies"], "rigidity.vacancies");
  if (r.count < 1) fail("rigidity.count must be >= 1");
  if (r.vacancies < 0) fail("rigidity.vacancies must be >= 0");
}

void parse_ptw(const json& j, PTWParams& p) {
  expect_object(j, "ptw");
  expect_keys(j,
              {"theta_v", "mu_v", "sigma_v", "alpha_v", "beta_v", "gamma_v", "theta_w",
               "sigma_w", "alpha_w", "beta_w", "gamma_w"},
              "ptw");
  if (j.contains("theta_v")) p.theta_v = num(j["theta_v"], "ptw.theta_v");
  if (j.contains("mu_v")) p.mu_v = num(j["mu_v"], "ptw.mu_v");
  if (j.contains("sigma_v")) p.sigma_v = num(j["sigma_v"], "ptw.sigma_v");
  if (j.contains("alpha_v")) p.alpha_v = num(j["alpha_v"], "ptw.alpha_v");
  if (j.contains("beta_v")) p.beta_v = num(j["beta_v"], "ptw.beta_v");
  if (j.contains("gamma_v")) p.gamma_v = num(j["gamma_v"], "ptw.gamma_v");
  if (j.contains("theta_w")) p.theta_w = num(j["theta_w"], "ptw.theta_w");
  if (j.contains("sigma_w")) p.sigma_w = num(j["sigma_w"], "ptw.sigma_w");
  if (j.contains("alpha_w")) p.alpha_w = num(j["alpha_w"], "ptw.alpha_w");
  if (j.contains("beta_w")) p.beta_w = num(j["beta_w"], "ptw.beta_w");
  if (j.contains("gamma_w")) p.gamma_w = num(j["gamma_w"], "ptw.gamma_w");
}

void parse_levy(const json& j, LevyParams& p) {
  expect_object(j, "levy");
  expect_keys(j, {"v", "run", "turn"}, "levy");
  if (j.contains("v")) p.v = num(j["v"], "levy.v");
  if (j.contains("run")) {
    const json& r = j["run"];
    expect_object(r, "levy.run");
    expect_keys(r, {"kind", "lambda", "exponent", "t_min"}, "levy.run");
    if (r.contains("kind")) {
      const std::string k = str(r["kind"], "levy.run.kind");
      if (k == "exponential") p.run = LevyParams::RunLaw::Exponential;
      else if (k == "power_law") p.run = LevyParams::RunLaw::PowerLaw;
      else fail("levy.run.kind must be exponential or power_law");
    }
    if (r.contains("lambda")) p.lambda = num(r["lambda"], "levy.run.lambda");
    if (r.contains("exponent")) p.exponent = num(r["exponent"], "levy.run.exponent");
    if (r.contains("t_min")) p.t_min = num(r["t_min"], "levy.run.t_min");
  }
  if (j.contains("turn")) {
    const json& t = j["turn"];
    expect_object(t, "levy.turn");
    expect_keys(t, {"kind", "kappa"}, "levy.turn");
    if (t.contains("kind")) {
      const std::string k = str(t["kind"], "levy.turn.kind");
      if (k == "uniform") p.turn = LevyParams::TurnLaw::Uniform;
      else if (k == "wrapped_gaussian") p.turn = LevyParams::TurnLaw::WrappedGaussian;
      else fail("levy.turn.kind must be uniform or wrapped_gaussian");
    }
    if (t.contains("kappa")) p.kappa = num(t["kappa"], "levy.turn.kappa");
  }
}

void parse_light(const json& j, LightProgram& p) {
  expect_object(j, "light");
  expect_keys(j, {"temporal", "spatial"}, "light");
  if (j.contains("temporal")) {
    const json& t = j["temporal"];
    expect_object(t, "light.temporal");
    expect_keys(t, {"kind", "I", "t0", "t1", "period", "duty"}, "light.temporal");
    if (t.contains("kind")) {
      const std::string k = str(t["kind"], "light.temporal.kind");
      if (k == "off") p.temporal = LightProgram::Temporal::Off;
      else if (k == "constant") p.temporal = LightProgram::Temporal::Constant;
      else if (k == "step") p.temporal = LightProgram::Temporal::Step;
      else if (k == "ramp") p.temporal = LightProgram::Temporal::Ramp;
      else if (k == "switch") p.temporal = LightProgram::Temporal::Switch;
      else fail("light.temporal.kind must be off, constant, step, ramp or switch");
    }
    if (t.contains("I")) p.intensity = num(t["I"], "light.temporal.I");
    if (t.contains("t0")) p.t0 = num(t["t0"], "light.temporal.t0");
    if (t.contains("t1")) p.t1 = num(t["t1"], "light.temporal.t1");
    if (t.contains("period")) p.period = num(t["period"], "light.temporal.period");
    if (t.contains("duty")) p.duty = num(t["duty"], "light.temporal.duty");
  }
  if (j.contains("spatial")) {
    const json& s = j["spatial"];
    expect_object(s, "light.spatial");
    expect_keys(s, {"kind", "center_x", "center_y", "radius"}, "light.spatial");
    if (s.contains("kind")) {
      const std::string k = str(s["kind"], "light.spatial.kind");
      if (k == "uniform") p.spatial = LightProgram::Spatial::Uniform;
      else if (k == "half_half") p.spatial = LightProgram::Spatial::HalfHalf;
      else if (k == "gradient_lateral") p.spatial = LightProgram::Spatial::GradientLateral;
      else if (k == "gradient_center_light") p.spatial = LightProgram::Spatial::GradientCenterLight;
      else if (k == "gradient_center_dark") p.spatial = LightProgram::Spatial::GradientCenterDark;
      else if (k == "circle_light") p.spatial = LightProgram::Spatial::CircleLight;
      else if (k == "circle_dark") p.spatial = LightProgram::Spatial::CircleDark;
      else fail("light.spatial.kind unknown");
    }
    if (s.contains("center_x")) p.center_x = num(s["center_x"], "light.spatial.center_x");
    if (s.contains("center_y")) p.center_y = num(s["center_y"], "light.spatial.center_y");
    if (s.contains("radius")) p.radius = num(s["radius"], "light.spatial.radius");
  }
}

}  // namespace

void Scenario::validate() const {
  params.validate();
  if (!(t_max > 0.0)) fail("t_max must be positive");
  if (stride < 1) fail("stride must be >= 1");
  if (kind == ScenarioKind::Swarm) {
    const long steps = std::lround(t_max / params.dt);
    if (std::abs(steps * params.dt - t_max) > 1e-9 * std::max(1.0, t_max))
      fail("t_max must be a multiple of dt");
    if (steps % stride != 0) fail("stride must divide the step count");
    if (dynamics.kind == DynKind::SecondOrder && (!(dynamics.m > 0.0) || !(dynamics.mu > 0.0)))
      fail("second-order dynamics need m > 0 and mu > 0");
    if (dynamics.sigma_a < 0.0) fail("sigma_a must be nonnegative");
    if (controller.sigma_m < 0.0) fail("sigma_m must be nonnegative");
    if (controller.law == ControlLaw::Displacement || controller.law == ControlLaw::Adaptive) {
      if (controller.G_r < 0.0 || controller.G_n < 0.0) fail("gains must be nonnegative");
      if (controller.law == ControlLaw::Adaptive && !(controller.alpha > 0.0))
        fail("adaptive controller needs alpha > 0");
    }
    if (controller.law == ControlLaw::RadialOnly) {
      const auto& pr = controller.profile;
      if (pr.kind == ProfileSpec::Kind::PowerLaw) {
        if (!(pr.g > 0.0)) fail("power-law profile needs g > 0");
        if (!(profile_cutoff(pr, params.d, params.R) > params.R))
          fail("profile cutoff must exceed R");
      } else if (!(pr.a > 0.0) || !(pr.b > 0.0) || !(pr.c > 0.0)) {
        fail("lj profile needs positive a, b, c");
      }
    }
    if (initial.kind == InitSpec::Kind::Lattice && initial.delta < 0.0)
      fail("initial.delta must be nonnegative");
    if (initial.kind == InitSpec::Kind::Disk && initial.r && !(*initial.r > 0.0))
      fail("initial.r must be positive");
    for (const auto& ev : events) {
      if (ev.t < 0.0 || ev.t > t_max) fail("event time outside [0, t_max]");
      if (ev.kind == EventSpec::Kind::Remove && !(ev.fraction >= 0.0 && ev.fraction < 1.0))
        fail("removal fraction must lie in [0, 1)");
      if (ev.kind == EventSpec::Kind::SetL && ev.L < 1) fail("event L must be >= 1");
    }
  } else {
    if (agents < 1) fail("agents must be >= 1");
    if (!(dT_obs > 0.0)) fail("dT_obs must be positive");
    const double sub = dT_obs / params.dt;
    if (std::abs(sub - std::round(sub)) > 1e-9 * sub)
      fail("dT_obs must be a multiple of dt");
    if (kind == ScenarioKind::Ptw) {
      ptw.validate();
      light.validate();
    } else {
      levy.validate();
    }
    if (initial.kind == InitSpec::Kind::Box && !(initial.side > 0.0))
      fail("initial.side must be positive");
  }
  if (thresholds.e_theta <= 0.0 || thresholds.e_L <= 0.0) fail("thresholds must be positive");
}

Scenario parse_scenario(const nlohmann::json& j) {
  expect_object(j, "scenario");
  expect_keys(j,
              {"name", "kind", "params", "dynamics", "controller", "initial", "events",
               "thresholds", "t_max", "stride", "early_stop", "seed", "agents", "dT_obs",
               "ptw", "levy", "light", "tune", "sweep", "rigidity", "input"},
              "scenario");
  Scenario s;
  if (j.contains("name")) s.name = str(j["name"], "name");
  if (j.contains("kind")) {
    const std::string k = str(j["kind"], "kind");
    if (k == "swarm") s.kind = ScenarioKind::Swarm;
    else if (k == "ptw") s.kind = ScenarioKind::Ptw;
    else if (k == "levy") s.kind = ScenarioKind::Levy;
    else fail("kind must be swarm, ptw or levy");
  }
  if (j.contains("params")) parse_params(j["params"], s.params);
  if (j.contains("dynamics")) parse_dynamics(j["dynamics"], s.dynamics);
  if (j.contains("controller")) parse_controller(j["controller"], s.controller);
  if (j.contains("initial")) parse_initial(j["initial"], s.initial);
  if (j.contains("events")) parse_events(j["events"], s.events);
  if (j.contains("thresholds")) parse_thresholds(j["thresholds"], s.thresholds);
  if (j.contains("t_max")) s.t_max = num(j["t_max"], "t_max");
  if (j.contains("stride")) s.stride = integer(j["stride"], "stride");
  if (j.contains("early_stop")) s.early_stop = boolean(j["early_stop"], "early_stop");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail("seed must be an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("agents")) s.agents = integer(j["agents"], "agents");
  if (j.contains("dT_obs")) s.dT_obs = num(j["dT_obs"], "dT_obs");
  if (j.contains("ptw")) parse_ptw(j["ptw"], s.ptw);
  if (j.contains("levy")) parse_levy(j["levy"], s.levy);
  if (j.contains("light")) parse_light(j["light"], s.light);
  if (j.contains("tune")) {
    TuneSpec t;
    parse_tune(j["tune"], t);
    s.tune = t;
  }
  if (j.contains("sweep")) {
    SweepSpec sw;
    parse_sweep(j["sweep"], sw);
    s.sweep = sw;
  }
  if (j.contains("rigidity")) {
    RigiditySpec r;
    parse_rigidity(j["rigidity"], r);
    s.rigidity = r;
  }
  if (j.contains("input")) s.input = str(j["input"], "input");
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    fail("parse error in '" + path + "': " + e.what());
  }
  return parse_scenario(j);
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["kind"] = s.kind == ScenarioKind::Swarm ? "swarm"
              : s.kind == ScenarioKind::Ptw ? "ptw"
                                            : "levy";
  j["params"] = {{"N", s.params.N},         {"d", s.params.d},
                 {"R", s.params.R},         {"R_min", s.params.R_min},
                 {"R_max", s.params.R_max}, {"R_s", s.params.R_s},
                 {"V_max", s.params.V_max}, {"dt", s.params.dt},
                 {"L", s.params.L},         {"T_w", s.params.T_w}};
  j["dynamics"] = {
      {"kind", s.dynamics.kind == DynKind::FirstOrder ? "first_order" : "second_order"},
      {"m", s.dynamics.m},
      {"mu", s.dynamics.mu},
      {"sigma_a", s.dynamics.sigma_a}};
  nlohmann::json c;
  switch (s.controller.law) {
    case ControlLaw::Displacement: c["law"] = "displacement"; break;
    case ControlLaw::Adaptive: c["law"] = "adaptive"; break;
    case ControlLaw::RadialOnly: c["law"] = "radial_only"; break;
    case ControlLaw::Spears: c["law"] = "spears"; break;
  }
  c["G_r"] = s.controller.G_r;
  c["G_n"] = s.controller.G_n;
  c["alpha"] = s.controller.alpha;
  c["lj"] = {{"a", s.controller.lj.a}, {"b", s.controller.lj.b}, {"c", s.controller.lj.c}};
  c["sigma_m"] = s.controller.sigma_m;
  c["compass"] = s.controller.compass;
  c["G"] = s.controller.G;
  c["F_max"] = s.controller.F_max;
  c["mass"] = s.controller.mass;
  nlohmann::json prof;
  prof["kind"] = s.controller.profile.kind == ProfileSpec::Kind::LJ ? "lj" : "power_law";
  prof["a"] = s.controller.profile.a;
  prof["b"] = s.controller.profile.b;
  prof["c"] = s.controller.profile.c;
  prof["g"] = s.controller.profile.g;
  if (s.controller.profile.R_a) prof["R_a"] = *s.controller.profile.R_a;
  c["profile"] = prof;
  j["controller"] = c;
  nlohmann::json ini;
  switch (s.initial.kind) {
    case InitSpec::Kind::Disk: ini["kind"] = "disk"; break;
    case InitSpec::Kind::Lattice: ini["kind"] = "lattice"; break;
    case InitSpec::Kind::Origin: ini["kind"] = "origin"; break;
    case InitSpec::Kind::Box: ini["kind"] = "box"; break;
  }
  if (s.initial.r) ini["r"] = *s.initial.r;
  ini["delta"] = s.initial.delta;
  ini["side"] = s.initial.side;
  j["initial"] = ini;
  j["events"] = nlohmann::json::array();
  for (const auto& ev : s.events) {
    nlohmann::json e;
    e["t"] = ev.t;
    switch (ev.kind) {
      case EventSpec::Kind::Remove:
        e["kind"] = "remove";
        e["fraction"] = ev.fraction;
        break;
      case EventSpec::Kind::SetL:
        e["kind"] = "set_L";
        e["L"] = ev.L;
        break;
      case EventSpec::Kind::ResetGains: e["kind"] = "reset_gains"; break;
    }
    j["events"].push_back(e);
  }
  j["thresholds"] = {{"e_theta", s.thresholds.e_theta}, {"e_L", s.thresholds.e_L}};
  j["t_max"] = s.t_max;
  j["stride"] = s.stride;
  j["early_stop"] = s.early_stop;
  j["seed"] = s.seed;
  j["agents"] = s.agents;
  j["dT_obs"] = s.dT_obs;
  j["ptw"] = {{"theta_v", s.ptw.theta_v}, {"mu_v", s.ptw.mu_v},
              {"sigma_v", s.ptw.sigma_v}, {"alpha_v", s.ptw.alpha_v},
              {"beta_v", s.ptw.beta_v},   {"gamma_v", s.ptw.gamma_v},
              {"theta_w", s.ptw.theta_w}, {"sigma_w", s.ptw.sigma_w},
              {"alpha_w", s.ptw.alpha_w}, {"beta_w", s.ptw.beta_w},
              {"gamma_w", s.ptw.gamma_w}};
  j["levy"] = {
      {"v", s.levy.v},
      {"run",
       {{"kind", s.levy.run == LevyParams::RunLaw::Exponential ? "exponential" : "power_law"},
        {"lambda", s.levy.lambda},
        {"exponent", s.levy.exponent},
        {"t_min", s.levy.t_min}}},
      {"turn",
       {{"kind",
         s.levy.turn == LevyParams::TurnLaw::Uniform ? "uniform" : "wrapped_gaussian"},
        {"kappa", s.levy.kappa}}}};
  nlohmann::json light;
  switch (s.light.temporal) {
    case LightProgram::Temporal::Off: light["temporal"]["kind"] = "off"; break;
    case LightProgram::Temporal::Constant: light["temporal"]["kind"] = "constant"; break;
    case LightProgram::Temporal::Step: light["temporal"]["kind"] = "step"; break;
    case LightProgram::Temporal::Ramp: light["temporal"]["kind"] = "ramp"; break;
    case LightProgram::Temporal::Switch: light["temporal"]["kind"] = "switch"; break;
  }
  light["temporal"]["I"] = s.light.intensity;
  light["temporal"]["t0"] = s.light.t0;
  light["temporal"]["t1"] = s.light.t1;
  light["temporal"]["period"] = s.light.period;
  light["temporal"]["duty"] = s.light.duty;
  switch (s.light.spatial) {
    case LightProgram::Spatial::Uniform: light["spatial"]["kind"] = "uniform"; break;
    case LightProgram::Spatial::HalfHalf: light["spatial"]["kind"] = "half_half"; break;
    case LightProgram::Spatial::GradientLateral:
      light["spatial"]["kind"] = "gradient_lateral";
      break;
    case LightProgram::Spatial::GradientCenterLight:
      light["spatial"]["kind"] = "gradient_center_light";
      break;
    case LightProgram::Spatial::GradientCenterDark:
      light["spatial"]["kind"] = "gradient_center_dark";
      break;
    case LightProgram::Spatial::CircleLight: light["spatial"]["kind"] = "circle_light"; break;
    case LightProgram::Spatial::CircleDark: light["spatial"]["kind"] = "circle_dark"; break;
  }
  light["spatial"]["center_x"] = s.light.center_x;
  light["spatial"]["center_y"] = s.light.center_y;
  light["spatial"]["radius"] = s.light.radius;
  j["light"] = light;
  if (s.tune)
    j["tune"] = {{"G_r", s.tune->G_r}, {"G_n", s.tune->G_n}, {"trials", s.tune->trials}};
  if (s.sweep)
    j["sweep"] = {{"path", s.sweep->path},
                  {"values", s.sweep->values},
                  {"trials", s.sweep->trials},
                  {"keep_series", s.sweep->keep_series}};
  if (s.rigidity)
    j["rigidity"] = {{"count", s.rigidity->count}, {"vacancies", s.rigidity->vacancies}};
  if (!s.input.empty()) j["input"] = s.input;
  return j;
}

double initial_radius(const Scenario& s) {
  if (s.initial.r) return *s.initial.r;
  return std::sqrt(static_cast<double>(s.params.N) / 25.0);
}

double profile_cutoff(const ProfileSpec& prof, int d, double R) {
  if (prof.R_a) return *prof.R_a;
  const double R_next = (d == 3 ? std::sqrt(2.0) : std::sqrt(3.0)) * R;
  return 0.5 * (R + R_next);
}

std::function<double(double)> profile_function(const ProfileSpec& prof, int d, double R) {
  if (prof.kind == ProfileSpec::Kind::LJ) {
    const double a = prof.a, b = prof.b, c = prof.c;
    return [a, b, c](double z) { return f_radial_lj(z, a, b, c); };
  }
  const double g = prof.g, R_a = profile_cutoff(prof, d, R);
  return [g, R, R_a](double z) { return f1_power_law(z, g, R, R_a); };
}

std::function<double(double)> profile_derivative(const ProfileSpec& prof, int d, double R) {
  if (prof.kind == ProfileSpec::Kind::LJ) {
    const double a = prof.a, b = prof.b, c = prof.c;
    return [a, b, c](double z) { return f_radial_lj_prime(z, a, b, c); };
  }
  const double g = prof.g, R_a = profile_cutoff(prof, d, R);
  return [g, R, R_a](double z) { return f1_power_law_prime(z, g, R, R_a); };
}

}  // namespace swarm
