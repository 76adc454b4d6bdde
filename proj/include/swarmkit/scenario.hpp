#pragma once

#include "swarmkit/control.hpp"
#include "swarmkit/dynamics.hpp"
#include "swarmkit/levy.hpp"
#include "swarmkit/light.hpp"
#include "swarmkit/ptw.hpp"
#include "swarmkit/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swarm {

enum class ScenarioKind { Swarm, Ptw, Levy };

enum class ControlLaw { Displacement, Adaptive, RadialOnly, Spears };

// Radial profile of the rigid-lattice runs.  R and the default cutoff come
// from the scenario parameters at resolution time.
struct ProfileSpec {
  enum class Kind { LJ, PowerLaw };
  Kind kind = Kind::LJ;
  double a = 0.5;
  double b = 0.5;
  double c = 12.0;
  double g = 0.5;                // power-law strength
  std::optional<double> R_a;     // attraction cutoff; default (1 + R_next)/2
};

struct ControllerSpec {
  ControlLaw law = ControlLaw::Displacement;
  double G_r = 15.0;
  double G_n = 8.0;
  double alpha = 3.0;       // adaptive growth rate
  LJParams lj;              // displacement-law radial profile
  double sigma_m = 0.0;     // measurement noise
  bool compass = false;     // one shared bearing offset per agent per step
  double G = 1.0;           // gravitational strength
  double F_max = 2.0;       // force clip
  double mass = 1.0;
  ProfileSpec profile;      // radial-only law
};

struct InitSpec {
  enum class Kind { Disk, Lattice, Origin, Box };
  Kind kind = Kind::Disk;
  std::optional<double> r;  // disk radius; absent = sqrt(N / 25)
  double delta = 0.0;       // lattice perturbation radius
  double side = 0.0;        // box side, kinematic populations
};

struct EventSpec {
  enum class Kind { Remove, SetL, ResetGains };
  double t = 0.0;
  Kind kind = Kind::Remove;
  double fraction = 0.0;  // removal
  int L = 4;              // lattice-order switch
};

struct Thresholds {
  double e_theta = 0.2;
  double e_L = 0.3;
};

// Optional gain grid for the tune subcommand.
struct TuneSpec {
  std::vector<double> G_r;
  std::vector<double> G_n;
  int trials = 5;
};

// Optional parameter sweep for the sweep subcommand; path is a JSON pointer
// into the canonical scenario form.
struct SweepSpec {
  std::string path;
  std::vector<double> values;
  int trials = 20;
  bool keep_series = false;
};

// Optional lattice batch for the rigidity subcommand.
struct RigiditySpec {
  int count = 10;
  int vacancies = 0;
};

struct Scenario {
  std::string name = "scenario";
  ScenarioKind kind = ScenarioKind::Swarm;

  SwarmParams params;
  DynamicsSpec dynamics;
  ControllerSpec controller;
  InitSpec initial;
  std::vector<EventSpec> events;
  Thresholds thresholds;
  double t_max = 200.0;
  int stride = 50;          // metric/recording interval in steps
  bool early_stop = true;   // stop once steady (never before the last event)
  std::uint64_t seed = 1;

  // kinematic populations
  int agents = 100;
  double dT_obs = 0.5;
  PTWParams ptw;
  LevyParams levy;
  LightProgram light;

  // subcommand sections
  std::optional<TuneSpec> tune;
  std::optional<SweepSpec> sweep;
  std::optional<RigiditySpec> rigidity;
  std::string input;  // identify: trajectory CSV to consume

  void validate() const;  // throws std::invalid_argument
};

// Strict parse: unknown keys anywhere are errors.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

// Canonical full form; parse_scenario(scenario_to_json(s)) round-trips.
nlohmann::json scenario_to_json(const Scenario& s);

// Effective initial disk radius: explicit r, else sqrt(N / 25).
double initial_radius(const Scenario& s);

// Attraction cutoff of the radial-only profile: explicit R_a, else
// (R + R_next)/2 with R_next the grid's second-neighbour distance.
double profile_cutoff(const ProfileSpec& prof, int d, double R);

// Interaction profile and its slope as callables on the distance.
std::function<double(double)> profile_function(const ProfileSpec& prof, int d, double R);
std::function<double(double)> profile_derivative(const ProfileSpec& prof, int d, double R);

}  // namespace swarm
