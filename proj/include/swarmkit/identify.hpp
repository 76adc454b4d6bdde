#pragma once

#include "swarmkit/ptw.hpp"
#include "swarmkit/types.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace swarm {

// Per-agent kinematics extracted from a tracked planar trajectory.
struct KinematicSeries {
  std::vector<double> t;
  std::vector<double> v;  // px/s, >= 0
  std::vector<double> w;  // rad/s, signed
  std::vector<double> u;  // light input in [0, 1]
};

struct PreprocessResult {
  bool accepted = false;
  std::string reason;  // set when rejected
  KinematicSeries series;
};

// Tracked positions -> smoothed kinematics.  Positions get a centered moving
// average (window samples, shrinking at the ends), velocity is a second-order
// finite difference (central inside, one-sided at the ends), the angular
// velocity comes from the turn between consecutive velocity vectors, and the
// derived series are smoothed again.  Trajectories shorter than min_duration
// are rejected, not thrown.  u is left empty for the caller to attach.
PreprocessResult preprocess(const std::vector<double>& t, const Mat& positions,
                            double min_duration = 5.0, int window = 3);

// Indices whose |x - median| / MAD exceeds m.  A zero MAD scores every
// deviation from the median as infinite.
std::vector<std::size_t> detect_outliers(const std::vector<double>& values, double m);

// OLS for x_{k+1} = a x_k + sum_j b_j u_j,k + c.  Channels whose column does
// not survive rank-revealing pivoting are flagged unidentifiable and their
// coefficients set to NaN.
struct FitResult {
  double a = 0.0;
  std::vector<double> b;  // one per input channel
  double c = 0.0;
  double resid_std = 0.0;
  bool a_identifiable = false;
  std::vector<bool> b_identifiable;
  bool c_identifiable = false;
  int pairs = 0;
};

FitResult fit_discrete(const std::vector<double>& x,
                       const std::vector<std::vector<double>>& inputs);

// Continuous-time parameters of the mean-reverting model from the discrete
// coefficients; valid only when 0 < a < 1.
struct RecoveredOU {
  bool valid = false;
  std::string reason;
  double theta = 0.0;
  double mu = 0.0;
  std::vector<double> alpha;  // per input channel; NaN if unidentifiable
  double sigma = 0.0;
};

RecoveredOU recover_continuous(const FitResult& fit, double dT);

// Full per-agent calibration: speed fit on v, turning fit on |w|, both with
// inputs (u, max(u_dot, 0)) where u_dot is the causal backward difference of
// u.  mu of the turning fit is discarded (the model holds it at zero).
struct Calibration {
  bool valid = false;
  std::string reason;
  PTWParams params;
  // per-fit identifiability of (alpha, beta)
  bool alpha_v_ok = false, beta_v_ok = false;
  bool alpha_w_ok = false, beta_w_ok = false;
};

Calibration calibrate_agent(const KinematicSeries& series, double dT);

// Population screening: an agent is dropped when any of its parameters is a
// MAD outlier across the population.  Unidentifiable (NaN) entries are
// skipped.  Returns the retained indices.
std::vector<std::size_t> filter_population(const std::vector<PTWParams>& population,
                                           double m = 5.0);

// Uniform sampling with replacement from the retained pool.
std::vector<PTWParams> resample_population(const std::vector<PTWParams>& valid, int N,
                                           std::mt19937_64& gen);

}  // namespace swarm
