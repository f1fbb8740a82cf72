#ifndef RISDM_HARNESS_SWEEP_HPP
#define RISDM_HARNESS_SWEEP_HPP

#include <string>
#include <vector>

#include "risdm/scenario.hpp"

namespace risdm {

enum class SweepAxis { kTxPower, kAntennas, kRisElements, kRhoMax };

SweepAxis axis_from_name(const std::string& name);
std::string axis_name(SweepAxis axis);

// One evaluated (point, seed, algorithm, stream) cell of a sweep.
struct ExperimentRecord {
  std::string axis;
  double value = 0.0;
  std::string algorithm;  // mnpl | el | dsact
  std::string stream;     // all | los | ris
  uint64_t seed = 0;
  double secrecy_rate = 0.0;  // NaN when status != ok
  double crlb_theta = 0.0;
  double crlb_phi = 0.0;
  std::string status = "ok";
};

struct SweepOptions {
  int threads = 0;          // 0 -> hardware concurrency capped by the job count
  int dsact_episodes = 0;   // 0 -> scenario rl.episodes
};

// Applies an axis value to a configuration (dBm for tx_power, element counts
// for the array axes, amplitude for rho_max).
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

// Near-square factorization n = n_h * n_v with n_h >= n_v.
std::pair<int, int> split_count(int n);

// Full cross product of values x algorithms x seeds, slot 0, Eve-aligned
// orientation (policy orientation for dsact). Solver failures are recorded in
// the row status and the sweep continues. Jobs run on a bounded pool; record
// order does not depend on scheduling.
std::vector<ExperimentRecord> run_sweep(const ScenarioConfig& base, SweepAxis axis,
                                        const std::vector<double>& values,
                                        const std::vector<std::string>& algorithms, int num_seeds,
                                        const SweepOptions& opts = {});

}  // namespace risdm

#endif
