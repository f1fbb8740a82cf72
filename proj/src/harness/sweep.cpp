#include "risdm/harness/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "risdm/beamforming.hpp"
#include "risdm/rl/train.hpp"
#include "risdm/sensing.hpp"

namespace risdm {

SweepAxis axis_from_name(const std::string& name) {
  if (name == "tx_power") return SweepAxis::kTxPower;
  if (name == "antennas") return SweepAxis::kAntennas;
  if (name == "ris_elements") return SweepAxis::kRisElements;
  if (name == "rho_max") return SweepAxis::kRhoMax;
  throw std::invalid_argument("unknown sweep axis: " + name);
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTxPower: return "tx_power";
    case SweepAxis::kAntennas: return "antennas";
    case SweepAxis::kRisElements: return "ris_elements";
    case SweepAxis::kRhoMax: return "rho_max";
  }
  return "?";
}

std::pair<int, int> split_count(int n) {
  if (n < 1) throw std::invalid_argument("split_count: need a positive count");
  for (int d = static_cast<int>(std::sqrt(static_cast<double>(n))); d >= 1; --d) {
    if (n % d == 0) return {n / d, d};
  }
  return {n, 1};
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
  ScenarioConfig cfg = base;
  switch (axis) {
    case SweepAxis::kTxPower:
      cfg.constants.tx_power_dbm = value;
      break;
    case SweepAxis::kAntennas: {
      auto [h, v] = split_count(static_cast<int>(std::lround(value)));
      cfg.arrays.bs_h = h;
      cfg.arrays.bs_v = v;
      break;
    }
    case SweepAxis::kRisElements: {
      auto [h, v] = split_count(static_cast<int>(std::lround(value)));
      cfg.arrays.ris_h = h;
      cfg.arrays.ris_v = v;
      break;
    }
    case SweepAxis::kRhoMax:
      cfg.constants.rho_max = value;
      break;
  }
  return cfg;
}

namespace {

struct PointResult {
  BeamformingSolution solution;
  CrlbReport report;
  ChannelSet channels;
  Scenario scenario;
};

PointResult evaluate_point(const ScenarioConfig& cfg, const std::string& algorithm,
                           const SweepOptions& opts) {
  PointResult out;
  out.scenario = build_scenario(cfg);
  const Scenario& sc = out.scenario;
  const int slot = 0;

  Orientation orientation = eve_aligned_orientation(sc, slot);
  if (algorithm == "dsact") {
    TrainOptions topts;
    topts.episodes = opts.dsact_episodes;
    TrainResult tr = train(sc, topts, sc.cfg.seed);
    RisEnv env(sc);
    Vec2 a = tr.agent->greedy_action(env.featurize(env.initial_state(slot)));
    orientation = Orientation{a(0), a(1)};
  }

  SeededRng rng(sc.cfg.seed);
  out.channels = make_channels(sc, slot, orientation, rng);
  RngStream stage1 = rng.stream("stage1", slot);
  MeasurementPlan plan = design_positioning_phases(out.channels, sc.cfg.sensing.num_modes,
                                                   sc.pilot_eve, sc.pilot_bob, sc.noise_sense,
                                                   stage1);
  std::vector<Vec3> positions = place_elements(sc.ris_layout, orientation, Vec3::Zero());
  auto [theta_e, phi_e] = eve_angles(sc, slot);
  out.report = fisher_information(theta_e, phi_e, plan, out.channels, positions,
                                  sc.consts.wavelength);

  if (algorithm == "mnpl") {
    out.solution = mnpl_solve(out.channels, sc.consts);
  } else {
    out.solution = el_solve(out.channels, sc.consts);  // el and dsact share the solver
  }
  return out;
}

}  // namespace

std::vector<ExperimentRecord> run_sweep(const ScenarioConfig& base, SweepAxis axis,
                                        const std::vector<double>& values,
                                        const std::vector<std::string>& algorithms, int num_seeds,
                                        const SweepOptions& opts) {
  if (values.empty()) throw std::invalid_argument("run_sweep: values must be nonempty");
  if (algorithms.empty()) throw std::invalid_argument("run_sweep: algorithms must be nonempty");
  if (num_seeds < 1) throw std::invalid_argument("run_sweep: need at least one seed");
  for (const std::string& a : algorithms) {
    if (a != "mnpl" && a != "el" && a != "dsact") {
      throw std::invalid_argument("run_sweep: unknown algorithm " + a);
    }
  }

  struct Job {
    double value;
    std::string algorithm;
    uint64_t seed_index;
  };
  std::vector<Job> jobs;
  for (double v : values) {
    for (const std::string& a : algorithms) {
      for (int s = 0; s < num_seeds; ++s) jobs.push_back({v, a, static_cast<uint64_t>(s)});
    }
  }

  static const char* kStreams[3] = {"all", "los", "ris"};
  std::vector<ExperimentRecord> records(jobs.size() * 3);

  auto run_job = [&](size_t idx) {
    const Job& job = jobs[idx];
    ScenarioConfig cfg = apply_axis(base, axis, job.value);
    cfg.seed = base.seed + job.seed_index;
    ExperimentRecord proto;
    proto.axis = axis_name(axis);
    proto.value = job.value;
    proto.algorithm = job.algorithm;
    proto.seed = cfg.seed;
    try {
      PointResult point = evaluate_point(cfg, job.algorithm, opts);
      proto.crlb_theta = point.report.crlb_theta;
      proto.crlb_phi = point.report.crlb_phi;
      const Path paths[3] = {Path::kComposite, Path::kDirect, Path::kReflected};
      for (int s = 0; s < 3; ++s) {
        ExperimentRecord rec = proto;
        rec.stream = kStreams[s];
        rec.secrecy_rate = secrecy_rate(point.solution, point.channels,
                                        point.scenario.consts, paths[s]);
        records[idx * 3 + static_cast<size_t>(s)] = std::move(rec);
      }
    } catch (const std::exception& e) {
      for (int s = 0; s < 3; ++s) {
        ExperimentRecord rec = proto;
        rec.stream = kStreams[s];
        rec.secrecy_rate = std::numeric_limits<double>::quiet_NaN();
        rec.status = e.what();
        records[idx * 3 + static_cast<size_t>(s)] = std::move(rec);
      }
    }
  };

  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::min<size_t>(
                                       std::max(1u, std::thread::hardware_concurrency()),
                                       jobs.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) run_job(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return records;
}

}  // namespace risdm
