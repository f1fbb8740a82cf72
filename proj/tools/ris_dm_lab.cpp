// ris-dm-lab: secure directional-modulation experiments with a rotatable
// active RIS. Subcommands: sweep, crlb-map, train, eval.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "risdm/harness/config_io.hpp"
#include "risdm/harness/outputs.hpp"
#include "risdm/harness/sweep.hpp"
#include "risdm/rl/train.hpp"
#include "risdm/sensing.hpp"

using namespace risdm;

namespace {

ScenarioConfig resolve_config(const std::string& config_path, const std::string& preset) {
  if (!config_path.empty()) return load_config(config_path);
  if (preset == "paper") return ScenarioConfig::paper_defaults();
  return ScenarioConfig::desk();
}

std::string crlb_map_csv(const ScenarioConfig& cfg, double resolution_deg, int slot) {
  Scenario sc = build_scenario(cfg);
  SeededRng rng(sc.cfg.seed);
  auto [theta_e, phi_e] = eve_angles(sc, slot);

  std::string csv = "alpha_deg,beta_deg,crlb_theta_rad2,crlb_phi_rad2\n";
  const RotationBoxConfig& box = cfg.geometry.rotation_box;
  int n_alpha = static_cast<int>(std::floor((box.alpha_max_deg - box.alpha_min_deg) /
                                            resolution_deg + 1e-9)) + 1;
  int n_beta = static_cast<int>(std::floor((box.beta_max_deg - box.beta_min_deg) /
                                           resolution_deg + 1e-9)) + 1;
  for (int ia = 0; ia < n_alpha; ++ia) {
    double alpha_deg = box.alpha_min_deg + ia * resolution_deg;
    for (int ib = 0; ib < n_beta; ++ib) {
      double beta_deg = box.beta_min_deg + ib * resolution_deg;
      Orientation o{deg2rad(alpha_deg), deg2rad(beta_deg)};
      ChannelSet ch = make_channels(sc, slot, o, rng);
      RngStream stage1 = rng.stream("stage1", static_cast<uint64_t>(slot));
      MeasurementPlan plan = design_positioning_phases(ch, sc.cfg.sensing.num_modes, sc.pilot_eve,
                                                       sc.pilot_bob, sc.noise_sense, stage1);
      std::vector<Vec3> pos = place_elements(sc.ris_layout, o, Vec3::Zero());
      CrlbReport rep = fisher_information(theta_e, phi_e, plan, ch, pos, sc.consts.wavelength);
      csv += format_number(alpha_deg) + "," + format_number(beta_deg) + "," +
             format_number(rep.crlb_theta) + "," + format_number(rep.crlb_phi) + "\n";
    }
  }
  return csv;
}

std::string curve_csv(const TrainResult& result) {
  std::string csv = "episode,reward,smoothed_reward\n";
  for (size_t i = 0; i < result.episode_rewards.size(); ++i) {
    csv += std::to_string(i) + "," + format_number(result.episode_rewards[i]) + "," +
           format_number(result.smoothed_rewards[i]) + "\n";
  }
  return csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotatable-RIS directional modulation lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset = "desk";
  app.add_option("--config", config_path, "scenario config file (JSON)")->expected(1);
  app.add_option("--preset", preset, "built-in scenario when no config is given")
      ->check(CLI::IsMember({"desk", "paper"}));

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate secrecy rate along a parameter axis");
  std::string axis_str;
  std::vector<double> values;
  std::vector<std::string> algos{"mnpl", "el"};
  int seeds = 5;
  std::string out_csv, out_svg;
  int threads = 0;
  int dsact_episodes = 0;
  sweep_cmd->add_option("--axis", axis_str, "tx_power | antennas | ris_elements | rho_max")
      ->required();
  sweep_cmd->add_option("--values", values, "axis values (comma separated)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--algo", algos, "algorithms: mnpl, el, dsact (repeatable)")
      ->delimiter(',');
  sweep_cmd->add_option("--seeds", seeds, "number of seeds per point");
  sweep_cmd->add_option("--out", out_csv, "output CSV path")->required();
  sweep_cmd->add_option("--svg", out_svg, "optional SVG plot path");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  sweep_cmd->add_option("--dsact-episodes", dsact_episodes,
                        "training episodes per dsact point (0 = config value)");

  // crlb-map
  auto* map_cmd = app.add_subcommand("crlb-map", "CRLB over the rotation box");
  double resolution_deg = 5.0;
  int map_slot = 0;
  std::string map_out;
  map_cmd->add_option("--resolution-deg", resolution_deg, "grid resolution in degrees");
  map_cmd->add_option("--slot", map_slot, "trajectory slot");
  map_cmd->add_option("--out", map_out, "output CSV path")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "train the orientation agent");
  int episodes = 0;
  uint64_t train_seed = 0;
  std::string checkpoint_out, curve_out;
  train_cmd->add_option("--episodes", episodes, "episode count (0 = config value)");
  auto* seed_opt = train_cmd->add_option("--seed", train_seed,
                                         "training seed (default: config seed)");
  train_cmd->add_option("--checkpoint", checkpoint_out, "checkpoint output path")->required();
  train_cmd->add_option("--curve", curve_out, "optional reward-curve CSV path");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "greedy evaluation of a trained checkpoint");
  std::string checkpoint_in, eval_out;
  int eval_seeds = 20;
  bool with_baseline = false;
  eval_cmd->add_option("--checkpoint", checkpoint_in, "checkpoint path")->required();
  eval_cmd->add_option("--seeds", eval_seeds, "evaluation seeds");
  eval_cmd->add_option("--out", eval_out, "optional per-seed CSV path");
  eval_cmd->add_flag("--baseline", with_baseline, "also evaluate the Eve-aligned baseline");

  CLI11_PARSE(app, argc, argv);

  try {
    ScenarioConfig cfg = resolve_config(config_path, preset);

    if (*sweep_cmd) {
      SweepOptions opts;
      opts.threads = threads;
      opts.dsact_episodes = dsact_episodes;
      auto records = run_sweep(cfg, axis_from_name(axis_str), values, algos, seeds, opts);
      std::filesystem::path svg_path = out_svg;
      emit_outputs(records, out_csv, out_svg.empty() ? nullptr : &svg_path);
      std::cout << "wrote " << records.size() << " records to " << out_csv << "\n";
    } else if (*map_cmd) {
      write_text_file(map_out, crlb_map_csv(cfg, resolution_deg, map_slot));
      std::cout << "wrote CRLB map to " << map_out << "\n";
    } else if (*train_cmd) {
      Scenario sc = build_scenario(cfg);
      TrainOptions topts;
      topts.episodes = episodes;
      uint64_t seed = seed_opt->count() > 0 ? train_seed : cfg.seed;
      TrainResult result = train(sc, topts, seed);
      save_checkpoint(*result.agent, checkpoint_out);
      if (!curve_out.empty()) write_text_file(curve_out, curve_csv(result));
      double last = result.smoothed_rewards.empty() ? 0.0 : result.smoothed_rewards.back();
      std::cout << "trained " << result.episode_rewards.size()
                << " episodes, final smoothed reward " << format_number(last) << ", checkpoint "
                << checkpoint_out << "\n";
    } else if (*eval_cmd) {
      Scenario sc = build_scenario(cfg);
      auto agent = load_checkpoint(checkpoint_in, agent_config(sc));
      EvalResult greedy = evaluate_greedy(sc, *agent, eval_seeds);
      std::cout << "greedy policy mean secrecy rate: " << format_number(greedy.mean_secrecy)
                << " bits/s/Hz over " << eval_seeds << " seeds\n";
      if (with_baseline) {
        EvalResult base = evaluate_eve_aligned(sc, eval_seeds);
        std::cout << "eve-aligned baseline mean secrecy rate: "
                  << format_number(base.mean_secrecy) << " bits/s/Hz\n";
      }
      if (!eval_out.empty()) {
        std::string csv = "seed_index,secrecy_rate_bits\n";
        for (size_t i = 0; i < greedy.per_seed_secrecy.size(); ++i) {
          csv += std::to_string(i) + "," + format_number(greedy.per_seed_secrecy[i]) + "\n";
        }
        write_text_file(eval_out, csv);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
