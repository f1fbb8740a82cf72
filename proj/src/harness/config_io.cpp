#include "risdm/harness/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace risdm {

namespace {

using nlohmann::json;

// Pulls known keys out of an object and rejects everything left over.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw std::invalid_argument("config: " + path_ + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    if (auto it = j_.find(key); it != j_.end()) {
      try {
        out = it->get<T>();
      } catch (const json::exception&) {
        throw std::invalid_argument("config: bad value for " + join(key));
      }
      seen_.insert(key);
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& child(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw std::invalid_argument("config: unknown key " + join(it.key().c_str()));
      }
    }
  }

 private:
  std::string join(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Vec3 read_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("config: " + path + " must be [x, y, z]");
  }
  return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

void parse_geometry(const json& j, GeometryConfig& g) {
  ObjectReader r(j, "geometry");
  if (r.has("bs_position_m")) g.bs_position_m = read_vec3(r.child("bs_position_m"), "geometry.bs_position_m");
  if (r.has("bob_position_m")) g.bob_position_m = read_vec3(r.child("bob_position_m"), "geometry.bob_position_m");
  if (r.has("eve_waypoints_m")) {
    const json& wp = r.child("eve_waypoints_m");
    if (!wp.is_array() || wp.empty()) {
      throw std::invalid_argument("config: geometry.eve_waypoints_m must be a nonempty array");
    }
    g.eve_waypoints_m.clear();
    for (size_t i = 0; i < wp.size(); ++i) {
      g.eve_waypoints_m.push_back(read_vec3(wp.at(i), "geometry.eve_waypoints_m"));
    }
  }
  r.read("num_slots", g.num_slots);
  r.read("bs_elevation_deg", g.bs_elevation_deg);
  r.read("bs_azimuth_deg", g.bs_azimuth_deg);
  if (r.has("rotation_box_deg")) {
    ObjectReader rb(r.child("rotation_box_deg"), "geometry.rotation_box_deg");
    rb.read("alpha_min", g.rotation_box.alpha_min_deg);
    rb.read("alpha_max", g.rotation_box.alpha_max_deg);
    rb.read("beta_min", g.rotation_box.beta_min_deg);
    rb.read("beta_max", g.rotation_box.beta_max_deg);
    rb.finish();
  }
  r.finish();
}

void parse_arrays(const json& j, ArraysConfig& a) {
  ObjectReader r(j, "arrays");
  r.read("bs_h", a.bs_h);
  r.read("bs_v", a.bs_v);
  r.read("ris_h", a.ris_h);
  r.read("ris_v", a.ris_v);
  r.read("bs_spacing_m", a.bs_spacing_m);
  r.read("ris_spacing_m", a.ris_spacing_m);
  r.finish();
}

void parse_constants(const json& j, ConstantsConfig& c) {
  ObjectReader r(j, "constants");
  r.read("carrier_ghz", c.carrier_ghz);
  r.read("tx_power_dbm", c.tx_power_dbm);
  r.read("rho_max", c.rho_max);
  r.read("noise_bob_dbm", c.noise_bob_dbm);
  r.read("noise_ris_dbm", c.noise_ris_dbm);
  r.read("noise_sense_dbm", c.noise_sense_dbm);
  r.read("channel_power_gain", c.channel_power_gain);
  r.read("multipath_count", c.multipath_count);
  r.read("multipath_excess_loss_db", c.multipath_excess_loss_db);
  r.finish();
}

void parse_sensing(const json& j, SensingConfig& s) {
  ObjectReader r(j, "sensing");
  r.read("num_modes", s.num_modes);
  r.read("crlb_threshold_rad2", s.crlb_threshold_rad2);
  if (r.has("music")) {
    ObjectReader m(r.child("music"), "sensing.music");
    m.read("theta_min_deg", s.music.theta_min_deg);
    m.read("theta_max_deg", s.music.theta_max_deg);
    m.read("phi_min_deg", s.music.phi_min_deg);
    m.read("phi_max_deg", s.music.phi_max_deg);
    m.read("step_deg", s.music.step_deg);
    m.read("snapshots", s.music.snapshots);
    m.finish();
  }
  r.finish();
}

void parse_rl(const json& j, RlConfig& rl) {
  ObjectReader r(j, "rl");
  r.read("actor_lr", rl.actor_lr);
  r.read("critic_lr", rl.critic_lr);
  r.read("temperature_lr", rl.temperature_lr);
  r.read("discount", rl.discount);
  r.read("soft_update", rl.soft_update);
  r.read("sync_rate", rl.sync_rate);
  r.read("init_temperature", rl.init_temperature);
  r.read("adapt_temperature", rl.adapt_temperature);
  r.read("target_entropy", rl.target_entropy);
  r.read("hidden", rl.hidden);
  r.read("batch", rl.batch);
  r.read("buffer_capacity", rl.buffer_capacity);
  r.read("warmup", rl.warmup);
  r.read("clip_constant", rl.clip_constant);
  r.read("value_range_lo", rl.value_range_lo);
  r.read("value_range_hi", rl.value_range_hi);
  r.read("bound_range_lo", rl.bound_range_lo);
  r.read("bound_range_hi", rl.bound_range_hi);
  r.read("penalty", rl.penalty);
  r.read("episodes", rl.episodes);
  r.read("algorithm", rl.algorithm);
  r.finish();
}

}  // namespace

ScenarioConfig config_from_json(const std::string& text) {
  ScenarioConfig cfg = ScenarioConfig::paper_defaults();
  std::string trimmed;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) trimmed.push_back(ch);
  }
  if (trimmed.empty()) {
    cfg.validate();
    return cfg;  // empty file: full defaults
  }
  json j = json::parse(text);
  ObjectReader r(j, "");
  r.read("seed", cfg.seed);
  if (r.has("geometry")) parse_geometry(r.child("geometry"), cfg.geometry);
  if (r.has("arrays")) parse_arrays(r.child("arrays"), cfg.arrays);
  if (r.has("constants")) parse_constants(r.child("constants"), cfg.constants);
  if (r.has("sensing")) parse_sensing(r.child("sensing"), cfg.sensing);
  if (r.has("rl")) parse_rl(r.child("rl"), cfg.rl);
  r.finish();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_config: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  json geometry;
  geometry["bs_position_m"] = {cfg.geometry.bs_position_m.x(), cfg.geometry.bs_position_m.y(),
                               cfg.geometry.bs_position_m.z()};
  geometry["bob_position_m"] = {cfg.geometry.bob_position_m.x(), cfg.geometry.bob_position_m.y(),
                                cfg.geometry.bob_position_m.z()};
  json waypoints = json::array();
  for (const Vec3& w : cfg.geometry.eve_waypoints_m) waypoints.push_back({w.x(), w.y(), w.z()});
  geometry["eve_waypoints_m"] = std::move(waypoints);
  geometry["num_slots"] = cfg.geometry.num_slots;
  if (!std::isnan(cfg.geometry.bs_elevation_deg)) {
    geometry["bs_elevation_deg"] = cfg.geometry.bs_elevation_deg;
  }
  if (!std::isnan(cfg.geometry.bs_azimuth_deg)) {
    geometry["bs_azimuth_deg"] = cfg.geometry.bs_azimuth_deg;
  }
  geometry["rotation_box_deg"] = {{"alpha_min", cfg.geometry.rotation_box.alpha_min_deg},
                                  {"alpha_max", cfg.geometry.rotation_box.alpha_max_deg},
                                  {"beta_min", cfg.geometry.rotation_box.beta_min_deg},
                                  {"beta_max", cfg.geometry.rotation_box.beta_max_deg}};
  j["geometry"] = std::move(geometry);
  j["arrays"] = {{"bs_h", cfg.arrays.bs_h},         {"bs_v", cfg.arrays.bs_v},
                 {"ris_h", cfg.arrays.ris_h},       {"ris_v", cfg.arrays.ris_v},
                 {"bs_spacing_m", cfg.arrays.bs_spacing_m}, {"ris_spacing_m", cfg.arrays.ris_spacing_m}};
  j["constants"] = {{"carrier_ghz", cfg.constants.carrier_ghz},
                    {"tx_power_dbm", cfg.constants.tx_power_dbm},
                    {"rho_max", cfg.constants.rho_max},
                    {"noise_bob_dbm", cfg.constants.noise_bob_dbm},
                    {"noise_ris_dbm", cfg.constants.noise_ris_dbm},
                    {"noise_sense_dbm", cfg.constants.noise_sense_dbm},
                    {"channel_power_gain", cfg.constants.channel_power_gain},
                    {"multipath_count", cfg.constants.multipath_count},
                    {"multipath_excess_loss_db", cfg.constants.multipath_excess_loss_db}};
  j["sensing"] = {{"num_modes", cfg.sensing.num_modes},
                  {"crlb_threshold_rad2", cfg.sensing.crlb_threshold_rad2},
                  {"music",
                   {{"theta_min_deg", cfg.sensing.music.theta_min_deg},
                    {"theta_max_deg", cfg.sensing.music.theta_max_deg},
                    {"phi_min_deg", cfg.sensing.music.phi_min_deg},
                    {"phi_max_deg", cfg.sensing.music.phi_max_deg},
                    {"step_deg", cfg.sensing.music.step_deg},
                    {"snapshots", cfg.sensing.music.snapshots}}}};
  j["rl"] = {{"actor_lr", cfg.rl.actor_lr},
             {"critic_lr", cfg.rl.critic_lr},
             {"temperature_lr", cfg.rl.temperature_lr},
             {"discount", cfg.rl.discount},
             {"soft_update", cfg.rl.soft_update},
             {"sync_rate", cfg.rl.sync_rate},
             {"init_temperature", cfg.rl.init_temperature},
             {"adapt_temperature", cfg.rl.adapt_temperature},
             {"target_entropy", cfg.rl.target_entropy},
             {"hidden", cfg.rl.hidden},
             {"batch", cfg.rl.batch},
             {"buffer_capacity", cfg.rl.buffer_capacity},
             {"warmup", cfg.rl.warmup},
             {"clip_constant", cfg.rl.clip_constant},
             {"value_range_lo", cfg.rl.value_range_lo},
             {"value_range_hi", cfg.rl.value_range_hi},
             {"bound_range_lo", cfg.rl.bound_range_lo},
             {"bound_range_hi", cfg.rl.bound_range_hi},
             {"penalty", cfg.rl.penalty},
             {"episodes", cfg.rl.episodes},
             {"algorithm", cfg.rl.algorithm}};
  return j.dump(2);
}

void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_config: cannot open " + path.string());
  out << config_to_json(cfg) << "\n";
}

}  // namespace risdm
