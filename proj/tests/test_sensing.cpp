#include <doctest.h>

#include <cmath>

#include "risdm/sensing.hpp"
#include "test_helpers.hpp"

using namespace risdm;
using risdm::testing::BuiltScene;
using risdm::testing::build_scene;
using risdm::testing::small_config;

namespace {

MeasurementPlan make_plan(const BuiltScene& scene, int num_modes, double noise_power,
                          uint64_t seed = 99) {
  SeededRng rng(seed);
  RngStream stream = rng.stream("stage1");
  return design_positioning_phases(scene.ch, num_modes, scene.sc.pilot_eve, scene.sc.pilot_bob,
                                   noise_power, stream);
}

// Finite-difference Fisher information: numeric Jacobian of the noise-free
// stack w.r.t. Eve's angles with the amplitude held at the true distance.
Eigen::Matrix2d fd_fisher(const BuiltScene& scene, const MeasurementPlan& plan, double theta,
                          double phi, double step) {
  const Scenario& sc = scene.sc;
  double d_re = (scene.ris_positions.front() - sc.eve_positions[0]).norm();
  CMat g = measurement_stack_matrix(plan, scene.ch);
  auto mu = [&](double th, double ph) {
    CVec h_re = ris_user_channel(scene.ris_positions, unit_direction(th, ph), d_re,
                                 sc.consts.wavelength, sc.consts.channel_power_gain);
    return CVec(g * (h_re * plan.pilot_eve + scene.ch.h_rb * plan.pilot_bob));
  };
  CMat jac(g.rows(), 2);
  jac.col(0) = (mu(theta + step, phi) - mu(theta - step, phi)) / (2.0 * step);
  jac.col(1) = (mu(theta, phi + step) - mu(theta, phi - step)) / (2.0 * step);
  CMat jhj = jac.adjoint() * jac;
  Eigen::Matrix2d f;
  f(0, 0) = 2.0 / plan.noise_power * jhj(0, 0).real();
  f(1, 1) = 2.0 / plan.noise_power * jhj(1, 1).real();
  f(0, 1) = 2.0 / plan.noise_power * jhj(0, 1).real();
  f(1, 0) = f(0, 1);
  return f;
}

}  // namespace

TEST_CASE("design_positioning_phases: unit modulus and leakage no worse than all-ones") {
  BuiltScene scene = build_scene(small_config(2, 2, 4, 2));  // M = 8
  MeasurementPlan plan = make_plan(scene, 8, 1e-11);
  REQUIRE(plan.num_modes() == 8);

  CMat bob_path = scene.ch.h_bs_ris * scene.ch.h_rb.asDiagonal();
  double ones_leak = (bob_path * CVec::Ones(scene.ch.m())).squaredNorm();
  double mean_leak = 0.0;
  for (const CVec& mode : plan.modes) {
    for (Eigen::Index i = 0; i < mode.size(); ++i) {
      CHECK(std::abs(std::abs(mode(i)) - 1.0) < 1e-12);
    }
    double leak = (bob_path * mode).squaredNorm();
    CHECK(leak <= ones_leak * (1.0 + 1e-9));
    mean_leak += leak;
  }
  mean_leak /= plan.num_modes();
  CHECK(mean_leak <= ones_leak * (1.0 + 1e-9));
}

TEST_CASE("design_positioning_phases: single-element RIS passes through a random phase") {
  BuiltScene scene = build_scene(small_config(2, 2, 1, 1));
  MeasurementPlan plan = make_plan(scene, 2, 1e-11);
  for (const CVec& mode : plan.modes) {
    REQUIRE(mode.size() == 1);
    CHECK(std::abs(std::abs(mode(0)) - 1.0) < 1e-12);
  }
}

TEST_CASE("design_positioning_phases: fewer than two modes rejected") {
  BuiltScene scene = build_scene(small_config(2, 2, 2, 2));
  SeededRng rng(1);
  RngStream stream = rng.stream("stage1");
  CHECK_THROWS_AS(design_positioning_phases(scene.ch, 1, Complex(1, 0), Complex(1, 0), 1e-11,
                                            stream),
                  std::invalid_argument);
}

TEST_CASE("stack_measurements: noiseless stack equals its mean; zero pilots zero it") {
  BuiltScene scene = build_scene(small_config(2, 2, 2, 2));
  MeasurementPlan plan = make_plan(scene, 4, 0.0);
  SeededRng rng(5);
  RngStream stream = rng.stream("noise");
  StackedMeasurement sm = stack_measurements(plan, scene.ch, stream);
  CHECK((sm.x - sm.mu).norm() == 0.0);

  plan.pilot_eve = Complex(0, 0);
  plan.pilot_bob = Complex(0, 0);
  StackedMeasurement sm0 = stack_measurements(plan, scene.ch, stream);
  CHECK(sm0.mu.norm() == 0.0);
}

TEST_CASE("stack_measurements: noise energy concentrates at NP * sigma^2") {
  BuiltScene scene = build_scene(small_config(2, 2, 2, 2));
  const double noise_power = 1e-10;
  MeasurementPlan plan = make_plan(scene, 4, noise_power);
  SeededRng rng(6);
  RngStream stream = rng.stream("noise");
  const int trials = 10000;
  double acc = 0.0;
  for (int i = 0; i < trials; ++i) {
    StackedMeasurement sm = stack_measurements(plan, scene.ch, stream);
    acc += (sm.x - sm.mu).squaredNorm();
  }
  acc /= trials;
  double expected = static_cast<double>(scene.ch.n() * plan.num_modes()) * noise_power;
  CHECK(std::abs(acc - expected) < 0.05 * expected);
}

TEST_CASE("fisher_information: scaling the noise rescales FIM and CRLB") {
  BuiltScene scene = build_scene(small_config(2, 2, 2, 2));
  auto [theta, phi] = eve_angles(scene.sc, 0);
  MeasurementPlan plan = make_plan(scene, 4, 1e-11);
  CrlbReport base = fisher_information(theta, phi, plan, scene.ch, scene.ris_positions,
                                       scene.sc.consts.wavelength);
  MeasurementPlan doubled = plan;
  doubled.noise_power *= 2.0;
  CrlbReport half = fisher_information(theta, phi, doubled, scene.ch, scene.ris_positions,
                                       scene.sc.consts.wavelength);
  REQUIRE(base.identifiable);
  REQUIRE(half.identifiable);
  CHECK(half.fim(0, 0) == doctest::Approx(0.5 * base.fim(0, 0)).epsilon(1e-12));
  CHECK(half.fim(1, 1) == doctest::Approx(0.5 * base.fim(1, 1)).epsilon(1e-12));
  CHECK(half.crlb_theta == doctest::Approx(2.0 * base.crlb_theta).epsilon(1e-12));
  CHECK(half.crlb_phi == doctest::Approx(2.0 * base.crlb_phi).epsilon(1e-12));
}

TEST_CASE("fisher_information: zero Eve pilot is flagged unidentifiable") {
  BuiltScene scene = build_scene(small_config(2, 2, 2, 2));
  auto [theta, phi] = eve_angles(scene.sc, 0);
  MeasurementPlan plan = make_plan(scene, 4, 1e-11);
  plan.pilot_eve = Complex(0, 0);
  CrlbReport report = fisher_information(theta, phi, plan, scene.ch, scene.ris_positions,
                                         scene.sc.consts.wavelength);
  CHECK_FALSE(report.identifiable);
  CHECK(report.fim.norm() == 0.0);
  CHECK_FALSE(crlb_feasible(report, 1e6));
}

TEST_CASE("fisher_information: invariant to a global pilot phase") {
  BuiltScene scene = build_scene(small_config(2, 2, 2, 2));
  auto [theta, phi] = eve_angles(scene.sc, 0);
  MeasurementPlan plan = make_plan(scene, 4, 1e-11);
  CrlbReport base = fisher_information(theta, phi, plan, scene.ch, scene.ris_positions,
                                       scene.sc.consts.wavelength);
  MeasurementPlan rotated = plan;
  rotated.pilot_eve *= std::polar(1.0, 0.777);
  rotated.pilot_bob *= std::polar(1.0, -1.3);
  CrlbReport rot = fisher_information(theta, phi, rotated, scene.ch, scene.ris_positions,
                                      scene.sc.consts.wavelength);
  CHECK((rot.fim - base.fim).norm() < 1e-12 * base.fim.norm());
}

TEST_CASE("fisher_information: symmetric PSD with the inverse-diagonal product bound") {
  SeededRng rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    ScenarioConfig cfg = small_config(2, 2, 2, 2);
    cfg.seed = 1000 + trial;
    BuiltScene scene = build_scene(cfg);
    auto [theta, phi] = eve_angles(scene.sc, 0);
    MeasurementPlan plan = make_plan(scene, 4, 1e-11, cfg.seed);
    CrlbReport r = fisher_information(theta, phi, plan, scene.ch, scene.ris_positions,
                                      scene.sc.consts.wavelength);
    CHECK(r.fim(0, 1) == r.fim(1, 0));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(r.fim);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12 * r.fim.trace());
    if (r.identifiable) {
      CHECK(r.crlb_theta * r.fim(0, 0) >= 1.0 - 1e-9);
      CHECK(r.crlb_phi * r.fim(1, 1) >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("fisher_information: matches the finite-difference oracle") {
  for (int trial = 0; trial < 5; ++trial) {
    ScenarioConfig cfg = small_config(2, 2, 2, 2);  // N = M = 4
    cfg.seed = 50 + trial;
    BuiltScene scene = build_scene(cfg);
    auto [theta, phi] = eve_angles(scene.sc, 0);
    MeasurementPlan plan = make_plan(scene, 4, 1e-11, cfg.seed);
    CrlbReport analytic = fisher_information(theta, phi, plan, scene.ch, scene.ris_positions,
                                             scene.sc.consts.wavelength);
    Eigen::Matrix2d fd = fd_fisher(scene, plan, theta, phi, 1e-6);
    CHECK((analytic.fim - fd).norm() < 1e-5 * fd.norm());
  }
}

TEST_CASE("crlb_feasible: threshold semantics") {
  CrlbReport good;
  good.identifiable = true;
  good.crlb_theta = 1e-4;
  good.crlb_phi = 2e-4;
  CHECK(crlb_feasible(good, std::numeric_limits<double>::infinity()));
  CHECK(crlb_feasible(good, 1e-3));
  CHECK_FALSE(crlb_feasible(good, 1e-5));
  CrlbReport bad;  // unidentifiable default
  CHECK_FALSE(crlb_feasible(bad, std::numeric_limits<double>::infinity()));
}

TEST_CASE("music_estimate: exact on-grid recovery without noise") {
  BuiltScene scene = build_scene(small_config(2, 2, 4, 2));
  auto [theta, phi] = eve_angles(scene.sc, 0);
  MeasurementPlan plan = make_plan(scene, 4, 0.0);
  plan.pilot_bob = Complex(0, 0);  // single Eve source
  SeededRng rng(8);
  RngStream stream = rng.stream("snap");
  CMat snapshots = draw_snapshots(plan, scene.ch, 8, stream);

  MusicGrid grid;
  grid.step = deg2rad(0.5);
  grid.theta_min = theta - 8.0 * grid.step;
  grid.theta_max = theta + 8.0 * grid.step;
  grid.phi_min = phi - 8.0 * grid.step;
  grid.phi_max = phi + 8.0 * grid.step;
  AngleEstimate est = music_estimate(snapshots, plan, scene.ch, scene.ris_positions,
                                     scene.sc.consts.wavelength, grid);
  CHECK(est.theta == doctest::Approx(theta).epsilon(1e-12));
  CHECK(est.phi == doctest::Approx(phi).epsilon(1e-12));
}

TEST_CASE("music_estimate: recovers both-source scenes near the truth at high SNR") {
  BuiltScene scene = build_scene(small_config(2, 2, 4, 4));
  auto [theta, phi] = eve_angles(scene.sc, 0);
  StackedMeasurement probe;  // scale the noise from the actual mean power
  MeasurementPlan plan = make_plan(scene, 4, 1e-30);
  {
    SeededRng rng(3);
    RngStream stream = rng.stream("probe");
    probe = stack_measurements(plan, scene.ch, stream);
  }
  double snr = db2lin(20.0);
  plan.noise_power = probe.mu.squaredNorm() / (static_cast<double>(probe.mu.size()) * snr);

  SeededRng rng(9);
  RngStream stream = rng.stream("snap");
  CMat snapshots = draw_snapshots(plan, scene.ch, 64, stream);
  MusicGrid grid;
  grid.step = deg2rad(0.5);
  grid.theta_min = theta - deg2rad(6.0);
  grid.theta_max = theta + deg2rad(6.0);
  grid.phi_min = phi - deg2rad(6.0);
  grid.phi_max = phi + deg2rad(6.0);
  AngleEstimate est = music_estimate(snapshots, plan, scene.ch, scene.ris_positions,
                                     scene.sc.consts.wavelength, grid);
  CHECK(std::abs(est.theta - theta) <= deg2rad(1.0) * (1.0 + 1e-9));
  CHECK(std::abs(est.phi - phi) <= deg2rad(1.0) * (1.0 + 1e-9));
}

TEST_CASE("music_estimate: rejects snapshot-starved covariances") {
  BuiltScene scene = build_scene(small_config(2, 2, 2, 2));
  MeasurementPlan plan = make_plan(scene, 4, 1e-11);
  SeededRng rng(10);
  RngStream stream = rng.stream("snap");
  CMat snapshots = draw_snapshots(plan, scene.ch, 1, stream);
  MusicGrid grid{-0.1, 0.1, -0.1, 0.1, deg2rad(1.0)};
  CHECK_THROWS(music_estimate(snapshots, plan, scene.ch, scene.ris_positions,
                              scene.sc.consts.wavelength, grid));
}
