#include "risdm/sensing.hpp"

#include <cmath>
#include <stdexcept>

#include "risdm/geometry.hpp"

namespace risdm {

MeasurementPlan design_positioning_phases(const ChannelSet& ch, int num_modes, Complex pilot_eve,
                                          Complex pilot_bob, double noise_power, RngStream& rng) {
  if (num_modes < 2) throw std::invalid_argument("design_positioning_phases: need at least 2 modes");
  const Eigen::Index m = ch.m();

  CMat bob_path = ch.h_bs_ris * ch.h_rb.asDiagonal();  // N x M
  CMat q = bob_path.adjoint() * bob_path;
  CVec u_min = hermitian_eig(q).vectors.col(0);
  double ones_leakage = (bob_path * CVec::Ones(m)).squaredNorm();

  // Randomization draws come from CN(0, u u^H + delta I): concentrated on the
  // leakage minimizer but with enough support that the P extracted phase
  // profiles are distinct. A bare rank-one surrogate would collapse all modes
  // to one profile up to a global phase.
  const double delta = 0.25 / static_cast<double>(m);

  MeasurementPlan plan;
  plan.pilot_eve = pilot_eve;
  plan.pilot_bob = pilot_bob;
  plan.noise_power = noise_power;
  plan.modes.reserve(static_cast<size_t>(num_modes));
  for (int p = 0; p < num_modes; ++p) {
    Complex g = rng.cgaussian();
    CVec draw = u_min * g + std::sqrt(delta) * rng.cgaussian_vector(m);
    CVec mode(m);
    for (Eigen::Index i = 0; i < m; ++i) mode(i) = std::polar(1.0, std::arg(draw(i)));
    double leakage = (bob_path * mode).squaredNorm();
    if (leakage > ones_leakage * (1.0 + 1e-12)) {
      // keep the mode feasible w.r.t. the all-ones reference
      mode = CVec::Constant(m, std::polar(1.0, std::arg(g)));
    }
    plan.modes.push_back(std::move(mode));
  }
  return plan;
}

CMat measurement_stack_matrix(const MeasurementPlan& plan, const ChannelSet& ch) {
  const Eigen::Index n = ch.n();
  const Eigen::Index m = ch.m();
  const Eigen::Index p = plan.num_modes();
  CMat g(n * p, m);
  for (Eigen::Index i = 0; i < p; ++i) {
    g.middleRows(i * n, n) = ch.h_bs_ris * plan.modes[static_cast<size_t>(i)].asDiagonal();
  }
  return g;
}

StackedMeasurement stack_measurements(const MeasurementPlan& plan, const ChannelSet& ch,
                                      RngStream& rng) {
  CMat g = measurement_stack_matrix(plan, ch);
  CVec signal = ch.h_re * plan.pilot_eve + ch.h_rb * plan.pilot_bob;
  StackedMeasurement out;
  out.mu = g * signal;
  double sigma = std::sqrt(plan.noise_power);
  out.x = out.mu + sigma * rng.cgaussian_vector(out.mu.size());
  return out;
}

CMat draw_snapshots(const MeasurementPlan& plan, const ChannelSet& ch, int num_snapshots,
                    RngStream& rng) {
  if (num_snapshots < 1) throw std::invalid_argument("draw_snapshots: need at least 1 snapshot");
  CMat g = measurement_stack_matrix(plan, ch);
  double sigma = std::sqrt(plan.noise_power);
  CMat x(g.rows(), num_snapshots);
  for (int k = 0; k < num_snapshots; ++k) {
    Complex s1 = plan.pilot_eve * std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    Complex s2 = plan.pilot_bob * std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    CVec signal = ch.h_re * s1 + ch.h_rb * s2;
    x.col(k) = g * signal + sigma * rng.cgaussian_vector(g.rows());
  }
  return x;
}

CVec ris_steering(const std::vector<Vec3>& ris_positions, double theta, double phi,
                  double wavelength) {
  Vec3 dir = unit_direction(theta, phi);
  const double k = 2.0 * kPi / wavelength;
  CVec e(static_cast<Eigen::Index>(ris_positions.size()));
  for (size_t i = 0; i < ris_positions.size(); ++i) {
    e(static_cast<Eigen::Index>(i)) = std::polar(1.0, -k * ris_positions[i].dot(dir));
  }
  return e;
}

AngleEstimate music_estimate(const CMat& snapshots, const MeasurementPlan& plan,
                             const ChannelSet& ch, const std::vector<Vec3>& ris_positions,
                             double wavelength, const MusicGrid& grid) {
  if (!(grid.step > 0.0)) throw std::invalid_argument("music_estimate: grid step must be > 0");
  const int k = static_cast<int>(snapshots.cols());
  if (k < 2) throw std::invalid_argument("music_estimate: need at least 2 snapshots");
  int num_sources = (std::abs(plan.pilot_eve) > 0.0 ? 1 : 0) + (std::abs(plan.pilot_bob) > 0.0 ? 1 : 0);
  if (k < num_sources) {
    throw std::runtime_error("music_estimate: covariance rank deficient (snapshots below source count)");
  }

  CMat cov = snapshots * snapshots.adjoint() / static_cast<double>(k);
  EigResult eig = hermitian_eig(cov);
  const Eigen::Index np = cov.rows();
  CMat noise_subspace = eig.vectors.leftCols(np - num_sources);

  CMat g = measurement_stack_matrix(plan, ch);

  auto axis_points = [](double lo, double hi, double step) {
    int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    return std::max(n, 1);
  };
  const int n_theta = axis_points(grid.theta_min, grid.theta_max, grid.step);
  const int n_phi = axis_points(grid.phi_min, grid.phi_max, grid.step);

  AngleEstimate best;
  best.spectrum_peak = -1.0;
  // sweep one theta row at a time; columns are phi
  CMat steer(static_cast<Eigen::Index>(ris_positions.size()), n_phi);
  for (int it = 0; it < n_theta; ++it) {
    double theta = grid.theta_min + it * grid.step;
    for (int ip = 0; ip < n_phi; ++ip) {
      steer.col(ip) = ris_steering(ris_positions, theta, grid.phi_min + ip * grid.step, wavelength);
    }
    CMat a = g * steer;                                   // NP x n_phi
    CMat proj = noise_subspace.adjoint() * a;             // (NP - n_src) x n_phi
    for (int ip = 0; ip < n_phi; ++ip) {
      double num = a.col(ip).squaredNorm();
      double den = std::max(proj.col(ip).squaredNorm(), 1e-300);
      double value = num / den;
      if (value > best.spectrum_peak) {
        best.spectrum_peak = value;
        best.theta = theta;
        best.phi = grid.phi_min + ip * grid.step;
      }
    }
  }
  return best;
}

CrlbReport fisher_information(double theta, double phi, const MeasurementPlan& plan,
                              const ChannelSet& ch, const std::vector<Vec3>& ris_positions,
                              double wavelength) {
  const Eigen::Index m = ch.m();
  if (static_cast<Eigen::Index>(ris_positions.size()) != m) {
    throw std::invalid_argument("fisher_information: position/channel size mismatch");
  }
  Vec3 d_theta = dtheta_direction(theta, phi);
  Vec3 d_phi = dphi_direction(theta, phi);
  CVec b_hat1(m), b_hat2(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b_hat1(i) = ris_positions[static_cast<size_t>(i)].dot(d_theta);
    b_hat2(i) = ris_positions[static_cast<size_t>(i)].dot(d_phi);
  }
  Complex factor = -kJ * (2.0 * kPi * plan.pilot_eve / wavelength);
  CVec b1 = factor * b_hat1.cwiseProduct(ch.h_re);
  CVec b2 = factor * b_hat2.cwiseProduct(ch.h_re);

  CMat g = measurement_stack_matrix(plan, ch);
  CVec c1 = g * b1;
  CVec c2 = g * b2;
  double inv_noise = 2.0 / plan.noise_power;

  CrlbReport report;
  report.fim(0, 0) = inv_noise * c1.squaredNorm();
  report.fim(1, 1) = inv_noise * c2.squaredNorm();
  double cross = inv_noise * c1.dot(c2).real();
  report.fim(0, 1) = cross;
  report.fim(1, 0) = cross;
  report.det_f = report.fim(0, 0) * report.fim(1, 1) - cross * cross;

  bool finite = std::isfinite(report.det_f) && std::isfinite(report.fim(0, 0)) &&
                std::isfinite(report.fim(1, 1));
  if (finite && report.det_f > 0.0 && report.fim(0, 0) > 0.0 && report.fim(1, 1) > 0.0) {
    report.identifiable = true;
    report.crlb_theta = report.fim(1, 1) / report.det_f;
    report.crlb_phi = report.fim(0, 0) / report.det_f;
  }
  return report;
}

bool crlb_feasible(const CrlbReport& report, double eps_rad2) {
  return report.identifiable && report.crlb_theta <= eps_rad2 && report.crlb_phi <= eps_rad2;
}

}  // namespace risdm
