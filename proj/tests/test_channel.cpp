#include <doctest.h>

#include <cmath>

#include "risdm/channel.hpp"
#include "risdm/rng.hpp"
#include "risdm/scenario.hpp"

using namespace risdm;

namespace {

// Steering oracle written straight from the phase definition, independent of
// the implementation under test.
CVec los_oracle(const ArrayLayout& layout, double theta, double phi, double distance,
                double wavelength, double gain) {
  CVec h(layout.size());
  for (int n = 0; n < layout.size(); ++n) {
    double r_h = layout.offsets[n].x();
    double r_v = layout.offsets[n].y();
    double c = r_h * std::cos(theta) * std::cos(phi) + r_v * std::sin(theta);
    h(n) = std::sqrt(gain) / distance *
           std::exp(Complex(0.0, 2.0 * kPi / wavelength * c));
  }
  return h;
}

}  // namespace

TEST_CASE("los_channel: zeroed phase terms give a uniform-phase vector") {
  ArrayLayout layout = element_offsets(2, 2, 0.05);
  CVec h = los_channel(layout, 0.0, kPi / 2.0, 10.0, 0.125, 1.0);
  for (int n = 0; n < h.size(); ++n) CHECK(std::abs(std::arg(h(n))) < 1e-12);
}

TEST_CASE("los_channel: constant modulus sqrt(gain)/distance") {
  ArrayLayout layout = element_offsets(4, 2, 0.05);
  double gain = 2.5e-4, distance = 7.0;
  CVec h = los_channel(layout, 0.4, -0.3, distance, 0.125, gain);
  for (int n = 0; n < h.size(); ++n) {
    CHECK(std::abs(h(n)) == doctest::Approx(std::sqrt(gain) / distance).epsilon(1e-12));
  }
}

TEST_CASE("los_channel: matches an independent steering oracle") {
  ArrayLayout layout = element_offsets(4, 1, 0.0625);  // 4-element ULA
  double theta = deg2rad(30.0), phi = 0.0;
  CVec got = los_channel(layout, theta, phi, 12.0, 0.125, 1e-4);
  CVec want = los_oracle(layout, theta, phi, 12.0, 0.125, 1e-4);
  CHECK((got - want).norm() < 1e-12 * want.norm());
}

TEST_CASE("los_channel: rejects non-positive distance") {
  ArrayLayout layout = element_offsets(2, 1, 0.05);
  CHECK_THROWS_AS(los_channel(layout, 0.0, 0.0, 0.0, 0.125, 1.0), std::invalid_argument);
}

TEST_CASE("ris_user_channel: normal incidence gives uniform phase") {
  Orientation o{-0.4, 1.9};
  ArrayLayout layout = element_offsets(3, 3, 0.06);
  auto pos = place_elements(layout, o, Vec3::Zero());
  Vec3 normal = rotated_basis(o).normal;
  CVec h = ris_user_channel(pos, normal, 5.0, 0.125, 1.0);
  for (int m = 0; m < h.size(); ++m) CHECK(std::abs(std::arg(h(m))) < 1e-10);
}

TEST_CASE("ris_user_channel: matches the brute-force dot-product oracle") {
  SeededRng rng(12);
  RngStream s = rng.stream("dir");
  ArrayLayout layout = element_offsets(2, 2, 0.0625);
  auto pos = place_elements(layout, {0.3, 2.0}, Vec3::Zero());
  Vec3 dir = Vec3(s.gaussian(), s.gaussian(), s.gaussian()).normalized();
  double wavelength = 0.125, gain = 3e-4, distance = 4.0;
  CVec got = ris_user_channel(pos, dir, distance, wavelength, gain);
  for (int m = 0; m < got.size(); ++m) {
    Complex want = std::sqrt(gain) / distance *
                   std::exp(Complex(0.0, -2.0 * kPi / wavelength * pos[m].dot(dir)));
    CHECK(std::abs(got(m) - want) < 1e-12 * std::abs(want));
  }
  CHECK_THROWS_AS(ris_user_channel(pos, 1.5 * dir, distance, wavelength, gain),
                  std::invalid_argument);
}

TEST_CASE("bs_ris_matrix: single pair reduces to the scalar formula") {
  std::vector<Vec3> bs{Vec3(3.0, 0.0, 0.0)};
  std::vector<Vec3> ris{Vec3::Zero()};
  double wavelength = 0.125, gain = 1e-4;
  CMat h = bs_ris_matrix(bs, ris, wavelength, gain);
  Complex want = std::sqrt(gain) / 3.0 * std::exp(Complex(0.0, 2.0 * kPi / wavelength * 3.0));
  CHECK(std::abs(h(0, 0) - want) < 1e-12);
}

TEST_CASE("bs_ris_matrix: per-pair distances match a hand oracle") {
  ArrayLayout bs_layout = element_offsets(2, 1, 0.1);
  ArrayLayout ris_layout = element_offsets(1, 2, 0.07);
  auto bs = place_elements(bs_layout, {0.0, 0.0}, Vec3(5.0, 1.0, 0.5));
  auto ris = place_elements(ris_layout, {0.2, 1.0}, Vec3::Zero());
  double wavelength = 0.125, gain = 2e-4;
  CMat h = bs_ris_matrix(bs, ris, wavelength, gain);
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      double d = (bs[n] - ris[m]).norm();
      Complex want = std::sqrt(gain) / d * std::exp(Complex(0.0, 2.0 * kPi / wavelength * d));
      CHECK(std::abs(h(n, m) - want) < 1e-12 * std::abs(want));
    }
  }
}

TEST_CASE("bs_ris_matrix: every entry shrinks when the RIS moves away") {
  ArrayLayout layout = element_offsets(2, 2, 0.06);
  auto bs = place_elements(layout, {0.0, 0.0}, Vec3(10.0, 0.0, 0.0));
  auto near = place_elements(layout, {0.0, 1.0}, Vec3::Zero());
  auto far = place_elements(layout, {0.0, 1.0}, Vec3(-5.0, 0.0, 0.0));
  CMat h_near = bs_ris_matrix(bs, near, 0.125, 1e-4);
  CMat h_far = bs_ris_matrix(bs, far, 0.125, 1e-4);
  for (int n = 0; n < h_near.rows(); ++n)
    for (int m = 0; m < h_near.cols(); ++m)
      CHECK(std::abs(h_far(n, m)) < std::abs(h_near(n, m)));
}

TEST_CASE("bs_ris_matrix: coincident elements rejected") {
  std::vector<Vec3> a{Vec3::Zero()};
  CHECK_THROWS_AS(bs_ris_matrix(a, a, 0.125, 1.0), std::invalid_argument);
}

TEST_CASE("channels: flipping the wavelength sign conjugates the phases") {
  ArrayLayout layout = element_offsets(2, 2, 0.06);
  auto pos = place_elements(layout, {0.1, 0.7}, Vec3::Zero());
  CVec plus = los_channel(layout, 0.3, 0.2, 5.0, 0.125, 1e-4);
  CVec minus = los_channel(layout, 0.3, 0.2, 5.0, -0.125, 1e-4);
  CHECK((minus - plus.conjugate()).norm() < 1e-14 * plus.norm());

  Vec3 dir = Vec3(0.3, 0.8, 0.52).normalized();
  CVec rplus = ris_user_channel(pos, dir, 4.0, 0.125, 1e-4);
  CVec rminus = ris_user_channel(pos, dir, 4.0, -0.125, 1e-4);
  CHECK((rminus - rplus.conjugate()).norm() < 1e-14 * rplus.norm());
}

TEST_CASE("multipath_channels: determinism, L = 0, and calibrated power") {
  CVec ref = CVec::Constant(4, Complex(2e-3, 0.0));
  SeededRng rng(77);

  RngStream s0 = rng.stream("mp");
  CHECK(multipath_channels(s0, 0, ref, 10.0).empty());

  RngStream s1 = rng.stream("mp");
  RngStream s2 = rng.stream("mp");
  auto a = multipath_channels(s1, 2, ref, 10.0);
  auto b = multipath_channels(s2, 2, ref, 10.0);
  for (int l = 0; l < 2; ++l) CHECK((a[l] - b[l]).norm() == 0.0);

  // Monte-Carlo check of the mean per-entry power: 10 dB below the LoS power
  RngStream s3 = rng.stream("mp-power");
  double target = ref.squaredNorm() / ref.size() * 0.1;
  double acc = 0.0;
  const int draws = 25000;  // 4 entries each -> 1e5 complex samples
  for (int i = 0; i < draws; ++i) {
    auto mp = multipath_channels(s3, 1, ref, 10.0);
    acc += mp[0].squaredNorm() / ref.size();
  }
  acc /= draws;
  CHECK(std::abs(acc - target) < 0.02 * target);
}

TEST_CASE("reflection_matrix: identity embedding and C5 enforcement") {
  CVec ones = CVec::Ones(3);
  CMat theta = reflection_matrix(ones, 2.0);
  CHECK((theta - CMat::Identity(3, 3)).norm() == 0.0);

  CVec bad(2);
  bad << Complex(2.1, 0.0), Complex(0.5, 0.0);
  CHECK_THROWS_AS(reflection_matrix(bad, 2.0), std::invalid_argument);
}

TEST_CASE("reflection algebra: h^T diag(v) X equals v^T diag(h) X") {
  SeededRng rng(21);
  RngStream s = rng.stream("alg");
  const int m = 5, n = 3;
  CVec h = s.cgaussian_vector(m), v = s.cgaussian_vector(m);
  CMat x(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = s.cgaussian();
  CVec lhs = (h.transpose() * v.asDiagonal() * x).transpose();
  CVec rhs = (v.transpose() * h.asDiagonal() * x).transpose();
  CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
}
