#include <doctest.h>

#include "risdm/linalg.hpp"
#include "risdm/rng.hpp"

using namespace risdm;

namespace {

CMat random_hermitian(RngStream& rng, int d) {
  CMat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.cgaussian();
  return 0.5 * (a + CMat(a.adjoint()));
}

CMat random_psd(RngStream& rng, int d, int rank) {
  CMat b = CMat::Zero(d, d);
  for (int r = 0; r < rank; ++r) {
    CVec u = rng.cgaussian_vector(d);
    b += u * u.adjoint();
  }
  return b;
}

}  // namespace

TEST_CASE("hermitian_eig: identity and diagonal") {
  EigResult id = hermitian_eig(CMat::Identity(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(id.values(i) == doctest::Approx(1.0));

  CMat d = CMat::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  d(2, 2) = 3.0;
  EigResult res = hermitian_eig(d);
  CHECK(res.values(0) == doctest::Approx(1.0));
  CHECK(res.values(1) == doctest::Approx(2.0));
  CHECK(res.values(2) == doctest::Approx(3.0));
}

TEST_CASE("hermitian_eig: reconstruction and unitarity on random input") {
  SeededRng rng(11);
  RngStream s = rng.stream("eig");
  CMat m = random_hermitian(s, 8);
  EigResult res = hermitian_eig(m);
  CMat recon = res.vectors * res.values.asDiagonal() * res.vectors.adjoint();
  CHECK((recon - m).norm() < 1e-9 * m.norm());
  CHECK((res.vectors.adjoint() * res.vectors - CMat::Identity(8, 8)).norm() < 1e-9);
  for (int i = 0; i < 8; ++i) {
    CHECK((m * res.vectors.col(i) - res.values(i) * res.vectors.col(i)).norm() < 1e-9 * m.norm());
  }
}

TEST_CASE("hermitian_eig: rejects non-Hermitian input") {
  CMat m = CMat::Zero(2, 2);
  m(0, 1) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("dominant_generalized_eigvec: diagonal pencil picks the top ratio") {
  CMat a = CMat::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  HermitianPencil p{a, CMat::Identity(2, 2), 0.0};
  CVec x = dominant_generalized_eigvec(p);
  CHECK(std::abs(x(0)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(x(1)) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("dominant_generalized_eigvec: degenerate pencil A == B gives quotient 1") {
  SeededRng rng(5);
  RngStream s = rng.stream("pencil");
  CMat b = random_psd(s, 6, 6);
  HermitianPencil p{b, b, 0.0};
  CVec x = dominant_generalized_eigvec(p);
  CHECK(rayleigh_quotient(p, x) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dominant_generalized_eigvec: beats random sampling on random pencils") {
  SeededRng rng(17);
  RngStream s = rng.stream("pencil");
  for (int trial = 0; trial < 3; ++trial) {
    const int d = 8;
    CMat a = random_psd(s, d, d);
    CMat b = random_psd(s, d, d);
    HermitianPencil p{a, b, 0.0};
    CVec x = dominant_generalized_eigvec(p);
    double q_star = rayleigh_quotient(p, x);
    RngStream sampler = rng.stream("samples", static_cast<uint64_t>(trial));
    for (int i = 0; i < 100000; ++i) {
      CVec y = sampler.cgaussian_vector(d);
      y.normalize();
      CHECK(rayleigh_quotient(p, y) <= q_star * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("dominant_generalized_eigvec: quotient is phase invariant") {
  SeededRng rng(23);
  RngStream s = rng.stream("pencil");
  CMat a = random_psd(s, 5, 5);
  CMat b = random_psd(s, 5, 5);
  HermitianPencil p{a, b, 0.0};
  CVec x = dominant_generalized_eigvec(p);
  CVec rotated = std::polar(1.0, 1.234) * x;
  CHECK(rayleigh_quotient(p, x) == doctest::Approx(rayleigh_quotient(p, rotated)));
}

TEST_CASE("dominant_generalized_eigvec: default ridge barely perturbs nonsingular problems") {
  SeededRng rng(29);
  RngStream s = rng.stream("pencil");
  CMat a = random_psd(s, 6, 6);
  CMat b = random_psd(s, 6, 6) + 0.5 * CMat::Identity(6, 6);
  HermitianPencil with_default{a, b, 0.0};
  HermitianPencil tiny_ridge{a, b, 1e-30};
  double q1 = rayleigh_quotient(with_default, dominant_generalized_eigvec(with_default));
  double q2 = rayleigh_quotient(tiny_ridge, dominant_generalized_eigvec(tiny_ridge));
  CHECK(std::abs(q1 - q2) < 1e-6 * std::abs(q2));
}

TEST_CASE("dominant_generalized_eigvec: dimension mismatch is rejected") {
  HermitianPencil p{CMat::Identity(3, 3), CMat::Identity(2, 2), 0.0};
  CHECK_THROWS_AS(dominant_generalized_eigvec(p), std::invalid_argument);
}

TEST_CASE("orthonormal_complement: columns orthonormal and orthogonal to the input") {
  SeededRng rng(31);
  RngStream s = rng.stream("basis");
  CVec v = s.cgaussian_vector(7);
  CMat q = orthonormal_complement(v);
  CHECK(q.cols() == 6);
  CHECK((q.adjoint() * q - CMat::Identity(6, 6)).norm() < 1e-12);
  CHECK((q.adjoint() * v).norm() < 1e-12 * v.norm());
}
