#include <doctest.h>

#include <cmath>

#include "risdm/rng.hpp"

using namespace risdm;

TEST_CASE("rng: same seed and substream reproduce the draw sequence") {
  SeededRng a(42), b(42);
  RngStream sa = a.stream("channels"), sb = b.stream("channels");
  for (int i = 0; i < 100; ++i) CHECK(sa.uniform() == sb.uniform());

  RngStream ga = a.stream("rl", 7), gb = b.stream("rl", 7);
  for (int i = 0; i < 100; ++i) CHECK(ga.gaussian() == gb.gaussian());
}

TEST_CASE("rng: different substream names decorrelate") {
  SeededRng rng(123);
  RngStream s1 = rng.stream("channels");
  RngStream s2 = rng.stream("randomization");
  const int n = 10000;
  double mean1 = 0, mean2 = 0, cross = 0, sq1 = 0, sq2 = 0;
  for (int i = 0; i < n; ++i) {
    double x = s1.uniform(), y = s2.uniform();
    mean1 += x;
    mean2 += y;
    cross += x * y;
    sq1 += x * x;
    sq2 += y * y;
  }
  mean1 /= n;
  mean2 /= n;
  double cov = cross / n - mean1 * mean2;
  double var1 = sq1 / n - mean1 * mean1;
  double var2 = sq2 / n - mean2 * mean2;
  double corr = cov / std::sqrt(var1 * var2);
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("rng: gaussian moments inside 3-sigma bands") {
  SeededRng rng(7);
  RngStream s = rng.stream("gauss");
  const int n = 100000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < n; ++i) {
    double g = s.gaussian();
    sum += g;
    sumsq += g * g;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  // sd(mean) = 1/sqrt(n); sd(var) ~ sqrt(2/n)
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("rng: complex gaussian has unit mean power") {
  SeededRng rng(9);
  RngStream s = rng.stream("cg");
  const int n = 100000;
  double power = 0;
  for (int i = 0; i < n; ++i) power += std::norm(s.cgaussian());
  power /= n;
  CHECK(std::abs(power - 1.0) < 0.02);
}
