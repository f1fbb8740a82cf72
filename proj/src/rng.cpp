#include "risdm/rng.hpp"

#include <cmath>

namespace risdm {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngStream::RngStream(uint64_t seed) : engine_(seed) {}

uint64_t RngStream::bits() { return engine_(); }

double RngStream::uniform() {
  // 53 random mantissa bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0, 1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Complex RngStream::cgaussian() {
  const double inv_sqrt2 = 0.70710678118654752440;
  double re = gaussian();
  double im = gaussian();
  return Complex(re * inv_sqrt2, im * inv_sqrt2);
}

CVec RngStream::cgaussian_vector(Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cgaussian();
  return v;
}

RngStream SeededRng::stream(std::string_view name, uint64_t index) const {
  uint64_t child = splitmix64(seed_ ^ splitmix64(fnv1a(name) + 0x632be59bd9b4e019ULL * (index + 1)));
  return RngStream(child);
}

}  // namespace risdm
