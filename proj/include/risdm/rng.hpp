#ifndef RISDM_RNG_HPP
#define RISDM_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

#include "risdm/types.hpp"

namespace risdm {

// Deterministic random stream. The engine is std::mt19937_64 (bit-exact by
// the standard); all distribution transforms are done here by hand so that a
// given seed reproduces the same draws on any platform/compiler.
class RngStream {
 public:
  explicit RngStream(uint64_t seed);

  uint64_t bits();
  double uniform();            // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();           // N(0, 1)
  Complex cgaussian();         // CN(0, 1), i.e. E|z|^2 = 1
  CVec cgaussian_vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Master seed with named substreams. Substreams with different names (or
// indices) are statistically independent; the same (seed, name, index)
// always yields the same stream.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }
  RngStream stream(std::string_view name, uint64_t index = 0) const;

 private:
  uint64_t seed_;
};

}  // namespace risdm

#endif
