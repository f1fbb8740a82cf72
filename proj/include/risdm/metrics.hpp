#ifndef RISDM_METRICS_HPP
#define RISDM_METRICS_HPP

#include "risdm/channel.hpp"

namespace risdm {

// One beamforming design: confidential precoder w, artificial-noise precoder
// v, communication-mode reflection vector, power split, achieved secrecy
// rate.
struct BeamformingSolution {
  CVec w;
  CVec v;
  CVec upsilon;
  double xi = 1.0;
  double sr = 0.0;
};

struct SinrPair {
  double bob = 0.0;
  double eve = 0.0;
};

// Which propagation path carries the evaluated data stream.
enum class Path {
  kComposite,  // direct plus RIS-reflected (the full received signal)
  kDirect,     // stream 1, BS -> user only
  kReflected,  // stream 2, BS -> RIS -> user only
};

// Composite receive channel seen from the BS, as a column: H (upsilon .* h_ru) + h_au.
CVec composite_channel(const CVec& h_direct, const CVec& h_ris_user, const CVec& upsilon,
                       const CMat& h_bs_ris);

// SINR at Bob and Eve for a candidate solution.
// Numerator |c^T w|^2 with c the path channel; denominator sums multipath
// interference of w and v, AN leakage |c^T v|^2, RIS-amplified noise
// sigma_I^2 ||upsilon .* h_ru||^2 (reflected/composite paths only) and the
// receiver noise.
SinrPair sinr_pair(const BeamformingSolution& sol, const ChannelSet& ch,
                   const PhysicalConstants& consts, Path path = Path::kComposite);

// [log2(1 + sinr_bob) - log2(1 + sinr_eve)]^+
double secrecy_rate(double sinr_bob, double sinr_eve);

double secrecy_rate(const BeamformingSolution& sol, const ChannelSet& ch,
                    const PhysicalConstants& consts, Path path = Path::kComposite);

}  // namespace risdm

#endif
