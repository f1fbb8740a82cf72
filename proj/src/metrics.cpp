#include "risdm/metrics.hpp"

#include <cmath>

namespace risdm {

CVec composite_channel(const CVec& h_direct, const CVec& h_ris_user, const CVec& upsilon,
                       const CMat& h_bs_ris) {
  return h_bs_ris * upsilon.cwiseProduct(h_ris_user) + h_direct;
}

namespace {

double transposed_power(const CVec& channel, const CVec& precoder) {
  // |c^T w|^2; the receive channel acts by transpose, not adjoint
  return std::norm(dot_t(channel, precoder));
}

double user_sinr(const CVec& h_direct, const CVec& h_ris_user, const std::vector<CVec>& multipath,
                 const BeamformingSolution& sol, const ChannelSet& ch,
                 const PhysicalConstants& consts, Path path) {
  CVec signal_channel;
  bool ris_active = path != Path::kDirect;
  switch (path) {
    case Path::kComposite:
      signal_channel = composite_channel(h_direct, h_ris_user, sol.upsilon, ch.h_bs_ris);
      break;
    case Path::kDirect:
      signal_channel = h_direct;
      break;
    case Path::kReflected:
      signal_channel = ch.h_bs_ris * sol.upsilon.cwiseProduct(h_ris_user);
      break;
  }

  double numerator = transposed_power(signal_channel, sol.w);
  double denominator = consts.noise_bob;  // Bob and Eve share the receiver noise level
  for (const CVec& h : multipath) {
    denominator += transposed_power(h, sol.w) + transposed_power(h, sol.v);
  }
  denominator += transposed_power(signal_channel, sol.v);
  if (ris_active) {
    denominator += consts.noise_ris * sol.upsilon.cwiseProduct(h_ris_user).squaredNorm();
  }
  return numerator / denominator;
}

}  // namespace

SinrPair sinr_pair(const BeamformingSolution& sol, const ChannelSet& ch,
                   const PhysicalConstants& consts, Path path) {
  SinrPair out;
  out.bob = user_sinr(ch.h_ab, ch.h_rb, ch.multipath_bob, sol, ch, consts, path);
  out.eve = user_sinr(ch.h_ae, ch.h_re, ch.multipath_eve, sol, ch, consts, path);
  return out;
}

double secrecy_rate(double sinr_bob, double sinr_eve) {
  double r = std::log2(1.0 + sinr_bob) - std::log2(1.0 + sinr_eve);
  return r > 0.0 ? r : 0.0;
}

double secrecy_rate(const BeamformingSolution& sol, const ChannelSet& ch,
                    const PhysicalConstants& consts, Path path) {
  SinrPair s = sinr_pair(sol, ch, consts, path);
  return secrecy_rate(s.bob, s.eve);
}

}  // namespace risdm
