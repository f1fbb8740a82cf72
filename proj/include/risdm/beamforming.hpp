#ifndef RISDM_BEAMFORMING_HPP
#define RISDM_BEAMFORMING_HPP

#include "risdm/linalg.hpp"
#include "risdm/metrics.hpp"

namespace risdm {

// Null-space projector P = I - h* (h^T h*)^-1 h^T; h^T P = 0 and P h* = 0.
// The reflected-path variant of the companion construction is
// null_projector(f.conjugate()), which annihilates f itself.
CMat null_projector(const CVec& h);

// Eve-path vector f = diag(h_re) H^T w whose nulling removes the reflected
// confidential signal at Eve.
CVec eve_path_vector(const ChannelSet& ch, const CVec& w);

struct ProjectorPair {
  CMat p_bs;   // N x N, annihilates h_ae^T
  CMat p_ris;  // M x M, annihilates f
  CVec f;
};

ProjectorPair make_projector_pair(const ChannelSet& ch, const CVec& w);

// Generalized Rayleigh pencils of the two-stage solvers; exposed so tests can
// sample the same objectives the solvers maximize.
HermitianPencil mnpl_bs_pencil(const ChannelSet& ch);  // P5, BS side

// P5, RIS side, reduced onto the feasible subspace upsilon = basis * y
// (upsilon^T f = 0); feasible vectors are basis * (unit y).
struct SubspacePencil {
  HermitianPencil pencil;
  CMat basis;
};
SubspacePencil mnpl_ris_pencil(const ChannelSet& ch, const CVec& w,
                               const PhysicalConstants& consts);

HermitianPencil el_ris_pencil(const ChannelSet& ch, const PhysicalConstants& consts);  // P7
HermitianPencil el_an_pencil(const ChannelSet& ch, const CVec& w, const CVec& upsilon,
                             const PhysicalConstants& consts);  // P8
HermitianPencil el_precoder_pencil(const ChannelSet& ch, const CVec& v, const CVec& upsilon,
                                   const PhysicalConstants& consts);  // P9

// Multi-stream null-space projection and leakage solver: w confined to the
// null space of Eve's direct channel, reflection vector confined to the null
// space of Eve's reflected path, each direction chosen by its leakage
// quotient. All transmit power goes to the confidential signal.
BeamformingSolution mnpl_solve(const ChannelSet& ch, const PhysicalConstants& consts);

// Enhanced-leakage steps.
CVec el_ris_phase(const ChannelSet& ch, const PhysicalConstants& consts);
CVec el_an_vector(const ChannelSet& ch, const CVec& w, const CVec& upsilon,
                  const PhysicalConstants& consts);
CVec el_precoder(const ChannelSet& ch, const CVec& v, const CVec& upsilon,
                 const PhysicalConstants& consts);

struct PowerSplit {
  double xi = 1.0;
  double sr = 0.0;
};

// One-dimensional search for the signal/AN power split on a uniform grid
// over [0, 1] (endpoints included).
PowerSplit power_split(const ChannelSet& ch, const CVec& w_dir, const CVec& v_dir,
                       const CVec& upsilon, const PhysicalConstants& consts, int grid_points);

BeamformingSolution el_solve(const ChannelSet& ch, const PhysicalConstants& consts,
                             int grid_points = 1001);

}  // namespace risdm

#endif
