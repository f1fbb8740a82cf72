#include "risdm/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace risdm {

namespace {

constexpr double kTinyNorm = 1e-300;

CMat outer_t(const CVec& c) {
  // conj(c) c^T, the Hermitian PSD form of |c^T x|^2
  return c.conjugate() * c.transpose();
}

CMat multipath_covariance(const std::vector<CVec>& paths, Eigen::Index n) {
  CMat a = CMat::Zero(n, n);
  for (const CVec& h : paths) a += outer_t(h);
  return a;
}

// Rotate a reflection direction so the reflected path combines
// constructively with the direct path at Bob (global eigenvector phase is
// otherwise arbitrary).
void align_with_direct_path(CVec& upsilon_dir, const ChannelSet& ch) {
  CVec reflected = ch.h_bs_ris * upsilon_dir.cwiseProduct(ch.h_rb);
  Complex overlap = ch.h_ab.dot(reflected);  // h_ab^H reflected
  if (std::abs(overlap) > kTinyNorm) {
    upsilon_dir *= std::polar(1.0, -std::arg(overlap));
  }
}

CVec scale_to_amplitude_cap(CVec upsilon_dir, double rho_max) {
  double peak = upsilon_dir.cwiseAbs().maxCoeff();
  if (peak < kTinyNorm) throw std::runtime_error("reflection direction vanished");
  return (rho_max / peak) * upsilon_dir;
}

}  // namespace

CMat null_projector(const CVec& h) {
  double norm2 = h.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("null_projector: zero vector");
  const Eigen::Index n = h.size();
  return CMat::Identity(n, n) - (h.conjugate() * h.transpose()) / norm2;
}

CVec eve_path_vector(const ChannelSet& ch, const CVec& w) {
  return ch.h_re.cwiseProduct(ch.h_bs_ris.transpose() * w);
}

ProjectorPair make_projector_pair(const ChannelSet& ch, const CVec& w) {
  ProjectorPair pair;
  pair.p_bs = null_projector(ch.h_ae);
  pair.f = eve_path_vector(ch, w);
  pair.p_ris = null_projector(pair.f.conjugate());
  return pair;
}

HermitianPencil mnpl_bs_pencil(const ChannelSet& ch) {
  CMat p = null_projector(ch.h_ae);
  CVec u = p * ch.h_ab.conjugate();
  HermitianPencil pencil;
  pencil.a = u * u.adjoint();
  pencil.b = CMat::Zero(ch.n(), ch.n());
  for (const CVec& h : ch.multipath_bob) {
    CVec ph = p * h.conjugate();
    pencil.b += ph * ph.adjoint();
  }
  return pencil;
}

SubspacePencil mnpl_ris_pencil(const ChannelSet& ch, const CVec& w,
                               const PhysicalConstants& consts) {
  CVec f = eve_path_vector(ch, w);
  if (f.norm() < kTinyNorm) throw std::invalid_argument("mnpl_ris_pencil: Eve reflected path is zero");
  SubspacePencil sp;
  sp.basis = orthonormal_complement(f.conjugate());
  CVec g = ch.h_rb.cwiseProduct(ch.h_bs_ris.transpose() * w);
  CVec bg = sp.basis.adjoint() * g.conjugate();
  sp.pencil.a = bg * bg.adjoint();
  sp.pencil.b = consts.noise_ris *
                CMat(sp.basis.adjoint() * ch.h_rb.cwiseAbs2().asDiagonal() * sp.basis);
  return sp;
}

BeamformingSolution mnpl_solve(const ChannelSet& ch, const PhysicalConstants& consts) {
  const Eigen::Index n = ch.n();
  const Eigen::Index m = ch.m();
  CMat p_bs = null_projector(ch.h_ae);
  if ((p_bs * ch.h_ab.conjugate()).norm() < 1e-14 * ch.h_ab.norm()) {
    throw std::runtime_error("mnpl_solve: Bob channel lies in Eve's null space, no usable direction");
  }

  CVec tau = dominant_generalized_eigvec(mnpl_bs_pencil(ch));
  CVec w_dir = p_bs * tau;
  double wn = w_dir.norm();
  if (wn < kTinyNorm) throw std::runtime_error("mnpl_solve: projected precoder vanished");
  CVec w = std::sqrt(consts.tx_power) * w_dir / wn;

  CVec g = ch.h_rb.cwiseProduct(ch.h_bs_ris.transpose() * w);
  CVec f = eve_path_vector(ch, w);
  CVec upsilon_dir;
  if (f.norm() < kTinyNorm) {
    // Eve's reflected path is already dark; keep the unconstrained leakage
    // quotient toward Bob.
    if (g.norm() < kTinyNorm) {
      upsilon_dir = CVec::Ones(m);
    } else {
      HermitianPencil pencil;
      pencil.a = g.conjugate() * g.transpose();
      pencil.b = consts.noise_ris * CMat(ch.h_rb.cwiseAbs2().asDiagonal());
      upsilon_dir = dominant_generalized_eigvec(pencil);
    }
  } else if (m == 1) {
    // a single element cannot serve Bob and null Eve at once; go dark
    upsilon_dir = CVec::Zero(1);
  } else {
    SubspacePencil sp = mnpl_ris_pencil(ch, w, consts);
    upsilon_dir = sp.basis * dominant_generalized_eigvec(sp.pencil);
  }

  BeamformingSolution sol;
  sol.w = w;
  sol.v = CVec::Zero(n);
  sol.xi = 1.0;
  if (upsilon_dir.cwiseAbs().maxCoeff() < kTinyNorm) {
    sol.upsilon = CVec::Zero(m);
  } else {
    align_with_direct_path(upsilon_dir, ch);
    sol.upsilon = scale_to_amplitude_cap(upsilon_dir, consts.rho_max);
  }
  SinrPair s = sinr_pair(sol, ch, consts);
  sol.sr = secrecy_rate(s.bob, s.eve);
  return sol;
}

namespace {

// Covariance blocks of the leakage objective (P6); scalars of P8/P9 follow.
struct ElMatrices {
  CMat a5, a6, a7, a8;
  RVec re_abs2, rb_abs2;  // diagonals of A11, A12
  CVec c_b, c_e;          // composite channels
};

ElMatrices build_el_matrices(const ChannelSet& ch, const CVec& upsilon) {
  ElMatrices em;
  em.c_b = composite_channel(ch.h_ab, ch.h_rb, upsilon, ch.h_bs_ris);
  em.c_e = composite_channel(ch.h_ae, ch.h_re, upsilon, ch.h_bs_ris);
  em.a5 = outer_t(em.c_b);
  em.a7 = multipath_covariance(ch.multipath_bob, ch.n());
  em.a8 = multipath_covariance(ch.multipath_eve, ch.n());
  em.a6 = outer_t(em.c_e) - em.a8;
  em.re_abs2 = ch.h_re.cwiseAbs2();
  em.rb_abs2 = ch.h_rb.cwiseAbs2();
  return em;
}

double noise_quadratic(const RVec& abs2, const CVec& upsilon) {
  return (abs2.array() * upsilon.cwiseAbs2().array()).sum();
}

}  // namespace

HermitianPencil el_ris_pencil(const ChannelSet& ch, const PhysicalConstants& consts) {
  HermitianPencil pencil;
  pencil.a = ch.h_re * ch.h_re.adjoint() + ch.h_rb * ch.h_rb.adjoint() +
             consts.noise_ris * CMat(ch.h_re.cwiseAbs2().asDiagonal());
  pencil.b = consts.noise_ris * CMat(ch.h_rb.cwiseAbs2().asDiagonal());
  return pencil;
}

CVec el_ris_phase(const ChannelSet& ch, const PhysicalConstants& consts) {
  CVec tau = dominant_generalized_eigvec(el_ris_pencil(ch, consts));
  align_with_direct_path(tau, ch);
  return scale_to_amplitude_cap(tau, consts.rho_max);
}

HermitianPencil el_an_pencil(const ChannelSet& ch, const CVec& w, const CVec& upsilon,
                             const PhysicalConstants& consts) {
  ElMatrices em = build_el_matrices(ch, upsilon);
  const Eigen::Index n = ch.n();
  double c1 = w.dot(em.a5 * w).real() + consts.noise_ris * noise_quadratic(em.re_abs2, upsilon);
  double c2 = w.dot((em.a6 + em.a7) * w).real() +
              consts.noise_ris * noise_quadratic(em.rb_abs2, upsilon);
  HermitianPencil pencil;
  pencil.a = em.a6 + 2.0 * em.a8 + c1 * CMat::Identity(n, n);
  pencil.b = em.a5 + em.a7 + c2 * CMat::Identity(n, n);
  return pencil;
}

CVec el_an_vector(const ChannelSet& ch, const CVec& w, const CVec& upsilon,
                  const PhysicalConstants& consts) {
  return dominant_generalized_eigvec(el_an_pencil(ch, w, upsilon, consts));
}

HermitianPencil el_precoder_pencil(const ChannelSet& ch, const CVec& v, const CVec& upsilon,
                                   const PhysicalConstants& consts) {
  ElMatrices em = build_el_matrices(ch, upsilon);
  const Eigen::Index n = ch.n();
  double c3 = v.dot((em.a6 + 2.0 * em.a8) * v).real() +
              consts.noise_ris * noise_quadratic(em.re_abs2, upsilon);
  double c4 = v.dot((em.a5 + em.a7) * v).real() +
              consts.noise_ris * noise_quadratic(em.rb_abs2, upsilon);
  HermitianPencil pencil;
  pencil.a = em.a5 + c3 * CMat::Identity(n, n);
  pencil.b = em.a6 + em.a7 + c4 * CMat::Identity(n, n);
  return pencil;
}

CVec el_precoder(const ChannelSet& ch, const CVec& v, const CVec& upsilon,
                 const PhysicalConstants& consts) {
  return dominant_generalized_eigvec(el_precoder_pencil(ch, v, upsilon, consts));
}

PowerSplit power_split(const ChannelSet& ch, const CVec& w_dir, const CVec& v_dir,
                       const CVec& upsilon, const PhysicalConstants& consts, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("power_split: need at least 2 grid points");
  CVec c_b = composite_channel(ch.h_ab, ch.h_rb, upsilon, ch.h_bs_ris);
  CVec c_e = composite_channel(ch.h_ae, ch.h_re, upsilon, ch.h_bs_ris);

  auto path_terms = [&](const CVec& c, const std::vector<CVec>& multipath, const CVec& h_ru) {
    double sig_w = std::norm(dot_t(c, w_dir));
    double leak_v = std::norm(dot_t(c, v_dir));
    double mp_w = 0.0, mp_v = 0.0;
    for (const CVec& h : multipath) {
      mp_w += std::norm(dot_t(h, w_dir));
      mp_v += std::norm(dot_t(h, v_dir));
    }
    double noise = consts.noise_ris * upsilon.cwiseProduct(h_ru).squaredNorm() + consts.noise_bob;
    return std::array<double, 5>{sig_w, leak_v, mp_w, mp_v, noise};
  };
  auto bob = path_terms(c_b, ch.multipath_bob, ch.h_rb);
  auto eve = path_terms(c_e, ch.multipath_eve, ch.h_re);
  const double pt = consts.tx_power;

  PowerSplit best;
  best.sr = -1.0;
  for (int i = 0; i < grid_points; ++i) {
    double xi = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    auto sinr = [&](const std::array<double, 5>& t) {
      double num = xi * pt * t[0];
      double den = xi * pt * t[2] + (1.0 - xi) * pt * (t[1] + t[3]) + t[4];
      return num / den;
    };
    double sr = secrecy_rate(sinr(bob), sinr(eve));
    if (sr > best.sr) {
      best.sr = sr;
      best.xi = xi;
    }
  }
  return best;
}

BeamformingSolution el_solve(const ChannelSet& ch, const PhysicalConstants& consts,
                             int grid_points) {
  CVec upsilon = el_ris_phase(ch, consts);
  CVec c_b = composite_channel(ch.h_ab, ch.h_rb, upsilon, ch.h_bs_ris);
  double cn = c_b.norm();
  if (cn < kTinyNorm) throw std::runtime_error("el_solve: composite Bob channel vanished");
  CVec w_init = c_b.conjugate() / cn;  // matched filter

  CVec v_dir = el_an_vector(ch, w_init, upsilon, consts);
  CVec w_dir = el_precoder(ch, v_dir, upsilon, consts);
  PowerSplit split = power_split(ch, w_dir, v_dir, upsilon, consts, grid_points);

  BeamformingSolution sol;
  sol.w = std::sqrt(split.xi * consts.tx_power) * w_dir;
  sol.v = std::sqrt((1.0 - split.xi) * consts.tx_power) * v_dir;
  sol.upsilon = upsilon;
  sol.xi = split.xi;
  SinrPair s = sinr_pair(sol, ch, consts);
  sol.sr = secrecy_rate(s.bob, s.eve);
  return sol;
}

}  // namespace risdm
