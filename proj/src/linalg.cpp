#include "risdm/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <stdexcept>

namespace risdm {

EigResult hermitian_eig(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  double scale = m.norm();
  if ((m - m.adjoint()).norm() > 1e-10 * std::max(scale, 1e-300)) {
    throw std::invalid_argument("hermitian_eig: matrix not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double default_ridge(const CMat& a, const CMat& b) {
  double d = static_cast<double>(b.rows());
  double tb = b.trace().real();
  if (tb > 0.0) return 1e-9 * tb / d;
  double ta = std::abs(a.trace().real());
  return 1e-9 * std::max(ta / d, 1.0);
}

namespace {

// B_eff = B + ridge I, shifted further if it is not numerically positive
// definite (the pencils fed in are PSD up to round-off; the shift covers the
// residual indefinite cases without changing well-posed problems).
CMat effective_denominator(const HermitianPencil& p) {
  double ridge = p.ridge > 0.0 ? p.ridge : default_ridge(p.a, p.b);
  const Eigen::Index d = p.b.rows();
  CMat b_eff = p.b + ridge * CMat::Identity(d, d);
  Eigen::LLT<CMat> llt(b_eff);
  if (llt.info() == Eigen::Success) return b_eff;
  Eigen::SelfAdjointEigenSolver<CMat> es(b_eff);
  double lmin = es.eigenvalues().minCoeff();
  double shift = std::abs(lmin) + ridge + 1e-14 * std::abs(es.eigenvalues().maxCoeff());
  return b_eff + shift * CMat::Identity(d, d);
}

}  // namespace

CVec dominant_generalized_eigvec(const HermitianPencil& p) {
  if (p.a.rows() != p.a.cols() || p.b.rows() != p.b.cols() || p.a.rows() != p.b.rows()) {
    throw std::invalid_argument("dominant_generalized_eigvec: dimension mismatch");
  }
  const Eigen::Index d = p.a.rows();
  double scale_a = p.a.norm();
  if ((p.a - p.a.adjoint()).norm() > 1e-10 * std::max(scale_a, 1e-300)) {
    throw std::invalid_argument("dominant_generalized_eigvec: A not Hermitian");
  }

  CMat b_eff = effective_denominator(p);
  Eigen::LLT<CMat> llt(b_eff);
  if (llt.info() != Eigen::Success) throw std::runtime_error("dominant_generalized_eigvec: Cholesky failed");

  // Whitened problem C = L^-1 A L^-H, Hermitian; its top eigenvector maps
  // back through L^-H.
  CMat l = llt.matrixL();
  CMat c = l.triangularView<Eigen::Lower>().solve(p.a);
  c = l.triangularView<Eigen::Lower>().solve(c.adjoint()).adjoint();
  c = 0.5 * (c + CMat(c.adjoint()));  // symmetrize round-off

  double cnorm = c.norm();
  CVec y = c * CVec::Ones(d);
  if (y.norm() < 1e-300) y = CVec::Unit(d, 0);
  y.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    CVec z = c * y;
    lambda = y.dot(z).real();
    if ((z - lambda * y).norm() <= 1e-12 * std::max(cnorm, 1e-300)) break;
    double zn = z.norm();
    if (zn < 1e-300) break;  // y in the null space; keep current iterate
    y = z / zn;
  }

  Eigen::SelfAdjointEigenSolver<CMat> es(c);
  CVec y_dense = es.eigenvectors().col(d - 1);
  if (y_dense.dot(c * y_dense).real() > lambda) y = y_dense;

  CVec x = l.adjoint().triangularView<Eigen::Upper>().solve(y);
  x.normalize();
  return x;
}

double rayleigh_quotient(const HermitianPencil& p, const CVec& x) {
  CMat b_eff = effective_denominator(p);
  double num = x.dot(p.a * x).real();
  double den = x.dot(b_eff * x).real();
  return num / den;
}

CMat orthonormal_complement(const CVec& v) {
  const Eigen::Index d = v.size();
  if (d < 1 || v.norm() < 1e-300) {
    throw std::invalid_argument("orthonormal_complement: zero vector");
  }
  Eigen::HouseholderQR<CMat> qr(v);
  CMat q = qr.householderQ() * CMat::Identity(d, d);
  return q.rightCols(d - 1);
}

}  // namespace risdm
