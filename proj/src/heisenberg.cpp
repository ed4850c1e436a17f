#include "gabnc/heisenberg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "gabnc/errors.hpp"
#include "gabnc/gabor.hpp"
#include "gabnc/linalg.hpp"

namespace gabnc {

HeisenbergModule::HeisenbergModule(const Lattice& lattice)
    : left_(std::make_shared<const Lattice>(lattice)),
      right_(std::make_shared<const Lattice>(adjoint_lattice(lattice))),
      covolume_(lattice.covolume_value()) {}

TwistedElement left_inner(const HeisenbergModule& m, const CVector& f, const CVector& g) {
  return {m.left_ptr(), analysis(m.left_lattice(), f, g)};
}

TwistedElement right_inner(const HeisenbergModule& m, const CVector& f, const CVector& g) {
  const Lattice& r = m.right_lattice();
  CVector c(r.size());
  for (int i = 0; i < r.size(); ++i) c[i] = inner(apply_tf_shift(r.group(), r.point(i), g), f);
  return {m.right_ptr(), c, true, m.right_measure()};
}

CVector left_action(const TwistedElement& a, const CVector& f) {
  if (a.conjugate()) throw std::invalid_argument("left action needs an element of the left algebra");
  const Lattice& l = a.lattice();
  CVector out = CVector::Zero(f.size());
  for (int i = 0; i < a.size(); ++i)
    if (a(i) != 0.0) out += a(i) * apply_tf_shift(l.group(), l.point(i), f);
  return out * a.measure();
}

CVector right_action(const HeisenbergModule& m, const CVector& f, const TwistedElement& b) {
  if (!b.conjugate() || !(b.lattice() == m.right_lattice()))
    throw std::invalid_argument("right action needs an element supported on the adjoint lattice");
  const Lattice& r = m.right_lattice();
  CVector out = CVector::Zero(f.size());
  for (int i = 0; i < b.size(); ++i)
    if (b(i) != 0.0) out += b(i) * apply_tf_shift_adjoint(r.group(), r.point(i), f);
  return out * m.right_measure();
}

CMatrix right_operator(const HeisenbergModule& m, const TwistedElement& b) {
  const int n = m.group().order();
  CMatrix out(n, n);
  for (int t = 0; t < n; ++t) {
    CVector e = CVector::Zero(n);
    e[t] = 1.0;
    out.col(t) = right_action(m, e, b);
  }
  return out;
}

double bimodule_check(const HeisenbergModule& m, const CVector& f, const CVector& g, const CVector& h) {
  const CVector lhs = left_action(left_inner(m, f, g), h);
  const CVector rhs = right_action(m, f, right_inner(m, g, h));
  return (lhs - rhs).norm();
}

namespace {

// f -> sum_j <f, g_j> . g_j, assembled column by column from the module operations.
CMatrix module_frame_matrix(const HeisenbergModule& m, const std::vector<CVector>& windows) {
  const int n = m.group().order();
  CMatrix theta = CMatrix::Zero(n, n);
  for (int t = 0; t < n; ++t) {
    CVector e = CVector::Zero(n);
    e[t] = 1.0;
    for (const CVector& g : windows) theta.col(t) += left_action(left_inner(m, e, g), g);
  }
  return theta;
}

}  // namespace

ModuleFrameReport module_frame_check(const HeisenbergModule& m, const std::vector<CVector>& windows, Rng& rng,
                                     int trials, double tol) {
  const int n = m.group().order();
  ModuleFrameReport r;
  for (int k = 0; k < trials; ++k) {
    const CVector f = random_vector(n, rng);
    CVector sf = CVector::Zero(n);
    for (const CVector& g : windows) sf += left_action(left_inner(m, f, g), g);
    r.module_residual = std::max(r.module_residual, (sf - f).norm() / f.norm());
  }
  const CMatrix theta = module_frame_matrix(m, windows);
  Eigen::JacobiSVD<CMatrix> svd(theta);
  r.module_lower = svd.singularValues()[n - 1];
  r.module_frame = r.module_lower > kFrameTolerance;
  r.module_parseval = r.module_residual <= tol && operator_norm(theta - CMatrix::Identity(n, n)) <= tol;

  const FrameReport fr = frame_bounds(windows, m.left_lattice());
  r.operator_residual = fr.parseval_residual;
  r.operator_lower = fr.lower;
  r.operator_frame = fr.frame;
  r.operator_parseval = fr.parseval_residual <= tol;
  return r;
}

RightMultiplierReport frame_op_as_right_multiplier(const HeisenbergModule& m, const std::vector<CVector>& windows,
                                                   Rng& rng, int trials) {
  const int n = m.group().order();
  const Lattice& lat = m.left_lattice();
  const CMatrix s = frame_operator(windows, lat);
  if (!frame_bounds_of(s).frame) throw MathError("not a frame: the frame operator is singular");

  TwistedElement mult = m.right_zero();
  for (const CVector& g : windows) mult = mult + right_inner(m, g, g);

  RightMultiplierReport r{0.0, 0.0, 0.0, false, mult};
  for (int k = 0; k < trials; ++k) {
    const CVector f = random_vector(n, rng);
    r.identity_residual = std::max(r.identity_residual, (s * f - right_action(m, f, mult)).norm() / f.norm());
  }

  // Invert f -> f . mult as a matrix, read the inverse back as an element of
  // the right algebra through the Hilbert-Schmidt orthogonal basis
  // { m pi(chi)^* } and compare the two duals.
  const CMatrix rop = right_operator(m, mult);
  const CMatrix rinv = rop.partialPivLu().inverse();
  const Lattice& rl = m.right_lattice();
  const double mu = m.right_measure();
  CVector b(rl.size());
  for (int i = 0; i < rl.size(); ++i) {
    const CMatrix basis = tf_shift(m.group(), rl.point(i)).adjoint();
    b[i] = (basis.adjoint() * rinv).trace() / (mu * n);
  }
  const TwistedElement inv = mult.like(b);
  r.span_residual = operator_norm(right_operator(m, inv) - rinv) / std::max(1.0, operator_norm(rinv));
  r.representable = r.span_residual <= 1e-9;

  const std::vector<CVector> duals = canonical_dual(windows, lat);
  for (std::size_t i = 0; i < windows.size(); ++i)
    r.dual_discrepancy = std::max(r.dual_discrepancy, (duals[i] - right_action(m, windows[i], inv)).norm());
  return r;
}

}  // namespace gabnc
