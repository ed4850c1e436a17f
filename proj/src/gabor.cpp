#include "gabnc/gabor.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "gabnc/errors.hpp"
#include "gabnc/kernels.hpp"
#include "gabnc/linalg.hpp"

namespace gabnc {

CVector stft(const FiniteGroup& g, const CVector& f, const CVector& window) {
  if (f.size() != g.order() || window.size() != g.order())
    throw std::invalid_argument("stft: vector length does not match the group");
  return kernels::stft_omp(g, f, window);
}

double m1v_norm(const FiniteGroup& g, const CVector& f, const CVector& window, const Weight& v) {
  if (window.norm() == 0.0) throw std::invalid_argument("M1 norm needs a nonzero reference window");
  const CVector vg = stft(g, f, window);
  double s = 0.0;
  for (Eigen::Index i = 0; i < vg.size(); ++i) s += std::abs(vg[i]) * v(static_cast<int>(i));
  return s / g.order();
}

CVector analysis(const Lattice& lattice, const CVector& f, const CVector& window) {
  CVector c(lattice.size());
  for (int i = 0; i < lattice.size(); ++i) c[i] = inner(f, apply_tf_shift(lattice.group(), lattice.point(i), window));
  return c;
}

CVector synthesis(const Lattice& lattice, const CVector& coeffs, const CVector& window) {
  CVector out = CVector::Zero(lattice.group().order());
  for (int i = 0; i < lattice.size(); ++i)
    if (coeffs[i] != 0.0) out += coeffs[i] * apply_tf_shift(lattice.group(), lattice.point(i), window);
  return out;
}

CMatrix frame_operator(const std::vector<CVector>& windows, const Lattice& lattice) {
  for (const CVector& w : windows)
    if (w.size() != lattice.group().order()) throw std::invalid_argument("window length does not match the group");
  return kernels::frame_operator_omp(windows, lattice);
}

FrameReport frame_bounds_of(const CMatrix& s) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(hermitian_part(s));
  FrameReport r;
  r.lower = std::max(ev[0], 0.0);
  r.upper = std::max(ev[ev.size() - 1], 0.0);
  r.parseval_residual = std::max(std::abs(ev[0] - 1.0), std::abs(ev[ev.size() - 1] - 1.0));
  r.frame = ev[0] > kFrameTolerance;
  return r;
}

FrameReport frame_bounds(const std::vector<CVector>& windows, const Lattice& lattice) {
  return frame_bounds_of(frame_operator(windows, lattice));
}

double bessel_bound(const std::vector<CVector>& windows, const Lattice& lattice) {
  return frame_bounds(windows, lattice).upper;
}

std::vector<CVector> canonical_dual(const std::vector<CVector>& windows, const Lattice& lattice) {
  const CMatrix s = hermitian_part(frame_operator(windows, lattice));
  if (!frame_bounds_of(s).frame) throw MathError("not a frame: the frame operator is singular");
  const Eigen::LDLT<CMatrix> ldlt(s);
  std::vector<CVector> out;
  for (const CVector& w : windows) out.push_back(ldlt.solve(w));
  return out;
}

std::vector<CVector> parseval_window(const std::vector<CVector>& windows, const Lattice& lattice) {
  const CMatrix s = hermitian_part(frame_operator(windows, lattice));
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  if (es.info() != Eigen::Success) throw MathError("Hermitian eigensolver did not converge");
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (!(ev[0] > kFrameTolerance * ev[ev.size() - 1]))
    throw MathError("not a frame: the frame operator is numerically singular");
  const CMatrix& u = es.eigenvectors();
  const CMatrix inv_sqrt = u * ev.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
  std::vector<CVector> out;
  for (const CVector& w : windows) out.push_back(inv_sqrt * w);
  return out;
}

CVector reconstruct(const Lattice& lattice, const CVector& f, const std::vector<CVector>& windows,
                    const std::vector<CVector>& duals) {
  if (windows.size() != duals.size()) throw std::invalid_argument("window and dual counts differ");
  CVector out = CVector::Zero(f.size());
  for (std::size_t i = 0; i < windows.size(); ++i) out += synthesis(lattice, analysis(lattice, f, windows[i]), duals[i]);
  return out;
}

}  // namespace gabnc
