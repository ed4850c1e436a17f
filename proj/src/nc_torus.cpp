#include "gabnc/nc_torus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gabnc/linalg.hpp"

namespace gabnc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TorusBox::TorusBox(double alpha, double beta, int radius)
    : alpha_(alpha), beta_(beta), radius_(radius), side_(2 * radius + 1) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("torus lattice steps must be positive");
  if (radius < 0) throw std::invalid_argument("box radius must be >= 0");
}

int TorusBox::position(int m, int n) const {
  if (std::abs(m) > radius_ || std::abs(n) > radius_) return -1;
  return (m + radius_) * side_ + (n + radius_);
}

Complex TorusBox::cocycle(int mu, int nu) const { return std::polar(1.0, -kTwoPi * w(nu) * x(mu)); }

CMatrix TorusBox::convolution_matrix(const CVector& a) const {
  const int n = size();
  CMatrix m = CMatrix::Zero(n, n);
  for (int lam = 0; lam < n; ++lam) {
    for (int nu = 0; nu < n; ++nu) {
      const int mu = position(m_of(lam) - m_of(nu), n_of(lam) - n_of(nu));
      if (mu >= 0 && a[mu] != 0.0) m(lam, nu) = a[mu] * cocycle(mu, nu);
    }
  }
  return m;
}

CVector TorusBox::d_plus(const CVector& a) const {
  CVector out(size());
  for (int i = 0; i < size(); ++i) out[i] = Complex(-kTwoPi * w(i), kTwoPi * x(i)) * a[i];
  return out;
}

CVector TorusBox::d_minus(const CVector& a) const {
  CVector out(size());
  for (int i = 0; i < size(); ++i) out[i] = Complex(-kTwoPi * w(i), -kTwoPi * x(i)) * a[i];
  return out;
}

CMatrix TorusBox::canonical_dirac() const {
  const int n = size();
  CMatrix d = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    d(i, n + i) = Complex(-kTwoPi * w(i), kTwoPi * x(i));
    d(n + i, i) = Complex(-kTwoPi * w(i), -kTwoPi * x(i));
  }
  return d;
}

CMatrix TorusBox::abs_dirac_from_weight() const {
  const int n = size();
  CMatrix d = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const double v2 = 1.0 + x(i) * x(i) + w(i) * w(i);
    d(i, i) = d(n + i, n + i) = kTwoPi * std::sqrt(v2 - 1.0);
  }
  return d;
}

TorusReport nc_torus_reconcile(const TorusBox& box, const std::vector<CVector>& elements) {
  const int n = box.size();
  TorusReport r;
  const CMatrix d = box.canonical_dirac();
  const CMatrix d2 = d * d;
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      const int p = i % n;
      const double want = i == j ? 4.0 * std::numbers::pi * std::numbers::pi * (box.x(p) * box.x(p) + box.w(p) * box.w(p)) : 0.0;
      r.d_squared_residual = std::max(r.d_squared_residual, std::abs(d2(i, j) - want) / std::max(1.0, want));
    }
  }
  const CMatrix abs_d = hermitian_function(d, [](double t) { return std::abs(t); });
  r.abs_residual = operator_norm(abs_d - box.abs_dirac_from_weight());

  for (const CVector& a : elements) {
    const CMatrix am = box.convolution_matrix(a);
    CMatrix big = CMatrix::Zero(2 * n, 2 * n);
    big.topLeftCorner(n, n) = am;
    big.bottomRightCorner(n, n) = am;
    const CMatrix comm = d * big - big * d;
    CMatrix via_d = CMatrix::Zero(2 * n, 2 * n);
    via_d.topRightCorner(n, n) = box.convolution_matrix(box.d_plus(a));
    via_d.bottomLeftCorner(n, n) = box.convolution_matrix(box.d_minus(a));
    const double cn = operator_norm(comm);
    const double dn = operator_norm(via_d);
    const double scale = std::max(cn, 1e-300);
    r.commutator_residual = std::max(r.commutator_residual, operator_norm(comm - via_d) / scale);
    r.commutator_norm_gap = std::max(r.commutator_norm_gap, std::abs(cn - dn) / scale);
    ++r.samples;
  }
  return r;
}

}  // namespace gabnc
