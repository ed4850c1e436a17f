#pragma once

// The noncommutative 2-torus as the twisted algebra of alpha Z x beta Z in R^2,
// truncated to the box |m|, |n| <= M. Elements are coefficient vectors on the
// box; they act on l2(box) by truncated twisted convolution.

#include <vector>

#include "gabnc/lca.hpp"

namespace gabnc {

class TorusBox {
 public:
  TorusBox(double alpha, double beta, int radius);

  int size() const { return side_ * side_; }
  int radius() const { return radius_; }
  double x(int i) const { return alpha_ * (i / side_ - radius_); }
  double w(int i) const { return beta_ * (i % side_ - radius_); }
  /// Position of lattice point (m, n), or -1 outside the box.
  int position(int m, int n) const;
  int m_of(int i) const { return i / side_ - radius_; }
  int n_of(int i) const { return i % side_ - radius_; }
  /// e^{-2 pi i w_mu x_nu}.
  Complex cocycle(int mu, int nu) const;

  /// A[lambda, nu] = a(lambda - nu) c(lambda - nu, nu), dropping differences
  /// that leave the box.
  CMatrix convolution_matrix(const CVector& a) const;
  /// Coefficients of d1(a) + i d2(a) and -d1(a) + i d2(a).
  CVector d_plus(const CVector& a) const;
  CVector d_minus(const CVector& a) const;

  /// Canonical D = (0, d1 + i d2; -d1 + i d2, 0) as multiplication on coefficients.
  CMatrix canonical_dirac() const;
  /// 2 pi (v^2 - 1)^{1/2} with v = (1 + x^2 + w^2)^{1/2}, on both components.
  CMatrix abs_dirac_from_weight() const;

 private:
  double alpha_, beta_;
  int radius_, side_;
};

struct TorusReport {
  double d_squared_residual = 0.0;  // max relative |D^2 - 4 pi^2 (x^2 + w^2)|
  double abs_residual = 0.0;        // || |D| - 2 pi sqrt(x^2 + w^2) ||_op
  double commutator_residual = 0.0; // max || [D, a] - d-matrix(a) ||_op / ||[D,a]||_op over samples
  double commutator_norm_gap = 0.0; // max | ||[D,a]|| - ||d-matrix(a)|| | relative
  int samples = 0;
};

/// Checks D^2, |D| and [D, a] for the given elements.
TorusReport nc_torus_reconcile(const TorusBox& box, const std::vector<CVector>& elements);

}  // namespace gabnc
