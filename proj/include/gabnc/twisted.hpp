#pragma once

// The twisted group algebra l1_v(Lambda, c) of a lattice, represented on l2(G).
//
// An element carries its lattice, which cocycle it is twisted by (c or its
// conjugate) and the point mass m of the measure on the lattice. The left
// algebra of a Heisenberg module is (Lambda, c, 1); the right one is
// (Lambda°, conj c, 1/s(Lambda)).

#include <memory>
#include <string>

#include "gabnc/weights.hpp"

namespace gabnc {

using LatticePtr = std::shared_ptr<const Lattice>;

class TwistedElement {
 public:
  TwistedElement(LatticePtr lattice, CVector coeffs, bool conjugate = false, double measure = 1.0);

  static TwistedElement zero(LatticePtr lattice, bool conjugate = false, double measure = 1.0);
  static TwistedElement delta(LatticePtr lattice, int position, bool conjugate = false, double measure = 1.0);
  /// delta_0 / m, the unit for twisted convolution.
  static TwistedElement unit(LatticePtr lattice, bool conjugate = false, double measure = 1.0);
  /// Same lattice, twist and measure; new coefficients.
  TwistedElement like(CVector coeffs) const { return {lattice_, std::move(coeffs), conjugate_, measure_}; }

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const CVector& coeffs() const { return coeffs_; }
  CVector& coeffs() { return coeffs_; }
  Complex operator()(int position) const { return coeffs_[position]; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  bool conjugate() const { return conjugate_; }
  double measure() const { return measure_; }

  /// The twisting cocycle evaluated on lattice positions.
  Complex cocycle(int i, int j) const;

  bool compatible(const TwistedElement& other) const;

  TwistedElement operator+(const TwistedElement& o) const;
  TwistedElement operator-(const TwistedElement& o) const;
  TwistedElement operator*(Complex s) const { return like(coeffs_ * s); }

 private:
  LatticePtr lattice_;
  CVector coeffs_;
  bool conjugate_;
  double measure_;
};

/// (a * b)(l) = m sum_{l'} a(l') b(l - l') c(l', l - l').
TwistedElement twisted_convolve(const TwistedElement& a, const TwistedElement& b);
/// a^*(l) = c(l, l) conj(a(-l)).
TwistedElement twisted_involution(const TwistedElement& a);

/// m sum |a(l)| v(l)^power.
double weighted_norm(const TwistedElement& a, const Weight& v, double power = 1.0);
double l1_norm(const TwistedElement& a);
/// (m sum |a(l)|^2)^{1/2}, so that tr(a a^*) = ||a||_2^2.
double l2_norm(const TwistedElement& a);
/// a(0).
Complex trace(const TwistedElement& a);

/// m sum a(l) pi(l), or m sum a(l) conj(pi(l)) for the conjugate twist.
CMatrix represent(const TwistedElement& a);
/// Spectral norm of represent(a).
double cstar_norm(const TwistedElement& a);

/// Orthogonal projection of a matrix onto span{represent(delta_l)} (the
/// shifts are Hilbert-Schmidt orthogonal), returned as coefficients.
TwistedElement project_to_algebra(const CMatrix& m, const TwistedElement& prototype);

/// Rank of the map a -> represent(a); equals |Lambda| when faithful.
int representation_rank(const Lattice& lattice);

struct SpectralInverseReport {
  TwistedElement inverse;
  double weighted_norm = 0.0;  // ||b||_{l1_v}
  double residual = 0.0;       // ||rep(b) rep(a) - I||_op
  double span_residual = 0.0;  // ||rep(b) - rep(a)^{-1}||_op
  bool in_span = false;
};

/// Inverts rep(a) and reads the inverse back as a lattice element. Throws
/// MathError when rep(a) is singular.
SpectralInverseReport spectral_inverse_check(const TwistedElement& a, const Weight& v, double tol = 1e-10);

/// CSV with rows "x..., w..., re, im".
TwistedElement read_element_csv(const std::string& path, LatticePtr lattice);
void write_element_csv(const std::string& path, const TwistedElement& a);

}  // namespace gabnc
