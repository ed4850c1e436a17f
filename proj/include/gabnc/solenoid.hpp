#pragma once

// Lattices psi_alpha(Z[1/p]) = {(alpha q, q)} in R x Q_p, their fundamental
// domain [0, |alpha|) x Z_p, and the reduction of solenoid Gabor systems with
// windows g (x) 1_{Z_p} to Gabor systems on R.

#include <vector>

#include "gabnc/padic.hpp"

namespace gabnc {

struct SolenoidPoint {
  Rational alpha;
  PAdicRational q;

  Rational real() const { return alpha * q.value(); }
};

/// q = a / p^height with |q| <= bound; 2 * bound * p^height + 1 points,
/// sorted by value.
std::vector<SolenoidPoint> enumerate_lattice(int p, const Rational& alpha, int height, int bound);
inline std::int64_t lattice_count(int p, int height, int bound) { return 2 * bound * ipow(p, height) + 1; }

struct FundamentalDomainReport {
  int height = 0;
  int samples = 0;
  int missing = 0;     // no q found
  int duplicates = 0;  // more than one q found
  Rational covolume;   // |alpha| * Haar(Z_p)
  bool ok() const { return missing == 0 && duplicates == 0; }
};

/// For sample points t in [-T, T) on a grid of step |alpha| / 4 (so the
/// boundary t = |alpha| is hit) and x in p^{-height} Z with |x| <= T, counts
/// the q with t - alpha q in [0, |alpha|) and x - q in Z_p.
FundamentalDomainReport fundamental_domain_check(int p, const Rational& alpha, int height, int T = 3);

struct TensorReductionReport {
  int height = 0;
  int points = 0;                        // lattice points (q, r) in the truncation
  double vanishing_max = 0.0;            // max |G| where q - q' or r - r' is not in Z_p
  long vanishing_entries = 0;
  double padic_closed_form_gap = 0.0;    // Haar sum vs indicator times phase
  double integer_block_gap = 0.0;        // integer block vs R-side Gram by direct quadrature
  double coset_modulus_gap = 0.0;        // | |coset block| - |integer block| |
  double real_lower = 0.0;               // R-side frame bounds on the finite model
  double real_upper = 0.0;
  bool real_frame = false;
  bool ok(double tol = 1e-10) const {
    return vanishing_max <= tol && padic_closed_form_gap <= tol && integer_block_gap <= tol &&
           coset_modulus_gap <= tol;
  }
};

/// Builds the Gram matrix of pi(alpha q, q, beta r, r)(g (x) 1_{Z_p}) over
/// q, r = a / p^height with |q|, |r| <= bound and checks its block structure.
/// The R-side frame bounds use RealLine(points, span).
TensorReductionReport tensor_reduction_check(const WindowSpec& window, int p, const Rational& alpha,
                                             const Rational& beta, int height, int bound = 1, int points = 64,
                                             double span = 8.0);

}  // namespace gabnc
