#pragma once

// STFT, M1_v norms and (multiwindow) Gabor frames over a lattice.

#include <vector>

#include "gabnc/weights.hpp"

namespace gabnc {

/// <f, h> = sum_t f(t) conj(h(t)), linear in the first slot.
inline Complex inner(const CVector& f, const CVector& h) { return h.dot(f); }

/// V_g f(xi) = <f, pi(xi) g>, indexed by phase index.
CVector stft(const FiniteGroup& g, const CVector& f, const CVector& window);

/// sum_xi |V_g f(xi)| v(xi) / |G|.
double m1v_norm(const FiniteGroup& g, const CVector& f, const CVector& window, const Weight& v);

/// Coefficients <f, pi(lambda) g> in lattice order.
CVector analysis(const Lattice& lattice, const CVector& f, const CVector& window);
/// sum_lambda c(lambda) pi(lambda) g.
CVector synthesis(const Lattice& lattice, const CVector& coeffs, const CVector& window);

CMatrix frame_operator(const std::vector<CVector>& windows, const Lattice& lattice);

inline constexpr double kFrameTolerance = 1e-10;

struct FrameReport {
  double lower = 0.0;
  double upper = 0.0;
  double parseval_residual = 0.0;  // ||S - I||_op
  bool frame = false;              // lower > kFrameTolerance
};

FrameReport frame_bounds(const std::vector<CVector>& windows, const Lattice& lattice);
FrameReport frame_bounds_of(const CMatrix& s);
double bessel_bound(const std::vector<CVector>& windows, const Lattice& lattice);

/// S^{-1} g_i. Throws MathError when the family is not a frame.
std::vector<CVector> canonical_dual(const std::vector<CVector>& windows, const Lattice& lattice);
/// S^{-1/2} g_i via the Hermitian eigendecomposition of S.
std::vector<CVector> parseval_window(const std::vector<CVector>& windows, const Lattice& lattice);

/// sum_i sum_lambda <f, pi(lambda) g_i> pi(lambda) h_i.
CVector reconstruct(const Lattice& lattice, const CVector& f, const std::vector<CVector>& windows,
                    const std::vector<CVector>& duals);

}  // namespace gabnc
