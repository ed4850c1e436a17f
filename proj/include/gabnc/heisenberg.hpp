#pragma once

// Heisenberg modules: l2(G) as a bimodule between the twisted algebras of
// Lambda (acting on the left) and Lambda° (acting on the right).
//
// The right algebra lives on Lambda° with the conjugate cocycle and point mass
// 1/s(Lambda); that mass is the only place the size of Lambda enters.

#include <vector>

#include "gabnc/random.hpp"
#include "gabnc/twisted.hpp"

namespace gabnc {

class HeisenbergModule {
 public:
  explicit HeisenbergModule(const Lattice& lattice);

  const Lattice& left_lattice() const { return *left_; }
  const Lattice& right_lattice() const { return *right_; }
  const LatticePtr& left_ptr() const { return left_; }
  const LatticePtr& right_ptr() const { return right_; }
  const FiniteGroup& group() const { return left_->group(); }
  /// s(Lambda).
  double covolume() const { return covolume_; }
  /// 1 / s(Lambda), the point mass on Lambda°.
  double right_measure() const { return 1.0 / covolume_; }

  TwistedElement left_zero() const { return TwistedElement::zero(left_); }
  TwistedElement right_zero() const { return TwistedElement::zero(right_, true, right_measure()); }
  TwistedElement right_unit() const { return TwistedElement::unit(right_, true, right_measure()); }

 private:
  LatticePtr left_;
  LatticePtr right_;
  double covolume_;
};

/// lambda -> <f, pi(lambda) g>.
TwistedElement left_inner(const HeisenbergModule& m, const CVector& f, const CVector& g);
/// chi -> <pi(chi) g, f> on Lambda°.
TwistedElement right_inner(const HeisenbergModule& m, const CVector& f, const CVector& g);
/// sum a(lambda) pi(lambda) f.
CVector left_action(const TwistedElement& a, const CVector& f);
/// (1/s) sum b(chi) pi(chi)^* f. b must live on Lambda°.
CVector right_action(const HeisenbergModule& m, const CVector& f, const TwistedElement& b);
/// The matrix of f -> f . b.
CMatrix right_operator(const HeisenbergModule& m, const TwistedElement& b);

/// || <f,g> h - f <g,h> ||_2.
double bimodule_check(const HeisenbergModule& m, const CVector& f, const CVector& g, const CVector& h);

struct ModuleFrameReport {
  double module_residual = 0.0;    // max_f || sum_j <f,g_j> g_j - f || / ||f||
  double operator_residual = 0.0;  // ||S - I||_op
  bool module_parseval = false;
  bool operator_parseval = false;
  double module_lower = 0.0;  // smallest singular value of f -> sum_j <f,g_j> g_j
  double operator_lower = 0.0;
  bool module_frame = false;
  bool operator_frame = false;

  bool agree() const { return module_parseval == operator_parseval && module_frame == operator_frame; }
};

/// Compares the module-side frame property (via inner products and actions)
/// with the Gabor frame operator.
ModuleFrameReport module_frame_check(const HeisenbergModule& m, const std::vector<CVector>& windows, Rng& rng,
                                     int trials = 8, double tol = 1e-10);

struct RightMultiplierReport {
  double identity_residual = 0.0;  // max_f || S f - f . sum <g_i, g_i> || / ||f||
  double dual_discrepancy = 0.0;   // max_i || S^{-1} g_i - g_i . (sum <g_i,g_i>)^{-1} ||
  double span_residual = 0.0;      // how far the matrix inverse is from the right algebra
  bool representable = false;
  TwistedElement multiplier;       // sum_i <g_i, g_i> on Lambda°
};

/// Frame operator as right multiplication by sum_i <g_i, g_i>. Throws
/// MathError when the family is not a frame.
RightMultiplierReport frame_op_as_right_multiplier(const HeisenbergModule& m, const std::vector<CVector>& windows,
                                                   Rng& rng, int trials = 8);

}  // namespace gabnc
