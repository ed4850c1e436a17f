#pragma once

// Dirac-type operators on l2(Lambda) + l2(Lambda) built from f(v), iterated
// commutators with |D| and QC^k certificates.

#include <functional>
#include <string>
#include <vector>

#include "gabnc/twisted.hpp"

namespace gabnc {

enum class DiracShape { offdiag, diag };

struct DiracOperator {
  LatticePtr lattice;
  std::vector<double> diag;  // f(v)(lambda) in lattice order
  DiracShape shape = DiracShape::offdiag;
  CompatibilityCertificate certificate;
};

/// Throws MathError when C_dif or C_gr is infinite.
DiracOperator build_dirac(const CompatibleFunction& f, const Weight& v, LatticePtr lattice,
                          DiracShape shape = DiracShape::offdiag);

/// A[lambda, mu] = m a(lambda - mu) c(lambda - mu, mu): left twisted
/// convolution by a on l2(Lambda).
CMatrix convolution_matrix(const TwistedElement& a);

/// The 2|Lambda| x 2|Lambda| matrices of D, |D|, diag(A, A) and the grading.
CMatrix dirac_matrix(const DiracOperator& d);
CMatrix abs_dirac_matrix(const DiracOperator& d);
CMatrix embed_element(const CMatrix& a);
CMatrix grading_matrix(int lattice_size);

/// sum_i (-1)^i binom(k, i) |D|^{k-i} A |D|^i on one component.
CMatrix adk_closed_form(const DiracOperator& d, const TwistedElement& a, int k);
/// Same operator as (f(lambda) - f(mu))^k A[lambda, mu].
CMatrix adk_difference_form(const DiracOperator& d, const CMatrix& a, int k);
/// k-fold [|D|, .] applied to a matrix on one component.
CMatrix iterated_commutator(const DiracOperator& d, const CMatrix& a, int k);

struct BoundCheck {
  std::string what;  // "ad" or "ad[D,a]"
  int order = 0;
  double measured = 0.0;
  double bound = 0.0;
  bool ok = false;
};

/// ||ad^k(|D|)(a)|| <= C_dif^k C_gr^k ||a||_{l1_{v^k}}.
BoundCheck adk_bound_check(const DiracOperator& d, const TwistedElement& a, const Weight& v, int k);
/// ||[D, a]|| <= C_dif C_gr ||a||_{l1_v}, with [D, a] formed on both components.
BoundCheck commutator_Da_bound_check(const DiracOperator& d, const TwistedElement& a, const Weight& v);
/// ||ad^k(|D|)([D, a])|| <= C_dif^{k+1} C_gr^{k+1} ||a||_{l1_{v^{k+1}}}.
BoundCheck adk_commutator_bound_check(const DiracOperator& d, const TwistedElement& a, const Weight& v, int k);

struct LadderOptions {
  std::vector<double> radii;                  // increasing truncation radii
  std::function<double(int)> radius;          // phase index -> radius
  double growth_threshold = 1.5;
};

struct LadderVerdict {
  std::vector<double> profile;  // truncated norms, one per radius
  std::vector<double> ratios;   // profile[i] / profile[i-1]
  bool diverges = false;
};

/// Norms of a restricted to {radius <= R} in l1_{v^power}.
std::vector<double> truncation_profile(const TwistedElement& a, const Weight& v, double power,
                                       const LadderOptions& ladder);
/// Diverging iff the last ratio exceeds the threshold and does not decrease.
LadderVerdict ladder_verdict(std::vector<double> profile, double threshold = 1.5);

struct QCkCertificate {
  int k = 0;
  int n = 0;
  std::vector<double> norms;  // ||a||_{l1_{v^j}}, j = 0..n
  std::vector<BoundCheck> checks;
  bool has_ladder = false;
  LadderVerdict ladder;  // profile of the v^{k+1} norm
  bool bounds_ok = true;
  bool passed = true;
};

/// Norms for j <= n (default n = k + 1), bound checks for ad^j, j = 1..k, and
/// for ad^j([D,a]), j = 0..k, plus an optional truncation ladder.
QCkCertificate qck_certify_element(const TwistedElement& a, const DiracOperator& d, const Weight& v, int k,
                                   const LadderOptions* ladder = nullptr, int n = -1);

struct WindowCertificate {
  std::vector<QCkCertificate> pairs;  // row-major over (i, j)
  bool passed = true;
};

/// Certifies <g_i, g_j> for all pairs. Throws MathError unless the windows
/// form a frame over the lattice of d.
WindowCertificate qck_certify_windows(const std::vector<CVector>& windows, const DiracOperator& d, const Weight& v,
                                      int k, const LadderOptions* ladder = nullptr, int n = -1);

}  // namespace gabnc
