#include "gabnc/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "gabnc/errors.hpp"
#include "gabnc/gabor.hpp"
#include "gabnc/linalg.hpp"

namespace gabnc {

namespace {

constexpr double kBoundSlack = 1e-9;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BoundCheck make_check(std::string what, int order, double measured, double bound) {
  BoundCheck c{std::move(what), order, measured, bound, false};
  c.ok = std::isfinite(measured) && measured <= bound * (1.0 + kBoundSlack);
  return c;
}

double constant_power(const CompatibilityCertificate& c, int k) { return std::pow(c.C_dif * c.C_gr, k); }

}  // namespace

DiracOperator build_dirac(const CompatibleFunction& f, const Weight& v, LatticePtr lattice, DiracShape shape) {
  DiracOperator d;
  d.certificate = stc_constants(f, v, *lattice);
  if (!d.certificate.usable())
    throw MathError("incompatible function: C_dif or C_gr is infinite for " + f.describe() + " and " + v.describe());
  d.diag = f.tabulate(v, *lattice);
  d.lattice = std::move(lattice);
  d.shape = shape;
  return d;
}

CMatrix convolution_matrix(const TwistedElement& a) {
  const Lattice& l = a.lattice();
  const int n = l.size();
  CMatrix m = CMatrix::Zero(n, n);
  for (int mu = 0; mu < n; ++mu) {
    for (int lam = 0; lam < n; ++lam) {
      const int diff = l.sub(lam, mu);
      const Complex c = a(diff);
      if (c != 0.0) m(lam, mu) = c * a.cocycle(diff, mu);
    }
  }
  return m * a.measure();
}

CMatrix dirac_matrix(const DiracOperator& d) {
  const int n = static_cast<int>(d.diag.size());
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    if (d.shape == DiracShape::offdiag) {
      m(i, n + i) = d.diag[i];
      m(n + i, i) = d.diag[i];
    } else {
      m(i, i) = d.diag[i];
      m(n + i, n + i) = d.diag[i];
    }
  }
  return m;
}

CMatrix abs_dirac_matrix(const DiracOperator& d) {
  const int n = static_cast<int>(d.diag.size());
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) m(i, i) = m(n + i, n + i) = d.diag[i];
  return m;
}

CMatrix embed_element(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a;
  m.bottomRightCorner(n, n) = a;
  return m;
}

CMatrix grading_matrix(int lattice_size) {
  CMatrix g = CMatrix::Identity(2 * lattice_size, 2 * lattice_size);
  g.bottomRightCorner(lattice_size, lattice_size) *= -1.0;
  return g;
}

CMatrix adk_closed_form(const DiracOperator& d, const TwistedElement& a, int k) {
  if (k < 0) throw std::invalid_argument("commutator order must be >= 0");
  const CMatrix am = convolution_matrix(a);
  const Eigen::Index n = am.rows();
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (am(r, c) == 0.0) continue;
      double s = 0.0;
      for (int i = 0; i <= k; ++i)
        s += (i % 2 ? -1.0 : 1.0) * binomial(k, i) * std::pow(d.diag[r], k - i) * std::pow(d.diag[c], i);
      out(r, c) = s * am(r, c);
    }
  }
  return out;
}

CMatrix adk_difference_form(const DiracOperator& d, const CMatrix& a, int k) {
  CMatrix out = a;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      if (a(r, c) != 0.0) out(r, c) *= std::pow(d.diag[r] - d.diag[c], k);
  return out;
}

CMatrix iterated_commutator(const DiracOperator& d, const CMatrix& a, int k) {
  const Eigen::VectorXcd f = Eigen::Map<const Eigen::VectorXd>(d.diag.data(), d.diag.size()).cast<Complex>();
  CMatrix x = a;
  for (int i = 0; i < k; ++i) x = f.asDiagonal() * x - x * f.asDiagonal();
  return x;
}

BoundCheck adk_bound_check(const DiracOperator& d, const TwistedElement& a, const Weight& v, int k) {
  const double measured = operator_norm(adk_difference_form(d, convolution_matrix(a), k));
  const double bound = constant_power(d.certificate, k) * weighted_norm(a, v, k);
  return make_check("ad", k, measured, bound);
}

BoundCheck commutator_Da_bound_check(const DiracOperator& d, const TwistedElement& a, const Weight& v) {
  const CMatrix dm = dirac_matrix(d);
  const CMatrix am = embed_element(convolution_matrix(a));
  const double measured = operator_norm(dm * am - am * dm);
  const double bound = constant_power(d.certificate, 1) * weighted_norm(a, v, 1);
  return make_check("[D,a]", 1, measured, bound);
}

BoundCheck adk_commutator_bound_check(const DiracOperator& d, const TwistedElement& a, const Weight& v, int k) {
  // Both blocks of ad^k(|D|)([D, a]) are ad^{k+1}(|D|)(a) on one component,
  // for either shape of D.
  const double measured = operator_norm(adk_difference_form(d, convolution_matrix(a), k + 1));
  const double bound = constant_power(d.certificate, k + 1) * weighted_norm(a, v, k + 1);
  return make_check("ad[D,a]", k, measured, bound);
}

std::vector<double> truncation_profile(const TwistedElement& a, const Weight& v, double power,
                                       const LadderOptions& ladder) {
  const Lattice& l = a.lattice();
  std::vector<double> out;
  for (double r : ladder.radii) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) {
      const int idx = l.elements()[i];
      if (ladder.radius(idx) <= r) s += std::abs(a(i)) * std::pow(v(idx), power);
    }
    out.push_back(a.measure() * s);
  }
  return out;
}

LadderVerdict ladder_verdict(std::vector<double> profile, double threshold) {
  LadderVerdict lv;
  lv.profile = std::move(profile);
  for (std::size_t i = 1; i < lv.profile.size(); ++i)
    lv.ratios.push_back(lv.profile[i - 1] > 0.0 ? lv.profile[i] / lv.profile[i - 1]
                                                : (lv.profile[i] > 0.0 ? kInfinity : 1.0));
  if (!lv.ratios.empty()) {
    const double last = lv.ratios.back();
    const bool growing = lv.ratios.size() < 2 || last >= lv.ratios[lv.ratios.size() - 2] * (1.0 - 1e-9);
    lv.diverges = last > threshold && growing;
  }
  return lv;
}

QCkCertificate qck_certify_element(const TwistedElement& a, const DiracOperator& d, const Weight& v, int k,
                                   const LadderOptions* ladder, int n) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  QCkCertificate c;
  c.k = k;
  c.n = n < 0 ? k + 1 : n;
  for (int j = 0; j <= c.n; ++j) c.norms.push_back(weighted_norm(a, v, j));
  for (int j = 1; j <= k; ++j) c.checks.push_back(adk_bound_check(d, a, v, j));
  for (int j = 0; j <= k; ++j) c.checks.push_back(adk_commutator_bound_check(d, a, v, j));
  for (double x : c.norms)
    if (!std::isfinite(x)) c.bounds_ok = false;
  for (const BoundCheck& b : c.checks)
    if (!b.ok) c.bounds_ok = false;
  c.passed = c.bounds_ok;
  if (ladder) {
    c.has_ladder = true;
    c.ladder = ladder_verdict(truncation_profile(a, v, k + 1, *ladder), ladder->growth_threshold);
    if (c.ladder.diverges) c.passed = false;
  }
  return c;
}

WindowCertificate qck_certify_windows(const std::vector<CVector>& windows, const DiracOperator& d, const Weight& v,
                                      int k, const LadderOptions* ladder, int n) {
  const Lattice& lat = *d.lattice;
  if (windows.empty() || !frame_bounds(windows, lat).frame) throw MathError("not a frame over " + lat.describe());
  WindowCertificate w;
  for (const CVector& gi : windows) {
    for (const CVector& gj : windows) {
      const TwistedElement a{d.lattice, analysis(lat, gi, gj)};
      w.pairs.push_back(qck_certify_element(a, d, v, k, ladder, n));
      if (!w.pairs.back().passed) w.passed = false;
    }
  }
  return w;
}

}  // namespace gabnc
