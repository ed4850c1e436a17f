#include "gabnc/solenoid.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "gabnc/gabor.hpp"

namespace gabnc {

std::vector<SolenoidPoint> enumerate_lattice(int p, const Rational& alpha, int height, int bound) {
  if (height < 0) throw std::invalid_argument("height must be >= 0");
  if (bound < 0) throw std::invalid_argument("enumeration bound must be >= 0");
  const std::int64_t scale = ipow(p, height);
  const std::int64_t top = bound * scale;
  std::vector<SolenoidPoint> out;
  out.reserve(static_cast<std::size_t>(2 * top + 1));
  for (std::int64_t a = -top; a <= top; ++a) out.push_back({alpha, PAdicRational(p, a, -height)});
  return out;
}

FundamentalDomainReport fundamental_domain_check(int p, const Rational& alpha, int height, int T) {
  if (alpha.numerator() == 0) throw std::invalid_argument("alpha must be nonzero");
  const Rational width = boost::abs(alpha);
  FundamentalDomainReport r;
  r.height = height;
  r.covolume = width;
  const Rational step = width / 4;
  const std::int64_t jmin = boost::rational_cast<std::int64_t>(Rational(-T) / step);
  const std::int64_t jmax = boost::rational_cast<std::int64_t>(Rational(T) / step);
  // q = x + k with |k| <= T / |alpha| + 1, so this bound covers every candidate
  const int cand_bound = boost::rational_cast<int>(Rational(T) / width) + 2 * T + 2;
  const std::vector<SolenoidPoint> candidates = enumerate_lattice(p, alpha, height, cand_bound);
  const std::vector<SolenoidPoint> xs = enumerate_lattice(p, Rational(1), height, T);
  for (std::int64_t j = jmin; j < jmax; ++j) {
    const Rational t = step * j;
    for (const SolenoidPoint& xp : xs) {
      const PAdicRational& x = xp.q;
      int hits = 0;
      for (const SolenoidPoint& c : candidates) {
        const Rational rem = t - c.real();
        if (rem < Rational(0) || rem >= width) continue;
        if (in_padic_integers(x - c.q)) ++hits;
      }
      ++r.samples;
      if (hits == 0) ++r.missing;
      if (hits > 1) ++r.duplicates;
    }
  }
  return r;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Quadrature {
  WindowSpec spec;
  double step;
  double reach;  // the window is negligible beyond this

  // int e^{2 pi i dw u} g(u - dx) conj(g(u)) du
  Complex ambiguity(double dx, double dw) const {
    Complex s = 0.0;
    const long lo = static_cast<long>(std::floor((-reach - std::abs(dx)) / step));
    const long hi = static_cast<long>(std::ceil((reach + std::abs(dx)) / step));
    for (long k = lo; k <= hi; ++k) {
      const double u = k * step;
      s += std::polar(1.0, kTwoPi * dw * u) * real_window(spec, u - dx) * real_window(spec, u);
    }
    return s * step;
  }

  // <M_w T_x g, M_w' T_x' g> directly on the t grid.
  Complex gram(double x, double w, double x2, double w2) const {
    Complex s = 0.0;
    const double lo_t = std::min(x, x2) - reach, hi_t = std::max(x, x2) + reach;
    const long lo = static_cast<long>(std::floor(lo_t / step));
    const long hi = static_cast<long>(std::ceil(hi_t / step));
    for (long k = lo; k <= hi; ++k) {
      const double t = k * step;
      s += std::polar(1.0, kTwoPi * (w - w2) * t) * real_window(spec, t - x) * real_window(spec, t - x2);
    }
    return s * step;
  }
};

}  // namespace

TensorReductionReport tensor_reduction_check(const WindowSpec& window, int p, const Rational& alpha,
                                             const Rational& beta, int height, int bound, int points, double span) {
  if (alpha <= Rational(0) || beta <= Rational(0)) throw std::invalid_argument("alpha and beta must be positive");
  TensorReductionReport rep;
  rep.height = height;

  const std::vector<SolenoidPoint> qs = enumerate_lattice(p, alpha, height, bound);
  const std::vector<SolenoidPoint> rs = enumerate_lattice(p, beta, height, bound);
  const int nq = static_cast<int>(qs.size()), nr = static_cast<int>(rs.size());
  rep.points = nq * nr;

  // Grid step aligned with every alpha q and beta r, and at most 1/32.
  const std::int64_t den = ipow(p, height) * alpha.denominator() * beta.denominator();
  const double step = 1.0 / (static_cast<double>(den) * std::ceil(32.0 / static_cast<double>(den)));
  const Quadrature quad{window, step, window.shape == WindowShape::gaussian ? 7.0 : 0.5 * window.order + step};

  // Haar sum over Q_p of 1_{Z_p}(t - q) 1_{Z_p}(t - q') chi_r(t) conj(chi_r'(t)), with
  // chi_r(t) = exp(-2 pi i {r t}_p). Everything is constant on cosets of p^h Z_p and
  // supported in p^{-h} Z_p, so the integral is a finite sum of p^{2h} terms.
  const std::int64_t ph = ipow(p, height);
  const std::int64_t cosets = ph * ph;
  std::vector<PAdicRational> ts;
  for (std::int64_t j = 0; j < cosets; ++j) ts.emplace_back(p, j, -height);
  auto padic_part = [&](const PAdicRational& q, const PAdicRational& r, const PAdicRational& q2,
                        const PAdicRational& r2) {
    Complex s = 0.0;
    for (const PAdicRational& t : ts) {
      if (!in_padic_integers(t - q) || !in_padic_integers(t - q2)) continue;
      s += solenoid_character(0.0, r, 0.0, t) * std::conj(solenoid_character(0.0, r2, 0.0, t));
    }
    return s / static_cast<double>(ph);
  };
  auto padic_closed = [&](const PAdicRational& q, const PAdicRational& r, const PAdicRational& q2,
                          const PAdicRational& r2) -> Complex {
    if (!in_padic_integers(q - q2) || !in_padic_integers(r - r2)) return 0.0;
    return solenoid_character(0.0, r - r2, 0.0, q);
  };

  // R side: <M_w T_x g, M_w' T_x' g> = e^{2 pi i (w - w') x'} A(x - x', w - w').
  std::map<std::pair<Rational, Rational>, Complex> cache;
  auto real_part = [&](const Rational& x, const Rational& w, const Rational& x2, const Rational& w2) {
    const auto key = std::make_pair(x - x2, w - w2);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, quad.ambiguity(boost::rational_cast<double>(key.first),
                                             boost::rational_cast<double>(key.second)))
               .first;
    return std::polar(1.0, kTwoPi * boost::rational_cast<double>((w - w2) * x2)) * it->second;
  };

  for (int a = 0; a < nq * nr; ++a) {
    const SolenoidPoint& qa = qs[a / nr];
    const SolenoidPoint& ra = rs[a % nr];
    for (int b = 0; b < nq * nr; ++b) {
      const SolenoidPoint& qb = qs[b / nr];
      const SolenoidPoint& rb = rs[b % nr];
      const Complex pp = padic_part(qa.q, ra.q, qb.q, rb.q);
      rep.padic_closed_form_gap =
          std::max(rep.padic_closed_form_gap, std::abs(pp - padic_closed(qa.q, ra.q, qb.q, rb.q)));
      const bool survives = in_padic_integers(qa.q - qb.q) && in_padic_integers(ra.q - rb.q);
      if (!survives) {
        rep.vanishing_max = std::max(rep.vanishing_max, std::abs(pp));
        ++rep.vanishing_entries;
        continue;
      }
      const Complex entry = real_part(qa.real(), ra.real(), qb.real(), rb.real()) * pp;
      const double dq = boost::rational_cast<double>(qa.real() - qb.real());
      const double dr = boost::rational_cast<double>(ra.real() - rb.real());
      const double ref = std::abs(quad.gram(dq, dr, 0.0, 0.0));
      rep.coset_modulus_gap = std::max(rep.coset_modulus_gap, std::abs(std::abs(entry) - ref));
      const bool integer_point = qa.q.exp() >= 0 && qb.q.exp() >= 0 && ra.q.exp() >= 0 && rb.q.exp() >= 0;
      if (integer_point) {
        const Complex direct = quad.gram(boost::rational_cast<double>(qa.real()), boost::rational_cast<double>(ra.real()),
                                         boost::rational_cast<double>(qb.real()), boost::rational_cast<double>(rb.real()));
        rep.integer_block_gap = std::max(rep.integer_block_gap, std::abs(entry - direct));
      }
    }
  }

  const RealLine line(points, span);
  const auto [sa, sb] = line.lattice_strides(boost::rational_cast<double>(alpha), boost::rational_cast<double>(beta));
  const Lattice lat = Lattice::rectangular(line.group(), sa, sb);
  const FrameReport fr = frame_bounds({line.window(window)}, lat);
  rep.real_lower = fr.lower;
  rep.real_upper = fr.upper;
  rep.real_frame = fr.frame;
  return rep;
}

}  // namespace gabnc
