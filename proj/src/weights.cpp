#include "gabnc/weights.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gabnc/kernels.hpp"

namespace gabnc {

double phase_norm(const FiniteGroup& g, PhasePoint p) { return std::hypot(g.wrap_norm(p.x), g.wrap_norm(p.w)); }

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

double parse_real(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number in " + std::string(what) + ": " + std::string(text));
  }
}

template <class F>
std::vector<double> tabulate_phase(const FiniteGroup& g, F&& fn) {
  const int total = g.order() * g.order();
  std::vector<double> v(total);
  for (int i = 0; i < total; ++i) v[i] = fn(phase_point(g, i));
  return v;
}

}  // namespace

Weight Weight::polynomial(const FiniteGroup& g, double s) {
  if (s < 0) throw std::invalid_argument("weight exponent must be >= 0");
  return Weight(g, tabulate_phase(g, [&](PhasePoint p) {
                  const double d = phase_norm(g, p);
                  return std::pow(1.0 + d * d, 0.5 * s);
                }),
                "poly:" + fmt(s));
}

Weight Weight::linear(const FiniteGroup& g, double s) {
  if (s < 0) throw std::invalid_argument("weight exponent must be >= 0");
  return Weight(g, tabulate_phase(g, [&](PhasePoint p) { return std::pow(1.0 + phase_norm(g, p), s); }),
                "lin:" + fmt(s));
}

Weight Weight::constant(const FiniteGroup& g, double c) {
  if (c < 0) throw std::invalid_argument("constant weight must be >= 0");
  return Weight(g, tabulate_phase(g, [&](PhasePoint) { return c; }), "const:" + fmt(c));
}

Weight Weight::real_polynomial(const RealLine& line, double s) {
  const FiniteGroup& g = line.group();
  return Weight(g, tabulate_phase(g, [&](PhasePoint p) {
                  const double r = line.phase_radius(phase_index(g, p));
                  return std::pow(1.0 + r * r, 0.5 * s);
                }),
                "real-poly:" + fmt(s));
}

Weight Weight::custom(const FiniteGroup& g, std::vector<double> table, std::string name) {
  if (static_cast<int>(table.size()) != g.order() * g.order())
    throw std::invalid_argument("weight table must cover the phase space");
  return Weight(g, std::move(table), std::move(name));
}

Weight Weight::parse(const FiniteGroup& g, std::string_view spec) {
  if (spec.starts_with("poly:")) return polynomial(g, parse_real(spec.substr(5), spec));
  if (spec.starts_with("lin:")) return linear(g, parse_real(spec.substr(4), spec));
  if (spec.starts_with("const:")) return constant(g, parse_real(spec.substr(6), spec));
  throw std::invalid_argument("unknown weight spec: " + std::string(spec));
}

WeightReport verify_weight(const Weight& v) {
  const FiniteGroup& g = v.group();
  const int total = g.order() * g.order();
  WeightReport r;
  double vmax = 0.0;
  for (int i = 0; i < total; ++i) {
    const double a = v(i);
    vmax = std::max(vmax, a);
    if (!(a >= 1.0)) r.positive_ok = false;
    if (a != v(phase_neg(g, phase_point(g, i)))) r.radial_ok = false;
  }
  const auto sum_index = [&](int a, int b) { return phase_index(g, phase_add(g, phase_point(g, a), phase_point(g, b))); };

  const kernels::ArgMax sub = kernels::pair_argmax(total, total, [&](int a, int b) {
    const double den = v(a) * v(b);
    const double num = v(sum_index(a, b));
    if (den == 0.0) return num == 0.0 ? 0.0 : kInfinity;
    return num / den;
  });
  r.submult_sup = sub.value;
  r.submult_witness = {sub.a, sub.b};
  // a few ulps of slack so that exact equalities such as v(0)^2 = v(0) with v(0) = 1 pass
  r.submult_ok = sub.value <= 1.0 + 4 * std::numeric_limits<double>::epsilon();

  // C_v = sup |v(chi + xi) - v(chi)| / v(xi); pair is (chi, xi)
  const kernels::ArgMax com = kernels::pair_argmax(total, total, [&](int chi, int xi) {
    const double num = std::abs(v(sum_index(chi, xi)) - v(chi));
    const double den = v(xi);
    if (den == 0.0) return num == 0.0 ? 0.0 : kInfinity;
    return num / den;
  });
  r.commutator_C = com.value;
  r.commutator_witness = {com.a, com.b};

  r.growth_ok = std::isfinite(vmax);
  r.growth_D = vmax;
  r.growth_s = 0.0;
  return r;
}

// ---------------------------------------------------------------------------

CompatibleFunction CompatibleFunction::constant(double c) {
  if (c < 0) throw std::invalid_argument("constant function must be >= 0");
  return {FunctionKind::constant, c, "const:" + fmt(c)};
}

CompatibleFunction CompatibleFunction::parse(std::string_view spec) {
  if (spec == "identity") return identity();
  if (spec == "torus-sqrt") return torus_sqrt();
  if (spec.starts_with("const:")) return constant(parse_real(spec.substr(6), spec));
  throw std::invalid_argument("unknown function spec: " + std::string(spec));
}

double CompatibleFunction::operator()(double v) const {
  switch (kind_) {
    case FunctionKind::identity:
      return v;
    case FunctionKind::constant:
      return c_;
    case FunctionKind::torus_sqrt:
      return 2.0 * std::numbers::pi * std::sqrt(std::max(v * v - 1.0, 0.0));
    case FunctionKind::custom:
      break;
  }
  throw std::logic_error("custom compatible function has no formula");
}

std::vector<double> CompatibleFunction::tabulate(const Weight& v, const Lattice& lattice) const {
  std::vector<double> t(lattice.size());
  for (int i = 0; i < lattice.size(); ++i) t[i] = (*this)(v(lattice.elements()[i]));
  return t;
}

namespace {

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : kInfinity;
  return num / den;
}

}  // namespace

CompatibilityCertificate stc_constants(const CompatibleFunction& f, const Weight& v, const Lattice& lattice) {
  const std::vector<double> fv = f.tabulate(v, lattice);
  const int n = lattice.size();
  std::vector<int> sum(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum[static_cast<std::size_t>(i) * n + j] = lattice.add(i, j);

  CompatibilityCertificate c;
  const kernels::ArgMax dif = kernels::pair_argmax(n, n, [&](int l, int m) {
    return ratio(std::abs(fv[sum[static_cast<std::size_t>(l) * n + m]] - fv[l]), fv[m]);
  });
  c.C_dif = dif.value;
  c.dif_witness = {dif.a, dif.b};
  const kernels::ArgMax sm = kernels::pair_argmax(
      n, n, [&](int l, int m) { return ratio(fv[sum[static_cast<std::size_t>(l) * n + m]], fv[l] * fv[m]); });
  c.C_sm = sm.value;
  c.sm_witness = {sm.a, sm.b};
  c.C_gr = -1.0;
  for (int i = 0; i < n; ++i) {
    const double r = ratio(fv[i], v(lattice.elements()[i]));
    if (r > c.C_gr) {
      c.C_gr = r;
      c.gr_witness = i;
    }
  }
  return c;
}

long certificate_violations(const CompatibilityCertificate& cert, const CompatibleFunction& f, const Weight& v,
                            const Lattice& lattice) {
  const std::vector<double> fv = f.tabulate(v, lattice);
  const int n = lattice.size();
  const double slack = 1.0 + 1e-12;
  long bad = 0;
  for (int l = 0; l < n; ++l) {
    if (fv[l] > cert.C_gr * v(lattice.elements()[l]) * slack) ++bad;
    for (int m = 0; m < n; ++m) {
      const double s = fv[lattice.add(l, m)];
      if (std::abs(s - fv[l]) > cert.C_dif * fv[m] * slack && !(cert.C_dif == kInfinity)) ++bad;
      if (s > cert.C_sm * fv[l] * fv[m] * slack && !(cert.C_sm == kInfinity)) ++bad;
    }
  }
  return bad;
}

}  // namespace gabnc
