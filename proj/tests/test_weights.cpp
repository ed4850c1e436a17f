#include <doctest.h>

#include <cmath>

#include "gabnc/weights.hpp"
#include "generators.hpp"

using namespace gabnc;
using doctest::Approx;

namespace {

// sup |v(a + b) - v(a)| / v(b) by a direct double loop.
double commutator_oracle(const FiniteGroup& g, const std::function<double(PhasePoint)>& v) {
  double best = 0.0;
  for (int a = 0; a < g.order() * g.order(); ++a)
    for (int b = 0; b < g.order() * g.order(); ++b) {
      const PhasePoint pa = phase_point(g, a), pb = phase_point(g, b);
      best = std::max(best, std::abs(v(phase_add(g, pa, pb)) - v(pa)) / v(pb));
    }
  return best;
}

double torus_norm(const FiniteGroup& g, PhasePoint p) {
  auto wrap = [&](int x) { return std::min(x, g.order() - x); };
  return std::hypot(wrap(p.x), wrap(p.w));
}

}  // namespace

TEST_CASE("polynomial weight values") {
  const FiniteGroup g = FiniteGroup::cyclic(4);
  const Weight v0 = Weight::polynomial(g, 0.0);
  for (double x : v0.values()) CHECK(x == 1.0);
  CHECK(Weight::polynomial(g, 1.0)(PhasePoint{1, 0}) == Approx(std::sqrt(2.0)));
  CHECK(Weight::polynomial(g, 2.0)(PhasePoint{2, 2}) == Approx(9.0));
  CHECK(Weight::linear(g, 1.0)(PhasePoint{3, 3}) == Approx(1.0 + std::sqrt(2.0)));
  CHECK(Weight::parse(g, "poly:2").describe() == "poly:2");
  CHECK_THROWS_AS(Weight::parse(g, "poly:x"), std::invalid_argument);
  CHECK_THROWS_AS(Weight::parse(g, "exp:1"), std::invalid_argument);
  CHECK_THROWS_AS(Weight::parse(g, "const:-1"), std::invalid_argument);
  CHECK_FALSE(verify_weight(Weight::parse(g, "const:0.5")).positive_ok);
}

TEST_CASE("linear weight satisfies every axiom") {
  const FiniteGroup g = FiniteGroup::cyclic(8);
  const Weight v = Weight::linear(g, 1.0);
  const WeightReport r = verify_weight(v);
  CHECK(r.passed());
  CHECK(r.commutator_C <= 1.0);
  CHECK(r.commutator_C == Approx(commutator_oracle(g, [&](PhasePoint p) { return 1.0 + torus_norm(g, p); })));
  CHECK(r.growth_D == Approx(1.0 + std::sqrt(32.0)));
  CHECK(r.growth_s == 0.0);
}

TEST_CASE("constant weight") {
  const WeightReport r = verify_weight(Weight::constant(FiniteGroup::cyclic(6), 1.0));
  CHECK(r.passed());
  CHECK(r.commutator_C == 0.0);
}

TEST_CASE("(1 + d^2)^{1/2} is not submultiplicative on the torus") {
  const FiniteGroup g = FiniteGroup::cyclic(8);
  const WeightReport r = verify_weight(Weight::polynomial(g, 1.0));
  CHECK_FALSE(r.submult_ok);
  CHECK(r.radial_ok);
  // two unit steps: sqrt(1 + 4) / (sqrt 2)^2
  CHECK(r.submult_sup == Approx(std::sqrt(5.0) / 2.0));
  CHECK(r.commutator_C <= 1.0);
  const double want = commutator_oracle(g, [&](PhasePoint p) { return std::hypot(1.0, torus_norm(g, p)); });
  CHECK(r.commutator_C == Approx(want));
  CHECK(r.commutator_C == Approx(0.9205333482014254));
}

TEST_CASE("(1 + d^2) fails submultiplicativity at unit distance, commutator constant above 1") {
  const FiniteGroup g = FiniteGroup::cyclic(8);
  const WeightReport r = verify_weight(Weight::polynomial(g, 2.0));
  // (1 + 4) / (1 + 1)^2; fine once d(a) d(b) >= 2
  CHECK_FALSE(r.submult_ok);
  CHECK(r.submult_sup == Approx(1.25));
  CHECK(r.growth_ok);
  const double want = commutator_oracle(g, [&](PhasePoint p) { return 1.0 + std::pow(torus_norm(g, p), 2); });
  CHECK(r.commutator_C == Approx(want));
  CHECK(r.commutator_C > 1.0);
}

TEST_CASE("weight property: linear weights on random groups") {
  for (const auto& spec : gen::group_specs()) {
    const FiniteGroup g = FiniteGroup::parse(spec);
    for (double s : {0.5, 1.0, 2.0}) {
      const WeightReport r = verify_weight(Weight::linear(g, s));
      CHECK(r.passed());
      if (s == 1.0) CHECK(r.commutator_C <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("compatible functions") {
  const FiniteGroup g = FiniteGroup::cyclic(8);
  const Lattice lat = Lattice::rectangular(g, 2, 2);
  const Weight v = Weight::linear(g, 1.0);

  const CompatibilityCertificate id = stc_constants(CompatibleFunction::identity(), v, lat);
  CHECK(id.finite());
  CHECK(id.C_dif <= verify_weight(v).commutator_C + 1e-12);
  CHECK(id.C_sm <= 1.0);
  CHECK(id.C_gr == 1.0);
  CHECK(certificate_violations(id, CompatibleFunction::identity(), v, lat) == 0);

  const CompatibleFunction c3 = CompatibleFunction::constant(3.0);
  const CompatibilityCertificate cc = stc_constants(c3, v, lat);
  CHECK(cc.C_dif == 0.0);
  CHECK(cc.C_gr == 3.0);
  CHECK(certificate_violations(cc, c3, v, lat) == 0);
  CHECK_THROWS_AS(CompatibleFunction::constant(-1.0), std::invalid_argument);
}

TEST_CASE("torus-sqrt: finite difference and growth constants, infinite C_sm") {
  const FiniteGroup g = FiniteGroup::cyclic(12);
  const Lattice lat = Lattice::rectangular(g, 2, 2);
  const Weight v = Weight::polynomial(g, 1.0);
  const CompatibleFunction f = CompatibleFunction::torus_sqrt();
  const std::vector<double> tab = f.tabulate(v, lat);
  for (int i = 0; i < lat.size(); ++i) CHECK(tab[i] == Approx(2 * M_PI * torus_norm(g, lat.point(i))));
  CHECK(tab[0] == 0.0);
  const CompatibilityCertificate c = stc_constants(f, v, lat);
  CHECK(c.usable());
  CHECK_FALSE(c.finite());
  CHECK(c.C_sm == kInfinity);
  CHECK(c.C_gr <= 2 * M_PI);
  CHECK(c.C_dif == Approx(1.0));
  CHECK(certificate_violations(c, f, v, lat) == 0);
}
