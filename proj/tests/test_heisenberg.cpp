#include <doctest.h>

#include "gabnc/errors.hpp"
#include "gabnc/gabor.hpp"
#include "gabnc/heisenberg.hpp"
#include "generators.hpp"

using namespace gabnc;
using doctest::Approx;

namespace {
CVector delta0(int n) {
  CVector d = CVector::Zero(n);
  d[0] = 1.0;
  return d;
}
}  // namespace

TEST_CASE("module data for Z4 with the self-adjoint lattice") {
  const FiniteGroup g = FiniteGroup::cyclic(4);
  const HeisenbergModule m(Lattice::rectangular(g, 2, 2));
  CHECK(m.right_lattice() == m.left_lattice());
  CHECK(m.covolume() == 1.0);
  const TwistedElement l = left_inner(m, delta0(4), delta0(4));
  CHECK(std::abs(l(0) - 1.0) < 1e-15);
  const TwistedElement r = right_inner(m, delta0(4), delta0(4));
  CHECK(std::abs(r(0) - 1.0) < 1e-15);
  CHECK(r.conjugate());
  CHECK(bimodule_check(m, delta0(4), delta0(4), delta0(4)) <= 1e-12);
  const CVector z = CVector::Zero(4);
  CHECK(bimodule_check(m, z, z, z) == 0.0);
}

TEST_CASE("the right algebra carries the mass 1/s") {
  const FiniteGroup g = FiniteGroup::cyclic(12);
  const HeisenbergModule m(Lattice::rectangular(g, 3, 2));
  CHECK(m.covolume() == Approx(0.5));
  CHECK(m.right_measure() == Approx(2.0));
  CHECK(m.right_unit().measure() == Approx(2.0));
  // the unit acts as the identity
  Rng rng(3);
  const CVector f = random_vector(12, rng);
  CHECK((right_action(m, f, m.right_unit()) - f).norm() < 1e-13);
}

TEST_CASE("bimodule associativity on random triples") {
  Rng rng(59);
  const FiniteGroup g = FiniteGroup::cyclic(8);
  int lattices = 0;
  for (const Lattice& lat : gen::rectangular_lattices(g)) {
    const HeisenbergModule m(lat);
    for (int t = 0; t < 20; ++t) {
      const CVector f = random_vector(8, rng), gg = random_vector(8, rng), h = random_vector(8, rng);
      CHECK(bimodule_check(m, f, gg, h) <= 1e-10 * f.norm() * gg.norm() * h.norm());
    }
    ++lattices;
  }
  CHECK(lattices == 16);
  for (int t = 0; t < 20; ++t) {
    const FiniteGroup gg = FiniteGroup::parse(gen::group_specs()[t % 5]);
    const HeisenbergModule m(gen::lattice(rng, gg));
    const int n = gg.order();
    const CVector a = random_vector(n, rng), b = random_vector(n, rng), c = random_vector(n, rng);
    CHECK(bimodule_check(m, a, b, c) <= 1e-10 * a.norm() * b.norm() * c.norm());
  }
}

TEST_CASE("actions are module actions") {
  Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    const FiniteGroup g = FiniteGroup::parse(gen::group_specs()[t % 5]);
    const HeisenbergModule m(gen::lattice(rng, g));
    const CVector f = random_vector(g.order(), rng);
    const TwistedElement a = gen::element(rng, m.left_ptr()), a2 = gen::element(rng, m.left_ptr());
    const TwistedElement b = gen::element(rng, m.right_ptr(), true, m.right_measure());
    const TwistedElement b2 = gen::element(rng, m.right_ptr(), true, m.right_measure());
    const double scale = f.norm() * (1 + a.coeffs().norm() * a2.coeffs().norm() + b.coeffs().norm() * b2.coeffs().norm() * m.right_measure() * m.right_measure());
    CHECK((left_action(a, left_action(a2, f)) - left_action(twisted_convolve(a, a2), f)).norm() <= 1e-12 * scale);
    CHECK((right_action(m, right_action(m, f, b), b2) - right_action(m, f, twisted_convolve(b, b2))).norm() <= 1e-12 * scale);
    // the two actions commute
    CHECK((left_action(a, right_action(m, f, b)) - right_action(m, left_action(a, f), b)).norm() <= 1e-12 * scale);
    CHECK((right_operator(m, b) * f - right_action(m, f, b)).norm() <= 1e-12 * scale);
  }
  const FiniteGroup g = FiniteGroup::cyclic(4);
  const HeisenbergModule m(Lattice::rectangular(g, 1, 2));
  CHECK_THROWS_AS(right_action(m, delta0(4), m.left_zero()), std::invalid_argument);
  CHECK_THROWS_AS(left_action(m.right_zero(), delta0(4)), std::invalid_argument);
}

TEST_CASE("module frames and Gabor frames") {
  Rng rng(67);
  const FiniteGroup g = FiniteGroup::cyclic(12);
  const Lattice lat = Lattice::rectangular(g, 2, 2);
  const HeisenbergModule m(lat);
  const std::vector<CVector> ws{discretize_window({}, g, std::sqrt(12.0))};
  const std::vector<CVector> p = parseval_window(ws, lat);

  const ModuleFrameReport rp = module_frame_check(m, p, rng);
  CHECK(rp.module_residual <= 1e-10);
  CHECK(rp.operator_residual <= 1e-10);
  CHECK(rp.module_parseval);
  CHECK(rp.agree());

  const ModuleFrameReport r2 = module_frame_check(m, {p[0] * 2.0}, rng);
  CHECK_FALSE(r2.module_parseval);
  CHECK_FALSE(r2.operator_parseval);
  CHECK(r2.module_frame);
  CHECK(r2.agree());

  const HeisenbergModule sparse(Lattice::rectangular(g, 2, 1));
  const ModuleFrameReport rn = module_frame_check(sparse, {delta0(12)}, rng);
  CHECK_FALSE(rn.module_frame);
  CHECK_FALSE(rn.operator_frame);
  CHECK(rn.agree());
}

TEST_CASE("frame operator as right multiplication") {
  Rng rng(71);
  const FiniteGroup g = FiniteGroup::cyclic(12);
  for (const char* spec : {"rect:2,2", "rect:3,2", "rect:1,3", "rect:2,3"}) {
    const HeisenbergModule m(Lattice::parse(g, spec));
    const std::vector<CVector> ws{discretize_window({}, g, std::sqrt(12.0)), random_vector(12, rng)};
    const RightMultiplierReport r = frame_op_as_right_multiplier(m, ws, rng);
    CHECK(r.identity_residual <= 1e-9);
    CHECK(r.representable);
    CHECK(r.dual_discrepancy <= 1e-9);
  }
  const HeisenbergModule sparse(Lattice::rectangular(g, 2, 1));
  CHECK_THROWS_AS(frame_op_as_right_multiplier(sparse, {delta0(12)}, rng), MathError);
}
