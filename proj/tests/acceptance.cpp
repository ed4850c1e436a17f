// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "gabnc/errors.hpp"
#include "gabnc/gabor.hpp"
#include "gabnc/heisenberg.hpp"
#include "gabnc/linalg.hpp"
#include "gabnc/nc_torus.hpp"
#include "gabnc/solenoid.hpp"
#include "gabnc/spectral.hpp"
#include "generators.hpp"

using namespace gabnc;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<void(Outcome&)> body;
};

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void representation(Outcome& out) {
  Rng rng(1001);
  int pairs = 0;
  double worst = 0.0;
  for (const std::string& spec : gen::group_specs()) {
    const FiniteGroup g = FiniteGroup::parse(spec);
    for (int t = 0; t < 120; ++t) {
      const PhasePoint a = gen::phase_point(rng, g), b = gen::phase_point(rng, g);
      // explicit matrices, independent of cocycle_identities_check
      const CMatrix pa = tf_shift(g, a), pb = tf_shift(g, b);
      const Complex c = heisenberg_cocycle(g, a, b);
      const double r1 = max_abs(pa * pb - c * tf_shift(g, phase_add(g, a, b)));
      const double r2 = max_abs(pa.adjoint() - heisenberg_cocycle(g, a, a) * tf_shift(g, phase_neg(g, a)));
      const double r3 = max_abs(pa * pb - symplectic_cocycle(g, a, b) * pb * pa);
      worst = std::max({worst, r1, r2, r3, cocycle_identities_check(g, a, b).max()});
      ++pairs;
    }
  }
  out.require(worst <= 1e-12, "identity residual");
  out.detail << pairs << " pairs, max residual " << worst;
}

void adjoint_lattices(Outcome& out) {
  Rng rng(1002);
  int min_subgroups = 1 << 30;
  double worst = 0.0;
  for (const std::string& spec : gen::group_specs()) {
    const FiniteGroup g = FiniteGroup::parse(spec);
    std::vector<Lattice> lats = gen::rectangular_lattices(g);
    for (int t = 0; t < 8; ++t) lats.push_back(gen::lattice(rng, g));
    std::set<std::vector<int>> seen;
    for (const Lattice& lat : lats) {
      if (!seen.insert(lat.elements()).second) continue;
      const Lattice adj = adjoint_lattice(lat);
      out.require(adjoint_lattice(adj) == lat, "double adjoint on " + spec + " " + lat.describe());
      std::vector<CMatrix> ladj;
      for (int j = 0; j < adj.size(); ++j) ladj.push_back(tf_shift(g, adj.point(j)));
      for (int i = 0; i < lat.size(); ++i) {
        const CMatrix p = tf_shift(g, lat.point(i));
        for (const CMatrix& q : ladj) worst = std::max(worst, max_abs(p * q - q * p));
      }
    }
    min_subgroups = std::min(min_subgroups, static_cast<int>(seen.size()));
  }
  out.require(min_subgroups >= 10, "subgroups per group");
  out.require(worst <= 1e-12, "commutation");
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  const Lattice l = Lattice::rectangular(z4, 2, 2);
  out.require(adjoint_lattice(l) == l, "Z4 self-adjoint example");
  out.detail << ">= " << min_subgroups << " subgroups per group, max commutator " << worst;
}

void algebra(Outcome& out) {
  Rng rng(1003);
  int elements = 0;
  double hom = 0.0, assoc = 0.0, tr = 0.0;
  for (int t = 0; t < 40; ++t) {
    const FiniteGroup g = FiniteGroup::parse(gen::group_specs()[t % 5]);
    const auto lat = gen::lattice_ptr(gen::lattice(rng, g));
    const bool conj = t % 2;
    const double m = conj ? 1.0 / lat->covolume_value() : 1.0;
    const TwistedElement a = gen::element(rng, lat, conj, m), b = gen::element(rng, lat, conj, m),
                         c = gen::element(rng, lat, conj, m);
    const double na = a.coeffs().norm(), nb = b.coeffs().norm(), nc = c.coeffs().norm();
    const CMatrix ab = represent(twisted_convolve(a, b));
    hom = std::max(hom, max_abs(ab - represent(a) * represent(b)) / (na * nb * m));
    hom = std::max(hom, max_abs(represent(twisted_involution(a)) - represent(a).adjoint()) / na);
    const CVector l = twisted_convolve(twisted_convolve(a, b), c).coeffs();
    const CVector r = twisted_convolve(a, twisted_convolve(b, c)).coeffs();
    assoc = std::max(assoc, (l - r).cwiseAbs().maxCoeff() / (na * nb * nc * m * m));
    for (const TwistedElement* x : {&a, &b, &c}) {
      const double n2 = std::pow(l2_norm(*x), 2);
      tr = std::max(tr, std::abs(trace(twisted_convolve(*x, twisted_involution(*x))) - n2) / n2);
    }
    elements += 3;
  }
  out.require(hom <= 1e-12, "*-homomorphism");
  out.require(assoc <= 1e-12, "associativity");
  out.require(tr <= 1e-12, "trace identity");
  out.detail << elements << " elements, hom " << hom << ", assoc " << assoc << ", trace " << tr;
}

void frames(Outcome& out) {
  Rng rng(1004);
  double bound_gap = 0.0, recon = 0.0, pars = 0.0;
  int systems = 0, frames_seen = 0;
  auto one = [&](const Lattice& lat, const std::vector<CVector>& ws) {
    const FiniteGroup& g = lat.group();
    const int n = g.order();
    CMatrix s = CMatrix::Zero(n, n);
    for (const CVector& w : ws)
      for (int i = 0; i < lat.size(); ++i) {
        const CVector u = apply_tf_shift(g, lat.point(i), w);
        s += u * u.adjoint();
      }
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly).eigenvalues();
    const FrameReport fr = frame_bounds(ws, lat);
    const double top = ev[ev.size() - 1];
    bound_gap = std::max({bound_gap, std::abs(fr.lower - ev[0]) / top, std::abs(fr.upper - top) / top});
    ++systems;
    if (!fr.frame || fr.lower < 1e-6 * fr.upper) return;
    ++frames_seen;
    const std::vector<CVector> duals = canonical_dual(ws, lat);
    for (int t = 0; t < 3; ++t) {
      const CVector f = random_vector(n, rng);
      recon = std::max(recon, (reconstruct(lat, f, ws, duals) - f).norm() / f.norm());
    }
    pars = std::max(pars, frame_bounds(parseval_window(ws, lat), lat).parseval_residual);
  };
  for (int t = 0; t < 30; ++t) {
    const FiniteGroup g = FiniteGroup::parse(gen::group_specs()[t % 5]);
    std::vector<CVector> ws{random_vector(g.order(), rng)};
    if (t % 3 == 0) ws.push_back(random_vector(g.order(), rng));
    one(gen::lattice(rng, g), ws);
  }
  const FiniteGroup big = FiniteGroup::cyclic(144);
  one(Lattice::rectangular(big, 8, 8), {discretize_window({}, big, 12.0)});
  one(Lattice::rectangular(big, 12, 6), {random_vector(144, rng)});
  out.require(bound_gap <= 1e-10, "frame bounds vs eigensolve");
  out.require(recon <= 1e-10, "dual reconstruction");
  out.require(pars <= 1e-10, "Parseval residual");
  out.require(frames_seen >= 5, "enough frames");
  out.detail << systems << " systems (" << frames_seen << " frames, |G| up to 144), bounds " << bound_gap
             << ", reconstruction " << recon << ", ||S-I|| " << pars;
}

void bimodule(Outcome& out) {
  Rng rng(1005);
  int lattices = 0;
  long triples = 0;
  double worst = 0.0;
  std::vector<Lattice> lats = gen::rectangular_lattices(FiniteGroup::cyclic(8));
  for (const char* spec : {"rect:2,2", "rect:3,4", "rect:6,1"}) lats.push_back(Lattice::parse(FiniteGroup::cyclic(12), spec));
  for (const Lattice& lat : lats) {
    const HeisenbergModule m(lat);
    const int n = lat.group().order();
    for (int t = 0; t < 100; ++t) {
      const CVector f = random_vector(n, rng), g = random_vector(n, rng), h = random_vector(n, rng);
      worst = std::max(worst, bimodule_check(m, f, g, h) / (f.norm() * g.norm() * h.norm()));
      ++triples;
    }
    ++lattices;
  }
  out.require(worst <= 1e-10, "bimodule residual");
  out.detail << lattices << " lattices, " << triples << " triples, max relative residual " << worst;
}

void bridge(Outcome& out) {
  Rng rng(1006);
  int families = 0, frames_seen = 0, non_frames = 0;
  double mult = 0.0;
  for (const auto& [spec, lspec] : std::vector<std::pair<std::string, std::string>>{
           {"Z8", "rect:2,2"}, {"Z8", "rect:4,2"}, {"Z8", "rect:4,4"}, {"Z12", "rect:2,2"},
           {"Z12", "rect:3,2"}, {"Z12", "rect:4,4"}, {"Z12", "rect:6,2"}}) {
    const FiniteGroup g = FiniteGroup::parse(spec);
    const Lattice lat = Lattice::parse(g, lspec);
    const HeisenbergModule m(lat);
    const int n = g.order();
    CVector d0 = CVector::Zero(n);
    d0[0] = 1.0;
    std::vector<std::vector<CVector>> fams{{discretize_window({}, g, std::sqrt(double(n)))},
                                           {random_vector(n, rng)},
                                           {d0},
                                           {random_vector(n, rng), random_vector(n, rng)}};
    if (frame_bounds(fams[0], lat).frame) fams.push_back(parseval_window(fams[0], lat));
    for (const auto& ws : fams) {
      const ModuleFrameReport r = module_frame_check(m, ws, rng);
      out.require(r.agree(), "module and operator verdicts on " + spec + " " + lspec);
      ++families;
      (r.operator_frame ? frames_seen : non_frames)++;
      if (r.operator_frame) {
        const RightMultiplierReport rm = frame_op_as_right_multiplier(m, ws, rng);
        mult = std::max(mult, rm.identity_residual);
      }
    }
  }
  out.require(families >= 20 && frames_seen > 0 && non_frames > 0, "family mix");
  out.require(mult <= 1e-9, "right multiplier identity");
  out.detail << families << " families (" << frames_seen << " frames, " << non_frames
             << " non-frames), right-multiplier residual " << mult;
}

void spectral(Outcome& out) {
  Rng rng(1007);
  double closed = 0.0;
  int elements = 0;
  long bounds = 0;
  bool grading = true;
  for (int t = 0; t < 100; ++t) {
    const FiniteGroup g = FiniteGroup::parse(gen::group_specs()[t % 5]);
    const auto lat = gen::lattice_ptr(gen::lattice(rng, g));
    const Weight v = Weight::linear(g, 1.0);
    const DiracOperator d = build_dirac(CompatibleFunction::identity(), v, lat);
    const TwistedElement a = t % 4 ? gen::element(rng, lat) : gen::sparse_element(rng, lat, 2);
    const CMatrix am = convolution_matrix(a);
    if (t < 20)
      for (int k = 0; k <= 5; ++k) {
        const CMatrix it = iterated_commutator(d, am, k);
        closed = std::max(closed, (adk_closed_form(d, a, k) - it).norm() / std::max(it.norm(), 1.0));
      }
    for (int k = 1; k <= 3; ++k) {
      const BoundCheck c = adk_bound_check(d, a, v, k);
      out.require(c.ok, "ad^k bound");
      ++bounds;
    }
    for (int k = 0; k <= 2; ++k) {
      const BoundCheck c = adk_commutator_bound_check(d, a, v, k);
      out.require(c.ok, "ad^k [D,a] bound");
      ++bounds;
    }
    out.require(commutator_Da_bound_check(d, a, v).ok, "[D,a] bound");
    ++bounds;
    const CMatrix gam = grading_matrix(lat->size()), dm = dirac_matrix(d);
    grading = grading && max_abs(gam * dm + dm * gam) == 0.0;
    ++elements;
  }
  out.require(closed <= 1e-11, "closed form");
  out.require(grading, "grading anticommutation");
  out.detail << elements << " elements, " << bounds << " bound checks, closed form gap " << closed
             << ", grading exact";
}

void torus(Outcome& out) {
  Rng rng(1008);
  double d2 = 0.0, absd = 0.0, comm = 0.0;
  for (double theta : {1.0, 0.5, std::sqrt(2.0) - 1.0}) {
    const TorusBox box(1.0, theta, 3);
    std::vector<CVector> elements;
    for (int i = 0; i < 6; ++i) elements.push_back(random_vector(box.size(), rng));
    const TorusReport r = nc_torus_reconcile(box, elements);
    d2 = std::max(d2, r.d_squared_residual);
    absd = std::max(absd, r.abs_residual);
    comm = std::max({comm, r.commutator_residual, r.commutator_norm_gap});
  }
  // entries are products of exact small integers and 4 pi^2: equal up to rounding
  out.require(d2 <= 8 * std::numeric_limits<double>::epsilon(), "D^2 diagonal");
  out.require(absd <= 1e-10, "|D| from the weight");
  out.require(comm <= 1e-10, "two-path commutator");
  out.detail << "D^2 residual " << d2 << ", |D| residual " << absd << ", commutator " << comm;
}

void separation(Outcome& out) {
  const RealLine line(256, 8.0);
  const auto [sa, sb] = line.lattice_strides(1.0, 0.5);
  const auto lat = gen::lattice_ptr(Lattice::rectangular(line.group(), sa, sb));
  const Weight v = Weight::real_polynomial(line, 1.0);
  const DiracOperator d = build_dirac(CompatibleFunction::identity(), v, lat);
  LadderOptions ladder;
  ladder.radii = {2, 4, 8, 16};
  ladder.radius = [&](int idx) { return line.phase_radius(idx); };

  const std::vector<CVector> gauss = parseval_window({line.window({})}, *lat);
  bool gauss_ok = true;
  for (int k = 0; k <= 4; ++k) {
    const WindowCertificate wc = qck_certify_windows(gauss, d, v, k, &ladder);
    gauss_ok = gauss_ok && wc.passed;
    const auto& r = wc.pairs.front().ladder.ratios;
    out.detail << "gaussian k=" << k << (wc.passed ? " pass" : " FAIL") << " (last ratio " << r.back() << "); ";
  }
  WindowSpec b2;
  b2.shape = WindowShape::bspline;
  b2.order = 2;
  const std::vector<CVector> spline = parseval_window({line.window(b2)}, *lat);
  int diverging_k = -1;
  for (int k = 0; k <= 4 && diverging_k < 0; ++k) {
    const WindowCertificate wc = qck_certify_windows(spline, d, v, k, &ladder);
    const auto& lv = wc.pairs.front().ladder;
    out.detail << "B2 k=" << k << (lv.diverges ? " diverges" : " bounded") << " (last ratio " << lv.ratios.back()
               << "); ";
    if (lv.diverges) diverging_k = k;
  }
  out.require(gauss_ok, "gaussian family certified for k = 0..4");
  out.require(diverging_k >= 0, "B2 profile diverges for some k <= 4");
  out.detail << "qualitative, ladder-criterion relative";
}

PAdicRational random_padic(Rng& rng, int p) {
  return {p, gen::uniform(rng, -3000, 3000), gen::uniform(rng, -3, 3)};
}

void padic(Outcome& out) {
  Rng rng(1010);
  long pairs = 0;
  for (int t = 0; t < 10000; ++t) {
    const int p = std::array{2, 3, 5, 7}[t % 4];
    const PAdicRational x = random_padic(rng, p), y = random_padic(rng, p);
    out.require(ultrametric_check(x, y), "ultrametric");
    out.require(padic_abs(x * y) == padic_abs(x) * padic_abs(y), "multiplicativity");
    Rational s = frac_part(x) + frac_part(y);
    if (s >= Rational(1)) s -= 1;
    out.require(frac_part(x + y) == s, "frac_part homomorphism");
    ++pairs;
  }
  int domains = 0;
  for (const Rational& alpha : {Rational(1), Rational(2), Rational(1, 2)})
    for (int h = 0; h <= 2; ++h) {
      const FundamentalDomainReport r = fundamental_domain_check(2, alpha, h);
      out.require(r.ok() && r.samples > 0, "fundamental domain");
      ++domains;
    }
  const TensorReductionReport tr = tensor_reduction_check(WindowSpec{}, 2, Rational(1), Rational(1, 2), 2);
  out.require(tr.ok(1e-10), "tensor reduction");
  out.detail << pairs << " pairs, " << domains << " fundamental domains, tensor block gap "
             << std::max({tr.integer_block_gap, tr.coset_modulus_gap, tr.vanishing_max, tr.padic_closed_form_gap});
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cocycle and representation identities", 5.0, representation},
      {2, "adjoint lattices", 5.0, adjoint_lattices},
      {3, "twisted group algebra", 0.0, algebra},
      {4, "frames, duals and Parseval windows", 30.0, frames},
      {5, "Hilbert bimodule", 0.0, bimodule},
      {6, "module frames vs Gabor frames", 0.0, bridge},
      {7, "Dirac commutators", 0.0, spectral},
      {8, "noncommutative torus", 0.0, torus},
      {9, "QC^k separation (qualitative)", 0.0, separation},
      {10, "p-adic arithmetic and solenoid lattices", 20.0, padic},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      out.ok = false;
      out.detail << "; over the " << c.time_limit << " s budget";
    }
    std::printf("criterion %2d: %s  %s [%.2f s]  %s\n", c.id, out.ok ? "PASS" : "FAIL", c.name, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
