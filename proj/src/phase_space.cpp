#include "gabnc/phase_space.hpp"

#include <charconv>
#include <deque>
#include <stdexcept>

namespace gabnc {

CMatrix tf_shift(const FiniteGroup& g, PhasePoint xi) {
  const int n = g.order();
  CMatrix m = CMatrix::Zero(n, n);
  for (int t = 0; t < n; ++t) m(t, g.sub(t, xi.x)) = g.pairing(xi.w, t);
  return m;
}

CVector apply_tf_shift(const FiniteGroup& g, PhasePoint xi, const CVector& f) {
  const int n = g.order();
  CVector out(n);
  for (int t = 0; t < n; ++t) out[t] = g.pairing(xi.w, t) * f[g.sub(t, xi.x)];
  return out;
}

CVector apply_tf_shift_adjoint(const FiniteGroup& g, PhasePoint xi, const CVector& f) {
  // (pi^* f)(t) = conj(<w, t + x>) f(t + x)
  const int n = g.order();
  CVector out(n);
  for (int t = 0; t < n; ++t) {
    const int s = g.add(t, xi.x);
    out[t] = std::conj(g.pairing(xi.w, s)) * f[s];
  }
  return out;
}

std::int64_t heisenberg_phase(const FiniteGroup& g, PhasePoint a, PhasePoint b) {
  return -g.pairing_phase(b.w, a.x);
}

std::int64_t symplectic_phase(const FiniteGroup& g, PhasePoint a, PhasePoint b) {
  return g.pairing_phase(a.w, b.x) - g.pairing_phase(b.w, a.x);
}

Complex heisenberg_cocycle(const FiniteGroup& g, PhasePoint a, PhasePoint b) {
  return g.root_of_unity(heisenberg_phase(g, a, b));
}

Complex symplectic_cocycle(const FiniteGroup& g, PhasePoint a, PhasePoint b) {
  return g.root_of_unity(symplectic_phase(g, a, b));
}

CocycleResiduals cocycle_identities_check(const FiniteGroup& g, PhasePoint a, PhasePoint b) {
  const CMatrix pa = tf_shift(g, a);
  const CMatrix pb = tf_shift(g, b);
  const CMatrix pab = pa * pb;
  CocycleResiduals r;
  r.product = (pab - heisenberg_cocycle(g, a, b) * tf_shift(g, phase_add(g, a, b))).cwiseAbs().maxCoeff();
  r.adjoint = (pa.adjoint() - heisenberg_cocycle(g, a, a) * tf_shift(g, phase_neg(g, a))).cwiseAbs().maxCoeff();
  r.commutation = (pab - symplectic_cocycle(g, a, b) * (pb * pa)).cwiseAbs().maxCoeff();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> closure(const FiniteGroup& g, const std::vector<PhasePoint>& gens) {
  const int total = g.order() * g.order();
  std::vector<char> seen(total, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::vector<int> out;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    out.push_back(cur);
    for (const PhasePoint& s : gens) {
      const int nxt = phase_index(g, phase_add(g, phase_point(g, cur), s));
      if (!seen[nxt]) {
        seen[nxt] = 1;
        queue.push_back(nxt);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy generating set, enough to test membership of the adjoint.
std::vector<PhasePoint> reduce_generators(const FiniteGroup& g, const std::vector<int>& elements) {
  std::vector<PhasePoint> gens;
  std::vector<int> span{0};
  for (int e : elements) {
    if (std::binary_search(span.begin(), span.end(), e)) continue;
    gens.push_back(phase_point(g, e));
    span = closure(g, gens);
    if (span.size() == elements.size()) break;
  }
  return gens;
}

std::string point_text(const FiniteGroup& g, PhasePoint p) {
  std::string s = "(";
  const GroupElement x = g.element(p.x), w = g.element(p.w);
  for (int c : x.coords) s += std::to_string(c) + ",";
  for (std::size_t j = 0; j < w.coords.size(); ++j) s += (j ? "," : "") + std::to_string(w.coords[j]);
  return s + ")";
}

std::string gen_spec(const FiniteGroup& g, const std::vector<PhasePoint>& gens) {
  std::string s = "gen:";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ";" : "") + point_text(g, gens[i]);
  return s;
}

int parse_int(std::string_view s, std::string_view context) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad integer in lattice spec: " + std::string(context));
  return v;
}

}  // namespace

Lattice::Lattice(FiniteGroup g, std::vector<int> elements, std::string spec)
    : group_(std::move(g)), elements_(std::move(elements)), spec_(std::move(spec)) {
  position_.assign(static_cast<std::size_t>(group_.order()) * group_.order(), -1);
  for (int i = 0; i < size(); ++i) position_[elements_[i]] = i;
  generators_ = reduce_generators(group_, elements_);
  if (spec_.empty()) spec_ = gen_spec(group_, generators_);
}

Lattice Lattice::rectangular(const FiniteGroup& g, int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("rectangular lattice steps must be positive");
  for (int n : g.moduli())
    if (n % a != 0 || n % b != 0)
      throw std::invalid_argument("rect:" + std::to_string(a) + "," + std::to_string(b) + " does not divide " +
                                  g.to_string());
  std::vector<PhasePoint> gens;
  const int d = g.rank();
  for (int j = 0; j < d; ++j) {
    std::vector<int> c(d, 0);
    c[j] = a;
    gens.push_back({g.index(g.make(c)), 0});
  }
  for (int j = 0; j < d; ++j) {
    std::vector<int> c(d, 0);
    c[j] = b;
    gens.push_back({0, g.index(g.make(c))});
  }
  return Lattice(g, closure(g, gens), "rect:" + std::to_string(a) + "," + std::to_string(b));
}

Lattice Lattice::generated(const FiniteGroup& g, const std::vector<PhasePoint>& gens) {
  for (const PhasePoint& p : gens)
    if (p.x < 0 || p.x >= g.order() || p.w < 0 || p.w >= g.order())
      throw std::invalid_argument("generator outside phase space");
  return Lattice(g, closure(g, gens), gens.empty() ? "gen:" : gen_spec(g, gens));
}

Lattice Lattice::from_elements(const FiniteGroup& g, std::vector<int> phase_indices) {
  const int total = g.order() * g.order();
  std::sort(phase_indices.begin(), phase_indices.end());
  phase_indices.erase(std::unique(phase_indices.begin(), phase_indices.end()), phase_indices.end());
  if (phase_indices.empty() || phase_indices.front() != 0)
    throw std::invalid_argument("lattice must contain 0");
  if (phase_indices.back() >= total || phase_indices.front() < 0)
    throw std::invalid_argument("lattice element outside phase space");
  Lattice l(g, std::move(phase_indices), "");
  // The set is a subgroup iff the span of its greedy generators is the set itself.
  if (closure(g, l.generators_) != l.elements_) throw std::invalid_argument("element set is not a subgroup");
  return l;
}

Lattice Lattice::parse(const FiniteGroup& g, std::string_view spec) {
  if (spec.starts_with("rect:")) {
    const std::string_view body = spec.substr(5);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("expected rect:a,b, got " + std::string(spec));
    return rectangular(g, parse_int(body.substr(0, comma), spec), parse_int(body.substr(comma + 1), spec));
  }
  if (spec == "full") return rectangular(g, 1, 1);
  if (spec == "trivial") return generated(g, {});
  if (spec.starts_with("gen:")) {
    std::string_view body = spec.substr(4);
    std::vector<PhasePoint> gens;
    const int d = g.rank();
    while (!body.empty()) {
      if (body.front() == ';' || body.front() == ' ') {
        body.remove_prefix(1);
        continue;
      }
      if (body.front() != '(') throw std::invalid_argument("expected '(' in lattice spec: " + std::string(spec));
      const auto close = body.find(')');
      if (close == std::string_view::npos) throw std::invalid_argument("unbalanced '(' in lattice spec");
      std::string_view tuple = body.substr(1, close - 1);
      body.remove_prefix(close + 1);
      std::vector<int> nums;
      while (true) {
        const auto c = tuple.find(',');
        nums.push_back(parse_int(tuple.substr(0, c), spec));
        if (c == std::string_view::npos) break;
        tuple.remove_prefix(c + 1);
      }
      if (static_cast<int>(nums.size()) != 2 * d)
        throw std::invalid_argument("each generator needs " + std::to_string(2 * d) + " coordinates");
      const std::vector<int> xs(nums.begin(), nums.begin() + d), ws(nums.begin() + d, nums.end());
      gens.push_back({g.index(g.make(xs)), g.index(g.make(ws))});
    }
    Lattice l = generated(g, gens);
    l.spec_ = std::string(spec);
    return l;
  }
  throw std::invalid_argument("unknown lattice spec: " + std::string(spec));
}

Lattice adjoint_lattice(const Lattice& lattice) {
  const FiniteGroup& g = lattice.group();
  const std::int64_t L = g.phase_modulus();
  const int total = g.order() * g.order();
  std::vector<int> out;
  for (int idx = 0; idx < total; ++idx) {
    const PhasePoint chi = phase_point(g, idx);
    bool ok = true;
    for (const PhasePoint& lam : lattice.generators()) {
      if (((symplectic_phase(g, chi, lam) % L) + L) % L != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(idx);
  }
  return Lattice::from_elements(g, std::move(out));
}

Rational lattice_size(const Lattice& lattice) { return lattice.covolume(); }

}  // namespace gabnc
