#pragma once

// Phase space G x G^, time-frequency shifts and lattices.
//
// A phase point (x, w) is addressed by its index x * |G| + w. pi(x, w) acts by
// (pi(x, w) f)(t) = <w, t> f(t - x).

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "gabnc/lca.hpp"

namespace gabnc {

struct PhasePoint {
  int x = 0;  // group index
  int w = 0;  // dual index

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

inline int phase_index(const FiniteGroup& g, PhasePoint p) { return p.x * g.order() + p.w; }
inline PhasePoint phase_point(const FiniteGroup& g, int idx) { return {idx / g.order(), idx % g.order()}; }
inline PhasePoint phase_add(const FiniteGroup& g, PhasePoint a, PhasePoint b) {
  return {g.add(a.x, b.x), g.add(a.w, b.w)};
}
inline PhasePoint phase_neg(const FiniteGroup& g, PhasePoint a) { return {g.neg(a.x), g.neg(a.w)}; }
inline PhasePoint phase_sub(const FiniteGroup& g, PhasePoint a, PhasePoint b) { return phase_add(g, a, phase_neg(g, b)); }

/// Dense |G| x |G| matrix of pi(xi).
CMatrix tf_shift(const FiniteGroup& g, PhasePoint xi);
/// pi(xi) f without forming the matrix.
CVector apply_tf_shift(const FiniteGroup& g, PhasePoint xi, const CVector& f);
/// pi(xi)^* f.
CVector apply_tf_shift_adjoint(const FiniteGroup& g, PhasePoint xi, const CVector& f);

/// Integer phases (units of 2 pi / L) of the two cocycles.
std::int64_t heisenberg_phase(const FiniteGroup& g, PhasePoint a, PhasePoint b);
std::int64_t symplectic_phase(const FiniteGroup& g, PhasePoint a, PhasePoint b);

/// c(a, b) = conj(w_b(x_a)).
Complex heisenberg_cocycle(const FiniteGroup& g, PhasePoint a, PhasePoint b);
/// c_s(a, b) = conj(w_b(x_a)) w_a(x_b).
Complex symplectic_cocycle(const FiniteGroup& g, PhasePoint a, PhasePoint b);

struct CocycleResiduals {
  double product = 0.0;      // pi(a)pi(b) - c(a,b) pi(a+b)
  double adjoint = 0.0;      // pi(a)^* - c(a,a) pi(-a)
  double commutation = 0.0;  // pi(a)pi(b) - c_s(a,b) pi(b)pi(a)
  double max() const { return std::max({product, adjoint, commutation}); }
};
CocycleResiduals cocycle_identities_check(const FiniteGroup& g, PhasePoint a, PhasePoint b);

/// A subgroup of phase space, stored as a sorted list of phase indices.
class Lattice {
 public:
  /// aZ x bZ in every coordinate; a and b must divide every modulus.
  static Lattice rectangular(const FiniteGroup& g, int a, int b);
  /// Closure of the given generators under addition.
  static Lattice generated(const FiniteGroup& g, const std::vector<PhasePoint>& gens);
  /// Validates that the set is a subgroup.
  static Lattice from_elements(const FiniteGroup& g, std::vector<int> phase_indices);
  /// "rect:a,b" or "gen:(x,w);(x,w)". For rank d each tuple lists the d time
  /// coordinates followed by the d frequency coordinates.
  static Lattice parse(const FiniteGroup& g, std::string_view spec);

  const FiniteGroup& group() const { return group_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<int>& elements() const { return elements_; }
  const std::vector<PhasePoint>& generators() const { return generators_; }
  PhasePoint point(int i) const { return phase_point(group_, elements_[i]); }
  /// Position of a phase index in elements(), or -1.
  int position(int phase_idx) const { return position_[phase_idx]; }
  int position(PhasePoint p) const { return position_[phase_index(group_, p)]; }
  bool contains(PhasePoint p) const { return position(p) >= 0; }
  /// Position of element(i) + element(j), element(i) - element(j), -element(i).
  int add(int i, int j) const { return position(phase_add(group_, point(i), point(j))); }
  int sub(int i, int j) const { return position(phase_sub(group_, point(i), point(j))); }
  int neg(int i) const { return position(phase_neg(group_, point(i))); }
  int zero() const { return 0; }  // elements are sorted, so 0 comes first

  /// s = |G| / |Lambda|.
  Rational covolume() const { return Rational(group_.order(), size()); }
  double covolume_value() const { return boost::rational_cast<double>(covolume()); }

  std::string describe() const { return spec_; }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.group_ == b.group_ && a.elements_ == b.elements_;
  }

 private:
  Lattice(FiniteGroup g, std::vector<int> elements, std::string spec);

  FiniteGroup group_;
  std::vector<int> elements_;
  std::vector<int> position_;
  std::vector<PhasePoint> generators_;
  std::string spec_;
};

/// Lambda° = { chi : c_s(chi, lambda) = 1 for all lambda }.
Lattice adjoint_lattice(const Lattice& lattice);
Rational lattice_size(const Lattice& lattice);

}  // namespace gabnc
