#pragma once

// Weights on phase space and spectral-triple compatible functions.

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "gabnc/phase_space.hpp"

namespace gabnc {

/// Torus distance of a phase point from 0: sqrt(d_G(x,0)^2 + d_G(w,0)^2).
double phase_norm(const FiniteGroup& g, PhasePoint p);

/// A weight tabulated on the full phase space.
class Weight {
 public:
  /// (1 + d^2)^{s/2}.
  static Weight polynomial(const FiniteGroup& g, double s);
  /// (1 + d)^s.
  static Weight linear(const FiniteGroup& g, double s);
  static Weight constant(const FiniteGroup& g, double c);
  /// (1 + x^2 + w^2)^{s/2} in the real coordinates of a discretised line.
  static Weight real_polynomial(const RealLine& line, double s);
  static Weight custom(const FiniteGroup& g, std::vector<double> table, std::string name);
  /// "poly:s", "lin:s", "const:c".
  static Weight parse(const FiniteGroup& g, std::string_view spec);

  double operator()(int phase_idx) const { return values_[phase_idx]; }
  double operator()(PhasePoint p) const { return values_[phase_index(group_, p)]; }
  const std::vector<double>& values() const { return values_; }
  const FiniteGroup& group() const { return group_; }
  const std::string& describe() const { return name_; }

 private:
  Weight(FiniteGroup g, std::vector<double> values, std::string name)
      : group_(std::move(g)), values_(std::move(values)), name_(std::move(name)) {}

  FiniteGroup group_;
  std::vector<double> values_;
  std::string name_;
};

struct PairWitness {
  int a = -1;  // phase index (or lattice position, for certificates)
  int b = -1;
};

struct WeightReport {
  bool positive_ok = true;  // v >= 1 everywhere
  bool submult_ok = true;
  double submult_sup = 0.0;  // max v(a+b) / (v(a) v(b))
  PairWitness submult_witness;
  bool radial_ok = true;
  bool growth_ok = true;
  double growth_D = 0.0;
  double growth_s = 0.0;
  double commutator_C = 0.0;  // smallest C_v
  PairWitness commutator_witness;

  bool passed() const { return positive_ok && submult_ok && radial_ok && growth_ok; }
};

/// Exhaustive check of the weight axioms over all pairs of phase points.
WeightReport verify_weight(const Weight& v);

enum class FunctionKind { identity, constant, torus_sqrt, custom };

/// f applied to the values of v.
class CompatibleFunction {
 public:
  static CompatibleFunction identity() { return {FunctionKind::identity, 0.0, "identity"}; }
  static CompatibleFunction constant(double c);
  /// 2 pi (v^2 - 1)^{1/2}.
  static CompatibleFunction torus_sqrt() { return {FunctionKind::torus_sqrt, 0.0, "torus-sqrt"}; }
  /// "identity", "const:c", "torus-sqrt".
  static CompatibleFunction parse(std::string_view spec);

  FunctionKind kind() const { return kind_; }
  double operator()(double v) const;
  const std::string& describe() const { return name_; }

  /// f(v)(lambda) for every lattice element, in lattice order.
  std::vector<double> tabulate(const Weight& v, const Lattice& lattice) const;

 private:
  CompatibleFunction(FunctionKind k, double c, std::string name) : kind_(k), c_(c), name_(std::move(name)) {}
  FunctionKind kind_;
  double c_;
  std::string name_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct CompatibilityCertificate {
  double C_dif = 0.0;
  double C_sm = 0.0;
  double C_gr = 0.0;
  PairWitness dif_witness;  // lattice positions (lambda, mu)
  PairWitness sm_witness;
  int gr_witness = -1;

  bool finite() const { return C_dif < kInfinity && C_sm < kInfinity && C_gr < kInfinity; }
  /// What the spectral constructions need.
  bool usable() const { return C_dif < kInfinity && C_gr < kInfinity; }
};

/// Sharp constants by exhaustive scan. 0/0 counts as 0, x/0 as infinity.
CompatibilityCertificate stc_constants(const CompatibleFunction& f, const Weight& v, const Lattice& lattice);

/// Number of (lambda, mu) pairs violating the three inequalities with the
/// certificate's constants (relative slack 1e-12).
long certificate_violations(const CompatibilityCertificate& cert, const CompatibleFunction& f, const Weight& v,
                            const Lattice& lattice);

}  // namespace gabnc
