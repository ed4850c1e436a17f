#pragma once

// Finite abelian groups Z_{N_1} x ... x Z_{N_d}, their characters and the
// measure pair used throughout the library.
//
// The dual group is identified with the group itself through the pairing
// <w, x> = exp(2 pi i sum_j w_j x_j / N_j). Phases are kept as integers modulo
// L = lcm(N_1, ..., N_d) so that products of characters stay exact roots of
// unity until the final table lookup.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace gabnc {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Rational = boost::rational<std::int64_t>;

class FiniteGroup;

/// An element of a finite abelian group, tagged with the moduli it lives in.
struct GroupElement {
  std::vector<int> moduli;
  std::vector<int> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// A character of G, addressed by its frequency in the identified dual.
struct Character {
  GroupElement freq;

  friend bool operator==(const Character&, const Character&) = default;
};

/// Per-point masses: counting measure on G, counting/|G| on the dual, so that
/// Plancherel holds exactly.
struct Measure {
  Rational group_weight;
  Rational dual_weight;
};

class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<int> moduli);

  static FiniteGroup cyclic(int n) { return FiniteGroup({n}); }
  /// Accepts "Z12" or "Z4xZ6".
  static FiniteGroup parse(std::string_view spec);

  const std::vector<int>& moduli() const { return tables_->moduli; }
  int rank() const { return static_cast<int>(tables_->moduli.size()); }
  int order() const { return tables_->order; }
  /// lcm of the moduli; character phases are integers modulo this.
  std::int64_t phase_modulus() const { return tables_->phase_modulus; }
  Measure measure() const { return {Rational(1), Rational(1, order())}; }

  // Lexicographic (row-major, first coordinate slowest) indexing.
  int index(const GroupElement& x) const;
  GroupElement element(int index) const;
  GroupElement make(std::vector<int> coords) const;
  bool owns(const GroupElement& x) const { return x.moduli == moduli(); }

  int add(int i, int j) const { return tables_->add[static_cast<std::size_t>(i) * order() + j]; }
  int neg(int i) const { return tables_->neg[i]; }
  int sub(int i, int j) const { return add(i, neg(j)); }

  /// Phase of <w, x> in units of 2 pi / phase_modulus(), reduced to [0, L).
  std::int64_t pairing_phase(int w, int x) const {
    return tables_->pairing[static_cast<std::size_t>(w) * order() + x];
  }
  /// exp(2 pi i k / L) for an integer phase k (any sign).
  Complex root_of_unity(std::int64_t k) const;
  Complex pairing(int w, int x) const { return root_of_unity(pairing_phase(w, x)); }

  /// Wrap-around Euclidean distance d(x, 0) = (sum_j min(x_j, N_j - x_j)^2)^{1/2}.
  double wrap_norm(int x) const { return tables_->wrap_norm[x]; }
  /// Signed representative of coordinate j of element x, in (-N_j/2, N_j/2].
  int signed_coord(int x, int j) const;

  std::string to_string() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.tables_ == b.tables_ || a.moduli() == b.moduli();
  }

 private:
  struct Tables {
    std::vector<int> moduli;
    int order = 1;
    std::int64_t phase_modulus = 1;
    std::vector<int> add;
    std::vector<int> neg;
    std::vector<std::int64_t> pairing;
    std::vector<Complex> roots;
    std::vector<double> wrap_norm;
  };
  std::shared_ptr<const Tables> tables_;
};

/// exp(2 pi i sum_j w_j x_j / N_j).
Complex character_eval(const Character& omega, const GroupElement& x);

/// Discrete Fourier transform f^(w) = sum_t f(t) conj(<w, t>).
CVector fourier_transform(const FiniteGroup& group, const CVector& f);

/// | sum_w |f^(w)|^2 dual_weight - sum_t |f(t)|^2 |.
double plancherel_check(const FiniteGroup& group, const CVector& f);

/// Translation-invariant torus metric d(x, y) = d(x - y, 0).
class TorusMetric {
 public:
  explicit TorusMetric(FiniteGroup group) : group_(std::move(group)) {}
  double operator()(int x, int y) const { return group_.wrap_norm(group_.sub(x, y)); }
  double norm(int x) const { return group_.wrap_norm(x); }

 private:
  FiniteGroup group_;
};

// ---------------------------------------------------------------------------
// Windows on G.

enum class WindowShape { gaussian, bspline };

struct WindowSpec {
  WindowShape shape = WindowShape::gaussian;
  int order = 2;  // B-spline order, ignored for the Gaussian
};

/// Parses "gaussian", "bspline:N" or "bspline(N)".
WindowSpec parse_window_spec(std::string_view name);

/// The underlying function on R: 2^{1/4} e^{-pi t^2}, or the centred B-spline
/// B_N (N-fold convolution of the indicator of [-1/2, 1/2)).
double real_window(const WindowSpec& spec, double t);

/// Samples a window at t = m * scale / N, periodised onto Z_N, peak at index 0,
/// l2-normalised. scale is the length of the sampled interval, so the grid
/// step is scale / N and scale = sqrt(N) is the Fourier-symmetric choice.
CVector discretize_window(const WindowSpec& spec, const FiniteGroup& group, double scale);

/// Window CSV: header "re,im", one row per group point in lexicographic order.
CVector read_window_csv(const std::string& path, const FiniteGroup& group);
void write_window_csv(const std::string& path, const CVector& window);

// ---------------------------------------------------------------------------
// Discretised real line.

/// Z_N standing in for R: time step span/N, frequency step 1/span.
class RealLine {
 public:
  RealLine(int points, double span);

  const FiniteGroup& group() const { return group_; }
  int points() const { return group_.order(); }
  double span() const { return span_; }
  double time_step() const { return span_ / points(); }
  double freq_step() const { return 1.0 / span_; }

  /// Signed real time / frequency of a group index.
  double time(int j) const { return group_.signed_coord(j, 0) * time_step(); }
  double freq(int k) const { return group_.signed_coord(k, 0) * freq_step(); }
  /// Real coordinates (x, w) of a phase-space index x * N + w.
  std::pair<double, double> phase_coords(int phase_index) const;
  double phase_radius(int phase_index) const;

  /// Index strides of alpha Z (time) and beta Z (frequency); throws unless
  /// both are integral multiples of the grid steps dividing N.
  std::pair<int, int> lattice_strides(double alpha, double beta) const;

  CVector window(const WindowSpec& spec) const { return discretize_window(spec, group_, span_); }

 private:
  FiniteGroup group_;
  double span_;
};

}  // namespace gabnc
