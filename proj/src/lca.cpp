#include "gabnc/lca.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gabnc {

FiniteGroup::FiniteGroup(std::vector<int> moduli) {
  if (moduli.empty()) throw std::invalid_argument("group needs at least one modulus");
  auto t = std::make_shared<Tables>();
  t->moduli = std::move(moduli);
  for (int n : t->moduli) {
    if (n < 1) throw std::invalid_argument("group moduli must be >= 1");
    t->order *= n;
    t->phase_modulus = std::lcm(t->phase_modulus, static_cast<std::int64_t>(n));
  }
  const int n = t->order;
  const int d = static_cast<int>(t->moduli.size());

  std::vector<std::vector<int>> coords(n, std::vector<int>(d));
  for (int i = 0; i < n; ++i) {
    int rem = i;
    for (int j = d - 1; j >= 0; --j) {
      coords[i][j] = rem % t->moduli[j];
      rem /= t->moduli[j];
    }
  }
  auto encode = [&](const std::vector<int>& c) {
    int idx = 0;
    for (int j = 0; j < d; ++j) idx = idx * t->moduli[j] + c[j];
    return idx;
  };

  t->add.resize(static_cast<std::size_t>(n) * n);
  t->pairing.resize(static_cast<std::size_t>(n) * n);
  t->neg.resize(n);
  t->wrap_norm.resize(n);
  std::vector<int> c(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) c[j] = (t->moduli[j] - coords[i][j]) % t->moduli[j];
    t->neg[i] = encode(c);
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      const int w = std::min(coords[i][j], t->moduli[j] - coords[i][j]);
      s += static_cast<double>(w) * w;
    }
    t->wrap_norm[i] = std::sqrt(s);
    for (int k = 0; k < n; ++k) {
      std::int64_t phase = 0;
      for (int j = 0; j < d; ++j) {
        c[j] = (coords[i][j] + coords[k][j]) % t->moduli[j];
        const std::int64_t scale = t->phase_modulus / t->moduli[j];
        phase += static_cast<std::int64_t>(coords[i][j]) * coords[k][j] % t->moduli[j] * scale;
      }
      t->add[static_cast<std::size_t>(i) * n + k] = encode(c);
      t->pairing[static_cast<std::size_t>(i) * n + k] = phase % t->phase_modulus;
    }
  }

  t->roots.resize(t->phase_modulus);
  for (std::int64_t k = 0; k < t->phase_modulus; ++k) {
    // Quarter turns are set exactly so that +-1, +-i carry no rounding.
    const std::int64_t L = t->phase_modulus;
    if (4 * k % L == 0) {
      static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      t->roots[k] = quarter[(4 * k / L) % 4];
    } else {
      t->roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L));
    }
  }
  tables_ = std::move(t);
}

FiniteGroup FiniteGroup::parse(std::string_view spec) {
  std::vector<int> moduli;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    if (spec[pos] != 'Z' && spec[pos] != 'z')
      throw std::invalid_argument("group spec must look like Z12 or Z4xZ6: " + std::string(spec));
    ++pos;
    std::size_t end = spec.find_first_of("xX*", pos);
    if (end == std::string_view::npos) end = spec.size();
    const std::string digits(spec.substr(pos, end - pos));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad modulus in group spec: " + std::string(spec));
    moduli.push_back(std::stoi(digits));
    pos = end == spec.size() ? end : end + 1;
  }
  return FiniteGroup(std::move(moduli));
}

int FiniteGroup::index(const GroupElement& x) const {
  if (!owns(x)) throw std::invalid_argument("group element has different moduli");
  int idx = 0;
  for (int j = 0; j < rank(); ++j) {
    const int n = moduli()[j];
    idx = idx * n + ((x.coords[j] % n) + n) % n;
  }
  return idx;
}

GroupElement FiniteGroup::element(int index) const {
  if (index < 0 || index >= order()) throw std::out_of_range("group index out of range");
  GroupElement x{moduli(), std::vector<int>(rank())};
  for (int j = rank() - 1; j >= 0; --j) {
    x.coords[j] = index % moduli()[j];
    index /= moduli()[j];
  }
  return x;
}

GroupElement FiniteGroup::make(std::vector<int> coords) const {
  if (static_cast<int>(coords.size()) != rank())
    throw std::invalid_argument("coordinate count does not match group rank");
  for (int j = 0; j < rank(); ++j) {
    const int n = moduli()[j];
    coords[j] = ((coords[j] % n) + n) % n;
  }
  return GroupElement{moduli(), std::move(coords)};
}

Complex FiniteGroup::root_of_unity(std::int64_t k) const {
  const std::int64_t L = phase_modulus();
  k %= L;
  if (k < 0) k += L;
  return tables_->roots[k];
}

int FiniteGroup::signed_coord(int x, int j) const {
  const int n = moduli()[j];
  const int c = rank() == 1 ? x : element(x).coords[j];
  return 2 * c > n ? c - n : c;
}

std::string FiniteGroup::to_string() const {
  std::string s;
  for (int j = 0; j < rank(); ++j) {
    if (j) s += "x";
    s += "Z" + std::to_string(moduli()[j]);
  }
  return s;
}

Complex character_eval(const Character& omega, const GroupElement& x) {
  if (omega.freq.moduli != x.moduli)
    throw std::invalid_argument("character and element live in different groups");
  std::int64_t L = 1;
  for (int n : x.moduli) L = std::lcm(L, static_cast<std::int64_t>(n));
  std::int64_t phase = 0;
  for (std::size_t j = 0; j < x.moduli.size(); ++j) {
    const int n = x.moduli[j];
    const std::int64_t w = ((omega.freq.coords[j] % n) + n) % n;
    const std::int64_t t = ((x.coords[j] % n) + n) % n;
    phase = (phase + w * t % n * (L / n)) % L;
  }
  if (4 * phase % L == 0) {
    static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[(4 * phase / L) % 4];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(L));
}

CVector fourier_transform(const FiniteGroup& group, const CVector& f) {
  const int n = group.order();
  if (f.size() != n) throw std::invalid_argument("vector length does not match group order");
  CVector out = CVector::Zero(n);
  for (int w = 0; w < n; ++w) {
    Complex s = 0.0;
    for (int t = 0; t < n; ++t) s += f[t] * std::conj(group.pairing(w, t));
    out[w] = s;
  }
  return out;
}

double plancherel_check(const FiniteGroup& group, const CVector& f) {
  const CVector fh = fourier_transform(group, f);
  const Measure m = group.measure();
  const double dual = boost::rational_cast<double>(m.dual_weight);
  return std::abs(fh.squaredNorm() * dual - f.squaredNorm());
}

// ---------------------------------------------------------------------------

RealLine::RealLine(int points, double span) : group_(FiniteGroup::cyclic(points)), span_(span) {
  if (points < 2) throw std::invalid_argument("real-line model needs at least two points");
  if (!(span > 0.0)) throw std::invalid_argument("real-line span must be positive");
}

std::pair<double, double> RealLine::phase_coords(int phase_index) const {
  const int n = points();
  return {time(phase_index / n), freq(phase_index % n)};
}

double RealLine::phase_radius(int phase_index) const {
  const auto [x, w] = phase_coords(phase_index);
  return std::hypot(x, w);
}

std::pair<int, int> RealLine::lattice_strides(double alpha, double beta) const {
  auto stride = [&](double value, double step, const char* what) {
    const double q = value / step;
    const long r = std::lround(q);
    if (r < 1 || std::abs(q - static_cast<double>(r)) > 1e-9 * std::max(1.0, q) || points() % r != 0) {
      std::ostringstream msg;
      msg << what << " = " << value << " is not a grid multiple dividing the model (" << points()
          << " points, step " << step << ")";
      throw std::invalid_argument(msg.str());
    }
    return static_cast<int>(r);
  };
  return {stride(alpha, time_step(), "alpha"), stride(beta, freq_step(), "beta")};
}

}  // namespace gabnc
