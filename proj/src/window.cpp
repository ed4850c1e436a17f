#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gabnc/lca.hpp"

namespace gabnc {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Centred cardinal B-spline of order n via the truncated-power formula.
double centred_bspline(int n, double t) {
  const double half = 0.5 * n;
  if (t < -half || t >= half) return 0.0;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double x = t + half - k;
    if (x < 0.0) continue;
    const double p = n == 1 ? 1.0 : std::pow(x, n - 1);
    s += (k % 2 ? -1.0 : 1.0) * binomial(n, k) * p;
  }
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;
  return s / fact;
}

}  // namespace

WindowSpec parse_window_spec(std::string_view name) {
  if (name == "gaussian") return {WindowShape::gaussian, 0};
  auto parse_order = [&](std::string_view digits) {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
      throw std::invalid_argument("bad B-spline order in window name: " + std::string(name));
    const int order = std::stoi(std::string(digits));
    if (order < 1) throw std::invalid_argument("B-spline order must be >= 1");
    return WindowSpec{WindowShape::bspline, order};
  };
  if (name.starts_with("bspline:")) return parse_order(name.substr(8));
  if (name.starts_with("bspline(") && name.ends_with(")")) return parse_order(name.substr(8, name.size() - 9));
  throw std::invalid_argument("unknown window name: " + std::string(name));
}

double real_window(const WindowSpec& spec, double t) {
  switch (spec.shape) {
    case WindowShape::gaussian:
      return std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * t * t);
    case WindowShape::bspline:
      return centred_bspline(spec.order, t);
  }
  return 0.0;
}

CVector discretize_window(const WindowSpec& spec, const FiniteGroup& group, double scale) {
  if (group.rank() != 1) throw std::invalid_argument("window discretization needs a cyclic group");
  if (!(scale > 0.0)) throw std::invalid_argument("window scale must be positive");
  const int n = group.order();
  const double step = scale / n;
  // Support radius beyond which the window is zero or below 1e-30 relative.
  const double radius = spec.shape == WindowShape::gaussian ? 5.0 : 0.5 * spec.order;
  const int wraps = static_cast<int>(std::ceil(radius / scale)) + 1;
  CVector g = CVector::Zero(n);
  for (int m = 0; m < n; ++m) {
    double s = 0.0;
    for (int k = -wraps; k <= wraps; ++k) s += real_window(spec, (m + static_cast<double>(k) * n) * step);
    g[m] = s;
  }
  const double norm = g.norm();
  if (norm == 0.0) throw std::invalid_argument("window vanishes on the sampling grid");
  return g / norm;
}

CVector read_window_csv(const std::string& path, const FiniteGroup& group) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open window file: " + path);
  std::vector<Complex> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_of("0123456789") == std::string::npos) continue;  // header
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected \"re,im\"");
    try {
      std::size_t used_re = 0, used_im = 0;
      const std::string re_s = line.substr(0, comma), im_s = line.substr(comma + 1);
      const double re = std::stod(re_s, &used_re);
      const double im = std::stod(im_s, &used_im);
      if (re_s.find_first_not_of(" \t", used_re) != std::string::npos ||
          im_s.find_first_not_of(" \t", used_im) != std::string::npos)
        throw std::invalid_argument("trailing characters");
      values.emplace_back(re, im);
    } catch (const std::exception&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  if (static_cast<int>(values.size()) != group.order())
    throw std::invalid_argument(path + ": expected " + std::to_string(group.order()) + " rows, found " +
                                std::to_string(values.size()));
  return Eigen::Map<const CVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_window_csv(const std::string& path, const CVector& window) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write window file: " + path);
  out.precision(17);
  out << "re,im\n";
  for (Eigen::Index i = 0; i < window.size(); ++i) out << window[i].real() << ',' << window[i].imag() << '\n';
}

}  // namespace gabnc
