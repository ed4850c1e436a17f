#include "gabnc/twisted.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include "gabnc/errors.hpp"
#include "gabnc/linalg.hpp"

namespace gabnc {

TwistedElement::TwistedElement(LatticePtr lattice, CVector coeffs, bool conjugate, double measure)
    : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)), conjugate_(conjugate), measure_(measure) {
  if (!lattice_) throw std::invalid_argument("twisted element needs a lattice");
  if (coeffs_.size() != lattice_->size())
    throw std::invalid_argument("coefficient count does not match the lattice size");
  if (!(measure_ > 0.0)) throw std::invalid_argument("lattice measure must be positive");
}

TwistedElement TwistedElement::zero(LatticePtr lattice, bool conjugate, double measure) {
  const int n = lattice->size();
  return {std::move(lattice), CVector::Zero(n), conjugate, measure};
}

TwistedElement TwistedElement::delta(LatticePtr lattice, int position, bool conjugate, double measure) {
  TwistedElement e = zero(std::move(lattice), conjugate, measure);
  e.coeffs_[position] = 1.0;
  return e;
}

TwistedElement TwistedElement::unit(LatticePtr lattice, bool conjugate, double measure) {
  TwistedElement e = delta(std::move(lattice), 0, conjugate, measure);
  e.coeffs_[0] = 1.0 / measure;
  return e;
}

Complex TwistedElement::cocycle(int i, int j) const {
  const Lattice& l = *lattice_;
  const Complex c = heisenberg_cocycle(l.group(), l.point(i), l.point(j));
  return conjugate_ ? std::conj(c) : c;
}

bool TwistedElement::compatible(const TwistedElement& o) const {
  return (lattice_ == o.lattice_ || *lattice_ == *o.lattice_) && conjugate_ == o.conjugate_ &&
         measure_ == o.measure_;
}

TwistedElement TwistedElement::operator+(const TwistedElement& o) const {
  if (!compatible(o)) throw std::invalid_argument("adding elements of different algebras");
  return like(coeffs_ + o.coeffs_);
}

TwistedElement TwistedElement::operator-(const TwistedElement& o) const {
  if (!compatible(o)) throw std::invalid_argument("subtracting elements of different algebras");
  return like(coeffs_ - o.coeffs_);
}

TwistedElement twisted_convolve(const TwistedElement& a, const TwistedElement& b) {
  if (!a.compatible(b)) throw std::invalid_argument("twisted convolution of elements on different lattices");
  const Lattice& l = a.lattice();
  const int n = l.size();
  CVector out = CVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b(j) == 0.0) continue;
      out[l.add(i, j)] += a(i) * b(j) * a.cocycle(i, j);
    }
  }
  return a.like(out * a.measure());
}

TwistedElement twisted_involution(const TwistedElement& a) {
  const Lattice& l = a.lattice();
  CVector out(a.size());
  for (int i = 0; i < a.size(); ++i) out[i] = a.cocycle(i, i) * std::conj(a(l.neg(i)));
  return a.like(out);
}

double weighted_norm(const TwistedElement& a, const Weight& v, double power) {
  const Lattice& l = a.lattice();
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double w = v(l.elements()[i]);
    s += std::abs(a(i)) * (power == 1.0 ? w : std::pow(w, power));
  }
  return a.measure() * s;
}

double l1_norm(const TwistedElement& a) { return a.measure() * a.coeffs().cwiseAbs().sum(); }

double l2_norm(const TwistedElement& a) { return std::sqrt(a.measure() * a.coeffs().squaredNorm()); }

Complex trace(const TwistedElement& a) { return a(0); }

CMatrix represent(const TwistedElement& a) {
  const Lattice& l = a.lattice();
  const FiniteGroup& g = l.group();
  const int n = g.order();
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < a.size(); ++i) {
    const Complex c = a(i);
    if (c == 0.0) continue;
    const PhasePoint p = l.point(i);
    for (int t = 0; t < n; ++t) {
      const Complex e = g.pairing(p.w, t);
      m(t, g.sub(t, p.x)) += c * (a.conjugate() ? std::conj(e) : e);
    }
  }
  return m * a.measure();
}

double cstar_norm(const TwistedElement& a) { return operator_norm(represent(a)); }

TwistedElement project_to_algebra(const CMatrix& m, const TwistedElement& proto) {
  const Lattice& l = proto.lattice();
  const FiniteGroup& g = l.group();
  const int n = g.order();
  const double mu = proto.measure();
  CVector b(l.size());
  for (int i = 0; i < l.size(); ++i) {
    // <rep(delta_l), M>_HS = mu sum_t conj(pi(l)_{t, t-x}) M_{t, t-x}
    const PhasePoint p = l.point(i);
    Complex s = 0.0;
    for (int t = 0; t < n; ++t) {
      const Complex e = g.pairing(p.w, t);
      s += std::conj(proto.conjugate() ? std::conj(e) : e) * m(t, g.sub(t, p.x));
    }
    b[i] = s / (mu * n);
  }
  return proto.like(b);
}

int representation_rank(const Lattice& lattice) {
  const FiniteGroup& g = lattice.group();
  const int n = g.order();
  CMatrix sys(static_cast<Eigen::Index>(n) * n, lattice.size());
  for (int i = 0; i < lattice.size(); ++i) {
    const CMatrix p = tf_shift(g, lattice.point(i));
    sys.col(i) = Eigen::Map<const CVector>(p.data(), p.size());
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(sys);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

SpectralInverseReport spectral_inverse_check(const TwistedElement& a, const Weight& v, double tol) {
  const CMatrix ra = represent(a);
  const int n = static_cast<int>(ra.rows());
  Eigen::JacobiSVD<CMatrix> svd(ra);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] <= 1e-12 * std::max(sv[0], 1e-300))
    throw MathError("not invertible: rep(a) is singular");
  const CMatrix inv = ra.partialPivLu().inverse();
  TwistedElement b = project_to_algebra(inv, a);
  const CMatrix rb = represent(b);
  SpectralInverseReport r{b};
  r.weighted_norm = weighted_norm(b, v);
  r.residual = operator_norm(rb * ra - CMatrix::Identity(n, n));
  r.span_residual = operator_norm(rb - inv);
  r.in_span = r.span_residual <= tol * std::max(1.0, operator_norm(inv));
  return r;
}

TwistedElement read_element_csv(const std::string& path, LatticePtr lattice) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open element file: " + path);
  const FiniteGroup& g = lattice->group();
  const int d = g.rank();
  CVector c = CVector::Zero(lattice->size());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    if (lineno == 1 && line.find("re") != std::string::npos) continue;  // header
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != 2 * d + 2)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(2 * d + 2) +
                                  " columns");
    try {
      std::vector<int> xs(d), ws(d);
      for (int j = 0; j < d; ++j) {
        xs[j] = std::stoi(cells[j]);
        ws[j] = std::stoi(cells[d + j]);
      }
      const PhasePoint p{g.index(g.make(xs)), g.index(g.make(ws))};
      const int pos = lattice->position(p);
      if (pos < 0) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": point not in the lattice");
      c[pos] += Complex(std::stod(cells[2 * d]), std::stod(cells[2 * d + 1]));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": malformed row");
    }
  }
  return {std::move(lattice), c};
}

void write_element_csv(const std::string& path, const TwistedElement& a) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write element file: " + path);
  const Lattice& l = a.lattice();
  const FiniteGroup& g = l.group();
  out.precision(17);
  for (int j = 0; j < g.rank(); ++j) out << "x" << j << ",";
  for (int j = 0; j < g.rank(); ++j) out << "w" << j << ",";
  out << "re,im\n";
  for (int i = 0; i < a.size(); ++i) {
    const PhasePoint p = l.point(i);
    for (int c : g.element(p.x).coords) out << c << ",";
    for (int c : g.element(p.w).coords) out << c << ",";
    out << a(i).real() << "," << a(i).imag() << "\n";
  }
}

}  // namespace gabnc
