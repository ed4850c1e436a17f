#include "gabnc/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gabnc/errors.hpp"

namespace gabnc {

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // sqrt of the top eigenvalue of the Gram matrix on the smaller side
  const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  const Eigen::VectorXd ev = hermitian_eigenvalues(hermitian_part(gram));
  return std::sqrt(std::max(ev[ev.size() - 1], 0.0));
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw MathError("Hermitian eigensolver did not converge");
  return es.eigenvalues();
}

CMatrix hermitian_function(const CMatrix& h, const std::function<double(double)>& phi) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw MathError("Hermitian eigensolver did not converge");
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = phi(d[i]);
  const CMatrix& u = es.eigenvectors();
  return u * d.cast<Complex>().asDiagonal() * u.adjoint();
}

}  // namespace gabnc
