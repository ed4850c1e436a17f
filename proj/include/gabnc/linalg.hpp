#pragma once

#include <functional>

#include "gabnc/lca.hpp"

namespace gabnc {

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// Ascending eigenvalues of a Hermitian matrix (only the lower triangle is read).
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& h);

/// U phi(Lambda) U^H for Hermitian h.
CMatrix hermitian_function(const CMatrix& h, const std::function<double(double)>& phi);

/// Hermitian part (h + h^H) / 2, to strip rounding asymmetry before eigensolves.
inline CMatrix hermitian_part(const CMatrix& h) { return 0.5 * (h + h.adjoint()); }

}  // namespace gabnc
