#include "gabnc/kernels.hpp"

namespace gabnc::kernels {

CMatrix frame_operator_serial(const std::vector<CVector>& windows, const Lattice& lattice) {
  const FiniteGroup& g = lattice.group();
  const int n = g.order();
  CMatrix s = CMatrix::Zero(n, n);
  for (const CVector& w : windows) {
    for (int i = 0; i < lattice.size(); ++i) {
      const CVector u = apply_tf_shift(g, lattice.point(i), w);
      s.noalias() += u * u.adjoint();
    }
  }
  return s;
}

CVector stft_serial(const FiniteGroup& g, const CVector& f, const CVector& window) {
  const int n = g.order();
  CVector v(static_cast<Eigen::Index>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int w = 0; w < n; ++w) {
      Complex s = 0.0;
      for (int t = 0; t < n; ++t) s += f[t] * std::conj(g.pairing(w, t) * window[g.sub(t, x)]);
      v[x * n + w] = s;
    }
  }
  return v;
}

}  // namespace gabnc::kernels
