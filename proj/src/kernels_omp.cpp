#include "gabnc/kernels.hpp"

namespace gabnc::kernels {

bool openmp_enabled() {
#ifdef GABNC_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef GABNC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

CMatrix frame_operator_omp(const std::vector<CVector>& windows, const Lattice& lattice) {
  const FiniteGroup& g = lattice.group();
  const int n = g.order();
  const int per = lattice.size();
  const int k = per * static_cast<int>(windows.size());
  // Columns of u are the shifted windows; S = u u^H, one column of S per task.
  CMatrix u(n, k);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < k; ++c) u.col(c) = apply_tf_shift(g, lattice.point(c % per), windows[c / per]);
  CMatrix s(n, n);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n; ++c) s.col(c).noalias() = u * u.row(c).adjoint();
  return s;
}

CVector stft_omp(const FiniteGroup& g, const CVector& f, const CVector& window) {
  const int n = g.order();
  CVector v(static_cast<Eigen::Index>(n) * n);
#pragma omp parallel for schedule(static)
  for (int x = 0; x < n; ++x) {
    // h(t) = f(t) conj(g(t - x)); then V(x, w) = sum_t h(t) conj(<w, t>).
    CVector h(n);
    for (int t = 0; t < n; ++t) h[t] = f[t] * std::conj(window[g.sub(t, x)]);
    for (int w = 0; w < n; ++w) {
      Complex s = 0.0;
      for (int t = 0; t < n; ++t) s += h[t] * std::conj(g.pairing(w, t));
      v[x * n + w] = s;
    }
  }
  return v;
}

}  // namespace gabnc::kernels
