#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP variant;
// the two agree to rounding (pair scans agree exactly).

#include <limits>
#include <vector>

#include "gabnc/phase_space.hpp"

#ifdef GABNC_HAVE_OPENMP
#include <omp.h>
#endif

namespace gabnc::kernels {

/// Frame operator sum_i sum_lambda u u^H with u = pi(lambda) g_i.
CMatrix frame_operator_serial(const std::vector<CVector>& windows, const Lattice& lattice);
CMatrix frame_operator_omp(const std::vector<CVector>& windows, const Lattice& lattice);

/// V_g f over all |G|^2 phase points, indexed by phase index.
CVector stft_serial(const FiniteGroup& g, const CVector& f, const CVector& window);
CVector stft_omp(const FiniteGroup& g, const CVector& f, const CVector& window);

/// Whether the OpenMP variants actually run in parallel in this build.
bool openmp_enabled();
int max_threads();

struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  int a = -1;
  int b = -1;
};

// Better value wins; among equal values the lexicographically smaller pair.
inline bool improves(const ArgMax& cand, const ArgMax& best) {
  if (cand.a < 0) return false;
  if (best.a < 0 || cand.value > best.value) return true;
  if (cand.value < best.value) return false;
  return cand.a < best.a || (cand.a == best.a && cand.b < best.b);
}

/// max over (i, j) in [0,n) x [0,m) of fn(i, j).
template <class Fn>
ArgMax pair_argmax_serial(int n, int m, Fn&& fn) {
  ArgMax best;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const double v = fn(i, j);
      if (best.a < 0 || v > best.value) best = {v, i, j};
    }
  return best;
}

template <class Fn>
ArgMax pair_argmax_omp(int n, int m, Fn&& fn) {
#ifdef GABNC_HAVE_OPENMP
  std::vector<ArgMax> rows(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    ArgMax best;
    for (int j = 0; j < m; ++j) {
      const double v = fn(i, j);
      if (best.a < 0 || v > best.value) best = {v, i, j};
    }
    rows[i] = best;
  }
  ArgMax best;
  for (const ArgMax& r : rows)
    if (improves(r, best)) best = r;
  return best;
#else
  return pair_argmax_serial(n, m, fn);
#endif
}

template <class Fn>
ArgMax pair_argmax(int n, int m, Fn&& fn) {
  return pair_argmax_omp(n, m, fn);
}

}  // namespace gabnc::kernels
