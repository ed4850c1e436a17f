// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "gabnc/kernels.hpp"
#include "gabnc/random.hpp"

namespace {

using namespace gabnc;

struct Setup {
  FiniteGroup group;
  Lattice lattice;
  std::vector<CVector> windows;
  CVector f;

  explicit Setup(int n)
      : group(FiniteGroup::cyclic(n)),
        lattice(Lattice::rectangular(group, n % 4 == 0 ? 4 : 2, n % 4 == 0 ? 4 : 2)),
        windows{discretize_window({}, group, std::sqrt(static_cast<double>(n)))} {
    Rng rng(7);
    f = random_vector(n, rng);
  }
};

void BM_frame_operator_serial(benchmark::State& st) {
  const Setup s(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::frame_operator_serial(s.windows, s.lattice));
}

void BM_frame_operator_omp(benchmark::State& st) {
  const Setup s(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::frame_operator_omp(s.windows, s.lattice));
  st.counters["threads"] = kernels::max_threads();
}

void BM_stft_serial(benchmark::State& st) {
  const Setup s(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::stft_serial(s.group, s.f, s.windows[0]));
}

void BM_stft_omp(benchmark::State& st) {
  const Setup s(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::stft_omp(s.group, s.f, s.windows[0]));
  st.counters["threads"] = kernels::max_threads();
}

}  // namespace

BENCHMARK(BM_frame_operator_serial)->Arg(48)->Arg(96)->Arg(144);
BENCHMARK(BM_frame_operator_omp)->Arg(48)->Arg(96)->Arg(144);
BENCHMARK(BM_stft_serial)->Arg(48)->Arg(96)->Arg(144);
BENCHMARK(BM_stft_omp)->Arg(48)->Arg(96)->Arg(144);

BENCHMARK_MAIN();
