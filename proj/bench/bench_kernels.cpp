// Times the blocked OpenMP kernels against the serial reference on the
// shapes that dominate a desk-profile training step.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vbind/kernels.hpp"
#include "vbind/reference.hpp"

namespace {

using vbind::kernels::Trans;
using Clock = std::chrono::steady_clock;

template <class F>
double seconds_per_call(F&& fn, int reps) {
  fn();
  const auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

void bench_gemm(const char* label, Trans ta, Trans tb, std::size_t m, std::size_t n,
                std::size_t k, bool with_reference) {
  std::mt19937 gen(1);
  std::normal_distribution<float> dist;
  std::vector<float> a(m * k), b(k * n), c(m * n);
  for (auto& x : a) x = dist(gen);
  for (auto& x : b) x = dist(gen);
  const std::size_t lda = ta == Trans::kNo ? k : m;
  const std::size_t ldb = tb == Trans::kNo ? n : k;
  const double flops = 2.0 * m * n * k;
  const double fast = seconds_per_call(
      [&] { vbind::kernels::gemm<float>(ta, tb, m, n, k, 1.f, a.data(), lda, b.data(), ldb, 0.f, c.data(), n); },
      5);
  std::printf("%-28s %5zux%5zux%5zu  blocked %8.2f GFLOP/s", label, m, n, k, flops / fast * 1e-9);
  if (with_reference) {
    const double slow = seconds_per_call(
        [&] { vbind::reference::gemm<float>(ta, tb, m, n, k, 1.f, a.data(), lda, b.data(), ldb, 0.f, c.data(), n); },
        1);
    std::printf("  reference %8.2f GFLOP/s  speedup %6.1fx", flops / slow * 1e-9, slow / fast);
  }
  std::printf("\n");
}

void bench_attention(std::size_t batch, std::size_t seq, std::size_t heads, std::size_t hd) {
  const std::size_t width = heads * hd;
  std::mt19937 gen(2);
  std::normal_distribution<float> dist;
  std::vector<float> q(batch * seq * width), k(q.size()), v(q.size()), out(q.size());
  std::vector<float> probs(batch * heads * seq * seq);
  for (auto* vec : {&q, &k, &v})
    for (auto& x : *vec) x = dist(gen);
  const double fast = seconds_per_call(
      [&] {
#pragma omp parallel for
        for (std::size_t b = 0; b < batch; ++b)
          vbind::kernels::attention_forward<float>(
              q.data() + b * seq * width, k.data() + b * seq * width, v.data() + b * seq * width,
              seq, heads, hd, probs.data() + b * heads * seq * seq, nullptr,
              out.data() + b * seq * width);
      },
      3);
  const double slow = seconds_per_call(
      [&] {
        for (std::size_t b = 0; b < batch; ++b)
          vbind::reference::attention_forward<float>(
              q.data() + b * seq * width, k.data() + b * seq * width, v.data() + b * seq * width,
              seq, heads, hd, out.data() + b * seq * width);
      },
      1);
  std::printf("attention b=%zu seq=%zu h=%zu hd=%zu  kernel %.4fs  reference %.4fs  speedup %.1fx\n",
              batch, seq, heads, hd, fast, slow, slow / fast);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#endif
  const std::size_t rows = 64 * 67;
  bench_gemm("qkv/out proj (x W^T)", Trans::kNo, Trans::kYes, rows, 256, 256, true);
  bench_gemm("mlp up (x W1^T)", Trans::kNo, Trans::kYes, rows, 1024, 256, false);
  bench_gemm("mlp down (g W2^T)", Trans::kNo, Trans::kYes, rows, 256, 1024, false);
  bench_gemm("grad input (dy W)", Trans::kNo, Trans::kNo, rows, 256, 1024, false);
  bench_gemm("grad weight (dy^T x)", Trans::kYes, Trans::kNo, 1024, 256, rows, false);
  bench_attention(64, 67, 4, 64);
  return 0;
}
