#pragma once

// Serial, unblocked versions of the hot kernels. Kept for tests and the
// kernel benchmark; the model never calls these.

#include <cstddef>

#include "vbind/kernels.hpp"

namespace vbind::reference {

using kernels::Trans;

template <class T>
void gemm(Trans trans_a, Trans trans_b, std::size_t m, std::size_t n, std::size_t k, T alpha,
          const T* a, std::size_t lda, const T* b, std::size_t ldb, T beta, T* c,
          std::size_t ldc);

template <class T>
void layernorm_forward(const T* x, std::size_t rows, std::size_t dim, const T* gamma,
                       const T* beta, T eps, T* y);

template <class T>
void attention_forward(const T* q, const T* k, const T* v, std::size_t seq,
                       std::size_t n_heads, std::size_t head_dim, T* out);

}  // namespace vbind::reference
