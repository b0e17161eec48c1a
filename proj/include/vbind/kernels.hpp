#pragma once

#include <cstddef>
#include <span>

namespace vbind::kernels {

enum class Trans { kNo, kYes };

/// Row-major GEMM: C = alpha * op(A) * op(B) + beta * C.
///
/// op(A) is M x K and op(B) is K x N. Each output element is reduced over k
/// in a fixed order that depends only on K, so a row of C is bitwise
/// independent of how many other rows are in the batch. Interventions rely
/// on this when comparing batched and single-program forward passes.
template <class T>
void gemm(Trans trans_a, Trans trans_b, std::size_t m, std::size_t n, std::size_t k, T alpha,
          const T* a, std::size_t lda, const T* b, std::size_t ldb, T beta, T* c,
          std::size_t ldc);

/// y[r] = x[r] W^T + bias for every row r. W is [out, in] (PyTorch layout).
template <class T>
void linear_forward(const T* x, std::size_t rows, std::size_t in, const T* w, const T* bias,
                    std::size_t out, T* y);

/// Accumulates weight/bias gradients and writes (or, with accumulate_dx, adds
/// into) dx when it is non-null.
template <class T>
void linear_backward(const T* x, const T* dy, std::size_t rows, std::size_t in, const T* w,
                     std::size_t out, T* dw, T* dbias, T* dx, bool accumulate_dx = false);

/// Per-row LayerNorm. mean/rstd (length rows) are saved for the backward pass.
template <class T>
void layernorm_forward(const T* x, std::size_t rows, std::size_t dim, const T* gamma,
                       const T* beta, T eps, T* y, T* mean, T* rstd);

/// dx is accumulated (+=), dgamma/dbeta are accumulated.
template <class T>
void layernorm_backward(const T* x, const T* dy, std::size_t rows, std::size_t dim,
                        const T* gamma, const T* mean, const T* rstd, T* dx, T* dgamma,
                        T* dbeta);

/// tanh-approximated GELU.
template <class T>
void gelu_forward(const T* x, std::size_t n, T* y);
template <class T>
void gelu_backward(const T* x, const T* dy, std::size_t n, T* dx);

/// Rotates consecutive (even, odd) pairs of each head slice by position-dependent
/// angles. x is [seq, n_heads * head_dim] for one sequence. inverse=true applies
/// the transpose rotation (used for gradients).
template <class T>
void rope_apply(T* x, std::size_t seq, std::size_t n_heads, std::size_t head_dim, T base,
                bool inverse);

/// Causal multi-head attention for one sequence.
///
/// q, k, v, out are [seq, n_heads * head_dim]. probs receives [n_heads, seq, seq]
/// softmax weights before dropout; drop_mask (optional, same shape) holds the
/// dropout scale (0 or 1/(1-p)) applied to probs before mixing values.
template <class T>
void attention_forward(const T* q, const T* k, const T* v, std::size_t seq,
                       std::size_t n_heads, std::size_t head_dim, T* probs,
                       const T* drop_mask, T* out);

/// Accumulates dq, dk, dv for one sequence.
template <class T>
void attention_backward(const T* q, const T* k, const T* v, const T* probs,
                        const T* drop_mask, const T* dout, std::size_t seq,
                        std::size_t n_heads, std::size_t head_dim, T* dq, T* dk, T* dv);

/// Row-wise log-softmax cross entropy. Returns the summed loss over rows with
/// target >= 0 and, when dlogits is non-null, writes (softmax - onehot) * scale.
template <class T>
double cross_entropy(const T* logits, std::size_t rows, std::size_t vocab, const int* targets,
                     T scale, T* dlogits);

}  // namespace vbind::kernels
