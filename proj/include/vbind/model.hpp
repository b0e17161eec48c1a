#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbind/rng.hpp"

namespace vbind {

/// Decoder-only Transformer hyperparameters.
struct ModelConfig {
  std::string profile = "desk";
  int n_layers = 6;
  int n_heads = 4;
  int head_dim = 64;
  int d_model = 256;
  int d_mlp = 1024;
  int vocab = 40;
  double dropout = 0.1;
  double rope_base = 10000.0;
  double ln_eps = 1e-5;

  static ModelConfig paper();
  static ModelConfig desk();

  /// Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;
  [[nodiscard]] std::size_t parameter_count() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct TensorInfo {
  std::string name;
  std::vector<std::size_t> shape;
  std::size_t offset = 0;  // in elements
  std::size_t size = 0;
};

/// Offsets of one block's tensors inside the flat parameter buffer.
struct BlockOffsets {
  std::size_t ln1_g, ln1_b;
  std::size_t wq, bq, wk, bk, wv, bv, wo, bo;
  std::size_t ln2_g, ln2_b;
  std::size_t w1, b1, w2, b2;
};

struct ParamLayout {
  std::size_t tok_emb = 0;
  std::vector<BlockOffsets> blocks;
  std::size_t lnf_g = 0, lnf_b = 0, unembed = 0;
  std::size_t total = 0;
  std::vector<TensorInfo> tensors;

  static ParamLayout build(const ModelConfig& cfg);
};

/// All model parameters in one contiguous buffer. The same type holds
/// gradients and optimizer moments.
template <class T>
struct Params {
  ModelConfig config;
  ParamLayout layout;
  std::vector<T> data;

  Params() = default;
  explicit Params(const ModelConfig& cfg)
      : config(cfg), layout(ParamLayout::build(cfg)), data(layout.total, T(0)) {}

  T* at(std::size_t offset) { return data.data() + offset; }
  const T* at(std::size_t offset) const { return data.data() + offset; }
  std::span<T> tensor(const std::string& name);
  std::span<const T> tensor(const std::string& name) const;
  void zero() { std::fill(data.begin(), data.end(), T(0)); }

  template <class U>
  Params<U> cast() const {
    Params<U> out(config);
    for (std::size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
    return out;
  }
};

/// Truncated normal (sigma 0.02, cut at 2 sigma) for embeddings and projections,
/// zero biases and LayerNorm shifts, unit LayerNorm scales.
template <class T>
void init_params(Params<T>& p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Intervention sites

enum class SiteKind { kBlockInput, kHeadOut, kAttnOut };

/// Layers are 1-based: block_input(1) is the embedding output and
/// block_input(n_layers + 1) the final residual before the last LayerNorm.
/// Heads are 0-based, so "Y.X" is head X of layer Y.
struct Site {
  SiteKind kind = SiteKind::kBlockInput;
  int layer = 1;
  int head = 0;
  int token = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

std::string to_string(const Site& s);
/// Accepts `block_input(layer=3, token=10)`, `head_out(layer=2, head=1, token=5)`,
/// `attn_out(layer=2, token=5)`. Throws std::invalid_argument.
Site parse_site(const std::string& text);
void validate_site(const Site& s, const ModelConfig& cfg, std::size_t seq);

/// Overwrites the activation at `site` for sequence `batch` with `value`.
/// With a basis (rows are orthonormal directions, `rank` of them), only the
/// component inside their span is replaced: x += U^T U (value - x).
template <class T>
struct Patch {
  Site site;
  std::size_t batch = 0;
  std::vector<T> value;
  std::span<const T> basis = {};
  std::size_t rank = 0;
};

enum class Mode { kEval, kTrain };

template <class T>
struct ForwardOptions {
  Mode mode = Mode::kEval;
  std::uint64_t dropout_seed = 0;
  bool capture_heads = false;
  std::span<const Patch<T>> patches = {};
  /// Resume at this block using `start_resid` ([batch*seq, d_model]) as its input.
  int start_layer = 1;
  const T* start_resid = nullptr;
};

/// Buffers for one forward/backward pass over a [batch, seq] token block.
/// Intermediates are kept for the backward pass and double as the
/// activation cache for interventions.
template <class T>
struct Workspace {
  struct Block {
    std::vector<T> x_in, ln1, mean1, rstd1, q, k, v, probs, attn_mask, o, attn_out, drop1;
    std::vector<T> x_mid, ln2, mean2, rstd2, h_pre, h_act, mlp_out, drop2;
    std::vector<T> head_out;  // [n_heads][rows][d], only when captured
  };

  std::size_t batch = 0, seq = 0;
  bool train = false;
  std::vector<int> tokens;
  std::vector<T> emb_mask;
  std::vector<Block> blocks;
  std::vector<T> x_final, lnf, mean_f, rstd_f, logits;
  std::vector<T> head_tmp;
  // backward scratch
  std::vector<T> dx, dy, dh, dh2, dln, dq, dk, dv, dout, dz;

  [[nodiscard]] std::size_t rows() const { return batch * seq; }
  /// Residual vector entering block `layer` (1-based; n_layers+1 = final residual).
  std::span<const T> block_input(int layer, std::size_t b, std::size_t t) const;
  /// One head's contribution to the residual stream (requires capture_heads).
  std::span<const T> head_out(int layer, int head, std::size_t b, std::size_t t) const;
  std::span<const T> attn_out(int layer, std::size_t b, std::size_t t) const;
  std::span<const T> logits_at(std::size_t b, std::size_t t) const;

  int n_layers = 0, n_heads = 0, d_model = 0, vocab = 0;
};

/// Runs the model on `tokens` ([batch, seq], row-major) and fills `ws`.
template <class T>
void forward(const Params<T>& w, std::span<const int> tokens, std::size_t batch, std::size_t seq,
             const ForwardOptions<T>& opt, Workspace<T>& ws);

/// Accumulates parameter gradients into `grads` given dL/dlogits
/// ([batch*seq, vocab]). Requires the preceding forward on the same workspace
/// without patches.
template <class T>
void backward(const Params<T>& w, Workspace<T>& ws, std::span<const T> dlogits, Params<T>& grads);

/// Mean next-token cross entropy over every predictable position of full
/// sequences ([batch, seq_full]); the model sees the first seq_full-1 tokens.
/// Writes dL/dlogits when dlogits is non-empty.
template <class T>
double lm_loss(const Workspace<T>& ws, std::span<const int> full_tokens, std::span<T> dlogits);

}  // namespace vbind
