#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "vbind/model.hpp"
#include "vbind/program.hpp"

namespace vbind {

struct TrainConfig {
  ModelConfig model = ModelConfig::desk();
  int epochs = 3;
  int batch = 64;
  double base_lr = 1e-3;
  double beta1 = 0.95;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double weight_decay = 1e-4;
  int warmup = 750;
  std::vector<std::uint64_t> seeds{42, 256, 416, 512, 1024, 3407};
  // Dense checkpoints early so phase transitions are visible.
  int ckpt_dense_every = 200;
  int ckpt_dense_until = 2000;
  int ckpt_sparse_every = 2000;
  int eval_every = 100;
  /// Stop after this many steps (0 = full schedule). The schedule still spans
  /// the full run so a stopped run can be resumed.
  std::int64_t max_steps = 0;

  static TrainConfig paper();
  static TrainConfig desk();

  [[nodiscard]] std::int64_t steps_per_epoch(std::size_t n_train) const;
  [[nodiscard]] std::int64_t total_steps(std::size_t n_train) const;
  /// Throws std::invalid_argument.
  void validate(std::int64_t total) const;
  [[nodiscard]] bool is_checkpoint_step(std::int64_t step, std::int64_t total) const;
};

void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);

/// FNV-1a over the canonical JSON of everything except the seed list.
std::string config_hash(const TrainConfig& c);

/// Linear warmup from 0 to base_lr over `warmup` steps, then linear decay to
/// 0 at `total`. Update number s (1-based) uses learning_rate(s).
double learning_rate(const TrainConfig& c, std::int64_t step, std::int64_t total);

struct AdamWHyper {
  double lr = 0.0;
  double beta1 = 0.95;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
};

/// One decoupled-weight-decay Adam update; t is the 1-based update count.
template <class T>
void adamw_update(std::span<T> w, std::span<const T> g, std::span<T> m, std::span<T> v, std::int64_t t,
                  const AdamWHyper& h);

struct TrainState {
  Params<float> weights;
  Params<float> m;
  Params<float> v;
  std::int64_t step = 0;
  std::uint64_t seed = 0;
};

void save_train_state(const std::filesystem::path& path, const TrainState& s, const TrainConfig& cfg);
TrainState load_train_state(const std::filesystem::path& path);

class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurvePoint {
  std::int64_t step = 0;
  double loss = 0.0;     // mean training loss since the previous point
  double val_acc = 0.0;  // in [0, 1]
};

std::string curve_to_csv(const std::vector<CurvePoint>& curve);
std::vector<CurvePoint> curve_from_csv(const std::string& text);

/// Loss-decrease smoke check over the first `windows` logged loss means
/// (each covers eval_every steps): a window violates when its loss exceeds
/// the previous one. Passes when violations <= max_violation_share * windows.
struct LossSmoke {
  std::size_t windows = 0;
  std::size_t violations = 0;
  bool ok = false;
};
LossSmoke loss_smoke(const std::vector<CurvePoint>& curve, std::size_t windows = 20,
                     double max_violation_share = 0.05);

struct TrainResult {
  std::vector<CurvePoint> curve;
  std::vector<std::int64_t> checkpoints;
  std::int64_t total_steps = 0;
  std::int64_t final_step = 0;
};

struct TrainOptions {
  bool resume = true;
  std::ostream* log = nullptr;
};

/// Trains one seed into `<out_dir>/run-<seed>/`: step-<n>.ckpt files,
/// manifest.json, curve.csv and a resume state.
TrainResult train(const TrainConfig& cfg, std::uint64_t seed, const std::vector<Program>& train_set,
                  const std::vector<Program>& val_set, const std::filesystem::path& out_dir,
                  const TrainOptions& opt = {});

std::filesystem::path run_dir(const std::filesystem::path& out_dir, std::uint64_t seed);
std::filesystem::path checkpoint_path(const std::filesystem::path& run, std::int64_t step);
/// Checkpoint steps found in a run directory, ascending.
std::vector<std::int64_t> list_checkpoints(const std::filesystem::path& run);

}  // namespace vbind
