#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "vbind/model.hpp"
#include "vbind/program.hpp"

namespace vbind {

/// Base program and a copy whose root constant was swapped for another digit.
struct CounterfactualPair {
  Program base;
  Program cf;
  int old_root = 0;
  int new_root = 0;
};

/// New root drawn uniformly from the nine other digits.
CounterfactualPair make_counterfactual(const Program& p, CounterRng& rng);
/// One pair per program, program i drawing from rng.split(i).
std::vector<CounterfactualPair> make_pairs(const std::vector<Program>& programs, const CounterRng& rng);

/// Sites to overwrite with counterfactual activations. With a basis
/// (`rank` orthonormal rows of width d_model) only that subspace is swapped.
struct InterventionSpec {
  std::vector<Site> sites;
  std::vector<float> basis;
  std::size_t rank = 0;
};

struct InterventionReport {
  std::vector<float> base_logits;     // at the answer position
  std::vector<float> patched_logits;  // at the answer position
  double logit_diff = 0.0;            // patched[new_root] - base[new_root]
  int prediction = -1;                // argmax of patched logits
  bool success = false;               // prediction == new_root
};

InterventionReport run_intervention(const Params<float>& w, const CounterfactualPair& pair,
                                    const InterventionSpec& spec);

/// Full forward of `base` with `sites` overwritten by values taken from a
/// cached run of `source`. Returns all logits ([seq, vocab]).
std::vector<float> patched_logits(const Params<float>& w, const Program& base, const Program& source,
                                  const InterventionSpec& spec);

// ---------------------------------------------------------------------------
// Sweeps

enum class GridKind { kFull, kChain };
enum class SweepSite { kResidual, kHead };

/// Semantic columns of the chain-target grid.
inline constexpr int kNumSlots = 6;
std::string slot_name(int slot);  // depth1_rhs .. depth4_rhs, query_var, colon
/// Token position of a slot in `p`, or nullopt when the chain is too short.
std::optional<int> slot_position(const Program& p, int slot);

struct HeatCell {
  double logit_diff_norm = 0.0;
  double success_rate = 0.0;
  std::size_t n = 0;
};

struct Heatmap {
  std::string site;  // "block_input" or "head_out"
  std::string grid;  // "full" or "chain"
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::vector<HeatCell>> cells;  // [row][col]
  std::size_t n_pairs = 0;
};

struct SweepOptions {
  GridKind grid = GridKind::kChain;
  SweepSite site = SweepSite::kResidual;
  std::size_t batch = 64;
};

/// Per-cell means over pairs. Each pair's logit differences are divided by
/// the largest absolute difference that pair reaches anywhere in the grid.
/// Residual rows are block_input layers 1..n_layers+1; head rows are "Y.X".
Heatmap sweep(const Params<float>& w, const std::vector<CounterfactualPair>& pairs, const SweepOptions& opt = {});

/// Head grid shorthand.
Heatmap head_sweep(const Params<float>& w, const std::vector<CounterfactualPair>& pairs,
                   GridKind grid = GridKind::kChain);

/// Rows whose mean success rate is below `min_success` in every column are dropped.
Heatmap threshold_rows(const Heatmap& h, double min_success = 0.05);

void to_json(nlohmann::json& j, const HeatCell& c);
void to_json(nlohmann::json& j, const Heatmap& h);
std::string heatmap_csv(const Heatmap& h);

// ---------------------------------------------------------------------------
// Key sites across checkpoints

/// Maps a block-input layer of the 12-layer reference model onto a model
/// with `n_layers` blocks, keeping the fraction of blocks already applied.
int map_layer(int reference_layer, int n_layers, int reference_blocks = 12);

struct KeySite {
  std::string name;  // e.g. "colon@L2"
  int slot = 0;
  int layer = 1;
};

/// Colon at early layer, depth-d RHS at mid layers, query variable late.
std::vector<KeySite> default_key_sites(int n_layers);

/// Program subsets of the trajectory panels: hops=1..4 with the answer after
/// line 2, answer on line 1, answer on line 2.
std::vector<std::string> trajectory_panels();
bool in_panel(const Program& p, const std::string& panel);

struct TrajectoryPoint {
  std::int64_t step = 0;
  std::string panel;
  std::string site;
  double success_rate = 0.0;
  std::size_t n = 0;
};

/// Success rate of each key site for each panel at one checkpoint.
std::vector<TrajectoryPoint> trajectory_point(const Params<float>& w, std::int64_t step,
                                              const std::vector<CounterfactualPair>& pairs,
                                              const std::vector<KeySite>& sites);

void to_json(nlohmann::json& j, const TrajectoryPoint& p);

// ---------------------------------------------------------------------------
// Declarative sweep job shared by the CLI and the HTTP service.

struct PairSource {
  std::string dataset;            // JSONL file; empty = sample fresh programs
  std::uint64_t program_seed = 1;  // when sampling
  std::size_t count = 100;
  std::uint64_t pair_seed = 7;
  int min_answer_line = 1;  // 1-based, inclusive
  int max_answer_line = 0;  // 0 = no limit
  int hops = 0;             // 0 = any depth
};

struct SweepJob {
  std::string checkpoint;
  PairSource pairs;
  GridKind grid = GridKind::kChain;
  SweepSite site = SweepSite::kResidual;
};

void from_json(const nlohmann::json& j, PairSource& s);
void to_json(nlohmann::json& j, const PairSource& s);
void from_json(const nlohmann::json& j, SweepJob& s);
void to_json(nlohmann::json& j, const SweepJob& s);

std::vector<CounterfactualPair> build_pairs(const PairSource& src);
Heatmap run_sweep_job(const SweepJob& job);
/// Canonical serialized form of a job result; both front ends emit exactly this.
std::string sweep_result_text(const SweepJob& job, const Heatmap& h);

}  // namespace vbind
