#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "vbind/causal.hpp"
#include "vbind/model.hpp"
#include "vbind/program.hpp"

namespace vbind {

class SubspaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LabelKind { kDigit, kVariable };
std::string to_string(LabelKind k);
LabelKind parse_label_kind(const std::string& s);

/// Residual vectors at chain RHS tokens with their labels.
struct Activations {
  Eigen::MatrixXd x;              // rows = samples, cols = d_model
  std::vector<int> digit;         // value carried by the line (root constant of its chain)
  std::vector<int> variable;      // LHS of the line, 0..25
  std::vector<std::size_t> program;  // index into the program list
  std::vector<int> depth;         // reference depth of the line's RHS token
};

/// Block input to `layer` at every query-chain RHS token of each program.
Activations collect_activations(const Params<float>& w, const std::vector<Program>& programs, int layer);

/// Programs whose answer is not on line 1.
std::vector<Program> exclude_line1(const std::vector<Program>& programs);

struct PcaBasis {
  Eigen::VectorXd mean;        // d
  Eigen::MatrixXd components;  // k x d, orthonormal rows, descending variance
  Eigen::VectorXd variance;    // k
  double total_variance = 0.0;
  bool truncated = false;      // fewer than the requested components were available

  [[nodiscard]] std::size_t k() const { return static_cast<std::size_t>(components.rows()); }
  [[nodiscard]] Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
};

/// Top-k principal directions. Each direction's largest-magnitude coordinate
/// is positive. Throws SubspaceError("rank deficient") on zero-variance data;
/// returns fewer components (truncated = true) when the rank is below k.
PcaBasis fit_pca(const Eigen::MatrixXd& x, std::size_t k);

struct L1Options {
  std::size_t n_lambdas = 12;
  double lambda_min_ratio = 1e-4;
  double tolerance = 1e-6;      // convergence on the relative coefficient change
  std::size_t max_iter = 5000;
  double select_tol = 1e-6;     // coefficient column norm defining "selected"
  double held_out = 0.2;
  double accuracy_slack = 0.02;
  std::uint64_t seed = 11;
};

struct L1Fit {
  double lambda = 0.0;
  std::vector<std::size_t> selected;  // feature indices
  double held_out_accuracy = 0.0;
  std::size_t iterations = 0;
};

struct L1Result {
  std::vector<L1Fit> path;      // one entry per lambda, strongest first
  std::size_t chosen = 0;       // index into path
  double best_accuracy = 0.0;
  Eigen::MatrixXd weights;      // classes x features, on standardized features
  Eigen::VectorXd intercept;    // classes
  [[nodiscard]] const L1Fit& fit() const { return path[chosen]; }
};

/// L1-penalised multinomial logistic regression over a log-spaced penalty
/// path. Picks the sparsest fit whose held-out accuracy is within
/// accuracy_slack of the best on the path.
L1Result fit_l1_classifier(const Eigen::MatrixXd& features, const std::vector<int>& labels, int n_classes,
                           const L1Options& opt = {});

struct SubspaceBasis {
  LabelKind kind = LabelKind::kDigit;
  int layer = 1;
  PcaBasis pca;
  std::vector<std::size_t> selected;
  std::string weights_fingerprint;  // of the checkpoint the basis was fit on
  std::int64_t step = 0;
  nlohmann::json report = nlohmann::json::object();

  /// Selected directions as rows, flattened row-major (rank x d).
  [[nodiscard]] std::vector<float> directions() const;
};

/// FNV-1a over the raw parameter bytes.
std::string weights_fingerprint(const Params<float>& w);

struct SubspaceOptions {
  int layer = 0;        // 0 = default tap for the model depth
  std::size_t k = 0;    // 0 = d_model / 2
  L1Options l1;
};

int default_tap_layer(int n_layers);

SubspaceBasis fit_subspace(const Params<float>& w, std::int64_t step, const std::vector<Program>& programs,
                           LabelKind kind, const SubspaceOptions& opt = {});

void save_subspace(const std::filesystem::path& path, const SubspaceBasis& b);
SubspaceBasis load_subspace(const std::filesystem::path& path);

/// Swaps only the basis component at block_input(layer) of every query-chain
/// RHS token. Throws SubspaceError when the basis came from other weights.
InterventionReport subspace_intervention(const Params<float>& w, const CounterfactualPair& pair,
                                         const SubspaceBasis& basis);

struct SubspaceScore {
  double success_rate = 0.0;    // patched prediction == new root
  double no_patch_flip = 0.0;   // unpatched prediction already == new root
  std::size_t n = 0;
};

SubspaceScore score_subspace(const Params<float>& w, const std::vector<CounterfactualPair>& pairs,
                             const SubspaceBasis& basis);

// ---------------------------------------------------------------------------
// 2-D projection

struct Projection {
  std::vector<double> x, y;
  std::vector<int> label;
  std::string kind;  // "digit" or "variable"
  std::int64_t step = 0;
  double silhouette = 0.0;  // in the 2-D projection
  double knn_purity = 0.0;  // in the selected subspace
  std::string method = "pca-within-subspace";
};

/// Silhouette coefficient (Euclidean). Single-label input gives 0.
double silhouette(const Eigen::MatrixXd& points, const std::vector<int>& labels);
/// Mean share of each point's k nearest neighbours that carry its label.
double knn_purity(const Eigen::MatrixXd& points, const std::vector<int>& labels, std::size_t k = 10);

Projection project_2d(const SubspaceBasis& basis, const Activations& acts);
void to_json(nlohmann::json& j, const Projection& p);

// ---------------------------------------------------------------------------
// Program-state probes

struct ProbeOptions {
  double l2 = 1e-4;
  double tolerance = 1e-6;
  std::size_t max_iter = 500;  // L-BFGS iterations
  double held_out = 0.2;
  std::uint64_t seed = 13;
};

struct ProbeModel {
  int layer = 0;
  Eigen::MatrixXd weights;    // (26 * 11) x features, on standardized features
  Eigen::VectorXd bias;       // 26 * 11
  Eigen::VectorXd mean, scale;  // feature standardization
  std::size_t iterations = 0;
  bool converged = false;
};

struct ProbeMetrics {
  int layer = 0;
  double state_accuracy = 0.0;     // all 26 slots right
  double variable_accuracy = 0.0;  // assigned slots only
  std::size_t n_test = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Features at every newline position with the oracle state after that line.
struct StateDataset {
  Eigen::MatrixXd x;
  std::vector<ProgramState> state;
  std::vector<std::size_t> program;
};

StateDataset collect_states(const Params<float>& w, const std::vector<Program>& programs, int layer);
/// One-hot oracle states as features (26 * 11 columns).
StateDataset identity_states(const std::vector<Program>& programs);

ProbeModel train_probe(const StateDataset& train, const ProbeOptions& opt = {});
ProbeMetrics evaluate_probe(const ProbeModel& m, const StateDataset& test);
/// Program-level split, fit, and held-out metrics.
ProbeMetrics probe(const StateDataset& data, const ProbeOptions& opt = {});

void to_json(nlohmann::json& j, const ProbeMetrics& m);

}  // namespace vbind
