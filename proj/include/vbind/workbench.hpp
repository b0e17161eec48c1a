#pragma once
// Request handling shared by the CLI and the HTTP service. Every handler maps
// a JSON request to a JSON response, so both front ends emit identical bytes.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "vbind/causal.hpp"
#include "vbind/serialize.hpp"
#include "vbind/subspace.hpp"

namespace vbind {

inline constexpr int kApiVersion = 1;

/// Error with an HTTP status: 400 malformed input, 404 unknown resource,
/// 422 well-formed but infeasible request.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, const std::string& what, nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(what), status_(status), detail_(std::move(detail)) {}
  [[nodiscard]] int status() const { return status_; }
  [[nodiscard]] const nlohmann::json& detail() const { return detail_; }

 private:
  int status_;
  nlohmann::json detail_;
};

struct CheckpointInfo {
  std::string id;  // "run-<seed>/step-<n>"
  std::filesystem::path path;
  std::uint64_t seed = 0;
  std::int64_t step = 0;
};

/// Read-only view of a runs directory. Loaded checkpoints are cached and
/// never mutated.
class CheckpointRegistry {
 public:
  explicit CheckpointRegistry(std::filesystem::path root = {});

  [[nodiscard]] const std::filesystem::path& root() const { return root_; }
  [[nodiscard]] std::vector<CheckpointInfo> list() const;
  /// Run directories ("run-<seed>") under the root.
  [[nodiscard]] std::vector<std::string> runs() const;
  /// Accepts an id, "<run>/final", or a path to a checkpoint file. Throws ApiError(404).
  [[nodiscard]] std::filesystem::path resolve(const std::string& ref) const;
  std::shared_ptr<const Checkpoint> load(const std::string& ref);

 private:
  std::filesystem::path root_;
  std::mutex mu_;
  std::map<std::filesystem::path, std::shared_ptr<const Checkpoint>> cache_;
};

/// Program with oracle metadata, tokens and intervention slots.
nlohmann::json program_json(const Program& p);
/// Parses program text; ParseError and unbound queries become ApiError.
Program parse_program_text(const std::string& text);

// Handlers. Requests are the JSON bodies documented in the README.
nlohmann::json list_checkpoints_response(const CheckpointRegistry& reg);
nlohmann::json sample_programs(const nlohmann::json& req);
nlohmann::json parse_program(const nlohmann::json& req);
nlohmann::json run_program(CheckpointRegistry& reg, const nlohmann::json& req);

enum class InterveneKind { kResidual, kHead, kSubspace };
InterveneKind parse_intervene_kind(const std::string& s);
nlohmann::json intervene(CheckpointRegistry& reg, InterveneKind kind, const nlohmann::json& req);

/// Sweep with the job's checkpoint resolved through the registry; the job
/// itself is echoed unchanged in the result.
Heatmap run_sweep(CheckpointRegistry& reg, const SweepJob& job);
std::string run_sweep_text(CheckpointRegistry& reg, const SweepJob& job);

struct TrajectoryRequest {
  std::string run;  // "run-<seed>"
  PairSource pairs;
};
TrajectoryRequest trajectory_request(const nlohmann::json& query);
nlohmann::json trajectory(CheckpointRegistry& reg, const TrajectoryRequest& req);

struct ProjectionRequest {
  std::string checkpoint;
  std::string basis_checkpoint;  // fit the basis here; empty = same checkpoint
  LabelKind kind = LabelKind::kDigit;
  int layer = 0;
  std::size_t k = 0;
  std::size_t fit_count = 1000;   // programs used to fit the basis
  std::size_t count = 300;        // programs projected
  std::uint64_t seed = 1;
};
ProjectionRequest projection_request(const nlohmann::json& query);
SubspaceBasis fit_basis(CheckpointRegistry& reg, const ProjectionRequest& req);
nlohmann::json projection(CheckpointRegistry& reg, const ProjectionRequest& req);

}  // namespace vbind
