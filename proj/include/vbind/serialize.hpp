#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "vbind/container.hpp"
#include "vbind/model.hpp"
#include "vbind/program.hpp"

namespace vbind {

void to_json(nlohmann::json& j, const ModelConfig& c);
void from_json(const nlohmann::json& j, ModelConfig& c);
void to_json(nlohmann::json& j, const GenConfig& c);
void from_json(const nlohmann::json& j, GenConfig& c);

// ---------------------------------------------------------------------------
// Datasets: one JSON object per line, {text, answer, ref_depth, root_line, query}.
// root_line is 1-based in files.

nlohmann::json program_record(const Program& p);
/// Parses `text` and checks the stored oracle fields against it.
Program program_from_record(const nlohmann::json& j);

std::string to_jsonl(const std::vector<Program>& programs);
void write_jsonl(const std::filesystem::path& path, const std::vector<Program>& programs);
std::vector<Program> read_jsonl(const std::filesystem::path& path);

/// Writes train/validation/test JSONL files plus manifest.json into `dir`.
void write_dataset(const std::filesystem::path& dir, const DatasetSplits& splits, const GenConfig& cfg,
                   std::size_t target_count);
DatasetSplits read_dataset(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Checkpoints

struct Checkpoint {
  Params<float> params;
  std::int64_t step = 0;
  std::uint64_t seed = 0;
  nlohmann::json train_config = nlohmann::json::object();
};

Container to_container(const Checkpoint& ck);
Checkpoint checkpoint_from_container(const Container& c);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace vbind
