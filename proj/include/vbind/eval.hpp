#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "vbind/model.hpp"
#include "vbind/program.hpp"

namespace vbind {

/// Greedy next-token prediction at the answer position for each program.
/// Programs of different lengths may be mixed.
std::vector<int> predict_answers(const Params<float>& w, const std::vector<Program>& programs,
                                 std::size_t batch = 256);

double accuracy(const std::vector<int>& predictions, const std::vector<Program>& programs);

struct Bucket {
  int key = 0;
  std::size_t n = 0;
  std::size_t correct = 0;
  [[nodiscard]] double accuracy() const { return n ? static_cast<double>(correct) / static_cast<double>(n) : 0.0; }
};

struct EvalReport {
  std::int64_t step = 0;
  std::size_t n = 0;
  std::size_t correct = 0;
  std::vector<Bucket> by_answer_line;  // key = 1-based line of the root constant
  std::vector<Bucket> by_hops;         // key = reference depth
  std::array<double, 10> digit_distribution{};  // share of argmax predictions per digit
  double other_mass = 0.0;                      // predictions that are not digits

  [[nodiscard]] double accuracy() const { return n ? static_cast<double>(correct) / static_cast<double>(n) : 0.0; }
};

EvalReport evaluate(const std::vector<int>& predictions, const std::vector<Program>& programs,
                    std::int64_t step = 0);
EvalReport evaluate(const Params<float>& w, const std::vector<Program>& programs, std::int64_t step = 0);

void to_json(nlohmann::json& j, const Bucket& b);
void to_json(nlohmann::json& j, const EvalReport& r);

// ---------------------------------------------------------------------------
// Heuristic baselines from oracle metadata alone.

/// Constant on line k (1-based) if that line assigns a digit, otherwise -1.
int line_k_prediction(const Program& p, int k);
/// Root constant of the deepest chain in the program; ties go to the chain
/// whose tip is defined latest.
int longest_chain_prediction(const Program& p);

struct BaselineReport {
  double line1_acc = 0.0;
  double line2_acc = 0.0;
  double longest_chain_acc = 0.0;
};

BaselineReport heuristic_baselines(const std::vector<Program>& programs);
void to_json(nlohmann::json& j, const BaselineReport& r);

// ---------------------------------------------------------------------------
// Phase transitions in an accuracy curve.

struct PhaseOptions {
  int window = 5;            // checkpoints
  double threshold = 10.0;   // accuracy points (curve values are fractions in [0, 1])
};

class PhaseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Centered moving average over `window` points, truncated at the edges.
std::vector<double> smooth(const std::vector<double>& values, int window);

/// Steps where the smoothed accuracy rises by more than `threshold` points
/// across `window` checkpoints. Each contiguous run of rising windows is one
/// transition, reported at the steepest single-checkpoint rise inside it.
std::vector<std::int64_t> detect_phases(const std::vector<std::int64_t>& steps, const std::vector<double>& acc,
                                        const PhaseOptions& opt = {});

// ---------------------------------------------------------------------------
// Out-of-distribution generalization.

struct GeneralizationOptions {
  int min_length = 2;
  int max_length = 25;
  int min_hops = 1;
  int max_hops = 13;
  int hop_lines = 16;
  std::size_t per_setting = 200;
  std::uint64_t seed = 7;
};

struct GeneralizationCell {
  std::string set;  // "length" or "hops"
  int length = 0;
  int hops = 0;
  int answer_line = 0;  // 1, 2, or 3 meaning "line 3 or later"
  std::size_t n = 0;
  std::size_t correct = 0;
};

struct GeneralizationReport {
  std::vector<GeneralizationCell> cells;
};

GeneralizationReport generalization_suite(const Params<float>& w, const GeneralizationOptions& opt = {});
void to_json(nlohmann::json& j, const GeneralizationCell& c);
void to_json(nlohmann::json& j, const GeneralizationReport& r);

}  // namespace vbind
