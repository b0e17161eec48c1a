#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vbind/rng.hpp"

namespace vbind {

inline constexpr int kNumVars = 26;
inline constexpr int kNumDigits = 10;
inline constexpr int kNilValue = 10;  // state label for an unassigned variable

inline bool is_var(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// One assignment line: `lhs=rhs` where rhs is a digit or a variable.
struct Stmt {
  char lhs = 'a';
  char rhs = '0';

  [[nodiscard]] bool rhs_is_var() const { return is_var(rhs); }
  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct ChainLink {
  int line = 0;  // 0-based statement index
  char lhs = 'a';
  char rhs = '0';
  friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

/// Oracle facts about a program, recomputable from its statements.
struct ProgramMeta {
  int answer = 0;
  std::vector<ChainLink> query_chain;       // query definition first, root constant last
  int ref_depth = 0;                        // == query_chain.size()
  int root_line = 0;                        // 0-based line holding the root constant
  std::vector<std::vector<int>> distractors;  // line lists, leaf first, excluding query-chain lines
  friend bool operator==(const ProgramMeta&, const ProgramMeta&) = default;
};

struct Program {
  std::vector<Stmt> stmts;
  char query = 'a';
  ProgramMeta meta;

  [[nodiscard]] std::size_t n_lines() const { return stmts.size(); }
  friend bool operator==(const Program&, const Program&) = default;
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed program text. offset is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset, int line, int column)
      : std::runtime_error(what), offset_(offset), line_(line), column_(column) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  std::size_t offset_;
  int line_;
  int column_;
};

struct GenConfig {
  int n_lines = 16;
  double p_const = 0.30;
  double chain_exponent = 3.0;
  int min_depth = 1;  // depth buckets used for balancing
  int max_depth = 4;
  std::uint64_t seed = 42;

  void validate() const;
  [[nodiscard]] double p_var() const { return 1.0 - p_const; }
};

/// Token positions of the semantic slots used by interventions.
struct ChainTargets {
  std::vector<int> rhs_by_depth;  // [d-1] = position of the "Ref. Depth d RHS token"
  int query_var = 0;
  int colon = 0;
};

// ---------------------------------------------------------------------------
// Generation / analysis

Program sample_program(CounterRng& rng, const GenConfig& cfg);

/// Throws ProgramError("unbound query") when the query cannot be resolved.
ProgramMeta compute_meta(const std::vector<Stmt>& stmts, char query);
inline ProgramMeta compute_meta(const Program& p) { return compute_meta(p.stmts, p.query); }

/// Program state after executing the first `k` statements: value per variable,
/// digit 0-9 or kNilValue.
using ProgramState = std::array<std::uint8_t, kNumVars>;
ProgramState program_state_after_line(const Program& p, std::size_t k);

/// Sequential evaluation. Throws ProgramError("unbound query").
int interpret(const Program& p);

ChainTargets chain_targets(const Program& p);

// ---------------------------------------------------------------------------
// Text form: `x=y\n` per statement then `#q:` with no trailing newline.

std::string serialize(const Program& p);
/// Human display with spaces, e.g. "a = 1".
std::string display(const Program& p);
/// expected_lines < 0 accepts any statement count >= 1.
Program parse(std::string_view text, int expected_lines = -1);

// ---------------------------------------------------------------------------
// Datasets

struct SplitFractions {
  double train = 0.9;
  double validation = 0.002;
  double test = 0.098;
};

struct DatasetSplits {
  std::vector<Program> train;
  std::vector<Program> validation;
  std::vector<Program> test;
  SplitFractions fractions;
};

using ProgramFilter = std::function<bool(const Program&)>;

/// Draws programs and keeps each only while its depth bucket is below
/// target_count / n_buckets; duplicates are rejected so splits are disjoint.
DatasetSplits balance_dataset(const CounterRng& rng, const GenConfig& cfg, std::size_t target_count,
                              SplitFractions fractions = {}, const ProgramFilter& filter = {});

/// Balanced pool without splitting (acceptance order is preserved).
std::vector<Program> balanced_programs(const CounterRng& rng, const GenConfig& cfg,
                                       std::size_t target_count, const ProgramFilter& filter = {});

enum class OodKind { kLength, kHops, kHoldoutCombos };

struct OodParams {
  int n_lines = 16;
  int hops = 1;              // kHops: exact query depth
  std::size_t count = 1000;  // evaluation programs
  std::size_t train_count = 0;  // kHoldoutCombos: balanced training programs
  double holdout_fraction = 0.10;
};

struct VarDigit {
  char var;
  char digit;
  friend bool operator==(const VarDigit&, const VarDigit&) = default;
};

struct OodDataset {
  OodKind kind = OodKind::kLength;
  std::vector<Program> programs;       // evaluation set
  std::vector<Program> train;          // kHoldoutCombos only
  std::vector<VarDigit> held_out;      // kHoldoutCombos only
};

OodDataset make_ood_dataset(const CounterRng& rng, OodKind kind, const OodParams& params,
                            const GenConfig& base = {});

bool contains_pair(const Program& p, const std::vector<VarDigit>& pairs);

}  // namespace vbind
