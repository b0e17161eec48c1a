#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vbind/program.hpp"

namespace vbind {

inline constexpr int kVocabSize = 40;
inline constexpr int kTokEquals = 36;
inline constexpr int kTokHash = 37;
inline constexpr int kTokColon = 38;
inline constexpr int kTokNewline = 39;

using TokenSeq = std::vector<int>;

class TokenizeError : public std::runtime_error {
 public:
  TokenizeError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Digits 0-9 -> 0-9, a-z -> 10-35, '=' 36, '#' 37, ':' 38, '\n' 39. -1 if unknown.
constexpr int token_id(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
  switch (c) {
    case '=': return kTokEquals;
    case '#': return kTokHash;
    case ':': return kTokColon;
    case '\n': return kTokNewline;
    default: return -1;
  }
}

constexpr char token_char(int id) {
  if (id >= 0 && id <= 9) return static_cast<char>('0' + id);
  if (id >= 10 && id <= 35) return static_cast<char>('a' + (id - 10));
  switch (id) {
    case kTokEquals: return '=';
    case kTokHash: return '#';
    case kTokColon: return ':';
    case kTokNewline: return '\n';
    default: return '\0';
  }
}

TokenSeq encode(std::string_view text);
std::string decode(const TokenSeq& ids);

/// Program tokens (4 per statement + 3 for the query), optionally followed by
/// the answer digit as the training target.
TokenSeq encode_program(const Program& p, bool with_answer);

/// Position of the ':' token whose next-token prediction is the answer.
inline int answer_position(std::size_t n_lines) { return 4 * static_cast<int>(n_lines) + 2; }

/// Printable token label for reports ("\n" rendered as "\\n").
std::string token_label(int id);

}  // namespace vbind
