#pragma once

// Single-file tensor container: 8-byte magic, u64 little-endian manifest
// length, JSON manifest, zero padding to a 64-byte boundary, then one blob of
// little-endian float32 tensors. Each manifest tensor entry carries
// {name, shape, dtype, offset} with offset in bytes from the blob start.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace vbind {

inline constexpr char kContainerMagic[9] = "VBTC0001";

struct TensorEntry {
  std::string name;
  std::vector<std::size_t> shape;
  std::vector<float> data;
};

struct Container {
  nlohmann::json manifest = nlohmann::json::object();  // "tensors" is filled on write
  std::vector<TensorEntry> tensors;

  [[nodiscard]] const TensorEntry& at(const std::string& name) const;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to a temporary sibling file and renames it into place.
void write_container(const std::filesystem::path& path, const Container& c);
Container read_container(const std::filesystem::path& path);

/// Atomic text write (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace vbind
