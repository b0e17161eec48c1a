#pragma once

#include <string_view>

#include "json.hpp"

namespace vbind {

/// Accepts a JSON object or `key = value` lines ('#' starts a comment).
/// Dotted keys nest: `model.n_layers = 4`. Values are parsed as JSON when
/// possible and kept as strings otherwise.
nlohmann::json parse_config_text(std::string_view text);

/// Applies one `key=value` override in the same syntax.
void apply_override(nlohmann::json& cfg, std::string_view assignment);

}  // namespace vbind
