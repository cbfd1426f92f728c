#pragma once

#include <json.hpp>

#include <string>

namespace exlab {

/// The preset file: $EXLAB_PRESETS if set, else config/presets.json in the
/// source tree.
std::string presets_path();

/// Parsed preset file (cached after the first call).
const nlohmann::json & presets();

/// One named preset ("paper" or "desk"). Throws std::invalid_argument for
/// an unknown name.
const nlohmann::json & preset(const std::string & name);

} // namespace exlab
