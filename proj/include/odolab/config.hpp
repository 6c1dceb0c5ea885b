#pragma once

#include "odolab/families.hpp"

#include <string>

namespace odolab {

/// Reads a JSON config from a file path, or parses the argument itself when it starts with '{'.
json load_config(const std::string& path_or_json);

/// Writes text to dir/name, creating dir. Returns the full path.
std::string write_report(const std::string& dir, const std::string& name, const std::string& text);

}  // namespace odolab
