#pragma once

#include <string>

#include "fracdim/systems.hpp"

namespace fracdim {

// Parses a system document (JSON, UTF-8). Numbers may be given as bare JSON
// numbers (binary doubles, compared with tolerance downstream) or as quoted
// strings like "1/5" or "0.25" (kept exact). Throws input_error with a field
// path on syntax or validation failure.
System parse_system(const std::string& text);

// Serializes a system back to its document form. Exact values render as
// rational strings, inexact values as JSON numbers; parse_system inverts it.
std::string render_system(const System& system);

std::string system_kind(const System& system);

}  // namespace fracdim
