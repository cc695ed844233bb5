#pragma once

#include <string>
#include <string_view>

#include "strata/types.hpp"

namespace strata {

// Parse grouped counts from either a JSON document {"g": [g1, g2, g3, g4]}
// (other keys are ignored) or a CSV with header `z,d,count` holding one row
// per (z, d) cell.  Rejects malformed input, negative counts, missing or
// duplicate cells, and all-zero data.
GroupedData parse_input(std::string_view bytes);

GroupedData load_grouped(const std::string& path);

// Single-line JSON object that parse_input accepts back unchanged.
std::string emit_grouped_json(const GroupedData& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace strata
