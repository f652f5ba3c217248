#pragma once

#include <string>

#include "p6c/precoloring.hpp"

namespace p6c {

// Instance JSON:
//   {"graph": "<edge-list text>", "seed": [ids], "x0": [ids], "x": [ids],
//    "ystar": [ids], "f": {"id": color}}
// Strict validation: ids in range, sets disjoint and covering, f exactly on
// seed+x0 with colors 1..4. Throws std::runtime_error on malformed input.
StarredPrecoloring parse_instance(const std::string& json_text);
std::string instance_to_json(const StarredPrecoloring& p);

// Coloring JSON: {"colors": {"id": color}}
std::string coloring_to_json(const Coloring& c);
Coloring parse_coloring(const std::string& json_text, int n);

// FNV-1a over the canonical serialization; used by trace output.
uint64_t instance_hash(const StarredPrecoloring& p);

} // namespace p6c
