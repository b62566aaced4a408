#pragma once

#include <filesystem>
#include <string>

#include "g3m/engine.hpp"

namespace g3m {

// Pool configuration document (JSON):
//
//   {
//     "reserves": [4, 4],
//     "weights":  [0.5, 0.5],
//     "mean": {"type": "power", "p": 0.5}
//   }
//
// mean variants: {"type": "geometric"}, {"type": "fmean", "f": "log"},
// {"type": "fmean", "f": "power", "fp": 0.5}.
Pool parse_pool_config(const std::string& text);
Pool load_pool_config(const std::filesystem::path& path);

// Inverse of parse_pool_config; numbers are rendered so that reserves and
// weights survive a round trip exactly.
std::string serialize_pool_config(const Pool& pool);

}  // namespace g3m
