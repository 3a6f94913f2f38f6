#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gittins/simulator.hpp"

namespace gittins {

// Sweep configuration file (JSON):
//   {
//     "seed": 1,                       // optional, default 1
//     "reps": 10000,                   // >= 1
//     "policies": ["ucb", "thompson", "ocucb", "gittins"],
//     "prior": {"mean": 0, "variance": 1},   // optional, used by gittins-prior
//     "grids": [ {"horizon": 1000, "arms": 2, "gaps": [0.1, 0.2]}, ... ]
//   }
// A grid may give "gaps": {"from": a, "to": b, "count": k} for k evenly spaced values.
// Every problem found is collected; ConfigError lists all of them, one per line.
std::vector<SweepConfig> parse_sweep_config(const std::string& text);
std::vector<SweepConfig> load_sweep_config(const std::filesystem::path& path);

}  // namespace gittins
