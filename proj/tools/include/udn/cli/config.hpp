#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "udn/cli/sweep.hpp"

namespace udn::cli {

// INI layout:
//
//   [sweep]                      axis, min, max, points, scale (log|linear),
//                                engines, trials, seed, threads
//   [scenario:<id>]              policy, bs_density, height, alpha_los,
//                                alpha_nlos, threshold, los_model
//                                (constant|buildings|step) and its parameter
//                                (los_probability | building_density,
//                                building_height | critical_distance)
//
// Keys missing from the file keep their defaults.
SweepSpec parse_config(const std::string& text);
SweepSpec load_config(const std::filesystem::path& path);
std::string serialize_config(const SweepSpec& spec);

/// Command-line values; each one set overrides the file and the defaults.
struct Overrides {
    std::optional<std::string> engines;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> policy;  // keep only scenarios with this policy
    std::optional<unsigned> threads;
    std::optional<double> bs_density;
    std::optional<double> height;
    std::optional<double> alpha_los;
    std::optional<double> alpha_nlos;
    std::optional<double> threshold;
    std::optional<double> building_density;
    std::optional<double> building_height;
};

void apply_overrides(SweepSpec& spec, const Overrides& o);

}  // namespace udn::cli
