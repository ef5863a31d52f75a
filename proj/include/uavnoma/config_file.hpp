#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "uavnoma/experiment.hpp"

namespace uavnoma {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat "key = value" lines; '#' starts a comment, blank lines are skipped.
// Throws std::invalid_argument naming the line on malformed input.
KeyValues parse_key_values(std::istream& in);

// Applies every pair to `spec`. Unknown keys and unparsable values throw
// std::invalid_argument. Keys and units are listed in README.md.
void apply_config(ExperimentSpec& spec, const KeyValues& pairs);

ExperimentSpec load_experiment_config(const std::filesystem::path& path, ExperimentSpec base = {});

// Inverse of apply_config for every key (values in config units).
KeyValues describe_config(const ExperimentSpec& spec);

}  // namespace uavnoma
