#pragma once

#include <string>
#include <vector>

#include "core/params.hpp"

namespace nightforge {

/// Runtime settings parsed from the JSON config file. Directory paths live in
/// RunOptions (they come from CLI flags, not the file).
struct PipelineConfig {
    SynthesisParams params;
    int grid_height = 8;
    int grid_width = 8;
    int jobs = 0; // 0 = one worker per hardware thread
};

/// Parses and validates a JSON config. Missing keys keep their defaults,
/// violations raise ErrorCode::Config with the offending field path, unknown
/// keys are appended to warnings.
PipelineConfig validate_config(const std::string& json_text, std::vector<std::string>* warnings = nullptr);

/// validate_config over a file's contents.
PipelineConfig load_config(const std::string& path, std::vector<std::string>* warnings = nullptr);

} // namespace nightforge
