#include "core/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace nightforge {

namespace {

using nlohmann::json;

double require_number(const json& value, const std::string& path) {
    if (!value.is_number()) fail(ErrorCode::Config, path + ": expected a number");
    return value.get<double>();
}

int require_int(const json& value, const std::string& path) {
    if (!value.is_number_integer()) fail(ErrorCode::Config, path + ": expected an integer");
    return value.get<int>();
}

bool require_bool(const json& value, const std::string& path) {
    if (!value.is_boolean()) fail(ErrorCode::Config, path + ": expected a boolean");
    return value.get<bool>();
}

} // namespace

PipelineConfig validate_config(const std::string& json_text, std::vector<std::string>* warnings) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Config, std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) fail(ErrorCode::Config, "config root must be a JSON object");

    PipelineConfig config;
    SynthesisParams& p = config.params;

    for (const auto& [key, value] : root.items()) {
        if (key == "varrho") {
            p.sky_threshold = require_number(value, key);
        } else if (key == "mu") {
            p.sky_target_mean = require_number(value, key);
        } else if (key == "phi1") {
            p.sky_illumination = require_number(value, key);
        } else if (key == "phi2") {
            p.ground_illumination = require_number(value, key);
        } else if (key == "rho") {
            p.sky_divisor = require_number(value, key);
        } else if (key == "alpha") {
            p.gamma_strength = require_number(value, key);
        } else if (key == "beta") {
            p.point_intensity = require_number(value, key);
        } else if (key == "xi") {
            if (!value.is_array() || value.size() != 3) fail(ErrorCode::Config, "xi: expected an array of 3 numbers");
            p.attenuation_constant = require_number(value[0], "xi[0]");
            p.attenuation_linear = require_number(value[1], "xi[1]");
            p.attenuation_quadratic = require_number(value[2], "xi[2]");
        } else if (key == "noise_sigma") {
            p.noise_sigma = require_number(value, key);
        } else if (key == "light_count") {
            if (!value.is_array() || value.size() != 2)
                fail(ErrorCode::Config, "light_count: expected [min, max]");
            p.light_count_min = require_int(value[0], "light_count[0]");
            p.light_count_max = require_int(value[1], "light_count[1]");
        } else if (key == "cone_half_angle") {
            if (!value.is_array() || value.size() != 2)
                fail(ErrorCode::Config, "cone_half_angle: expected [min, max] radians");
            p.cone_half_angle_min = require_number(value[0], "cone_half_angle[0]");
            p.cone_half_angle_max = require_number(value[1], "cone_half_angle[1]");
        } else if (key == "palette") {
            if (!value.is_array() || value.empty()) fail(ErrorCode::Config, "palette: expected a nonempty array");
            p.palette.clear();
            for (std::size_t i = 0; i < value.size(); ++i) {
                const json& entry = value[i];
                const std::string path = "palette[" + std::to_string(i) + "]";
                if (!entry.is_array() || entry.size() != 3) fail(ErrorCode::Config, path + ": expected [r, g, b]");
                p.palette.push_back({require_number(entry[0], path + "[0]"), require_number(entry[1], path + "[1]"),
                                     require_number(entry[2], path + "[2]")});
            }
        } else if (key == "illumination_source") {
            if (!value.is_string()) fail(ErrorCode::Config, "illumination_source: expected a string");
            const std::string source = value.get<std::string>();
            if (source == "depth") {
                p.illumination_source = IlluminationSource::Depth;
            } else if (source == "inverse-depth") {
                p.illumination_source = IlluminationSource::InverseDepth;
            } else {
                fail(ErrorCode::Config, "illumination_source: expected \"depth\" or \"inverse-depth\"");
            }
        } else if (key == "lights_whole_frame") {
            p.lights_whole_frame = require_bool(value, key);
        } else if (key == "label_grid") {
            if (!value.is_array() || value.size() != 2)
                fail(ErrorCode::Config, "label_grid: expected [rows, cols]");
            config.grid_height = require_int(value[0], "label_grid[0]");
            config.grid_width = require_int(value[1], "label_grid[1]");
            if (config.grid_height <= 0 || config.grid_width <= 0)
                fail(ErrorCode::Config, "label_grid: dims must be positive");
        } else if (key == "jobs") {
            config.jobs = require_int(value, key);
            if (config.jobs < 0) fail(ErrorCode::Config, "jobs: must be >= 0");
        } else {
            if (warnings != nullptr) warnings->push_back("unknown config key ignored: " + key);
        }
    }

    p.validate();
    return config;
}

PipelineConfig load_config(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return validate_config(buffer.str(), warnings);
}

} // namespace nightforge
