#include "core/params.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace nightforge {

namespace {

void require(bool ok, const std::string& field, const std::string& constraint) {
    if (!ok)
        fail(ErrorCode::Config, field + ": " + constraint);
}

} // namespace

void SynthesisParams::validate() const {
    require(sky_threshold > 0.0 && sky_threshold < 1.0, "varrho", "must be in (0,1)");
    require(sky_target_mean > 0.0 && sky_target_mean <= 1.0, "mu", "must be in (0,1]");
    require(std::isfinite(sky_illumination) && sky_illumination >= 0.0, "phi1", "must be finite and >= 0");
    require(std::isfinite(ground_illumination) && ground_illumination >= 0.0, "phi2", "must be finite and >= 0");
    require(sky_divisor >= 1.0, "rho", "must be >= 1");
    require(gamma_strength > 0.0, "alpha", "must be > 0");
    require(point_intensity >= 0.0, "beta", "must be >= 0");
    require(attenuation_constant > 0.0, "xi[0]", "must be > 0");
    require(attenuation_linear >= 0.0, "xi[1]", "must be >= 0");
    require(attenuation_quadratic >= 0.0, "xi[2]", "must be >= 0");
    require(noise_sigma >= 0.0, "noise_sigma", "must be >= 0");
    require(light_count_min >= 0, "light_count[0]", "must be >= 0");
    require(light_count_min <= light_count_max, "light_count", "min must not exceed max");
    require(cone_half_angle_min > 0.0, "cone_half_angle[0]", "must be > 0");
    require(cone_half_angle_min <= cone_half_angle_max, "cone_half_angle", "min must not exceed max");
    require(cone_half_angle_max <= 1.5707963267948966 + 1e-12, "cone_half_angle[1]", "must not exceed pi/2");
    require(!palette.empty(), "palette", "must not be empty");
    for (std::size_t i = 0; i < palette.size(); ++i)
        for (int c = 0; c < 3; ++c)
            require(palette[i][c] >= 0.0 && palette[i][c] <= 1.0, "palette[" + std::to_string(i) + "]",
                    "channels must be in [0,1]");
}

} // namespace nightforge
