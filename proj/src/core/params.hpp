#pragma once

#include <array>
#include <vector>

namespace nightforge {

/// Which field initializes the illumination mask: raw disparity (1 = near) or
/// its complement.
enum class IlluminationSource {
    Depth,
    InverseDepth,
};

/// Knobs of the night synthesis chain. Defaults follow the reference
/// configuration; everything is overridable from the pipeline config file.
struct SynthesisParams {
    double sky_threshold = 0.98;        // pixel is sky iff 1 - depth >= this
    double sky_target_mean = 0.85;      // sky luminance mean after adjustment
    double sky_illumination = 2.0;      // mask scale on sky pixels
    double ground_illumination = 1.5;   // mask scale on non-sky pixels
    double sky_divisor = 2.0;           // sky pre-darkening divisor, >= 1
    double gamma_strength = 4.0;        // exponent multiplier for pixel-wise gamma
    double point_intensity = 1.0;       // light source intensity constant
    double attenuation_constant = 1.0;  // falloff: 1/(c + l*d + q*d^2)
    double attenuation_linear = 3.0;
    double attenuation_quadratic = 1.8;
    double noise_sigma = 0.02;          // additive Gaussian noise stddev

    // Glow falloff at this attenuation profile is wide (a single full-strength
    // point source lifts the whole frame), so the default is one source per
    // image; raise the range in the config for denser scenes.
    int light_count_min = 1;
    int light_count_max = 1;
    double cone_half_angle_min = 0.2617993877991494; // pi/12
    double cone_half_angle_max = 1.0471975511965976; // pi/3
    bool lights_whole_frame = false;                 // centers default to non-sky pixels

    // Default tints keep each hue's channel ratios but cap tint luminance near
    // 0.5: with beta = 1 and this attenuation profile a point glow lifts the
    // whole frame by roughly 0.4 * tint luminance, and brighter tints push a
    // synthesized night image above its daytime source's mean.
    std::vector<std::array<double, 3>> palette = {
        {0.55, 0.41, 0.19}, // sodium
        {0.50, 0.52, 0.55}, // cool white
        {0.55, 0.17, 0.17}, // neon red
        {0.22, 0.55, 0.28}, // neon green
    };

    IlluminationSource illumination_source = IlluminationSource::Depth;

    /// Throws Error{Config} naming the offending field on constraint violation.
    void validate() const;
};

} // namespace nightforge
