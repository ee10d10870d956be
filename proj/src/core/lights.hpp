#pragma once

#include <array>
#include <vector>

#include "core/params.hpp"
#include "core/raster.hpp"
#include "core/rng.hpp"

namespace nightforge {

enum class LightKind {
    Point,
    Cone,
};

/// One simulated emitter. Cones carry a unit axis and half-angle; both kinds
/// share the intensity constant and attenuation coefficients.
struct LightSource {
    LightKind kind = LightKind::Point;
    int center_row = 0;
    int center_col = 0;
    double intensity = 1.0;
    double axis_row = 0.0; // unit vector, cones only
    double axis_col = 1.0;
    double half_angle = 0.0; // radians, cones only
    std::array<double, 3> tint = {1.0, 1.0, 1.0};
    double attenuation_constant = 1.0;
    double attenuation_linear = 3.0;
    double attenuation_quadratic = 1.8;
};

/// Single-channel nonnegative raster (attenuation fields, pre-color glow).
struct ScalarField {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
};

/// Additive RGB glow contribution, nonnegative, unclamped.
struct GlowLayer {
    int width = 0;
    int height = 0;
    std::vector<double> data; // h * w * 3

    double at(int row, int col, int ch) const { return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch]; }
};

/// Inverse-quadratic falloff 1 / (c + l*d + q*d^2) at normalized distance d.
double attenuation(double normalized_distance, double constant, double linear, double quadratic);

/// Falloff field around (center_row, center_col). Distances are Euclidean in
/// pixels, normalized by the image diagonal so the profile is
/// resolution-independent and d stays in [0,1].
ScalarField attenuation_map(int height, int width, double center_row, double center_col, double constant,
                            double linear, double quadratic);

/// Isotropic emitter: field * intensity.
ScalarField render_point(const ScalarField& atten, double intensity);

/// Directional emitter: field * clamp(cos(pixel dir, axis), 0, 1) inside the
/// half-angle wedge, exactly zero outside it. The apex pixel itself gets the
/// full field value.
ScalarField render_cone(const ScalarField& atten, double apex_row, double apex_col, double axis_row, double axis_col,
                        double half_angle);

/// Per-channel tinting of a single-channel glow.
GlowLayer colorize(const ScalarField& layer, const std::array<double, 3>& tint);

/// Draws light sources for one image. Draw order per light is pinned (center,
/// kind, tint, then axis angle and half-angle for cones) so sequences are
/// reproducible. Centers are uniform over non-sky pixels unless the params ask
/// for the whole frame; an all-sky mask falls back to the whole frame.
std::vector<LightSource> sample_lights(RngStream& rng, const SynthesisParams& params, const SkyMask& sky);

/// Renders one light to its additive RGB contribution (cones receive the same
/// intensity constant as points).
GlowLayer render_light(const LightSource& light, int height, int width);

} // namespace nightforge
