#include "core/lights.hpp"

#include <cmath>
#include <cstddef>

#include "core/error.hpp"

namespace nightforge {

double attenuation(double normalized_distance, double constant, double linear, double quadratic) {
    return 1.0 / (constant + linear * normalized_distance + quadratic * normalized_distance * normalized_distance);
}

ScalarField attenuation_map(int height, int width, double center_row, double center_col, double constant,
                            double linear, double quadratic) {
    if (height <= 0 || width <= 0) fail(ErrorCode::InvalidArgument, "attenuation_map: empty raster");
    ScalarField field;
    field.width = width;
    field.height = height;
    field.data.resize(static_cast<std::size_t>(width) * height);
    const double diag = std::sqrt(static_cast<double>(height - 1) * (height - 1) +
                                  static_cast<double>(width - 1) * (width - 1));
    std::size_t i = 0;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c, ++i) {
            const double dr = r - center_row;
            const double dc = c - center_col;
            const double dist = std::sqrt(dr * dr + dc * dc);
            const double d = diag > 0.0 ? dist / diag : 0.0;
            field.data[i] = attenuation(d, constant, linear, quadratic);
        }
    }
    return field;
}

ScalarField render_point(const ScalarField& atten, double intensity) {
    ScalarField out = atten;
    for (double& v : out.data) v *= intensity;
    return out;
}

ScalarField render_cone(const ScalarField& atten, double apex_row, double apex_col, double axis_row, double axis_col,
                        double half_angle) {
    ScalarField out;
    out.width = atten.width;
    out.height = atten.height;
    out.data.resize(atten.data.size());
    const double cos_half = std::cos(half_angle);
    std::size_t i = 0;
    for (int r = 0; r < atten.height; ++r) {
        for (int c = 0; c < atten.width; ++c, ++i) {
            const double dr = r - apex_row;
            const double dc = c - apex_col;
            const double norm = std::sqrt(dr * dr + dc * dc);
            if (norm == 0.0) {
                // The apex has no direction; it sits on the axis by convention.
                out.data[i] = atten.data[i];
                continue;
            }
            const double cos_angle = (dr * axis_row + dc * axis_col) / norm;
            if (cos_angle >= cos_half) {
                double c01 = cos_angle;
                if (c01 < 0.0) c01 = 0.0;
                if (c01 > 1.0) c01 = 1.0;
                out.data[i] = atten.data[i] * c01;
            } else {
                out.data[i] = 0.0;
            }
        }
    }
    return out;
}

GlowLayer colorize(const ScalarField& layer, const std::array<double, 3>& tint) {
    GlowLayer out;
    out.width = layer.width;
    out.height = layer.height;
    out.data.resize(layer.data.size() * 3);
    for (std::size_t i = 0; i < layer.data.size(); ++i) {
        out.data[i * 3 + 0] = layer.data[i] * tint[0];
        out.data[i * 3 + 1] = layer.data[i] * tint[1];
        out.data[i * 3 + 2] = layer.data[i] * tint[2];
    }
    return out;
}

std::vector<LightSource> sample_lights(RngStream& rng, const SynthesisParams& params, const SkyMask& sky) {
    if (sky.width <= 0 || sky.height <= 0) fail(ErrorCode::InvalidArgument, "sample_lights: empty mask");
    const std::size_t total = static_cast<std::size_t>(sky.width) * sky.height;

    std::vector<std::uint32_t> candidates;
    if (!params.lights_whole_frame) {
        candidates.reserve(total);
        for (std::size_t i = 0; i < total; ++i) {
            if (!sky.data[i]) candidates.push_back(static_cast<std::uint32_t>(i));
        }
        // All-sky frames have no ground to anchor a lamp; use the whole frame.
    }
    const bool whole_frame = params.lights_whole_frame || candidates.empty();
    const std::size_t pool = whole_frame ? total : candidates.size();

    const std::uint64_t span = static_cast<std::uint64_t>(params.light_count_max - params.light_count_min) + 1;
    const int count = params.light_count_min + static_cast<int>(rng.next_below(span));

    std::vector<LightSource> lights;
    lights.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        LightSource light;
        const std::size_t pick = static_cast<std::size_t>(rng.next_below(pool));
        const std::size_t idx = whole_frame ? pick : candidates[pick];
        light.center_row = static_cast<int>(idx / sky.width);
        light.center_col = static_cast<int>(idx % sky.width);
        light.kind = rng.next_below(2) == 0 ? LightKind::Point : LightKind::Cone;
        light.tint = params.palette[rng.next_below(params.palette.size())];
        if (light.kind == LightKind::Cone) {
            const double theta = rng.next_unit() * 2.0 * 3.14159265358979323846;
            light.axis_row = std::cos(theta);
            light.axis_col = std::sin(theta);
            light.half_angle =
                params.cone_half_angle_min + rng.next_unit() * (params.cone_half_angle_max - params.cone_half_angle_min);
        }
        light.intensity = params.point_intensity;
        light.attenuation_constant = params.attenuation_constant;
        light.attenuation_linear = params.attenuation_linear;
        light.attenuation_quadratic = params.attenuation_quadratic;
        lights.push_back(light);
    }
    return lights;
}

GlowLayer render_light(const LightSource& light, int height, int width) {
    ScalarField atten = attenuation_map(height, width, light.center_row, light.center_col,
                                        light.attenuation_constant, light.attenuation_linear,
                                        light.attenuation_quadratic);
    ScalarField field;
    if (light.kind == LightKind::Point) {
        field = render_point(atten, light.intensity);
    } else {
        field = render_cone(atten, light.center_row, light.center_col, light.axis_row, light.axis_col,
                            light.half_angle);
        for (double& v : field.data) v *= light.intensity;
    }
    return colorize(field, light.tint);
}

} // namespace nightforge
