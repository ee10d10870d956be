#include "core/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "core/error.hpp"
#include "core/io.hpp"

namespace nightforge {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> list_pngs(const std::string& dir) {
    fs::path root(dir);
    if (!fs::is_directory(root)) fail(ErrorCode::Io, "not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return files;
}

std::string format_number(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

void write_csv_row(std::ofstream& out, const std::string& set_name, const std::string& image,
                   std::size_t pixels, const std::array<double, 3>& channel_means, double luminance_mean,
                   const std::vector<double>& histogram) {
    out << set_name << ',' << image << ',' << pixels << ',' << format_number(channel_means[0]) << ','
        << format_number(channel_means[1]) << ',' << format_number(channel_means[2]) << ','
        << format_number(luminance_mean);
    for (double h : histogram) out << ',' << format_number(h);
    out << '\n';
}

/// Grouped bar chart of the two pooled histograms, no text, white background.
Image histogram_chart(const std::vector<double>& hist_a, const std::vector<double>& hist_b) {
    const int bins = static_cast<int>(hist_a.size());
    const int bar_w = 5;
    const int group_gap = 3;
    const int margin = 10;
    const int plot_h = 220;
    const int width = margin * 2 + bins * (2 * bar_w + group_gap) - group_gap;
    const int height = margin * 2 + plot_h;

    Image chart = Image::create(width, height, 1.0);
    double peak = 0.0;
    for (double v : hist_a) peak = std::max(peak, v);
    for (double v : hist_b) peak = std::max(peak, v);
    if (peak <= 0.0) peak = 1.0;

    const double color_a[3] = {0.15, 0.3, 0.85};
    const double color_b[3] = {0.95, 0.55, 0.1};
    auto draw_bar = [&](int x0, double value, const double color[3]) {
        const int bar_h = static_cast<int>(value / peak * plot_h + 0.5);
        for (int y = 0; y < bar_h; ++y) {
            const int row = height - 1 - margin - y;
            for (int x = x0; x < x0 + bar_w; ++x) {
                for (int ch = 0; ch < 3; ++ch) chart.at(row, x, ch) = color[ch];
            }
        }
    };
    for (int k = 0; k < bins; ++k) {
        const int group_x = margin + k * (2 * bar_w + group_gap);
        draw_bar(group_x, hist_a[static_cast<std::size_t>(k)], color_a);
        draw_bar(group_x + bar_w, hist_b[static_cast<std::size_t>(k)], color_b);
    }
    // Baseline.
    for (int x = margin; x < width - margin; ++x) {
        for (int ch = 0; ch < 3; ++ch) chart.at(height - margin, x, ch) = 0.25;
    }
    return chart;
}

} // namespace

SetReport analyze_set(const std::string& name, const std::string& dir, int bins) {
    if (bins <= 0) fail(ErrorCode::InvalidArgument, "analyze_set: bins must be positive");
    const std::vector<fs::path> files = list_pngs(dir);
    if (files.empty()) fail(ErrorCode::Io, "no .png images in " + dir);

    SetReport report;
    report.name = name;
    report.pooled_histogram.assign(static_cast<std::size_t>(bins), 0.0);
    report.image_mean_histogram.assign(static_cast<std::size_t>(bins), 0.0);

    double pooled_channel_sums[3] = {0.0, 0.0, 0.0};
    double pooled_lum_sum = 0.0;
    double image_mean_sum = 0.0;
    std::size_t total_pixels = 0;

    for (const fs::path& file : files) {
        const Image img = load_image(file.string());
        ImageStatsRow row;
        row.filename = file.filename().string();
        row.pixels = img.pixel_count();
        row.stats = compute_stats(img, nullptr, bins);
        for (int c = 0; c < 3; ++c)
            pooled_channel_sums[c] += row.stats.channel_means[static_cast<std::size_t>(c)] * row.pixels;
        pooled_lum_sum += row.stats.luminance_mean * static_cast<double>(row.pixels);
        for (std::size_t k = 0; k < row.stats.histogram.size(); ++k)
            report.pooled_histogram[k] += row.stats.histogram[k] * static_cast<double>(row.pixels);
        image_mean_sum += row.stats.luminance_mean;
        report.image_mean_histogram[static_cast<std::size_t>(histogram_bin(row.stats.luminance_mean, bins))] += 1.0;
        total_pixels += row.pixels;
        report.images.push_back(std::move(row));
    }

    for (int c = 0; c < 3; ++c)
        report.pooled_channel_means[static_cast<std::size_t>(c)] =
            pooled_channel_sums[c] / static_cast<double>(total_pixels);
    report.pooled_luminance_mean = pooled_lum_sum / static_cast<double>(total_pixels);
    for (double& h : report.pooled_histogram) h /= static_cast<double>(total_pixels);
    for (double& h : report.image_mean_histogram) h /= static_cast<double>(report.images.size());
    report.mean_of_image_means = image_mean_sum / static_cast<double>(report.images.size());
    return report;
}

CompareResult compare_sets(const ReportOptions& options) {
    if (options.bins <= 0) fail(ErrorCode::InvalidArgument, "compare_sets: bins must be positive");
    fs::create_directories(options.out_dir);

    CompareResult result;
    result.set_a = analyze_set(options.name_a, options.dir_a, options.bins);
    result.set_b = analyze_set(options.name_b, options.dir_b, options.bins);

    const fs::path out_root(options.out_dir);
    const fs::path csv_path = out_root / "stats.csv";
    std::ofstream csv(csv_path);
    if (!csv) fail(ErrorCode::Io, "cannot write " + csv_path.string());
    csv << "# nightforge-stats v1\n";
    csv << "set,image,pixels,mean_r,mean_g,mean_b,mean_luminance";
    for (int k = 0; k < options.bins; ++k) csv << ",hist_" << k;
    csv << '\n';

    for (const SetReport* set : {&result.set_a, &result.set_b}) {
        std::size_t total_pixels = 0;
        for (const ImageStatsRow& row : set->images) {
            write_csv_row(csv, set->name, row.filename, row.pixels, row.stats.channel_means,
                          row.stats.luminance_mean, row.stats.histogram);
            total_pixels += row.pixels;
        }
        write_csv_row(csv, set->name, "POOLED_PIXELS", total_pixels, set->pooled_channel_means,
                      set->pooled_luminance_mean, set->pooled_histogram);
        write_csv_row(csv, set->name, "IMAGE_MEANS", set->images.size(), set->pooled_channel_means,
                      set->mean_of_image_means, set->image_mean_histogram);
    }
    csv.close();
    if (!csv) fail(ErrorCode::Io, "failed writing " + csv_path.string());

    const fs::path chart_path = out_root / "histogram.png";
    save_image(histogram_chart(result.set_a.pooled_histogram, result.set_b.pooled_histogram), chart_path.string());

    if (options.channel_means) {
        for (const auto& [set, dir] : {std::pair{&result.set_a, options.dir_a}, {&result.set_b, options.dir_b}}) {
            const fs::path set_dir = out_root / set->name;
            fs::create_directories(set_dir);
            for (const ImageStatsRow& row : set->images) {
                const Image img = load_image((fs::path(dir) / row.filename).string());
                const fs::path stem = fs::path(row.filename).stem();
                save_image(channel_mean_image(img), (set_dir / (stem.string() + "_chanmean.png")).string());
            }
        }
    }

    result.csv_path = csv_path.string();
    result.histogram_path = chart_path.string();
    return result;
}

} // namespace nightforge
