#pragma once

#include <string>
#include <vector>

#include "core/stats.hpp"

namespace nightforge {

struct ReportOptions {
    std::string name_a;
    std::string dir_a;
    std::string name_b;
    std::string dir_b;
    std::string out_dir;
    int bins = 32;
    bool channel_means = false;
};

struct ImageStatsRow {
    std::string filename;
    std::size_t pixels = 0;
    BrightnessStats stats;
};

/// Aggregate view of one image set. Two summaries are kept: a pooled pixel
/// histogram (every pixel weighted equally) and a histogram of per-image mean
/// luminances (every image weighted equally).
struct SetReport {
    std::string name;
    std::vector<ImageStatsRow> images;
    std::array<double, 3> pooled_channel_means = {0.0, 0.0, 0.0};
    double pooled_luminance_mean = 0.0;
    std::vector<double> pooled_histogram;
    std::vector<double> image_mean_histogram;
    double mean_of_image_means = 0.0;
};

struct CompareResult {
    SetReport set_a;
    SetReport set_b;
    std::string csv_path;
    std::string histogram_path;
};

/// Loads every .png in dir (sorted by filename) and aggregates its stats.
SetReport analyze_set(const std::string& name, const std::string& dir, int bins);

/// Writes stats.csv and histogram.png into out_dir comparing the two sets;
/// with channel_means set, also writes <set>/<stem>_chanmean.png per image.
CompareResult compare_sets(const ReportOptions& options);

} // namespace nightforge
