#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nightforge/nightforge.h>

namespace {

void print_error(const char* context, char* err) {
    std::fprintf(stderr, "nightforge: %s: %s\n", context, err != nullptr ? err : "unknown error");
    nf_string_free(err);
}

bool split_set(const std::string& assignment, std::string& name, std::string& dir) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= assignment.size()) return false;
    name = assignment.substr(0, eq);
    dir = assignment.substr(eq + 1);
    return true;
}

int run_synth(const std::string& input_dir, const std::string& depth_dir, const std::string& output_dir,
              const std::string& config_path, const std::string& sky_mask_dir, bool strict, bool has_seed,
              std::uint64_t seed, int jobs, int resize) {
    nf_synth_options options{};
    options.input_dir = input_dir.c_str();
    options.depth_dir = depth_dir.c_str();
    options.output_dir = output_dir.c_str();
    options.config_path = config_path.empty() ? nullptr : config_path.c_str();
    options.sky_mask_dir = sky_mask_dir.empty() ? nullptr : sky_mask_dir.c_str();
    options.strict = strict ? 1 : 0;
    options.has_seed = has_seed ? 1 : 0;
    options.seed = seed;
    options.jobs = jobs;
    options.resize = resize;

    nf_run_summary summary{};
    char* err = nullptr;
    const nf_status status = nf_run_synth(&options, &summary, &err);
    if (status != NF_OK) {
        print_error("synth", err);
        return 1;
    }
    if (summary.warnings != nullptr) {
        std::fprintf(stderr, "%s\n", summary.warnings);
        nf_string_free(summary.warnings);
    }
    std::printf("synthesized %zu image(s), %zu failure(s); manifest at %s/manifest.json\n", summary.successes,
                summary.failures, output_dir.c_str());
    return 0;
}

int run_report(const std::vector<std::string>& sets, const std::string& out_dir, int bins, bool channel_means) {
    std::string name_a;
    std::string dir_a;
    std::string name_b;
    std::string dir_b;
    if (sets.size() != 2 || !split_set(sets[0], name_a, dir_a) || !split_set(sets[1], name_b, dir_b)) {
        std::fprintf(stderr, "nightforge: report needs exactly two --set NAME=DIR arguments\n");
        return 1;
    }

    nf_report_options options{};
    options.name_a = name_a.c_str();
    options.dir_a = dir_a.c_str();
    options.name_b = name_b.c_str();
    options.dir_b = dir_b.c_str();
    options.out_dir = out_dir.c_str();
    options.bins = bins;
    options.channel_means = channel_means ? 1 : 0;

    char* err = nullptr;
    const nf_status status = nf_run_report(&options, &err);
    if (status != NF_OK) {
        print_error("report", err);
        return 1;
    }
    std::printf("report written to %s (stats.csv, histogram.png)\n", out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("nightforge ") + nf_version() + " - night haze dataset synthesis"};
    app.require_subcommand(1);

    std::string input_dir;
    std::string depth_dir;
    std::string output_dir;
    std::string config_path;
    std::string sky_mask_dir;
    bool strict = false;
    std::uint64_t seed = 0;
    int jobs = -1;
    int resize = 0;

    CLI::App* synth = app.add_subcommand("synth", "synthesize hazy night images from clear/depth pairs");
    synth->add_option("--input-dir", input_dir, "directory of clear .png images")->required();
    synth->add_option("--depth-dir", depth_dir, "directory of matching <stem>.pfm or <stem>.png depth files")
        ->required();
    synth->add_option("--output-dir", output_dir, "output directory (created if missing)")->required();
    synth->add_option("--config", config_path, "JSON config file");
    synth->add_option("--sky-mask-dir", sky_mask_dir, "directory of <stem>.png sky mask overrides");
    synth->add_flag("--strict", strict, "abort on the first per-image failure");
    CLI::Option* seed_opt = synth->add_option("--seed", seed, "master seed (falls back to NIGHTFORGE_SEED, then 0)");
    synth->add_option("--jobs", jobs, "worker count (0 = one per hardware thread; default from config)");
    synth->add_option("--resize", resize, "resize inputs to NxN before synthesis (0 = native)")
        ->check(CLI::NonNegativeNumber);

    std::vector<std::string> sets;
    std::string report_out;
    int bins = 32;
    bool channel_means = false;

    CLI::App* report = app.add_subcommand("report", "compare brightness statistics of two image sets");
    report->add_option("--set", sets, "image set as NAME=DIR (give exactly twice)")->expected(1, 2);
    report->add_option("--out", report_out, "output directory for stats.csv and histogram.png")->required();
    report->add_option("--bins", bins, "histogram bin count")->check(CLI::PositiveNumber);
    report->add_flag("--channel-means", channel_means, "also write per-image channel-mean images");

    CLI11_PARSE(app, argc, argv);

    if (synth->parsed()) {
        return run_synth(input_dir, depth_dir, output_dir, config_path, sky_mask_dir, strict,
                         seed_opt->count() > 0, seed, jobs, resize);
    }
    return run_report(sets, report_out, bins, channel_means);
}
