#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mosaicforge/commands.hpp"
#include "mosaicforge/config.hpp"
#include "mosaicforge/digest.hpp"

namespace {

// Raw flag values; applied onto the config in precedence order, so they
// are deliberately not bound to PipelineConfig fields directly.
struct FlagValues {
    std::string input;
    std::string output;
    std::string config_path;
    std::string scale_jitter;
    std::string density_metric;
    int count = 0;
    int size = 0;
    int workers = 0;
    double select_prob = 0.0;
    double border = 0.0;
    double min_visibility = 0.0;
    std::uint64_t seed = 0;
};

void add_tuning_flags(CLI::App& cmd, FlagValues& v) {
    cmd.add_option("--size", v.size, "Output size s; the canvas is 2s x 2s");
    cmd.add_option("--select-prob", v.select_prob,
                   "Probability of density-driven placement, in [0,1]");
    cmd.add_option("--seed", v.seed, "Random seed (unsigned 64-bit)");
    cmd.add_option("--config", v.config_path,
                   "Flat key = value config file; flags override it");
    cmd.add_option("--scale-jitter", v.scale_jitter,
                   "Per-quadrant scale jitter range as lo,hi");
    cmd.add_option("--border", v.border,
                   "Splice-center border margin as a fraction of the canvas");
    cmd.add_option("--min-visibility", v.min_visibility,
                   "Minimum surviving area fraction for a clipped box");
    cmd.add_option("--density-metric", v.density_metric,
                   "Image ranking metric: count or count_per_area");
}

std::uint64_t parse_env_seed(const char* text) {
    std::uint64_t value = 0;
    const char* end = text + std::string_view(text).size();
    const auto [ptr, ec] = std::from_chars(text, end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::runtime_error(
            "MOSAICFORGE_SEED: not a valid unsigned integer: " +
            std::string(text));
    }
    return value;
}

// True when the flag exists on this subcommand and was given.
bool given(const CLI::App& cmd, const std::string& name) {
    const CLI::Option* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

// Precedence: flags > config file > MOSAICFORGE_SEED > built-in defaults.
mosaicforge::PipelineConfig build_config(const CLI::App& cmd,
                                         const FlagValues& v) {
    mosaicforge::PipelineConfig config;
    if (const char* env = std::getenv("MOSAICFORGE_SEED")) {
        config.seed = parse_env_seed(env);
    }
    if (given(cmd, "--config")) {
        mosaicforge::apply_config_file(config, v.config_path);
    }
    if (given(cmd, "--size")) config.output_size = v.size;
    if (given(cmd, "--select-prob")) config.select_prob = v.select_prob;
    if (given(cmd, "--seed")) config.seed = v.seed;
    if (given(cmd, "--count")) config.count = v.count;
    if (given(cmd, "--workers")) config.workers = v.workers;
    if (given(cmd, "--border")) config.border_fraction = v.border;
    if (given(cmd, "--min-visibility")) {
        config.min_visibility = v.min_visibility;
    }
    if (given(cmd, "--scale-jitter")) {
        mosaicforge::apply_scale_jitter_spec(config, v.scale_jitter);
    }
    if (given(cmd, "--density-metric")) {
        config.density_metric =
            mosaicforge::parse_density_metric(v.density_metric);
    }
    mosaicforge::validate(config);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "mosaicforge: deterministic mosaic dataset augmentation with "
        "density-aware placement"};
    app.require_subcommand(1);

    FlagValues v;

    CLI::App* generate =
        app.add_subcommand("generate", "Write a batch of mosaics with labels");
    generate->add_option("--input", v.input, "Dataset root (images/ + labels/)")
        ->required();
    generate->add_option("--output", v.output, "Output root")->required();
    generate->add_option("--count", v.count, "Number of mosaics to write");
    generate->add_option("--workers", v.workers, "Parallel worker count");
    add_tuning_flags(*generate, v);

    CLI::App* preview = app.add_subcommand(
        "preview", "Write annotated mosaics: box outlines and splice marker");
    preview->add_option("--input", v.input, "Dataset root (images/ + labels/)")
        ->required();
    preview->add_option("--output", v.output, "Output directory")->required();
    preview->add_option("--count", v.count, "Number of previews to write");
    add_tuning_flags(*preview, v);

    CLI::App* stats =
        app.add_subcommand("stats", "Report box-count and density statistics");
    stats->add_option("--input", v.input, "Dataset root (images/ + labels/)")
        ->required();
    stats->add_option("--density-metric", v.density_metric,
                      "Image ranking metric: count or count_per_area");
    bool machine = false;
    stats->add_flag("--machine", machine,
                    "Emit a flat key=value block instead of prose");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run the built-in self-checks on a synthetic dataset");
    verify->add_option("--seed", v.seed, "Random seed (unsigned 64-bit)");
    verify->add_option("--select-prob", v.select_prob,
                       "Probability of density-driven placement, in [0,1]");
    verify->add_option("--config", v.config_path,
                       "Flat key = value config file; flags override it");
    bool print_digest = false;
    verify->add_flag("--print-digest", print_digest,
                     "Print the reference digest for the golden seed and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            mosaicforge::cmd_generate(build_config(*generate, v), v.input,
                                      v.output, std::cout);
            return 0;
        }
        if (preview->parsed()) {
            const mosaicforge::PipelineConfig config =
                build_config(*preview, v);
            const int n = given(*preview, "--count") ? v.count : 1;
            mosaicforge::cmd_preview(config, v.input, v.output, n, std::cout);
            return 0;
        }
        if (stats->parsed()) {
            mosaicforge::DensityMetric metric =
                mosaicforge::DensityMetric::CountPerArea;
            if (stats->count("--density-metric") > 0) {
                metric = mosaicforge::parse_density_metric(v.density_metric);
            }
            mosaicforge::cmd_stats(v.input, metric, machine, std::cout);
            return 0;
        }
        if (verify->parsed()) {
            if (print_digest) {
                std::cout << mosaicforge::to_hex(
                                 mosaicforge::compute_reference_digest(
                                     mosaicforge::kGoldenSeed))
                          << '\n';
                return 0;
            }
            const mosaicforge::PipelineConfig config =
                build_config(*verify, v);
            const mosaicforge::VerifyReport report =
                mosaicforge::cmd_verify(config, std::cout);
            return report.all_passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
