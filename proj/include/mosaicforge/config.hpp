#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace mosaicforge {

enum class DensityMetric { Count, CountPerArea };

DensityMetric parse_density_metric(const std::string& name);
std::string density_metric_name(DensityMetric metric);

/// All pipeline tunables. The mosaic canvas is 2*output_size on a
/// side.
struct PipelineConfig {
    int output_size = 640;
    double select_prob = 0.4;
    double border_fraction = 0.25;
    double scale_jitter_lo = 0.5;
    double scale_jitter_hi = 1.5;
    double min_visibility = 0.1;
    int min_side = 2;
    DensityMetric density_metric = DensityMetric::CountPerArea;
    std::uint64_t seed = 0;
    int count = 16;
    int workers = 1;

    int canvas_side() const { return 2 * output_size; }
};

/// Rejects out-of-range fields with an error naming the field.
void validate(const PipelineConfig& config);

/// Applies `key = value` lines from a flat config file on top of
/// `config`. Blank lines and #-comments are ignored; an unknown key or
/// unparsable value is an error naming the offending line.
void apply_config_file(PipelineConfig& config,
                       const std::filesystem::path& path);

/// Parses "lo,hi" into the jitter range fields.
void apply_scale_jitter_spec(PipelineConfig& config, const std::string& spec);

}  // namespace mosaicforge
