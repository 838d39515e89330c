#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mosaicforge/config.hpp"
#include "mosaicforge/engine.hpp"

namespace mosaicforge {

struct GenerateSummary {
    int mosaics_written = 0;
    double select_fraction = 0.0;
    double mean_boxes = 0.0;
};

/// Batch generation: writes `config.count` mosaics as
/// output_root/images/mosaic_<i>.png with YOLO labels (normalized
/// against the 2s canvas) under output_root/labels/, split across
/// `config.workers` worker streams. Prints and returns the summary.
GenerateSummary cmd_generate(const PipelineConfig& config,
                             const std::filesystem::path& input_root,
                             const std::filesystem::path& output_root,
                             std::ostream& log);

/// Writes n annotated previews (box outlines, splice-center marker,
/// largest-mask outline in select mode) plus their label files to
/// output_dir.
void cmd_preview(const PipelineConfig& config,
                 const std::filesystem::path& input_root,
                 const std::filesystem::path& output_dir, int n,
                 std::ostream& log);

struct DatasetStats {
    std::size_t images = 0;
    long long boxes_total = 0;
    int boxes_min = 0;
    int boxes_max = 0;
    double boxes_mean = 0.0;
    double density_min = 0.0;
    double density_mean = 0.0;
    double density_max = 0.0;
    std::vector<std::pair<std::string, std::size_t>> histogram;
};

DatasetStats compute_dataset_stats(const std::vector<LabeledImage>& entries,
                                   DensityMetric metric);

/// Per-image box-count and density report over a dataset in the
/// standard layout. `machine` emits the flat key=value block instead
/// of the human-readable table.
DatasetStats cmd_stats(const std::filesystem::path& root,
                       DensityMetric metric, bool machine,
                       std::ostream& log);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const;
};

/// Self-verification on the built-in color-coded dataset: the label
/// soundness pixel oracle, the select-rule guarantee, gate frequency,
/// and the golden-seed digest. One line per check; any failure makes
/// the CLI exit nonzero.
VerifyReport cmd_verify(const PipelineConfig& config, std::ostream& log);

/// The individual verify checks, exposed so tests can drive them
/// directly (including with deliberately broken plans).
VerifyCheck verify_label_soundness(const PipelineConfig& config, int mosaics);
VerifyCheck verify_select_rule(const PipelineConfig& config, int mosaics);
VerifyCheck verify_gate_frequency(std::uint64_t seed);
VerifyCheck verify_golden_digest();

/// Reference seed and digest committed for the cross-platform golden
/// test; the digest covers canvas pixels and label text for
/// kGoldenCount mosaics on the built-in dataset.
extern const std::uint64_t kGoldenSeed;
extern const int kGoldenCount;
extern const std::uint64_t kGoldenDigest;

/// Digest of kGoldenCount mosaics for `seed` on the built-in dataset.
std::uint64_t compute_reference_digest(std::uint64_t seed);

/// Interior sample points of `box` on a 5x5 grid with 1 px inset
/// (falling back to the box center when the inset collapses); true
/// when every sampled canvas pixel equals `expected`.
bool box_interior_matches(const Canvas& canvas, const BBox& box,
                          Rgb expected);

}  // namespace mosaicforge
