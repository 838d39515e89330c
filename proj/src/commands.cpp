#include "mosaicforge/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>
#include <vector>

#include "mosaicforge/digest.hpp"
#include "mosaicforge/synthetic.hpp"

namespace mosaicforge {

namespace {

constexpr Rgb kMarkerColor{255, 0, 255};
constexpr Rgb kMaskOutlineColor{255, 255, 0};
constexpr std::array<Rgb, 8> kBoxPalette = {{{250, 60, 60},
                                             {60, 250, 60},
                                             {60, 60, 250},
                                             {250, 160, 20},
                                             {20, 200, 250},
                                             {250, 250, 90},
                                             {160, 60, 250},
                                             {250, 110, 180}}};

std::string fmt_double(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void write_label_file(const std::filesystem::path& path,
                      const std::vector<BBox>& boxes, int canvas_side) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open label file for writing: " +
                                 path.string());
    }
    for (const BBox& box : boxes) {
        out << serialize_yolo_line(box, canvas_side, canvas_side) << '\n';
    }
}

// Verify runs on a fixed internal geometry so its checks and the
// golden digest do not depend on the caller's canvas settings; only
// the seed and the select probability are taken from the user config.
PipelineConfig verify_config(const PipelineConfig& user, int output_size) {
    PipelineConfig config;
    config.output_size = output_size;
    config.select_prob = user.select_prob;
    config.seed = user.seed;
    return config;
}

SyntheticDataset builtin_verify_dataset(int image_side) {
    const int counts[] = {3, 12, 7, 0, 25, 5, 18, 9};
    return make_color_coded_dataset(counts, image_side);
}

struct WorkerPartial {
    long long boxes = 0;
    int select_count = 0;
    std::exception_ptr error;
};

}  // namespace

const std::uint64_t kGoldenSeed = 42;
const int kGoldenCount = 8;
// Digest of the golden run (seed 42, 8 mosaics, built-in dataset);
// regenerate with `mosaicforge verify --print-digest` after any
// intentional pipeline change.
const std::uint64_t kGoldenDigest = 0x2483f2fd03cc212cULL;

GenerateSummary cmd_generate(const PipelineConfig& config,
                             const std::filesystem::path& input_root,
                             const std::filesystem::path& output_root,
                             std::ostream& log) {
    validate(config);
    const std::vector<LabeledImage> dataset = load_dataset(input_root);
    if (dataset.size() < 4) {
        throw std::runtime_error("dataset too small: need at least 4 images, have " +
                                 std::to_string(dataset.size()));
    }
    namespace fs = std::filesystem;
    fs::create_directories(output_root / "images");
    fs::create_directories(output_root / "labels");

    const int worker_count = std::min(config.workers, std::max(config.count, 1));
    std::vector<WorkerPartial> partials(worker_count);
    std::vector<std::thread> threads;
    threads.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
        threads.emplace_back([&, w] {
            WorkerPartial& partial = partials[w];
            try {
                RandomStream stream(config.seed,
                                    static_cast<std::uint32_t>(w));
                const DiskImageSource source(dataset);
                for (int i = w; i < config.count; i += worker_count) {
                    const MosaicResult result =
                        augment_once(dataset, source, config, stream);
                    const std::string stem = "mosaic_" + std::to_string(i);
                    encode_image(result.canvas,
                                 output_root / "images" / (stem + ".png"));
                    write_label_file(output_root / "labels" / (stem + ".txt"),
                                     result.boxes, config.canvas_side());
                    partial.boxes += static_cast<long long>(result.boxes.size());
                    partial.select_count +=
                        result.plan.mode == PlanMode::Select ? 1 : 0;
                }
            } catch (...) {
                partial.error = std::current_exception();
            }
        });
    }
    for (auto& thread : threads) {
        thread.join();
    }
    for (const auto& partial : partials) {
        if (partial.error) {
            std::rethrow_exception(partial.error);
        }
    }

    GenerateSummary summary;
    summary.mosaics_written = config.count;
    long long boxes = 0;
    int select_count = 0;
    for (const auto& partial : partials) {
        boxes += partial.boxes;
        select_count += partial.select_count;
    }
    if (config.count > 0) {
        summary.select_fraction =
            static_cast<double>(select_count) / config.count;
        summary.mean_boxes = static_cast<double>(boxes) / config.count;
    }
    log << "mosaics written: " << summary.mosaics_written << '\n'
        << "select fraction: " << fmt_double(summary.select_fraction) << '\n'
        << "mean boxes per mosaic: " << fmt_double(summary.mean_boxes) << '\n';
    return summary;
}

void cmd_preview(const PipelineConfig& config,
                 const std::filesystem::path& input_root,
                 const std::filesystem::path& output_dir, int n,
                 std::ostream& log) {
    validate(config);
    const std::vector<LabeledImage> dataset = load_dataset(input_root);
    std::filesystem::create_directories(output_dir);
    RandomStream stream(config.seed, 0);
    const DiskImageSource source(dataset);
    for (int i = 0; i < n; ++i) {
        MosaicResult result = augment_once(dataset, source, config, stream);
        if (result.plan.mode == PlanMode::Select) {
            const QuadrantLayout layout =
                quadrant_layout(result.plan.center, result.plan.canvas_side);
            draw_rect_outline(result.canvas,
                              layout.rects[largest_quadrant(layout)],
                              kMaskOutlineColor);
        }
        for (const BBox& box : result.boxes) {
            draw_rect_outline(result.canvas,
                              PixelRect{box.x1, box.y1, box.x2, box.y2},
                              kBoxPalette[box.class_id % kBoxPalette.size()]);
        }
        draw_center_marker(result.canvas, result.plan.center, kMarkerColor);
        const std::string stem = "preview_" + std::to_string(i);
        encode_image(result.canvas, output_dir / (stem + ".png"));
        write_label_file(output_dir / (stem + ".txt"), result.boxes,
                         config.canvas_side());
    }
    log << "previews written: " << n << '\n';
}

DatasetStats compute_dataset_stats(const std::vector<LabeledImage>& entries,
                                   DensityMetric metric) {
    DatasetStats stats;
    stats.images = entries.size();
    if (entries.empty()) {
        return stats;
    }
    stats.boxes_min = static_cast<int>(entries.front().boxes.size());
    double density_sum = 0.0;
    stats.density_min = ranking_density(entries.front(), metric);
    stats.density_max = stats.density_min;
    const char* bucket_names[] = {"0", "1-5", "6-10", "11-20", "21-50", "51+"};
    std::array<std::size_t, 6> buckets{};
    for (const LabeledImage& entry : entries) {
        const int count = static_cast<int>(entry.boxes.size());
        stats.boxes_total += count;
        stats.boxes_min = std::min(stats.boxes_min, count);
        stats.boxes_max = std::max(stats.boxes_max, count);
        const double density = ranking_density(entry, metric);
        density_sum += density;
        stats.density_min = std::min(stats.density_min, density);
        stats.density_max = std::max(stats.density_max, density);
        if (count == 0) {
            ++buckets[0];
        } else if (count <= 5) {
            ++buckets[1];
        } else if (count <= 10) {
            ++buckets[2];
        } else if (count <= 20) {
            ++buckets[3];
        } else if (count <= 50) {
            ++buckets[4];
        } else {
            ++buckets[5];
        }
    }
    stats.boxes_mean =
        static_cast<double>(stats.boxes_total) / static_cast<double>(stats.images);
    stats.density_mean = density_sum / static_cast<double>(stats.images);
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        stats.histogram.emplace_back(bucket_names[b], buckets[b]);
    }
    return stats;
}

DatasetStats cmd_stats(const std::filesystem::path& root,
                       DensityMetric metric, bool machine,
                       std::ostream& log) {
    const std::vector<LabeledImage> entries = load_dataset(root);
    const DatasetStats stats = compute_dataset_stats(entries, metric);
    if (machine) {
        log << "images=" << stats.images << '\n'
            << "boxes_total=" << stats.boxes_total << '\n'
            << "boxes_min=" << stats.boxes_min << '\n'
            << "boxes_mean=" << fmt_double(stats.boxes_mean) << '\n'
            << "boxes_max=" << stats.boxes_max << '\n'
            << "density_metric=" << density_metric_name(metric) << '\n'
            << "density_min=" << fmt_double(stats.density_min) << '\n'
            << "density_mean=" << fmt_double(stats.density_mean) << '\n'
            << "density_max=" << fmt_double(stats.density_max) << '\n';
        for (const auto& [bucket, count] : stats.histogram) {
            std::string key = bucket;
            std::replace(key.begin(), key.end(), '-', '_');
            if (key == "51+") {
                key = "51_plus";
            }
            log << "hist_" << key << '=' << count << '\n';
        }
        return stats;
    }
    log << "images: " << stats.images << '\n'
        << "boxes: total " << stats.boxes_total << ", min " << stats.boxes_min
        << ", mean " << fmt_double(stats.boxes_mean) << ", max "
        << stats.boxes_max << '\n'
        << "density (" << density_metric_name(metric) << "): min "
        << fmt_double(stats.density_min) << ", mean "
        << fmt_double(stats.density_mean) << ", max "
        << fmt_double(stats.density_max) << '\n'
        << "boxes-per-image histogram:" << '\n';
    for (const auto& [bucket, count] : stats.histogram) {
        log << "  " << bucket << "\t" << count << '\n';
    }
    return stats;
}

bool box_interior_matches(const Canvas& canvas, const BBox& box,
                          Rgb expected) {
    std::vector<std::pair<int, int>> samples;
    const int ix1 = box.x1 + 1;
    const int iy1 = box.y1 + 1;
    const int ix2 = box.x2 - 1;
    const int iy2 = box.y2 - 1;
    if (ix1 >= ix2 || iy1 >= iy2) {
        samples.emplace_back((box.x1 + box.x2) / 2, (box.y1 + box.y2) / 2);
    } else {
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < 5; ++c) {
                const int x = ix1 + static_cast<int>(round_half_up(
                                        c * (ix2 - 1 - ix1) / 4.0));
                const int y = iy1 + static_cast<int>(round_half_up(
                                        r * (iy2 - 1 - iy1) / 4.0));
                samples.emplace_back(x, y);
            }
        }
    }
    for (const auto& [x, y] : samples) {
        if (x < 0 || x >= canvas.side || y < 0 || y >= canvas.side) {
            return false;
        }
        const std::uint8_t* p = canvas.at(x, y);
        if (p[0] != expected[0] || p[1] != expected[1] || p[2] != expected[2]) {
            return false;
        }
    }
    return true;
}

VerifyCheck verify_label_soundness(const PipelineConfig& user, int mosaics) {
    const PipelineConfig config = verify_config(user, 64);
    const SyntheticDataset dataset = builtin_verify_dataset(64);
    const SyntheticImageSource source(dataset);
    RandomStream stream(config.seed, 0);
    long long checked = 0;
    long long violations = 0;
    for (int i = 0; i < mosaics; ++i) {
        const MosaicResult result =
            augment_once(dataset.entries, source, config, stream);
        for (std::size_t b = 0; b < result.boxes.size(); ++b) {
            const std::size_t dataset_index =
                result.drawn_indices[result.box_source[b]];
            ++checked;
            if (!box_interior_matches(result.canvas, result.boxes[b],
                                      synthetic_color(dataset_index))) {
                ++violations;
            }
        }
    }
    VerifyCheck check;
    check.name = "label-soundness";
    check.passed = violations == 0 && checked > 0;
    check.detail = std::to_string(checked) + " boxes sampled over " +
                   std::to_string(mosaics) + " mosaics, " +
                   std::to_string(violations) + " violations";
    return check;
}

VerifyCheck verify_select_rule(const PipelineConfig& user, int mosaics) {
    PipelineConfig config = verify_config(user, 64);
    config.select_prob = 1.0;
    const SyntheticDataset dataset = builtin_verify_dataset(64);
    const SyntheticImageSource source(dataset);
    RandomStream stream(config.seed, 0);
    int violations = 0;
    for (int i = 0; i < mosaics; ++i) {
        const MosaicResult result =
            augment_once(dataset.entries, source, config, stream);
        std::array<double, 4> densities{};
        for (int slot = 0; slot < 4; ++slot) {
            densities[slot] = ranking_density(
                dataset.entries[result.drawn_indices[slot]],
                config.density_metric);
        }
        if (!select_rule_holds(result.plan, densities)) {
            ++violations;
        }
    }
    VerifyCheck check;
    check.name = "select-rule";
    check.passed = violations == 0;
    check.detail = std::to_string(mosaics) + " select-mode mosaics, " +
                   std::to_string(violations) + " rule violations";
    return check;
}

VerifyCheck verify_gate_frequency(std::uint64_t seed) {
    const int draws = 10000;
    const double tolerance = 0.02;
    double worst = 0.0;
    for (const double s : {0.1, 0.4, 0.8}) {
        RandomStream stream(seed);
        int hits = 0;
        for (int i = 0; i < draws; ++i) {
            hits += draw_gate(stream, s) ? 1 : 0;
        }
        const double fraction = static_cast<double>(hits) / draws;
        worst = std::max(worst, std::abs(fraction - s));
    }
    VerifyCheck check;
    check.name = "gate-frequency";
    check.passed = worst <= tolerance;
    check.detail = "worst |observed - S| = " + fmt_double(worst) + " over " +
                   std::to_string(draws) + " draws at S in {0.1,0.4,0.8}";
    return check;
}

std::uint64_t compute_reference_digest(std::uint64_t seed) {
    PipelineConfig config;
    config.output_size = 128;
    config.seed = seed;
    const SyntheticDataset dataset = builtin_verify_dataset(128);
    const SyntheticImageSource source(dataset);
    RandomStream stream(config.seed, 0);
    Fnv1a64 digest;
    for (int i = 0; i < kGoldenCount; ++i) {
        const MosaicResult result =
            augment_once(dataset.entries, source, config, stream);
        digest.update(result.canvas.pixels);
        for (const BBox& box : result.boxes) {
            digest.update(
                serialize_yolo_line(box, config.canvas_side(),
                                    config.canvas_side()));
            digest.update("\n");
        }
    }
    return digest.value();
}

VerifyCheck verify_golden_digest() {
    const std::uint64_t digest = compute_reference_digest(kGoldenSeed);
    VerifyCheck check;
    check.name = "golden-digest";
    check.passed = digest == kGoldenDigest;
    check.detail = "seed " + std::to_string(kGoldenSeed) + ": computed " +
                   to_hex(digest) + ", committed " + to_hex(kGoldenDigest);
    return check;
}

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport cmd_verify(const PipelineConfig& config, std::ostream& log) {
    VerifyReport report;
    report.checks.push_back(verify_label_soundness(config, 1000));
    report.checks.push_back(verify_select_rule(config, 10000));
    report.checks.push_back(verify_gate_frequency(config.seed));
    report.checks.push_back(verify_golden_digest());
    for (const VerifyCheck& check : report.checks) {
        log << (check.passed ? "PASS" : "FAIL") << ": " << check.name << " ("
            << check.detail << ")\n";
    }
    return report;
}

}  // namespace mosaicforge
