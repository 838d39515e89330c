// End-to-end acceptance checks for the augmentation pipeline. Each
// criterion prints one PASS/FAIL line with its measured values; the
// binary exits nonzero if any criterion fails. All randomness comes
// from fixed-seed streams, so every run reproduces the same numbers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mosaicforge/annotations.hpp"
#include "mosaicforge/commands.hpp"
#include "mosaicforge/digest.hpp"
#include "mosaicforge/engine.hpp"
#include "mosaicforge/geometry.hpp"
#include "mosaicforge/sampling.hpp"
#include "mosaicforge/synthetic.hpp"

using namespace mosaicforge;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const std::string& name, bool passed, const std::string& detail) {
    std::cout << (passed ? "PASS" : "FAIL") << ": " << name << " — " << detail
              << '\n';
    if (!passed) {
        ++failures;
    }
}

PipelineConfig pipeline(int output_size, double select_prob) {
    PipelineConfig config;
    config.output_size = output_size;
    config.select_prob = select_prob;
    return config;
}

// Density recomputed from first principles, independent of
// ranking_density.
double raw_density(const LabeledImage& image) {
    return static_cast<double>(image.boxes.size()) /
           (static_cast<double>(image.width) * image.height);
}

// The densest image must land in the largest mask region on every
// select-mode mosaic. Duplicate box counts in the dataset force the
// lowest-slot / lowest-quadrant tie-breaks through both code paths.
void criterion_select_rule() {
    const int counts[] = {0, 5, 5, 10, 25, 25, 40, 8};
    const SyntheticDataset dataset = make_color_coded_dataset(counts, 64);
    const SyntheticImageSource source(dataset);
    const PipelineConfig config = pipeline(64, 1.0);
    RandomStream stream(20001);
    const int trials = 10000;
    int violations = 0;
    for (int i = 0; i < trials; ++i) {
        const MosaicResult result =
            augment_once(dataset.entries, source, config, stream);

        int densest_slot = 0;
        for (int slot = 1; slot < 4; ++slot) {
            if (raw_density(dataset.entries[result.drawn_indices[slot]]) >
                raw_density(
                    dataset.entries[result.drawn_indices[densest_slot]])) {
                densest_slot = slot;
            }
        }
        const QuadrantLayout layout =
            quadrant_layout(result.plan.center, result.plan.canvas_side);
        int largest = 0;
        for (int q = 1; q < 4; ++q) {
            if (layout.rects[q].area() > layout.rects[largest].area()) {
                largest = q;
            }
        }
        if (result.plan.mode != PlanMode::Select ||
            result.plan.assignments[largest].image_slot != densest_slot) {
            ++violations;
        }
    }
    std::ostringstream detail;
    detail << "violations " << violations << "/" << trials;
    report("select placement rule", violations == 0, detail.str());
}

// Observed gate frequency within 0.02 of S at three operating points.
void criterion_gate_frequency() {
    const int trials = 10000;
    double worst = 0.0;
    for (const double s : {0.1, 0.4, 0.8}) {
        RandomStream stream(30000 + static_cast<std::uint64_t>(s * 100));
        int hits = 0;
        for (int i = 0; i < trials; ++i) {
            hits += draw_gate(stream, s) ? 1 : 0;
        }
        worst = std::max(
            worst, std::abs(static_cast<double>(hits) / trials - s));
    }
    std::ostringstream detail;
    detail << "worst |observed - S| = " << worst << " (limit 0.02)";
    report("gate frequency", worst <= 0.02, detail.str());
}

// With S = 0 every mosaic must use random assignment: each image slot
// appears in each quadrant about a quarter of the time (within 3 sigma)
// and no select-mode plan ever appears.
void criterion_plain_uniformity() {
    const int counts[] = {3, 12, 7, 0, 25, 5, 18, 9};
    const SyntheticDataset dataset = make_color_coded_dataset(counts, 64);
    const SyntheticImageSource source(dataset);
    const PipelineConfig config = pipeline(64, 0.0);
    RandomStream stream(40001);
    const int trials = 10000;
    int select_plans = 0;
    std::array<std::array<int, 4>, 4> cell{};  // [quadrant][image_slot]
    for (int i = 0; i < trials; ++i) {
        const MosaicResult result =
            augment_once(dataset.entries, source, config, stream);
        if (result.plan.mode != PlanMode::Plain) {
            ++select_plans;
        }
        for (int q = 0; q < 4; ++q) {
            ++cell[q][result.plan.assignments[q].image_slot];
        }
    }
    // Per cell: n = 10000, p = 1/4, 3 sigma = 3 * sqrt(n p (1-p)) = 130.
    const int expected = trials / 4;
    const int band = 130;
    int worst_deviation = 0;
    for (int q = 0; q < 4; ++q) {
        for (int slot = 0; slot < 4; ++slot) {
            worst_deviation = std::max(worst_deviation,
                                       std::abs(cell[q][slot] - expected));
        }
    }
    std::ostringstream detail;
    detail << "select plans " << select_plans << ", worst cell deviation "
           << worst_deviation << " (limit " << band << ")";
    report("S = 0 assignment uniformity",
           select_plans == 0 && worst_deviation <= band, detail.str());
}

// Every emitted box must sit on pixels of its provenance image: a 5x5
// interior grid with 1 px inset, sampled on the color-coded dataset.
void criterion_label_soundness() {
    const int counts[] = {3, 12, 7, 0, 25, 5, 18, 9};
    const SyntheticDataset dataset = make_color_coded_dataset(counts, 64);
    const SyntheticImageSource source(dataset);
    const PipelineConfig config = pipeline(64, 0.4);
    RandomStream stream(50001);
    const int trials = 1000;
    long long boxes_checked = 0;
    int violations = 0;
    for (int i = 0; i < trials; ++i) {
        const MosaicResult result =
            augment_once(dataset.entries, source, config, stream);
        for (std::size_t b = 0; b < result.boxes.size(); ++b) {
            const Rgb expected = synthetic_color(
                result.drawn_indices[result.box_source[b]]);
            ++boxes_checked;
            if (!box_interior_matches(result.canvas, result.boxes[b],
                                      expected)) {
                ++violations;
            }
        }
    }
    std::ostringstream detail;
    detail << "violations " << violations << " across " << boxes_checked
           << " boxes in " << trials << " mosaics";
    report("label soundness", violations == 0 && boxes_checked > 0,
           detail.str());
}

// Selecting by density must raise the mean number of surviving boxes
// per mosaic on a count-skewed dataset; Welch one-sided z at 99%.
void criterion_density_shift() {
    const int counts[] = {0, 5, 10, 50};
    const SyntheticDataset dataset = make_color_coded_dataset(counts, 64);
    const SyntheticImageSource source(dataset);
    const int trials = 1500;

    const auto sample_mean_var = [&](double s, std::uint64_t seed) {
        RandomStream stream(seed);
        const PipelineConfig config = pipeline(64, s);
        std::vector<double> values;
        values.reserve(trials);
        for (int i = 0; i < trials; ++i) {
            values.push_back(static_cast<double>(
                augment_once(dataset.entries, source, config, stream)
                    .boxes.size()));
        }
        double mean = 0.0;
        for (const double v : values) {
            mean += v;
        }
        mean /= trials;
        double var = 0.0;
        for (const double v : values) {
            var += (v - mean) * (v - mean);
        }
        var /= trials - 1;
        return std::pair<double, double>(mean, var);
    };

    const auto [mean_select, var_select] = sample_mean_var(1.0, 60001);
    const auto [mean_plain, var_plain] = sample_mean_var(0.0, 60002);
    const double z = (mean_select - mean_plain) /
                     std::sqrt(var_select / trials + var_plain / trials);
    std::ostringstream detail;
    detail << "mean boxes select " << mean_select << " vs plain "
           << mean_plain << ", z = " << z << " (needs > 2.326)";
    report("density shift", z > 2.326, detail.str());
}

// Two identical batch runs must produce byte-identical files, and the
// committed reference digest must be reproduced.
void criterion_determinism() {
    const fs::path base =
        fs::temp_directory_path() / "mosaicforge_acceptance";
    fs::remove_all(base);
    const fs::path input = base / "input";
    fs::create_directories(input);
    const int counts[] = {3, 12, 7, 0, 25, 5, 18, 9};
    write_dataset_to_disk(make_color_coded_dataset(counts, 64), input);

    PipelineConfig config = pipeline(64, 0.4);
    config.seed = 99;
    config.count = 24;
    config.workers = 3;

    const auto run_tree = [&](const fs::path& out) {
        std::ostringstream log;
        cmd_generate(config, input, out, log);
        std::map<std::string, std::string> tree;
        for (const auto& entry : fs::recursive_directory_iterator(out)) {
            if (!entry.is_regular_file()) {
                continue;
            }
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream bytes;
            bytes << in.rdbuf();
            tree[entry.path().lexically_relative(out).generic_string()] =
                bytes.str();
        }
        return tree;
    };

    const auto tree1 = run_tree(base / "run1");
    const auto tree2 = run_tree(base / "run2");
    const bool trees_match = !tree1.empty() && tree1 == tree2;

    const std::uint64_t digest = compute_reference_digest(kGoldenSeed);
    const bool digest_matches = digest == kGoldenDigest;

    std::ostringstream detail;
    detail << tree1.size() << " files byte-identical: "
           << (trees_match ? "yes" : "no") << "; reference digest "
           << to_hex(digest) << (digest_matches ? " == " : " != ")
           << to_hex(kGoldenDigest);
    report("batch determinism and reference digest",
           trees_match && digest_matches, detail.str());
    fs::remove_all(base);
}

// The four mask areas always sum to the full canvas, and each matches a
// brute-force pixel count.
void criterion_mask_geometry() {
    RandomStream stream(70001);
    bool sums_ok = true;
    const int big_side = 1280;
    for (int i = 0; i < 10000; ++i) {
        const SpliceCenter center{stream.uniform_int(0, big_side),
                                  stream.uniform_int(0, big_side)};
        const QuadrantLayout layout = quadrant_layout(center, big_side);
        long long total = 0;
        for (int q = 0; q < 4; ++q) {
            total += layout.rects[q].area();
        }
        if (total != static_cast<long long>(big_side) * big_side) {
            sums_ok = false;
        }
    }

    const int small_side = 64;
    bool counts_ok = true;
    for (int i = 0; i < 1000; ++i) {
        const SpliceCenter center{stream.uniform_int(0, small_side),
                                  stream.uniform_int(0, small_side)};
        const QuadrantLayout layout = quadrant_layout(center, small_side);
        std::array<long long, 4> pixel_count{};
        for (int y = 0; y < small_side; ++y) {
            for (int x = 0; x < small_side; ++x) {
                const int q = (x < center.cx ? 0 : 1) +
                              (y < center.cy ? 0 : 2);
                ++pixel_count[q];
            }
        }
        for (int q = 0; q < 4; ++q) {
            if (pixel_count[q] != layout.rects[q].area()) {
                counts_ok = false;
            }
        }
        int brute_largest = 0;
        for (int q = 1; q < 4; ++q) {
            if (pixel_count[q] > pixel_count[brute_largest]) {
                brute_largest = q;
            }
        }
        if (largest_quadrant(layout) != brute_largest) {
            counts_ok = false;
        }
    }
    std::ostringstream detail;
    detail << "area sums over 10000 centers: " << (sums_ok ? "exact" : "off")
           << "; brute-force pixel counts over 1000 centers: "
           << (counts_ok ? "exact" : "off");
    report("mask geometry identities", sums_ok && counts_ok, detail.str());
}

// Serialize -> parse round trip: within one pixel on the first pass and
// an exact fixed point from then on.
void criterion_label_round_trip() {
    RandomStream stream(80001);
    const int trials = 10000;
    int first_pass_off = 0;
    int fixed_point_off = 0;
    for (int i = 0; i < trials; ++i) {
        const int width = stream.uniform_int(16, 4096);
        const int height = stream.uniform_int(16, 4096);
        BBox box;
        box.class_id = stream.uniform_int(0, 80);
        box.x1 = stream.uniform_int(0, width - 2);
        box.y1 = stream.uniform_int(0, height - 2);
        box.x2 = stream.uniform_int(box.x1 + 2, width);
        box.y2 = stream.uniform_int(box.y1 + 2, height);

        const BBox once =
            parse_yolo_line(serialize_yolo_line(box, width, height), width,
                            height);
        if (once.class_id != box.class_id || std::abs(once.x1 - box.x1) > 1 ||
            std::abs(once.y1 - box.y1) > 1 || std::abs(once.x2 - box.x2) > 1 ||
            std::abs(once.y2 - box.y2) > 1) {
            ++first_pass_off;
        }
        const BBox twice =
            parse_yolo_line(serialize_yolo_line(once, width, height), width,
                            height);
        if (!(twice == once)) {
            ++fixed_point_off;
        }
    }
    std::ostringstream detail;
    detail << "first pass beyond 1 px: " << first_pass_off << "/" << trials
           << "; fixed-point violations: " << fixed_point_off;
    report("label round trip", first_pass_off == 0 && fixed_point_off == 0,
           detail.str());
}

}  // namespace

int main() {
    criterion_select_rule();
    criterion_gate_frequency();
    criterion_plain_uniformity();
    criterion_label_soundness();
    criterion_density_shift();
    criterion_determinism();
    criterion_mask_geometry();
    criterion_label_round_trip();
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
