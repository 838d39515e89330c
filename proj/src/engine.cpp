#include "mosaicforge/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mosaicforge {

namespace {

double base_scale(const LabeledImage& image, int output_size) {
    const int longest = std::max(image.width, image.height);
    if (longest <= 0) {
        throw std::invalid_argument("image has non-positive dimensions: " +
                                    image.image_path.string());
    }
    return static_cast<double>(output_size) / longest;
}

void require_four(const std::vector<LabeledImage>& images) {
    if (images.size() != 4) {
        throw std::invalid_argument("a mosaic plan needs exactly 4 images, got " +
                                    std::to_string(images.size()));
    }
}

// Shared tail of both plan flavors: one jitter per quadrant in Q0..Q3
// order, then the resolved scale and corner-anchored origin.
void fill_assignments(MosaicPlan& plan,
                      const std::array<int, 4>& slot_for_quadrant,
                      const std::vector<LabeledImage>& images,
                      const PipelineConfig& config, RandomStream& stream) {
    std::array<double, 4> jitter{};
    for (int q = 0; q < 4; ++q) {
        jitter[q] = draw_scale_jitter(stream, config.scale_jitter_lo,
                                      config.scale_jitter_hi);
    }
    for (int q = 0; q < 4; ++q) {
        const int slot = slot_for_quadrant[q];
        const LabeledImage& image = images[slot];
        const double scale =
            base_scale(image, config.output_size) * jitter[q];
        const int scaled_w = scaled_size(image.width, scale);
        const int scaled_h = scaled_size(image.height, scale);
        const Placement placement = placement_geometry(
            scaled_w, scaled_h, q, plan.center, plan.canvas_side);
        plan.assignments[q] = QuadrantAssignment{
            q, slot, scale, jitter[q], placement.dest_x, placement.dest_y};
    }
}

int densest_slot(const std::array<double, 4>& densities) {
    int best = 0;
    for (int slot = 1; slot < 4; ++slot) {
        if (densities[slot] > densities[best]) {
            best = slot;
        }
    }
    return best;
}

}  // namespace

Image DiskImageSource::load(std::size_t index) const {
    return decode_image(entries_->at(index).image_path);
}

double ranking_density(const LabeledImage& image, DensityMetric metric) {
    if (metric == DensityMetric::Count) {
        return static_cast<double>(image.boxes.size());
    }
    return target_density(image).value;
}

Placement placement_geometry(int scaled_width, int scaled_height,
                             int quadrant, SpliceCenter center,
                             int canvas_side) {
    if (quadrant < 0 || quadrant > 3) {
        throw std::invalid_argument("quadrant index must be in 0..3");
    }
    const QuadrantLayout layout = quadrant_layout(center, canvas_side);
    Placement placement;
    placement.clip_rect = layout.rects[quadrant];
    const bool left_of_center = quadrant == 0 || quadrant == 2;
    const bool above_center = quadrant == 0 || quadrant == 1;
    placement.dest_x =
        left_of_center ? center.cx - scaled_width : center.cx;
    placement.dest_y =
        above_center ? center.cy - scaled_height : center.cy;
    return placement;
}

MosaicPlan plan_plain(const std::vector<LabeledImage>& images,
                      SpliceCenter center, const PipelineConfig& config,
                      RandomStream& stream) {
    require_four(images);
    MosaicPlan plan;
    plan.mode = PlanMode::Plain;
    plan.center = center;
    plan.canvas_side = config.canvas_side();
    const std::vector<int> perm = draw_permutation(stream, 4);
    std::array<int, 4> slot_for_quadrant{};
    for (int q = 0; q < 4; ++q) {
        slot_for_quadrant[q] = perm[q];
    }
    fill_assignments(plan, slot_for_quadrant, images, config, stream);
    return plan;
}

MosaicPlan plan_select(const std::vector<LabeledImage>& images,
                       SpliceCenter center, const PipelineConfig& config,
                       RandomStream& stream) {
    require_four(images);
    MosaicPlan plan;
    plan.mode = PlanMode::Select;
    plan.center = center;
    plan.canvas_side = config.canvas_side();

    std::array<double, 4> densities{};
    for (int slot = 0; slot < 4; ++slot) {
        densities[slot] = ranking_density(images[slot], config.density_metric);
    }
    const int densest = densest_slot(densities);
    const QuadrantLayout layout = quadrant_layout(center, plan.canvas_side);
    const int target_quadrant = largest_quadrant(layout);

    std::array<int, 3> other_slots{};
    std::array<int, 3> other_quadrants{};
    for (int i = 0, s = 0, q = 0; i < 4; ++i) {
        if (i != densest) {
            other_slots[s++] = i;
        }
        if (i != target_quadrant) {
            other_quadrants[q++] = i;
        }
    }
    const std::vector<int> perm = draw_permutation(stream, 3);
    // plan_plain's 4-permutation takes one more raw draw than the
    // 3-permutation; discard one so the jitter draws land on the same
    // stream positions in both modes.
    stream.skip(1);

    std::array<int, 4> slot_for_quadrant{};
    slot_for_quadrant[target_quadrant] = densest;
    for (int j = 0; j < 3; ++j) {
        slot_for_quadrant[other_quadrants[j]] = other_slots[perm[j]];
    }
    fill_assignments(plan, slot_for_quadrant, images, config, stream);
    return plan;
}

bool select_rule_holds(const MosaicPlan& plan,
                       const std::array<double, 4>& densities) {
    if (plan.mode != PlanMode::Select) {
        return false;
    }
    const QuadrantLayout layout =
        quadrant_layout(plan.center, plan.canvas_side);
    const int target = largest_quadrant(layout);
    return plan.assignments[target].image_slot == densest_slot(densities);
}

MosaicResult assemble(const MosaicPlan& plan,
                      const std::vector<LabeledImage>& images,
                      const std::array<Image, 4>& pixels,
                      const PipelineConfig& config) {
    require_four(images);
    for (int slot = 0; slot < 4; ++slot) {
        if (pixels[slot].width != images[slot].width ||
            pixels[slot].height != images[slot].height) {
            throw std::runtime_error(
                "decoded dimensions disagree with dataset metadata for " +
                images[slot].image_path.string());
        }
    }
    MosaicResult result;
    result.plan = plan;
    result.canvas = Canvas(plan.canvas_side);
    const QuadrantLayout layout =
        quadrant_layout(plan.center, plan.canvas_side);

    for (int q = 0; q < 4; ++q) {
        const QuadrantAssignment& assignment = plan.assignments[q];
        const Image scaled =
            resize_image(pixels[assignment.image_slot], assignment.scale);
        const PixelRect covered =
            blit_cropped(result.canvas, scaled, assignment.dest_x,
                         assignment.dest_y, layout.rects[q]);
        for (const BBox& box : images[assignment.image_slot].boxes) {
            const BBox remapped = remap_box(box, assignment.scale,
                                            assignment.dest_x,
                                            assignment.dest_y);
            const auto kept = clip_box(remapped, covered,
                                       config.min_visibility, config.min_side);
            if (kept) {
                result.boxes.push_back(*kept);
                result.box_source.push_back(assignment.image_slot);
            }
        }
    }
    return result;
}

MosaicResult augment_once(const std::vector<LabeledImage>& dataset,
                          const ImageSource& source,
                          const PipelineConfig& config, RandomStream& stream) {
    const auto indices = draw_indices(stream, dataset.size());
    const bool select = draw_gate(stream, config.select_prob);
    const SpliceCenter center =
        draw_center(stream, config.canvas_side(), config.border_fraction);

    std::vector<LabeledImage> drawn;
    drawn.reserve(4);
    for (std::size_t index : indices) {
        drawn.push_back(dataset[index]);
    }
    const MosaicPlan plan = select
                                ? plan_select(drawn, center, config, stream)
                                : plan_plain(drawn, center, config, stream);

    std::array<Image, 4> pixels;
    for (int slot = 0; slot < 4; ++slot) {
        pixels[slot] = source.load(indices[slot]);
    }
    MosaicResult result = assemble(plan, drawn, pixels, config);
    result.drawn_indices = indices;
    return result;
}

}  // namespace mosaicforge
