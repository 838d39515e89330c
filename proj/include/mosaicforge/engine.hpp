#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mosaicforge/annotations.hpp"
#include "mosaicforge/config.hpp"
#include "mosaicforge/geometry.hpp"
#include "mosaicforge/raster.hpp"
#include "mosaicforge/sampling.hpp"

namespace mosaicforge {

/// Pixel access for a dataset, keyed by entry index. Implementations
/// must be safe to call from concurrent workers.
class ImageSource {
public:
    virtual ~ImageSource() = default;
    virtual Image load(std::size_t index) const = 0;
};

/// Decodes entry image files on demand.
class DiskImageSource : public ImageSource {
public:
    explicit DiskImageSource(const std::vector<LabeledImage>& entries)
        : entries_(&entries) {}
    Image load(std::size_t index) const override;

private:
    const std::vector<LabeledImage>* entries_;
};

enum class PlanMode { Plain, Select };

/// One quadrant's resolved placement.
struct QuadrantAssignment {
    int quadrant = 0;    // 0..3
    int image_slot = 0;  // position within the four drawn images
    double scale = 1.0;  // full factor applied to the source image
    double jitter = 1.0; // the drawn jitter component of `scale`
    int dest_x = 0;      // canvas origin of the placed image
    int dest_y = 0;
};

/// Fully resolved assembly plan, prior to any pixel work. Assignments
/// are indexed by quadrant and cover each drawn image exactly once.
struct MosaicPlan {
    PlanMode mode = PlanMode::Plain;
    SpliceCenter center;
    std::array<QuadrantAssignment, 4> assignments;
    int canvas_side = 0;
};

/// A composed mosaic: canvas pixels, surviving boxes in canvas
/// coordinates, and per-box provenance.
struct MosaicResult {
    Canvas canvas;
    std::vector<BBox> boxes;
    std::vector<int> box_source;  // drawn-image slot (0..3) per box
    std::array<std::size_t, 4> drawn_indices{0, 1, 2, 3};  // dataset index per slot
    MosaicPlan plan;
};

struct Placement {
    int dest_x = 0;
    int dest_y = 0;
    PixelRect clip_rect;
};

/// The density value plan_select ranks by.
double ranking_density(const LabeledImage& image, DensityMetric metric);

/// Anchors the scaled image's corner adjacent to the splice center on
/// the center itself: Q0 bottom-right, Q1 bottom-left, Q2 top-right,
/// Q3 top-left. clip_rect is the quadrant's mask rect.
Placement placement_geometry(int scaled_width, int scaled_height,
                             int quadrant, SpliceCenter center,
                             int canvas_side);

/// Random assignment: a drawn 4-permutation lays the images into
/// quadrants, then one scale jitter per quadrant in Q0..Q3 order.
MosaicPlan plan_plain(const std::vector<LabeledImage>& images,
                      SpliceCenter center, const PipelineConfig& config,
                      RandomStream& stream);

/// Density-driven assignment: the densest image (ties to the lowest
/// slot) goes to the largest quadrant; the remaining three are placed
/// by a drawn 3-permutation. Consumes the same number of raw draws as
/// plan_plain so the jitter draws line up across modes.
MosaicPlan plan_select(const std::vector<LabeledImage>& images,
                       SpliceCenter center, const PipelineConfig& config,
                       RandomStream& stream);

/// True when `plan` places the maximal-density image (ties to lowest
/// slot) in the maximal-area quadrant (ties to lowest index).
/// `densities` are the four drawn images' ranking values in slot
/// order.
bool select_rule_holds(const MosaicPlan& plan,
                       const std::array<double, 4>& densities);

/// Composites the plan: each image resized, blitted into its quadrant,
/// and its boxes remapped then clipped against the region the image
/// actually covers.
MosaicResult assemble(const MosaicPlan& plan,
                      const std::vector<LabeledImage>& images,
                      const std::array<Image, 4>& pixels,
                      const PipelineConfig& config);

/// One full augmentation with the frozen draw order: four dataset
/// indices, the gate, the center, quadrant assignment, one jitter per
/// quadrant. Every mosaic consumes exactly 14 raw draws regardless of
/// mode.
MosaicResult augment_once(const std::vector<LabeledImage>& dataset,
                          const ImageSource& source,
                          const PipelineConfig& config, RandomStream& stream);

}  // namespace mosaicforge
