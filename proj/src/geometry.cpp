#include "mosaicforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mosaicforge {

long long round_half_up(double x) {
    return static_cast<long long>(std::floor(x + 0.5));
}

PixelRect intersect(const PixelRect& a, const PixelRect& b) {
    PixelRect r{std::max(a.x1, b.x1), std::max(a.y1, b.y1),
                std::min(a.x2, b.x2), std::min(a.y2, b.y2)};
    if (r.empty()) {
        return PixelRect{};
    }
    return r;
}

QuadrantLayout quadrant_layout(SpliceCenter center, int canvas_side) {
    if (canvas_side <= 0) {
        throw std::invalid_argument("canvas_side must be positive, got " +
                                    std::to_string(canvas_side));
    }
    if (center.cx < 0 || center.cx > canvas_side || center.cy < 0 ||
        center.cy > canvas_side) {
        throw std::invalid_argument(
            "splice center (" + std::to_string(center.cx) + "," +
            std::to_string(center.cy) + ") outside canvas of side " +
            std::to_string(canvas_side));
    }
    const int L = canvas_side;
    const int cx = center.cx;
    const int cy = center.cy;
    QuadrantLayout layout;
    layout.canvas_side = L;
    layout.rects[0] = PixelRect{0, 0, cx, cy};
    layout.rects[1] = PixelRect{cx, 0, L, cy};
    layout.rects[2] = PixelRect{0, cy, cx, L};
    layout.rects[3] = PixelRect{cx, cy, L, L};
    return layout;
}

int largest_quadrant(const QuadrantLayout& layout) {
    int best = 0;
    for (int q = 1; q < 4; ++q) {
        if (layout.rects[q].area() > layout.rects[best].area()) {
            best = q;
        }
    }
    return best;
}

BBox remap_box(const BBox& box, double scale, int offset_x, int offset_y) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("remap_box scale must be positive, got " +
                                    std::to_string(scale));
    }
    BBox out;
    out.class_id = box.class_id;
    out.x1 = static_cast<int>(round_half_up(scale * box.x1)) + offset_x;
    out.y1 = static_cast<int>(round_half_up(scale * box.y1)) + offset_y;
    out.x2 = static_cast<int>(round_half_up(scale * box.x2)) + offset_x;
    out.y2 = static_cast<int>(round_half_up(scale * box.y2)) + offset_y;
    return out;
}

std::optional<BBox> clip_box(const BBox& box, const PixelRect& bounds,
                             double min_visibility, int min_side) {
    if (min_visibility < 0.0 || min_visibility > 1.0) {
        throw std::invalid_argument("min_visibility must be in [0,1], got " +
                                    std::to_string(min_visibility));
    }
    const long long pre_area = box.area();
    if (pre_area <= 0) {
        return std::nullopt;
    }
    BBox clipped = box;
    clipped.x1 = std::max(box.x1, bounds.x1);
    clipped.y1 = std::max(box.y1, bounds.y1);
    clipped.x2 = std::min(box.x2, bounds.x2);
    clipped.y2 = std::min(box.y2, bounds.y2);
    if (clipped.x1 >= clipped.x2 || clipped.y1 >= clipped.y2) {
        return std::nullopt;
    }
    if (clipped.width() < min_side || clipped.height() < min_side) {
        return std::nullopt;
    }
    const double visibility =
        static_cast<double>(clipped.area()) / static_cast<double>(pre_area);
    if (visibility < min_visibility) {
        return std::nullopt;
    }
    return clipped;
}

}  // namespace mosaicforge
