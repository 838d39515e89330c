#pragma once

#include <array>
#include <optional>

#include "mosaicforge/annotations.hpp"

namespace mosaicforge {

/// Half-open pixel rectangle [x1,x2) x [y1,y2). Empty when x1 == x2 or
/// y1 == y2; half-open bounds let adjacent rectangles tile a canvas
/// without sharing pixels.
struct PixelRect {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;

    int width() const { return x2 - x1; }
    int height() const { return y2 - y1; }
    long long area() const {
        return static_cast<long long>(width()) * height();
    }
    bool empty() const { return x1 >= x2 || y1 >= y2; }
    bool contains(int x, int y) const {
        return x >= x1 && x < x2 && y >= y1 && y < y2;
    }

    bool operator==(const PixelRect&) const = default;
};

/// Intersection of two rectangles; an empty result is normalized to
/// the all-zero rect.
PixelRect intersect(const PixelRect& a, const PixelRect& b);

/// The point on the canvas where the four spliced images meet.
struct SpliceCenter {
    int cx = 0;
    int cy = 0;

    bool operator==(const SpliceCenter&) const = default;
};

/// The four mask regions induced by a splice center, in fixed order
/// Q0=top-left, Q1=top-right, Q2=bottom-left, Q3=bottom-right. The
/// rects tile the canvas exactly.
struct QuadrantLayout {
    std::array<PixelRect, 4> rects;
    int canvas_side = 0;
};

/// Single rounding rule for every scaled coordinate in the project:
/// round half away from zero toward +inf (floor(x + 0.5)).
long long round_half_up(double x);

/// Builds the four-quadrant layout for `center` on an L x L canvas.
/// Throws std::invalid_argument if the center lies outside the canvas.
QuadrantLayout quadrant_layout(SpliceCenter center, int canvas_side);

/// Index of the quadrant with the largest area; ties break to the
/// lowest index.
int largest_quadrant(const QuadrantLayout& layout);

/// Maps each corner as c' = round(scale * c) + offset. Class id is
/// unchanged. Throws std::invalid_argument if scale <= 0.
BBox remap_box(const BBox& box, double scale, int offset_x, int offset_y);

/// Intersects `box` with `bounds`. Returns nullopt (dropped) when the
/// surviving area fraction falls below `min_visibility` or either side
/// shrinks below `min_side` pixels.
std::optional<BBox> clip_box(const BBox& box, const PixelRect& bounds,
                             double min_visibility, int min_side);

}  // namespace mosaicforge
