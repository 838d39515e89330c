#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "mosaicforge/geometry.hpp"
#include "mosaicforge/sampling.hpp"

using namespace mosaicforge;

namespace {

std::array<long long, 4> layout_areas(const QuadrantLayout& layout) {
    return {layout.rects[0].area(), layout.rects[1].area(),
            layout.rects[2].area(), layout.rects[3].area()};
}

// Which quadrant a pixel belongs to, straight from the definition of
// the splice: left/above the center is Q0, and so on.
int quadrant_of_pixel(int x, int y, SpliceCenter center) {
    const int col = x < center.cx ? 0 : 1;
    const int row = y < center.cy ? 0 : 1;
    return row * 2 + col;
}

}  // namespace

TEST_CASE("round_half_up rounds halves toward +inf") {
    CHECK(round_half_up(0.0) == 0);
    CHECK(round_half_up(0.4) == 0);
    CHECK(round_half_up(0.5) == 1);
    CHECK(round_half_up(1.5) == 2);
    CHECK(round_half_up(2.4) == 2);
    CHECK(round_half_up(2.5) == 3);
    CHECK(round_half_up(-0.5) == 0);
    CHECK(round_half_up(-1.5) == -1);
    CHECK(round_half_up(-2.4) == -2);
    CHECK(round_half_up(7.0) == 7);
}

TEST_CASE("quadrant_layout: centered splice gives four equal masks") {
    const QuadrantLayout layout = quadrant_layout({640, 640}, 1280);
    for (const PixelRect& rect : layout.rects) {
        CHECK(rect.area() == 409600);
    }
    CHECK(layout.rects[0] == PixelRect{0, 0, 640, 640});
    CHECK(layout.rects[1] == PixelRect{640, 0, 1280, 640});
    CHECK(layout.rects[2] == PixelRect{0, 640, 640, 1280});
    CHECK(layout.rects[3] == PixelRect{640, 640, 1280, 1280});
}

TEST_CASE("quadrant_layout: off-center mask areas") {
    CHECK(layout_areas(quadrant_layout({320, 960}, 1280)) ==
          std::array<long long, 4>{307200, 921600, 102400, 307200});
    CHECK(layout_areas(quadrant_layout({900, 400}, 1280)) ==
          std::array<long long, 4>{360000, 152000, 792000, 334400});
}

TEST_CASE("quadrant_layout: corner center degenerates three masks") {
    const QuadrantLayout layout = quadrant_layout({0, 0}, 100);
    CHECK(layout.rects[0].empty());
    CHECK(layout.rects[1].empty());
    CHECK(layout.rects[2].empty());
    CHECK(layout.rects[3] == PixelRect{0, 0, 100, 100});
}

TEST_CASE("quadrant_layout rejects centers outside the canvas") {
    CHECK_THROWS_AS(quadrant_layout({-1, 50}, 100), std::invalid_argument);
    CHECK_THROWS_AS(quadrant_layout({50, 101}, 100), std::invalid_argument);
}

TEST_CASE("quadrant areas always sum to the canvas area") {
    RandomStream stream(2024);
    const int side = 1280;
    for (int i = 0; i < 10000; ++i) {
        const SpliceCenter center{stream.uniform_int(0, side),
                                  stream.uniform_int(0, side)};
        const auto areas = layout_areas(quadrant_layout(center, side));
        CHECK(areas[0] + areas[1] + areas[2] + areas[3] ==
              static_cast<long long>(side) * side);
    }
}

TEST_CASE("quadrants tile the canvas: every pixel in exactly one rect") {
    RandomStream stream(7);
    const int side = 48;
    for (int trial = 0; trial < 25; ++trial) {
        const SpliceCenter center{stream.uniform_int(0, side),
                                  stream.uniform_int(0, side)};
        const QuadrantLayout layout = quadrant_layout(center, side);
        for (int y = 0; y < side; ++y) {
            for (int x = 0; x < side; ++x) {
                int owners = 0;
                int owner = -1;
                for (int q = 0; q < 4; ++q) {
                    if (layout.rects[q].contains(x, y)) {
                        ++owners;
                        owner = q;
                    }
                }
                REQUIRE(owners == 1);
                REQUIRE(owner == quadrant_of_pixel(x, y, center));
            }
        }
    }
}

TEST_CASE("largest_quadrant on the worked examples") {
    CHECK(largest_quadrant(quadrant_layout({640, 640}, 1280)) == 0);
    CHECK(largest_quadrant(quadrant_layout({320, 960}, 1280)) == 1);
    CHECK(largest_quadrant(quadrant_layout({900, 400}, 1280)) == 2);
}

TEST_CASE("largest_quadrant breaks ties to the lowest index") {
    // cy = L/2 splits rows evenly, so Q0 ties Q2 for the maximum.
    const QuadrantLayout layout = quadrant_layout({60, 50}, 100);
    CHECK(layout.rects[0].area() == layout.rects[2].area());
    CHECK(largest_quadrant(layout) == 0);
}

TEST_CASE("largest_quadrant dominates every other quadrant") {
    RandomStream stream(99);
    for (int i = 0; i < 10000; ++i) {
        const SpliceCenter center{stream.uniform_int(0, 1280),
                                  stream.uniform_int(0, 1280)};
        const QuadrantLayout layout = quadrant_layout(center, 1280);
        const int best = largest_quadrant(layout);
        for (int q = 0; q < 4; ++q) {
            CHECK(layout.rects[best].area() >= layout.rects[q].area());
        }
    }
}

TEST_CASE("largest_quadrant is invariant under uniform canvas scaling") {
    RandomStream stream(5);
    for (int i = 0; i < 2000; ++i) {
        const int side = 64;
        const SpliceCenter center{stream.uniform_int(0, side),
                                  stream.uniform_int(0, side)};
        const int factor = stream.uniform_int(2, 20);
        const SpliceCenter scaled{center.cx * factor, center.cy * factor};
        CHECK(largest_quadrant(quadrant_layout(center, side)) ==
              largest_quadrant(quadrant_layout(scaled, side * factor)));
    }
}

TEST_CASE("remap_box: identity transform") {
    const BBox box{2, 10, 20, 30, 40};
    CHECK(remap_box(box, 1.0, 0, 0) == box);
}

TEST_CASE("remap_box: worked examples") {
    CHECK(remap_box({0, 10, 10, 20, 20}, 2.0, 200, 100) ==
          BBox{0, 220, 120, 240, 140});
    CHECK(remap_box({0, 0, 0, 50, 50}, 0.5, 640, 640) ==
          BBox{0, 640, 640, 665, 665});
}

TEST_CASE("remap_box maps corners independently") {
    RandomStream stream(31);
    for (int i = 0; i < 2000; ++i) {
        const BBox box{0, stream.uniform_int(0, 500), stream.uniform_int(0, 500),
                       stream.uniform_int(501, 1000),
                       stream.uniform_int(501, 1000)};
        const double scale = 0.25 + stream.unit_double() * 3.0;
        const int ox = stream.uniform_int(-100, 100);
        const int oy = stream.uniform_int(-100, 100);
        const BBox out = remap_box(box, scale, ox, oy);
        CHECK(out.x1 == static_cast<int>(round_half_up(scale * box.x1)) + ox);
        CHECK(out.y1 == static_cast<int>(round_half_up(scale * box.y1)) + oy);
        CHECK(out.x2 == static_cast<int>(round_half_up(scale * box.x2)) + ox);
        CHECK(out.y2 == static_cast<int>(round_half_up(scale * box.y2)) + oy);
        CHECK(out.class_id == box.class_id);
    }
}

TEST_CASE("remap_box then inverse recovers the box within one pixel") {
    RandomStream stream(77);
    for (int i = 0; i < 2000; ++i) {
        const BBox box{1, stream.uniform_int(0, 400), stream.uniform_int(0, 400),
                       stream.uniform_int(401, 800),
                       stream.uniform_int(401, 800)};
        const double scale = 0.5 + stream.unit_double() * 2.5;
        const int ox = stream.uniform_int(-50, 300);
        const int oy = stream.uniform_int(-50, 300);
        const BBox mapped = remap_box(box, scale, ox, oy);
        const BBox shifted{mapped.class_id, mapped.x1 - ox, mapped.y1 - oy,
                           mapped.x2 - ox, mapped.y2 - oy};
        const BBox back = remap_box(shifted, 1.0 / scale, 0, 0);
        CHECK(std::abs(back.x1 - box.x1) <= 1);
        CHECK(std::abs(back.y1 - box.y1) <= 1);
        CHECK(std::abs(back.x2 - box.x2) <= 1);
        CHECK(std::abs(back.y2 - box.y2) <= 1);
    }
}

TEST_CASE("remap_box rejects non-positive scale") {
    CHECK_THROWS_AS(remap_box({0, 0, 0, 1, 1}, 0.0, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(remap_box({0, 0, 0, 1, 1}, -1.0, 0, 0),
                    std::invalid_argument);
}

TEST_CASE("clip_box keeps a fully contained box unchanged") {
    const BBox box{0, 60, 60, 90, 90};
    const auto kept = clip_box(box, {50, 50, 200, 200}, 0.1, 2);
    REQUIRE(kept.has_value());
    CHECK(*kept == box);
}

TEST_CASE("clip_box drops a box entirely outside the bounds") {
    CHECK_FALSE(clip_box({0, 0, 0, 40, 40}, {50, 50, 200, 200}, 0.1, 2)
                    .has_value());
}

TEST_CASE("clip_box: worked partial-overlap example") {
    const auto kept = clip_box({0, 0, 0, 100, 100}, {50, 50, 200, 200}, 0.1, 2);
    REQUIRE(kept.has_value());
    CHECK(*kept == BBox{0, 50, 50, 100, 100});
}

TEST_CASE("clip_box drops below the visibility threshold") {
    // 50x50 of a 100x100 box survives: fraction 0.25.
    const PixelRect bounds{50, 50, 200, 200};
    CHECK(clip_box({0, 0, 0, 100, 100}, bounds, 0.25, 2).has_value());
    CHECK_FALSE(clip_box({0, 0, 0, 100, 100}, bounds, 0.26, 2).has_value());
}

TEST_CASE("clip_box drops slivers thinner than min_side") {
    // One-pixel-wide sliver survives the area test but not min_side.
    const auto kept = clip_box({0, 0, 0, 51, 100}, {50, 0, 200, 200}, 0.0, 2);
    CHECK_FALSE(kept.has_value());
    const auto wide = clip_box({0, 0, 0, 52, 100}, {50, 0, 200, 200}, 0.0, 2);
    REQUIRE(wide.has_value());
    CHECK(wide->width() == 2);
}

TEST_CASE("clip_box output is contained and never grows") {
    RandomStream stream(13);
    for (int i = 0; i < 5000; ++i) {
        const BBox box{0, stream.uniform_int(-50, 150),
                       stream.uniform_int(-50, 150),
                       stream.uniform_int(151, 350),
                       stream.uniform_int(151, 350)};
        const PixelRect bounds{stream.uniform_int(0, 100),
                               stream.uniform_int(0, 100),
                               stream.uniform_int(101, 300),
                               stream.uniform_int(101, 300)};
        const auto kept = clip_box(box, bounds, 0.1, 2);
        if (!kept.has_value()) {
            continue;
        }
        CHECK(kept->x1 >= bounds.x1);
        CHECK(kept->y1 >= bounds.y1);
        CHECK(kept->x2 <= bounds.x2);
        CHECK(kept->y2 <= bounds.y2);
        CHECK(kept->x1 >= box.x1);
        CHECK(kept->y1 >= box.y1);
        CHECK(kept->x2 <= box.x2);
        CHECK(kept->y2 <= box.y2);
        CHECK(kept->width() >= 2);
        CHECK(kept->height() >= 2);
        CHECK(static_cast<double>(kept->area()) >= 0.1 * box.area());
    }
}

TEST_CASE("intersect normalizes empty results to the zero rect") {
    CHECK(intersect({0, 0, 10, 10}, {20, 20, 30, 30}) == PixelRect{});
    CHECK(intersect({0, 0, 10, 10}, {10, 0, 20, 10}) == PixelRect{});
}

TEST_CASE("intersect is commutative and contained in both inputs") {
    RandomStream stream(3);
    const auto random_rect = [&stream] {
        const int x1 = stream.uniform_int(0, 60);
        const int y1 = stream.uniform_int(0, 60);
        return PixelRect{x1, y1, x1 + stream.uniform_int(0, 40),
                         y1 + stream.uniform_int(0, 40)};
    };
    for (int i = 0; i < 3000; ++i) {
        const PixelRect a = random_rect();
        const PixelRect b = random_rect();
        const PixelRect ab = intersect(a, b);
        CHECK(ab == intersect(b, a));
        if (!ab.empty()) {
            CHECK(ab.x1 >= std::max(a.x1, b.x1));
            CHECK(ab.x2 <= std::min(a.x2, b.x2));
            CHECK(ab.y1 >= std::max(a.y1, b.y1));
            CHECK(ab.y2 <= std::min(a.y2, b.y2));
        }
    }
}
