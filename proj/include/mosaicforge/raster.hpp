#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "mosaicforge/geometry.hpp"

namespace mosaicforge {

/// Decoded 8-bit RGB image, row-major, three channels.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h) : width(w), height(h), pixels(3u * w * h) {}

    std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
    const std::uint8_t* at(int x, int y) const { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
};

using Rgb = std::array<std::uint8_t, 3>;

/// YOLOv5-style padding gray.
inline constexpr Rgb kDefaultFill{114, 114, 114};

/// Square RGB canvas, initialized to fill_value everywhere.
struct Canvas {
    int side = 0;
    Rgb fill_value = kDefaultFill;
    std::vector<std::uint8_t> pixels;

    Canvas() = default;
    explicit Canvas(int side_px, Rgb fill = kDefaultFill);

    std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * side + x); }
    const std::uint8_t* at(int x, int y) const { return pixels.data() + 3 * (static_cast<std::size_t>(y) * side + x); }
};

/// Output dimension for one axis under `scale`: round(scale * dim),
/// never below 1.
int scaled_size(int dim, double scale);

/// Decodes a PNG or JPEG file into RGB. Throws on unreadable input.
Image decode_image(const std::filesystem::path& path);

/// Width and height of an image file.
std::pair<int, int> image_size(const std::filesystem::path& path);

/// Bilinear resize with corner alignment: output corners sample input
/// corners exactly, and scale 1 reproduces the input byte for byte.
/// Output dims are scaled_size() of the input dims. Throws if an
/// output dimension exceeds the supported maximum.
Image resize_image(const Image& image, double scale);

/// Copies `image` onto the canvas at `dest` (may be negative),
/// restricted to clip_rect. Returns the canvas region actually covered
/// by source pixels; a fully clipped placement returns the empty rect
/// and leaves the canvas untouched.
PixelRect blit_cropped(Canvas& canvas, const Image& image, int dest_x,
                       int dest_y, const PixelRect& clip_rect);

enum class ImageFormat { Png, Jpeg };

/// Writes the canvas to `path`. PNG is lossless; JPEG uses quality 95.
void encode_image(const Canvas& canvas, const std::filesystem::path& path,
                  ImageFormat format = ImageFormat::Png);

/// 2-px-thick rectangle outline drawn just inside `rect`, clipped to
/// the canvas.
void draw_rect_outline(Canvas& canvas, const PixelRect& rect, Rgb color,
                       int thickness = 2);

/// Crosshair marker through `center`.
void draw_center_marker(Canvas& canvas, SpliceCenter center, Rgb color,
                        int arm = 12);

}  // namespace mosaicforge
