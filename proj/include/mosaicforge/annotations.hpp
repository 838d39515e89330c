#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mosaicforge {

/// One object annotation: class id plus an absolute, axis-aligned
/// xyxy rectangle. Stored boxes are non-degenerate (x1 < x2, y1 < y2)
/// and lie within their owning image.
struct BBox {
    int class_id = 0;
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;

    int width() const { return x2 - x1; }
    int height() const { return y2 - y1; }
    long long area() const {
        return static_cast<long long>(width()) * height();
    }

    bool operator==(const BBox&) const = default;
};

/// An image file plus its annotations and pixel dimensions.
struct LabeledImage {
    std::filesystem::path image_path;
    int width = 0;
    int height = 0;
    std::vector<BBox> boxes;
};

/// Objects per pixel.
struct DensityScore {
    double value = 0.0;
};

/// Parses one YOLO label line ("class cx cy w h", all of cx,cy,w,h
/// normalized to [0,1]) into an absolute xyxy box. Corner coordinates
/// are rounded half-up and clamped to the image; a box whose width or
/// height collapses to zero is rejected. Throws std::runtime_error
/// naming `line_number` on any malformed input.
BBox parse_yolo_line(std::string_view line, int image_width, int image_height,
                     int line_number = 1);

/// Inverse of parse_yolo_line: normalized values printed with six
/// decimal places, single spaces, no trailing newline.
std::string serialize_yolo_line(const BBox& box, int image_width,
                                int image_height);

/// Loads `<root>/images/*.{jpg,jpeg,png}` with labels from
/// `<root>/labels/<stem>.txt`, sorted by image path. A missing label
/// file means zero boxes. Throws on an unreadable image, a malformed
/// label line (message carries file and line), or an empty dataset.
std::vector<LabeledImage> load_dataset(const std::filesystem::path& root);

/// Annotation count divided by pixel area.
DensityScore target_density(const LabeledImage& image);

}  // namespace mosaicforge
