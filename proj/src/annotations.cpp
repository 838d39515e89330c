#include "mosaicforge/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mosaicforge/geometry.hpp"
#include "mosaicforge/raster.hpp"

namespace mosaicforge {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

[[noreturn]] void parse_fail(int line_number, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line_number) + ": " + what);
}

double parse_normalized(std::string_view token, const char* name,
                        int line_number) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        parse_fail(line_number, std::string("non-numeric ") + name + " '" +
                                    std::string(token) + "'");
    }
    if (value < 0.0 || value > 1.0) {
        parse_fail(line_number, std::string(name) + " outside [0,1]: " +
                                    std::string(token));
    }
    return value;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c));
    });
}

}  // namespace

BBox parse_yolo_line(std::string_view line, int image_width, int image_height,
                     int line_number) {
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
        parse_fail(line_number, "expected 5 fields (class cx cy w h), got " +
                                    std::to_string(fields.size()));
    }
    int class_id = 0;
    {
        const auto tok = fields[0];
        const auto [ptr, ec] =
            std::from_chars(tok.data(), tok.data() + tok.size(), class_id);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || class_id < 0) {
            parse_fail(line_number,
                       "invalid class id '" + std::string(tok) + "'");
        }
    }
    const double cx = parse_normalized(fields[1], "cx", line_number);
    const double cy = parse_normalized(fields[2], "cy", line_number);
    const double w = parse_normalized(fields[3], "w", line_number);
    const double h = parse_normalized(fields[4], "h", line_number);

    BBox box;
    box.class_id = class_id;
    box.x1 = static_cast<int>(round_half_up((cx - w / 2.0) * image_width));
    box.x2 = static_cast<int>(round_half_up((cx + w / 2.0) * image_width));
    box.y1 = static_cast<int>(round_half_up((cy - h / 2.0) * image_height));
    box.y2 = static_cast<int>(round_half_up((cy + h / 2.0) * image_height));
    // Boxes touching the border may round a hair past it; clamp back.
    box.x1 = std::clamp(box.x1, 0, image_width);
    box.x2 = std::clamp(box.x2, 0, image_width);
    box.y1 = std::clamp(box.y1, 0, image_height);
    box.y2 = std::clamp(box.y2, 0, image_height);
    if (box.x1 >= box.x2) {
        parse_fail(line_number, "degenerate box: width rounds to zero");
    }
    if (box.y1 >= box.y2) {
        parse_fail(line_number, "degenerate box: height rounds to zero");
    }
    return box;
}

std::string serialize_yolo_line(const BBox& box, int image_width,
                                int image_height) {
    const double cx = (box.x1 + box.x2) / (2.0 * image_width);
    const double cy = (box.y1 + box.y2) / (2.0 * image_height);
    const double w = static_cast<double>(box.width()) / image_width;
    const double h = static_cast<double>(box.height()) / image_height;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d %.6f %.6f %.6f %.6f", box.class_id, cx,
                  cy, w, h);
    return buf;
}

std::vector<LabeledImage> load_dataset(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    const fs::path images_dir = root / "images";
    const fs::path labels_dir = root / "labels";
    if (!fs::is_directory(images_dir)) {
        throw std::runtime_error("missing images directory: " +
                                 images_dir.string());
    }

    std::vector<fs::path> image_paths;
    for (const auto& entry : fs::directory_iterator(images_dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".jpg" || ext == ".jpeg" || ext == ".png") {
            image_paths.push_back(entry.path());
        }
    }
    std::sort(image_paths.begin(), image_paths.end());
    if (image_paths.empty()) {
        throw std::runtime_error("no images found under " +
                                 images_dir.string());
    }

    std::vector<LabeledImage> dataset;
    dataset.reserve(image_paths.size());
    for (const auto& path : image_paths) {
        LabeledImage item;
        item.image_path = path;
        const auto [w, h] = image_size(path);
        item.width = w;
        item.height = h;

        const fs::path label_path =
            labels_dir / path.stem().concat(".txt");
        if (fs::exists(label_path)) {
            std::ifstream in(label_path);
            if (!in) {
                throw std::runtime_error("cannot open label file: " +
                                         label_path.string());
            }
            std::string line;
            int line_number = 0;
            while (std::getline(in, line)) {
                ++line_number;
                if (is_blank(line)) {
                    continue;
                }
                try {
                    item.boxes.push_back(
                        parse_yolo_line(line, w, h, line_number));
                } catch (const std::runtime_error& e) {
                    throw std::runtime_error(label_path.string() + ": " +
                                             e.what());
                }
            }
        }
        dataset.push_back(std::move(item));
    }
    return dataset;
}

DensityScore target_density(const LabeledImage& image) {
    if (image.width <= 0 || image.height <= 0) {
        throw std::invalid_argument("image dimensions must be positive");
    }
    const double area =
        static_cast<double>(image.width) * static_cast<double>(image.height);
    return DensityScore{static_cast<double>(image.boxes.size()) / area};
}

}  // namespace mosaicforge
