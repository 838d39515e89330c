#include "mosaicforge/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mosaicforge/annotations.hpp"

namespace mosaicforge {

namespace {

constexpr std::array<Rgb, 16> kColors = {{{230, 25, 75},
                                          {60, 180, 75},
                                          {0, 130, 200},
                                          {245, 130, 48},
                                          {145, 30, 180},
                                          {70, 240, 240},
                                          {240, 50, 230},
                                          {210, 245, 60},
                                          {250, 190, 212},
                                          {0, 128, 128},
                                          {220, 190, 255},
                                          {170, 110, 40},
                                          {255, 250, 200},
                                          {128, 0, 0},
                                          {170, 255, 195},
                                          {128, 128, 0}}};

std::string indexed_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "img_%03zu", index);
    return buf;
}

}  // namespace

Rgb synthetic_color(std::size_t index) {
    if (index >= kColors.size()) {
        throw std::invalid_argument(
            "synthetic datasets support at most 16 images");
    }
    return kColors[index];
}

SyntheticDataset make_color_coded_dataset(std::span<const int> box_counts,
                                          int image_side) {
    if (box_counts.size() > kColors.size()) {
        throw std::invalid_argument(
            "synthetic datasets support at most 16 images");
    }
    SyntheticDataset dataset;
    dataset.image_side = image_side;
    for (std::size_t k = 0; k < box_counts.size(); ++k) {
        LabeledImage entry;
        entry.image_path = "<synthetic>/" + indexed_name(k) + ".png";
        entry.width = image_side;
        entry.height = image_side;
        const int count = box_counts[k];
        if (count > 0) {
            const int cols =
                static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
            const int rows = (count + cols - 1) / cols;
            const int cell_w = image_side / cols;
            const int cell_h = image_side / rows;
            if (cell_w < 4 || cell_h < 4) {
                throw std::invalid_argument(
                    "too many boxes for the synthetic image size");
            }
            const int bw = std::max(4, cell_w / 2);
            const int bh = std::max(4, cell_h / 2);
            for (int b = 0; b < count; ++b) {
                const int c = b % cols;
                const int r = b / cols;
                BBox box;
                box.class_id = b % 3;
                box.x1 = c * cell_w + (cell_w - bw) / 2;
                box.y1 = r * cell_h + (cell_h - bh) / 2;
                box.x2 = box.x1 + bw;
                box.y2 = box.y1 + bh;
                entry.boxes.push_back(box);
            }
        }
        dataset.entries.push_back(std::move(entry));
    }
    return dataset;
}

Image SyntheticImageSource::load(std::size_t index) const {
    const LabeledImage& entry = dataset_->entries.at(index);
    const Rgb color = synthetic_color(index);
    Image image(entry.width, entry.height);
    for (std::size_t i = 0; i < image.pixels.size(); i += 3) {
        image.pixels[i] = color[0];
        image.pixels[i + 1] = color[1];
        image.pixels[i + 2] = color[2];
    }
    return image;
}

void write_dataset_to_disk(const SyntheticDataset& dataset,
                           const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    fs::create_directories(root / "images");
    fs::create_directories(root / "labels");
    for (std::size_t k = 0; k < dataset.entries.size(); ++k) {
        const LabeledImage& entry = dataset.entries[k];
        Canvas canvas(entry.width, synthetic_color(k));
        const std::string name = indexed_name(k);
        encode_image(canvas, root / "images" / (name + ".png"));
        std::ofstream labels(root / "labels" / (name + ".txt"),
                             std::ios::trunc);
        for (const BBox& box : entry.boxes) {
            labels << serialize_yolo_line(box, entry.width, entry.height)
                   << '\n';
        }
    }
}

}  // namespace mosaicforge
