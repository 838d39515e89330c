#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mosaicforge/engine.hpp"
#include "mosaicforge/raster.hpp"

namespace mosaicforge {

/// Distinct flat color for synthetic image `index`; never equal to the
/// canvas fill gray. Supports up to 16 images.
Rgb synthetic_color(std::size_t index);

/// In-memory color-coded dataset: image k is uniformly
/// synthetic_color(k) with box_counts[k] annotations laid out on a
/// grid. Pixel provenance on a composed mosaic is decidable by color
/// alone.
struct SyntheticDataset {
    std::vector<LabeledImage> entries;
    int image_side = 0;
};

SyntheticDataset make_color_coded_dataset(std::span<const int> box_counts,
                                          int image_side);

/// ImageSource over a color-coded dataset; generates the flat-color
/// pixels on the fly.
class SyntheticImageSource : public ImageSource {
public:
    explicit SyntheticImageSource(const SyntheticDataset& dataset)
        : dataset_(&dataset) {}
    Image load(std::size_t index) const override;

private:
    const SyntheticDataset* dataset_;
};

/// Writes the dataset to disk in the standard images/ + labels/
/// layout (PNG files), for end-to-end command tests.
void write_dataset_to_disk(const SyntheticDataset& dataset,
                           const std::filesystem::path& root);

}  // namespace mosaicforge
