#include "mosaicforge/raster.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace mosaicforge {

namespace {

constexpr int kMaxImageSide = 1 << 15;

Image from_bgr_mat(const cv::Mat& mat) {
    Image image(mat.cols, mat.rows);
    for (int y = 0; y < mat.rows; ++y) {
        const std::uint8_t* row = mat.ptr<std::uint8_t>(y);
        std::uint8_t* out = image.at(0, y);
        for (int x = 0; x < mat.cols; ++x) {
            out[3 * x + 0] = row[3 * x + 2];
            out[3 * x + 1] = row[3 * x + 1];
            out[3 * x + 2] = row[3 * x + 0];
        }
    }
    return image;
}

cv::Mat to_bgr_mat(const std::uint8_t* rgb, int width, int height) {
    cv::Mat mat(height, width, CV_8UC3);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* in = rgb + 3 * static_cast<std::size_t>(y) * width;
        std::uint8_t* row = mat.ptr<std::uint8_t>(y);
        for (int x = 0; x < width; ++x) {
            row[3 * x + 0] = in[3 * x + 2];
            row[3 * x + 1] = in[3 * x + 1];
            row[3 * x + 2] = in[3 * x + 0];
        }
    }
    return mat;
}

void fill_span(Canvas& canvas, int x1, int y1, int x2, int y2, Rgb color) {
    x1 = std::max(x1, 0);
    y1 = std::max(y1, 0);
    x2 = std::min(x2, canvas.side);
    y2 = std::min(y2, canvas.side);
    for (int y = y1; y < y2; ++y) {
        std::uint8_t* p = canvas.at(x1, y);
        for (int x = x1; x < x2; ++x, p += 3) {
            p[0] = color[0];
            p[1] = color[1];
            p[2] = color[2];
        }
    }
}

}  // namespace

Canvas::Canvas(int side_px, Rgb fill)
    : side(side_px), fill_value(fill), pixels(3u * side_px * side_px) {
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = fill[0];
        pixels[i + 1] = fill[1];
        pixels[i + 2] = fill[2];
    }
}

int scaled_size(int dim, double scale) {
    return std::max(1, static_cast<int>(round_half_up(scale * dim)));
}

Image decode_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open image: " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    cv::Mat mat = cv::imdecode(cv::Mat(1, static_cast<int>(bytes.size()),
                                       CV_8U, bytes.data()),
                               cv::IMREAD_COLOR);
    if (mat.empty()) {
        throw std::runtime_error("cannot decode image: " + path.string());
    }
    return from_bgr_mat(mat);
}

std::pair<int, int> image_size(const std::filesystem::path& path) {
    const Image image = decode_image(path);
    return {image.width, image.height};
}

Image resize_image(const Image& image, double scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("resize scale must be positive");
    }
    const int out_w = scaled_size(image.width, scale);
    const int out_h = scaled_size(image.height, scale);
    if (out_w > kMaxImageSide || out_h > kMaxImageSide) {
        throw std::runtime_error("resize target " + std::to_string(out_w) +
                                 "x" + std::to_string(out_h) +
                                 " exceeds supported bounds");
    }
    if (out_w == image.width && out_h == image.height) {
        return image;
    }
    Image out(out_w, out_h);
    const double x_step =
        out_w > 1 ? static_cast<double>(image.width - 1) / (out_w - 1) : 0.0;
    const double y_step =
        out_h > 1 ? static_cast<double>(image.height - 1) / (out_h - 1) : 0.0;
    for (int j = 0; j < out_h; ++j) {
        const double sy = j * y_step;
        const int y0 = static_cast<int>(sy);
        const int y1 = std::min(y0 + 1, image.height - 1);
        const double fy = sy - y0;
        for (int i = 0; i < out_w; ++i) {
            const double sx = i * x_step;
            const int x0 = static_cast<int>(sx);
            const int x1 = std::min(x0 + 1, image.width - 1);
            const double fx = sx - x0;
            const std::uint8_t* p00 = image.at(x0, y0);
            const std::uint8_t* p10 = image.at(x1, y0);
            const std::uint8_t* p01 = image.at(x0, y1);
            const std::uint8_t* p11 = image.at(x1, y1);
            std::uint8_t* dst = out.at(i, j);
            for (int c = 0; c < 3; ++c) {
                const double v = (1.0 - fx) * (1.0 - fy) * p00[c] +
                                 fx * (1.0 - fy) * p10[c] +
                                 (1.0 - fx) * fy * p01[c] + fx * fy * p11[c];
                dst[c] = static_cast<std::uint8_t>(
                    std::clamp<long long>(round_half_up(v), 0, 255));
            }
        }
    }
    return out;
}

PixelRect blit_cropped(Canvas& canvas, const Image& image, int dest_x,
                       int dest_y, const PixelRect& clip_rect) {
    const PixelRect canvas_rect{0, 0, canvas.side, canvas.side};
    const PixelRect image_rect{dest_x, dest_y, dest_x + image.width,
                               dest_y + image.height};
    const PixelRect covered =
        intersect(intersect(clip_rect, canvas_rect), image_rect);
    if (covered.empty()) {
        return PixelRect{};
    }
    for (int y = covered.y1; y < covered.y2; ++y) {
        std::memcpy(canvas.at(covered.x1, y),
                    image.at(covered.x1 - dest_x, y - dest_y),
                    3u * covered.width());
    }
    return covered;
}

void encode_image(const Canvas& canvas, const std::filesystem::path& path,
                  ImageFormat format) {
    const cv::Mat mat = to_bgr_mat(canvas.pixels.data(), canvas.side,
                                   canvas.side);
    std::vector<std::uint8_t> bytes;
    bool ok = false;
    if (format == ImageFormat::Png) {
        ok = cv::imencode(".png", mat, bytes);
    } else {
        ok = cv::imencode(".jpg", mat, bytes,
                          {cv::IMWRITE_JPEG_QUALITY, 95});
    }
    if (!ok) {
        throw std::runtime_error("image encoding failed for " + path.string());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

void draw_rect_outline(Canvas& canvas, const PixelRect& rect, Rgb color,
                       int thickness) {
    if (rect.empty()) {
        return;
    }
    const int t = thickness;
    fill_span(canvas, rect.x1, rect.y1, rect.x2, std::min(rect.y1 + t, rect.y2),
              color);
    fill_span(canvas, rect.x1, std::max(rect.y2 - t, rect.y1), rect.x2,
              rect.y2, color);
    fill_span(canvas, rect.x1, rect.y1, std::min(rect.x1 + t, rect.x2),
              rect.y2, color);
    fill_span(canvas, std::max(rect.x2 - t, rect.x1), rect.y1, rect.x2,
              rect.y2, color);
}

void draw_center_marker(Canvas& canvas, SpliceCenter center, Rgb color,
                        int arm) {
    fill_span(canvas, center.cx - arm, center.cy - 1, center.cx + arm,
              center.cy + 1, color);
    fill_span(canvas, center.cx - 1, center.cy - arm, center.cx + 1,
              center.cy + arm, color);
}

}  // namespace mosaicforge
