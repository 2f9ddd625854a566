#include "segpipe/median_filter.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace segpipe {

namespace {

std::size_t clamp_index(std::ptrdiff_t i, std::size_t extent) {
    if (i < 0) return 0;
    if (static_cast<std::size_t>(i) >= extent) return extent - 1;
    return static_cast<std::size_t>(i);
}

// Fills buf with the clamped window around (row, col).
void gather_window(const GrayImage& img, std::size_t row, std::size_t col, int radius, std::vector<Level>& buf) {
    buf.clear();
    const auto r0 = static_cast<std::ptrdiff_t>(row);
    const auto c0 = static_cast<std::ptrdiff_t>(col);
    for (std::ptrdiff_t dr = -radius; dr <= radius; ++dr) {
        const std::size_t rr = clamp_index(r0 + dr, img.height());
        for (std::ptrdiff_t dc = -radius; dc <= radius; ++dc) {
            buf.push_back(img.at(rr, clamp_index(c0 + dc, img.width())));
        }
    }
}

}  // namespace

WindowSpec::WindowSpec(int size) : size_(size) {
    if (size < 1 || size % 2 == 0) {
        throw std::invalid_argument("window size must be odd and >= 1, got " + std::to_string(size));
    }
}

Level window_median(std::span<const Level> values) {
    if (values.empty()) throw std::invalid_argument("window_median: empty window");
    std::vector<Level> v(values.begin(), values.end());
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

GrayImage median_filter(const GrayImage& img, WindowSpec window) {
    if (window.size() == 1) return img;
    GrayImage out = img;
    auto dst = out.mutable_pixels();
    const int radius = window.radius();
    const auto height = static_cast<std::ptrdiff_t>(img.height());
    const std::size_t width = img.width();
    const std::size_t area = static_cast<std::size_t>(window.size()) * static_cast<std::size_t>(window.size());
    const auto mid = static_cast<std::ptrdiff_t>(area / 2);

#pragma omp parallel
    {
        std::vector<Level> buf;
        buf.reserve(area);
#pragma omp for schedule(static)
        for (std::ptrdiff_t r = 0; r < height; ++r) {
            const auto row = static_cast<std::size_t>(r);
            for (std::size_t c = 0; c < width; ++c) {
                gather_window(img, row, c, radius, buf);
                std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
                dst[row * width + c] = buf[static_cast<std::size_t>(mid)];
            }
        }
    }
    return out;
}

GrayImage serial::median_filter(const GrayImage& img, WindowSpec window) {
    GrayImage out = img;
    std::vector<Level> buf;
    for (std::size_t r = 0; r < img.height(); ++r) {
        for (std::size_t c = 0; c < img.width(); ++c) {
            gather_window(img, r, c, window.radius(), buf);
            std::sort(buf.begin(), buf.end());
            out.set(r, c, buf[buf.size() / 2]);
        }
    }
    return out;
}

}  // namespace segpipe
