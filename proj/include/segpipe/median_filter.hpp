#pragma once

#include <span>

#include "segpipe/image.hpp"

namespace segpipe {

// Square window with odd side length.
class WindowSpec {
public:
    explicit WindowSpec(int size = 3);
    int size() const noexcept { return size_; }
    int radius() const noexcept { return size_ / 2; }

private:
    int size_;
};

/// Element of rank len/2 after an ascending sort. Throws std::invalid_argument if empty.
Level window_median(std::span<const Level> values);

/// Median over the size x size neighborhood of each pixel; borders use edge
/// replication. Rows are processed in parallel.
GrayImage median_filter(const GrayImage& img, WindowSpec window = WindowSpec{});

namespace serial {

// Reference: full sort of every clamped window, one pixel at a time.
GrayImage median_filter(const GrayImage& img, WindowSpec window = WindowSpec{});

}  // namespace serial

}  // namespace segpipe
