#pragma once

#include <cstdint>

#include "segpipe/image.hpp"
#include "segpipe/pipeline.hpp"

namespace segpipe::synth {

struct TwoRegion {
    GrayImage image;
    LabelImage truth;  // 0 = left half, 1 = right half
};

/// Left half (columns < width/2) at `low`, the rest at `high`.
TwoRegion two_region(std::size_t width, std::size_t height, Level low, Level high, int max_level = 255);

/// Each pixel independently becomes an impulse with probability `fraction`;
/// impulses are 0 or max_level with equal odds.
GrayImage add_salt_and_pepper(const GrayImage& img, double fraction, std::uint64_t seed);

/// Independent uniform levels in [0, max_level].
GrayImage random_image(std::size_t width, std::size_t height, int max_level, std::uint64_t seed);

/// Linear ramp across the columns from 0 to max_level.
GrayImage horizontal_gradient(std::size_t width, std::size_t height, int max_level = 255);

/// Each of the `levels` gray values appears `repeats` times, so the pdf is flat.
GrayImage uniform_levels(int levels, std::size_t repeats);

}  // namespace segpipe::synth
