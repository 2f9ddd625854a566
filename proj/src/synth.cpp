#include "segpipe/synth.hpp"

#include <random>
#include <stdexcept>

namespace segpipe::synth {

namespace {

// Uniform in [0, 1) from the top 53 bits; stable across standard libraries.
double unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

TwoRegion two_region(std::size_t width, std::size_t height, Level low, Level high, int max_level) {
    TwoRegion out{GrayImage(width, height, max_level), LabelImage{width, height, std::vector<std::uint32_t>(width * height)}};
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const bool right = c >= width / 2;
            out.image.set(r, c, right ? high : low);
            out.truth.labels[r * width + c] = right ? 1 : 0;
        }
    }
    return out;
}

GrayImage add_salt_and_pepper(const GrayImage& img, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("noise fraction must be in [0, 1]");
    std::mt19937_64 gen(seed);
    GrayImage out = img;
    for (Level& v : out.mutable_pixels()) {
        const bool hit = unit(gen) < fraction;
        const bool salt = unit(gen) < 0.5;
        if (hit) v = salt ? static_cast<Level>(img.max_level()) : Level{0};
    }
    return out;
}

GrayImage random_image(std::size_t width, std::size_t height, int max_level, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    GrayImage out(width, height, max_level);
    for (Level& v : out.mutable_pixels()) {
        v = static_cast<Level>(gen() % static_cast<std::uint64_t>(max_level + 1));
    }
    return out;
}

GrayImage horizontal_gradient(std::size_t width, std::size_t height, int max_level) {
    GrayImage out(width, height, max_level);
    const std::size_t span = width > 1 ? width - 1 : 1;
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            out.set(r, c, static_cast<Level>((c * static_cast<std::size_t>(max_level) + span / 2) / span));
        }
    }
    return out;
}

GrayImage uniform_levels(int levels, std::size_t repeats) {
    if (levels < 2 || levels > 256 || repeats < 1) throw std::invalid_argument("uniform_levels: bad arguments");
    std::vector<Level> px;
    px.reserve(static_cast<std::size_t>(levels) * repeats);
    for (std::size_t k = 0; k < repeats; ++k) {
        for (int v = 0; v < levels; ++v) px.push_back(static_cast<Level>(v));
    }
    return GrayImage(static_cast<std::size_t>(levels), repeats, levels - 1, std::move(px));
}

}  // namespace segpipe::synth
