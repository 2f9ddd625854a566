#pragma once

#include <array>
#include <vector>

#include "segpipe/image.hpp"
#include "segpipe/synth.hpp"

namespace fixtures {

// 5x5 neighborhood example with an unrepresentative 150 at the center.
inline segpipe::GrayImage grid5() {
    return segpipe::GrayImage(5, 5, 255,
                              {123, 125, 126, 130, 140,  //
                               122, 124, 126, 127, 135,  //
                               118, 120, 150, 125, 134,  //
                               119, 115, 119, 123, 133,  //
                               111, 116, 110, 120, 130});
}

// 3x3 clamped-window medians of grid5(), from tests/oracles/oracles.py
// (explicit sort of every replicated window).
inline segpipe::GrayImage grid5_median3() {
    return segpipe::GrayImage(5, 5, 255,
                              {123, 125, 126, 130, 135,  //
                               122, 124, 126, 130, 134,  //
                               119, 120, 124, 127, 133,  //
                               118, 118, 120, 125, 130,  //
                               115, 115, 116, 120, 130});
}

/// Mixed corpus for equalization properties: gradients, two-region scenes,
/// uniform noise, clipped-Gaussian-like blobs, and the 5x5 grid.
inline std::vector<segpipe::GrayImage> he_corpus() {
    using namespace segpipe;
    std::vector<GrayImage> corpus;
    for (std::size_t w : {2u, 7u, 16u, 64u, 200u, 256u, 300u}) corpus.push_back(synth::horizontal_gradient(w, 9));
    for (int max_level : {3, 15, 255}) corpus.push_back(synth::horizontal_gradient(33, 4, max_level));
    const std::array<std::array<int, 2>, 6> pairs{{{60, 190}, {0, 255}, {10, 11}, {200, 100}, {1, 2}, {128, 129}}};
    for (auto [lo, hi] : pairs) {
        corpus.push_back(synth::two_region(32, 16, static_cast<Level>(lo), static_cast<Level>(hi)).image);
    }
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        const std::size_t side = 4 + 12 * (seed % 6);
        corpus.push_back(synth::random_image(side, side + 3, seed % 3 == 0 ? 15 : 255, seed));
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        // Sum of four uniform draws: peaked histogram with sparse tails.
        GrayImage a = synth::random_image(48, 48, 63, 100 + seed);
        GrayImage b = synth::random_image(48, 48, 63, 200 + seed);
        GrayImage c = synth::random_image(48, 48, 63, 300 + seed);
        GrayImage d = synth::random_image(48, 48, 63, 400 + seed);
        GrayImage out(48, 48, 255);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.mutable_pixels()[i] = static_cast<Level>(a.pixels()[i] + b.pixels()[i] + c.pixels()[i] + d.pixels()[i]);
        }
        corpus.push_back(out);
    }
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto scene = synth::two_region(40, 40, 70, 170);
        corpus.push_back(synth::add_salt_and_pepper(scene.image, 0.05, seed));
    }
    corpus.push_back(grid5());
    return corpus;
}

}  // namespace fixtures
