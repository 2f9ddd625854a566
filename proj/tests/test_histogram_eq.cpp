#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "segpipe/histogram_eq.hpp"
#include "segpipe/synth.hpp"
#include "support/fixtures.hpp"

using namespace segpipe;

TEST_CASE("compute_histogram counts levels") {
    const GrayImage img(2, 2, 255, std::vector<Level>{0, 0, 1, 2});
    const Histogram h = compute_histogram(img);
    REQUIRE(h.counts.size() == 256);
    CHECK(h.counts[0] == 2);
    CHECK(h.counts[1] == 1);
    CHECK(h.counts[2] == 1);
    CHECK(std::accumulate(h.counts.begin() + 3, h.counts.end(), std::uint64_t{0}) == 0);

    const GrayImage flat(7, 3, 255, Level{42});
    CHECK(compute_histogram(flat).counts[42] == 21);
    CHECK(compute_histogram(flat).total() == 21);
}

TEST_CASE("window histogram matches an independent tally") {
    // tests/oracles/oracles.py: fig2_histogram()
    const std::vector<std::pair<int, std::uint64_t>> expected{
        {110, 1}, {111, 1}, {115, 1}, {116, 1}, {118, 1}, {119, 2}, {120, 2}, {122, 1}, {123, 2}, {124, 1},
        {125, 2}, {126, 2}, {127, 1}, {130, 2}, {133, 1}, {134, 1}, {135, 1}, {140, 1}, {150, 1}};
    Histogram want;
    want.counts.assign(256, 0);
    for (auto [level, count] : expected) want.counts[static_cast<std::size_t>(level)] = count;
    CHECK(compute_histogram(fixtures::grid5()) == want);
}

TEST_CASE("parallel histogram equals the serial tally") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const GrayImage img = synth::random_image(97 + seed, 61, seed % 2 ? 255 : 31, seed);
        CHECK(compute_histogram(img) == serial::compute_histogram(img));
    }
}

TEST_CASE("compute_pdf") {
    Histogram h{{2, 1, 1, 0}};
    const Pdf pdf = compute_pdf(h, 4);
    CHECK(pdf.probs == std::vector<double>{0.5, 0.25, 0.25, 0.0});

    Histogram one_hot{{0, 0, 9, 0}};
    CHECK(compute_pdf(one_hot, 9).probs == std::vector<double>{0, 0, 1, 0});

    Histogram flat{std::vector<std::uint64_t>(16, 3)};
    for (double p : compute_pdf(flat, 48).probs) CHECK(p == doctest::Approx(1.0 / 16));

    CHECK_THROWS_AS(compute_pdf(Histogram{{0, 0}}, 0), DomainError);
}

TEST_CASE("compute_cdf") {
    CHECK(compute_cdf(Pdf{{0.5, 0.25, 0.25, 0}}).cum == std::vector<double>{0.5, 0.75, 1.0, 1.0});
    CHECK(compute_cdf(Pdf{{0, 0, 1, 0}}).cum == std::vector<double>{0, 0, 1, 1});
    CHECK(compute_cdf(Pdf{{0.25, 0.25, 0.25, 0.25}}).cum == std::vector<double>{0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("build_transfer worked example") {
    // (cdf - 0.5) / 0.5 * 3 = {0, 1.5, 3, 3}
    const TransferFunction t = build_transfer(Cdf{{0.5, 0.75, 1.0, 1.0}}, 3);
    CHECK(t.lut == std::vector<Level>{0, 2, 3, 3});
}

TEST_CASE("uniform pdf gives the identity table") {
    for (int levels : {2, 4, 16, 100, 256}) {
        const Pdf pdf{std::vector<double>(static_cast<std::size_t>(levels), 1.0 / levels)};
        const TransferFunction t = build_transfer(compute_cdf(pdf), levels - 1);
        for (int i = 0; i < levels; ++i) CHECK(t.lut[static_cast<std::size_t>(i)] == i);
    }
}

TEST_CASE("constant image is left unchanged") {
    for (int v : {0, 5, 255}) {
        const GrayImage flat(6, 4, 255, static_cast<Level>(v));
        const TransferFunction t = transfer_from_histogram(compute_histogram(flat), 255);
        CHECK(t.lut[static_cast<std::size_t>(v)] == v);
        CHECK(equalize(flat) == flat);
        CHECK(equalize(flat, HeMode::minmax) == flat);
        CHECK(build_transfer(compute_cdf(compute_pdf(compute_histogram(flat), flat.size())), 255).lut ==
              t.lut);
    }
}

TEST_CASE("two-level image stretches to the full range") {
    const auto scene = synth::two_region(10, 4, 60, 190);
    const GrayImage eq = equalize(scene.image);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 10; ++c) CHECK(eq.at(r, c) == (c < 5 ? 0 : 255));
    }
}

TEST_CASE("real-valued and exact tables agree") {
    for (const GrayImage& img : fixtures::he_corpus()) {
        const Histogram h = compute_histogram(img);
        const Cdf cdf = compute_cdf(compute_pdf(h, img.size()));
        CHECK(build_transfer(cdf, img.max_level()) == transfer_from_histogram(h, img.max_level()));
    }
}

TEST_CASE("equalization properties over the corpus") {
    for (const GrayImage& img : fixtures::he_corpus()) {
        const Histogram h = compute_histogram(img);
        const TransferFunction t = transfer_from_histogram(h, img.max_level());
        const GrayImage eq = equalize(img);

        CHECK(std::is_sorted(t.lut.begin(), t.lut.end()));
        CHECK(*std::max_element(t.lut.begin(), t.lut.end()) <= img.max_level());
        CHECK(compute_histogram(eq).total() == img.size());
        CHECK(equalize(eq) == eq);

        const auto [lo, hi] = std::minmax_element(img.pixels().begin(), img.pixels().end());
        if (*lo != *hi) {
            const auto [elo, ehi] = std::minmax_element(eq.pixels().begin(), eq.pixels().end());
            CHECK(*elo == 0);
            CHECK(*ehi == img.max_level());
        }
        CHECK(serial::apply_transfer(img, t) == eq);
    }
}

TEST_CASE("equalization commutes with pixel permutations") {
    std::mt19937_64 gen(7);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GrayImage img = synth::random_image(20, 13, 255, seed);
        std::vector<std::size_t> perm(img.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        GrayImage shuffled = img;
        for (std::size_t i = 0; i < perm.size(); ++i) shuffled.mutable_pixels()[i] = img.pixels()[perm[i]];

        const GrayImage eq = equalize(img);
        const GrayImage eq_shuffled = equalize(shuffled);
        for (std::size_t i = 0; i < perm.size(); ++i) CHECK(eq_shuffled.pixels()[i] == eq.pixels()[perm[i]]);
    }
}

TEST_CASE("minmax mode keeps the input range") {
    const GrayImage img(4, 1, 255, std::vector<Level>{50, 60, 70, 80});
    // cdf = {.25, .5, .75, 1}; y' = cdf * 30 + 50 -> {57.5, 65, 72.5, 80}, rounded half up
    const GrayImage eq = equalize(img, HeMode::minmax);
    CHECK(std::vector<Level>(eq.pixels().begin(), eq.pixels().end()) == std::vector<Level>{58, 65, 73, 80});

    const Histogram h = compute_histogram(img);
    const Cdf cdf = compute_cdf(compute_pdf(h, img.size()));
    CHECK(build_minmax_transfer(cdf, 50, 80) == transfer_from_histogram(h, 255, HeMode::minmax));

    for (const GrayImage& g : fixtures::he_corpus()) {
        const auto [lo, hi] = std::minmax_element(g.pixels().begin(), g.pixels().end());
        const GrayImage out = equalize(g, HeMode::minmax);
        const auto [olo, ohi] = std::minmax_element(out.pixels().begin(), out.pixels().end());
        CHECK(*olo >= *lo);
        CHECK(*ohi == *hi);
    }
}
