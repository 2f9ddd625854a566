#include <doctest.h>

#include <numeric>

#include "segpipe/pipeline.hpp"
#include "segpipe/synth.hpp"

using namespace segpipe;

TEST_CASE("clean two-region image is segmented exactly") {
    const auto scene = synth::two_region(64, 32, 60, 190);
    const SegmentationResult res = segment(scene.image, PipelineConfig{});
    CHECK(label_accuracy(res.labels, scene.truth, 2) == 1.0);
    CHECK(res.labels.width == 64);
    CHECK(res.labels.height == 32);
    CHECK(res.membership_maps.size() == 2);
    CHECK(res.centers.size() == 2);
    CHECK(res.converged);
    CHECK(res.fcm_iterations == res.objective_trace.size());
}

TEST_CASE("constant image is rejected for two clusters") {
    const GrayImage flat(8, 8, 255, Level{90});
    try {
        segment(flat, PipelineConfig{});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1 distinct") != std::string::npos);
        CHECK(msg.find("2 clusters") != std::string::npos);
    }
    PipelineConfig one;
    one.fcm.clusters = 1;
    CHECK_NOTHROW(segment(flat, one));
}

TEST_CASE("labels partition the pixel set") {
    const GrayImage img = synth::random_image(40, 30, 255, 8);
    PipelineConfig cfg;
    cfg.fcm.clusters = 3;
    const SegmentationResult res = segment(img, cfg);
    REQUIRE(res.labels.labels.size() == img.size());
    std::vector<std::size_t> per_label(3, 0);
    for (auto l : res.labels.labels) {
        REQUIRE(l < 3);
        ++per_label[l];
    }
    CHECK(std::accumulate(per_label.begin(), per_label.end(), std::size_t{0}) == img.size());
}

TEST_CASE("stage order and intermediates") {
    const auto scene = synth::two_region(32, 32, 80, 150);
    const GrayImage noisy = synth::add_salt_and_pepper(scene.image, 0.05, 2);
    PipelineConfig cfg;
    cfg.window = WindowSpec(5);
    const SegmentationResult res = segment(noisy, cfg);
    CHECK(res.equalized == equalize(noisy));
    CHECK(res.denoised == median_filter(res.equalized, WindowSpec(5)));
}

TEST_CASE("full ablation equals plain FCM on the raw gray levels") {
    const auto scene = synth::two_region(48, 20, 60, 190);
    const GrayImage noisy = synth::add_salt_and_pepper(scene.image, 0.1, 4);
    PipelineConfig cfg;
    cfg.skip_equalize = true;
    cfg.skip_median = true;
    cfg.fcm.seed = 17;
    const SegmentationResult res = segment(noisy, cfg);

    std::vector<double> values(noisy.pixels().begin(), noisy.pixels().end());
    const FcmState direct = fcm_cluster(make_features(values), cfg.fcm);
    CHECK(res.labels.labels == defuzzify(direct.memberships));
    CHECK(res.equalized == noisy);
    CHECK(res.denoised == noisy);
    CHECK(res.timings.equalize_ms == 0.0);
    CHECK(res.timings.median_ms == 0.0);
}

TEST_CASE("segment is deterministic") {
    const GrayImage img = synth::add_salt_and_pepper(synth::two_region(50, 50, 30, 200).image, 0.05, 9);
    const SegmentationResult a = segment(img, PipelineConfig{});
    const SegmentationResult b = segment(img, PipelineConfig{});
    CHECK(a.labels == b.labels);
    CHECK(a.membership_maps == b.membership_maps);
    CHECK(a.centers == b.centers);
    CHECK(a.objective_trace == b.objective_trace);
}

TEST_CASE("median stage improves noisy two-region segmentation") {
    const auto scene = synth::two_region(128, 128, 60, 190);
    const GrayImage noisy = synth::add_salt_and_pepper(scene.image, 0.05, 1);
    PipelineConfig full;
    PipelineConfig no_median;
    no_median.skip_median = true;
    const double acc_full = label_accuracy(segment(noisy, full).labels, scene.truth, 2);
    const double acc_raw = label_accuracy(segment(noisy, no_median).labels, scene.truth, 2);
    CHECK(acc_full >= 0.99);
    CHECK(acc_full > acc_raw);
}

TEST_CASE("labels_to_image spacing") {
    LabelImage two{2, 1, {0, 1}};
    const GrayImage g2 = labels_to_image(two, 2, 255);
    CHECK(g2.at(0, 0) == 0);
    CHECK(g2.at(0, 1) == 255);

    LabelImage three{3, 1, {0, 1, 2}};
    const GrayImage g3 = labels_to_image(three, 3, 255);
    CHECK(g3.at(0, 0) == 0);
    CHECK(g3.at(0, 1) == 128);
    CHECK(g3.at(0, 2) == 255);

    LabelImage one{2, 2, {0, 0, 0, 0}};
    CHECK(labels_to_image(one, 1, 255) == GrayImage(2, 2, 255, Level{0}));

    CHECK_THROWS_AS(labels_to_image(LabelImage{1, 1, {2}}, 2, 255), std::invalid_argument);
}

TEST_CASE("label accuracy is permutation invariant") {
    LabelImage truth{4, 1, {0, 0, 1, 1}};
    CHECK(label_accuracy(LabelImage{4, 1, {1, 1, 0, 0}}, truth, 2) == 1.0);
    CHECK(label_accuracy(LabelImage{4, 1, {1, 1, 1, 0}}, truth, 2) == 0.75);
}
