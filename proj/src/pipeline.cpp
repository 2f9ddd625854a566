#include "segpipe/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

namespace segpipe {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Level round_level(double v, int max_level) {
    return static_cast<Level>(std::clamp(static_cast<int>(v + 0.5), 0, max_level));
}

}  // namespace

std::size_t distinct_levels(const GrayImage& img) {
    const Histogram h = compute_histogram(img);
    return static_cast<std::size_t>(std::count_if(h.counts.begin(), h.counts.end(), [](auto c) { return c > 0; }));
}

SegmentationResult segment(const GrayImage& img, const PipelineConfig& cfg) {
    SegmentationResult result;
    const auto start = Clock::now();

    auto t = Clock::now();
    result.equalized = cfg.skip_equalize ? img : equalize(img, cfg.he_mode);
    result.timings.equalize_ms = cfg.skip_equalize ? 0.0 : elapsed_ms(t);

    t = Clock::now();
    result.denoised = cfg.skip_median ? result.equalized : median_filter(result.equalized, cfg.window);
    result.timings.median_ms = cfg.skip_median ? 0.0 : elapsed_ms(t);

    const std::size_t levels = distinct_levels(result.denoised);
    if (levels < cfg.fcm.clusters) {
        throw ConfigError("segment: image has " + std::to_string(levels) + " distinct gray levels but " +
                          std::to_string(cfg.fcm.clusters) + " clusters were requested");
    }

    t = Clock::now();
    const auto px = result.denoised.pixels();
    std::vector<double> values(px.begin(), px.end());
    const FcmState state = fcm_cluster(make_features(values), cfg.fcm);
    result.timings.fcm_ms = elapsed_ms(t);

    t = Clock::now();
    result.labels = LabelImage{img.width(), img.height(), defuzzify(state.memberships)};
    result.timings.defuzzify_ms = elapsed_ms(t);

    const std::size_t c = state.centers.rows();
    result.centers.resize(c);
    for (std::size_t k = 0; k < c; ++k) result.centers[k] = state.centers(k, 0);
    for (std::size_t k = 0; k < c; ++k) {
        result.membership_maps.push_back(
            membership_to_image(state.memberships, k, img.width(), img.height(), img.max_level()));
    }
    result.fcm_iterations = state.iterations;
    result.converged = state.converged;
    result.objective_trace = state.objective_trace;
    result.timings.total_ms = elapsed_ms(start);
    return result;
}

GrayImage labels_to_image(const LabelImage& labels, std::size_t clusters, int max_level) {
    if (clusters < 1) throw std::invalid_argument("labels_to_image: need at least one cluster");
    const double step = static_cast<double>(max_level) / static_cast<double>(std::max<std::size_t>(clusters - 1, 1));
    std::vector<Level> px(labels.labels.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        if (labels.labels[i] >= clusters) throw std::invalid_argument("labels_to_image: label out of range");
        px[i] = clusters == 1 ? Level{0} : round_level(labels.labels[i] * step, max_level);
    }
    return GrayImage(labels.width, labels.height, max_level, std::move(px));
}

GrayImage membership_to_image(const MembershipMatrix& u, std::size_t cluster, std::size_t width, std::size_t height,
                              int max_level) {
    std::vector<Level> px(u.rows());
    for (std::size_t i = 0; i < u.rows(); ++i) px[i] = round_level(u(i, cluster) * max_level, max_level);
    return GrayImage(width, height, max_level, std::move(px));
}

double label_accuracy(const LabelImage& predicted, const LabelImage& truth, std::size_t clusters) {
    if (predicted.labels.size() != truth.labels.size() || predicted.labels.empty()) {
        throw std::invalid_argument("label_accuracy: label images differ in size");
    }
    if (clusters < 1 || clusters > 8) throw std::invalid_argument("label_accuracy: clusters must be in [1, 8]");

    // confusion[p][t]
    std::vector<std::size_t> confusion(clusters * clusters, 0);
    for (std::size_t i = 0; i < truth.labels.size(); ++i) {
        const auto p = predicted.labels[i];
        const auto q = truth.labels[i];
        if (p >= clusters || q >= clusters) throw std::invalid_argument("label_accuracy: label out of range");
        ++confusion[p * clusters + q];
    }
    std::vector<std::size_t> perm(clusters);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t hits = 0;
        for (std::size_t p = 0; p < clusters; ++p) hits += confusion[p * clusters + perm[p]];
        best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(truth.labels.size());
}

}  // namespace segpipe
