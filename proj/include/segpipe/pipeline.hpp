#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "segpipe/fcm.hpp"
#include "segpipe/histogram_eq.hpp"
#include "segpipe/image.hpp"
#include "segpipe/median_filter.hpp"

namespace segpipe {

struct PipelineConfig {
    WindowSpec window{3};
    FcmConfig fcm{};
    HeMode he_mode = HeMode::prose;
    bool skip_equalize = false;
    bool skip_median = false;
};

// One cluster index per pixel, row-major.
struct LabelImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint32_t> labels;

    bool operator==(const LabelImage&) const = default;
};

struct StageTimings {
    double equalize_ms = 0.0;
    double median_ms = 0.0;
    double fcm_ms = 0.0;
    double defuzzify_ms = 0.0;
    double total_ms = 0.0;
};

struct SegmentationResult {
    LabelImage labels;
    std::vector<GrayImage> membership_maps;  // round(u * max_level) per cluster
    std::vector<double> centers;             // gray-level center per cluster
    GrayImage equalized;                     // input unchanged when equalization is skipped
    GrayImage denoised;                      // equalized unchanged when the median is skipped
    StageTimings timings;
    std::size_t fcm_iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// equalize -> median filter -> FCM on per-pixel gray levels -> argmax labels.
/// Throws ConfigError if the image fed to FCM has fewer distinct levels than clusters.
SegmentationResult segment(const GrayImage& img, const PipelineConfig& cfg);

/// Label k -> round(k * max_level / max(c - 1, 1)).
GrayImage labels_to_image(const LabelImage& labels, std::size_t clusters, int max_level);

/// Column k of the membership matrix as a gray image, round(u * max_level).
GrayImage membership_to_image(const MembershipMatrix& u, std::size_t cluster, std::size_t width, std::size_t height,
                              int max_level);

std::size_t distinct_levels(const GrayImage& img);

/// Fraction of pixels whose label matches the truth under the best relabeling
/// of predicted clusters (exhaustive over permutations; clusters <= 8).
double label_accuracy(const LabelImage& predicted, const LabelImage& truth, std::size_t clusters);

}  // namespace segpipe
