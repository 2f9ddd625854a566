#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "segpipe/image.hpp"

namespace segpipe {

// counts[i] = number of pixels at gray level i.
struct Histogram {
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const noexcept;
    bool operator==(const Histogram&) const = default;
};

struct Pdf {
    std::vector<double> probs;
};

struct Cdf {
    std::vector<double> cum;
};

// Level-to-level lookup table; monotone non-decreasing.
struct TransferFunction {
    std::vector<Level> lut;

    Level operator()(Level x) const { return lut[x]; }
    bool operator==(const TransferFunction&) const = default;
};

enum class HeMode {
    // Darkest occupied level -> 0, brightest -> max_level (cdf_min normalization).
    prose,
    // y' = cdf(x) * (max{x} - min{x}) + min{x}; keeps the input's own range.
    minmax,
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Tally of gray levels; length is img.levels(). Parallel over pixel blocks.
Histogram compute_histogram(const GrayImage& img);

/// counts / n. Throws DomainError when n == 0.
Pdf compute_pdf(const Histogram& hist, std::uint64_t n);

Cdf compute_cdf(const Pdf& pdf);

/// Table from real-valued cdf:
///   lut[i] = ceil((cdf[i] - cdf_min) / (1 - cdf_min) * max_level), clamped to [0, max_level],
/// where cdf_min is the smallest nonzero entry. Identity when cdf_min == 1.
/// Values within 1e-9 of an integer are snapped to it before the ceiling.
TransferFunction build_transfer(const Cdf& cdf, int max_level);

/// Same table computed in exact integer arithmetic from the counts.
TransferFunction transfer_from_histogram(const Histogram& hist, int max_level, HeMode mode = HeMode::prose);

TransferFunction build_minmax_transfer(const Cdf& cdf, int min_level, int max_level_in_image);

GrayImage apply_transfer(const GrayImage& img, const TransferFunction& t);

/// Histogram equalization using the image's own transfer function.
GrayImage equalize(const GrayImage& img, HeMode mode = HeMode::prose);

namespace serial {

Histogram compute_histogram(const GrayImage& img);
GrayImage apply_transfer(const GrayImage& img, const TransferFunction& t);

}  // namespace serial

}  // namespace segpipe
