#include "segpipe/histogram_eq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace segpipe {

namespace {

constexpr double kSnap = 1e-9;

double snap_to_integer(double v) {
    const double r = std::round(v);
    return std::abs(v - r) < kSnap ? r : v;
}

Level clamp_level(double v, int max_level) {
    return static_cast<Level>(std::clamp(v, 0.0, static_cast<double>(max_level)));
}

TransferFunction identity_transfer(std::size_t levels) {
    TransferFunction t;
    t.lut.resize(levels);
    std::iota(t.lut.begin(), t.lut.end(), Level{0});
    return t;
}

std::vector<std::uint64_t> cumulative(const Histogram& hist) {
    std::vector<std::uint64_t> cum(hist.counts.size());
    std::partial_sum(hist.counts.begin(), hist.counts.end(), cum.begin());
    return cum;
}

}  // namespace

std::uint64_t Histogram::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram serial::compute_histogram(const GrayImage& img) {
    Histogram h;
    h.counts.assign(static_cast<std::size_t>(img.levels()), 0);
    for (Level v : img.pixels()) ++h.counts[v];
    return h;
}

Histogram compute_histogram(const GrayImage& img) {
    const auto px = img.pixels();
    const auto n = static_cast<std::ptrdiff_t>(px.size());
    const std::size_t levels = static_cast<std::size_t>(img.levels());
    Histogram h;
    h.counts.assign(levels, 0);

#pragma omp parallel
    {
        std::vector<std::uint64_t> local(levels, 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) ++local[px[static_cast<std::size_t>(i)]];
#pragma omp critical(segpipe_histogram_merge)
        for (std::size_t l = 0; l < levels; ++l) h.counts[l] += local[l];
    }
    return h;
}

Pdf compute_pdf(const Histogram& hist, std::uint64_t n) {
    if (n == 0) throw DomainError("compute_pdf: empty image (n = 0)");
    Pdf pdf;
    pdf.probs.resize(hist.counts.size());
    const double dn = static_cast<double>(n);
    std::transform(hist.counts.begin(), hist.counts.end(), pdf.probs.begin(),
                   [dn](std::uint64_t c) { return static_cast<double>(c) / dn; });
    return pdf;
}

Cdf compute_cdf(const Pdf& pdf) {
    Cdf cdf;
    cdf.cum.resize(pdf.probs.size());
    std::partial_sum(pdf.probs.begin(), pdf.probs.end(), cdf.cum.begin());
    return cdf;
}

TransferFunction build_transfer(const Cdf& cdf, int max_level) {
    auto first = std::find_if(cdf.cum.begin(), cdf.cum.end(), [](double v) { return v > 0.0; });
    if (first == cdf.cum.end()) return identity_transfer(cdf.cum.size());
    const double cdf_min = *first;
    if (1.0 - cdf_min < kSnap) return identity_transfer(cdf.cum.size());

    TransferFunction t;
    t.lut.resize(cdf.cum.size());
    for (std::size_t i = 0; i < cdf.cum.size(); ++i) {
        const double v = (cdf.cum[i] - cdf_min) / (1.0 - cdf_min) * max_level;
        t.lut[i] = clamp_level(std::ceil(snap_to_integer(v)), max_level);
    }
    return t;
}

TransferFunction build_minmax_transfer(const Cdf& cdf, int min_level, int max_level_in_image) {
    if (min_level >= max_level_in_image) return identity_transfer(cdf.cum.size());
    const int range = max_level_in_image - min_level;
    TransferFunction t;
    t.lut.resize(cdf.cum.size());
    for (std::size_t i = 0; i < cdf.cum.size(); ++i) {
        const double v = cdf.cum[i] * range + min_level;
        t.lut[i] = clamp_level(std::floor(snap_to_integer(v + 0.5)), max_level_in_image);
    }
    return t;
}

TransferFunction transfer_from_histogram(const Histogram& hist, int max_level, HeMode mode) {
    const auto cum = cumulative(hist);
    const std::uint64_t n = cum.empty() ? 0 : cum.back();
    if (n == 0) throw DomainError("transfer_from_histogram: empty histogram");

    auto lo = std::find_if(hist.counts.begin(), hist.counts.end(), [](auto c) { return c > 0; });
    auto hi = std::find_if(hist.counts.rbegin(), hist.counts.rend(), [](auto c) { return c > 0; });
    const auto min_level = static_cast<std::uint64_t>(lo - hist.counts.begin());
    const auto max_occupied = static_cast<std::uint64_t>(hist.counts.rend() - hi - 1);
    if (min_level == max_occupied) return identity_transfer(hist.counts.size());

    TransferFunction t;
    t.lut.resize(hist.counts.size());
    if (mode == HeMode::prose) {
        const std::uint64_t cmin = cum[min_level];
        const std::uint64_t den = n - cmin;
        const auto m = static_cast<std::uint64_t>(max_level);
        for (std::size_t i = 0; i < cum.size(); ++i) {
            if (cum[i] <= cmin) {
                t.lut[i] = 0;
            } else {
                t.lut[i] = static_cast<Level>(((cum[i] - cmin) * m + den - 1) / den);
            }
        }
    } else {
        const std::uint64_t range = max_occupied - min_level;
        for (std::size_t i = 0; i < cum.size(); ++i) {
            t.lut[i] = static_cast<Level>(min_level + (2 * cum[i] * range + n) / (2 * n));
        }
    }
    return t;
}

GrayImage serial::apply_transfer(const GrayImage& img, const TransferFunction& t) {
    GrayImage out = img;
    for (Level& v : out.mutable_pixels()) v = t(v);
    return out;
}

GrayImage apply_transfer(const GrayImage& img, const TransferFunction& t) {
    if (t.lut.size() < static_cast<std::size_t>(img.levels())) {
        throw std::invalid_argument("apply_transfer: table shorter than the image's level count");
    }
    for (Level v : t.lut) {
        if (v > img.max_level()) throw std::invalid_argument("apply_transfer: table output exceeds max_level");
    }
    GrayImage out = img;
    auto px = out.mutable_pixels();
    const auto n = static_cast<std::ptrdiff_t>(px.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& v = px[static_cast<std::size_t>(i)];
        v = t(v);
    }
    return out;
}

GrayImage equalize(const GrayImage& img, HeMode mode) {
    return apply_transfer(img, transfer_from_histogram(compute_histogram(img), img.max_level(), mode));
}

}  // namespace segpipe
