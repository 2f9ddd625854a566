#include "segpipe/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace segpipe {

namespace {

// Partial sums are accumulated per fixed-size block of points and combined in
// block order, so results do not depend on the number of threads.
constexpr std::size_t kBlock = 2048;

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

void check_shapes(const FeatureSet& x, const MembershipMatrix& u) {
    if (u.rows() != x.rows()) throw std::invalid_argument("fcm: membership rows != number of points");
}

void check_shapes(const FeatureSet& x, const Centers& c) {
    if (c.cols() != x.cols()) throw std::invalid_argument("fcm: center dimension != feature dimension");
    if (c.rows() == 0) throw std::invalid_argument("fcm: no centers");
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

// One membership row. Ratios are taken against the nearest center so every
// term lies in (0, 1] and nothing overflows for small distances.
void membership_row(std::span<const double> point, const Centers& centers, double m, std::span<double> out,
                    std::vector<double>& dist) {
    const std::size_t c = centers.rows();
    dist.resize(c);
    std::size_t coincident = 0;
    for (std::size_t j = 0; j < c; ++j) {
        dist[j] = squared_distance(point, centers.row(j));
        if (dist[j] == 0.0) ++coincident;
    }
    if (coincident > 0) {
        const double share = 1.0 / static_cast<double>(coincident);
        for (std::size_t j = 0; j < c; ++j) out[j] = dist[j] == 0.0 ? share : 0.0;
        return;
    }
    const double nearest = *std::min_element(dist.begin(), dist.end());
    const double exponent = 1.0 / (m - 1.0);
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        out[j] = std::pow(nearest / dist[j], exponent);
        total += out[j];
    }
    for (std::size_t j = 0; j < c; ++j) out[j] /= total;
}

Centers finish_centers(std::size_t c, std::size_t d, const std::vector<double>& num, const std::vector<double>& den) {
    Centers centers(c, d);
    for (std::size_t k = 0; k < c; ++k) {
        if (!(den[k] > 0.0)) throw DegenerateClusterError(k);
        for (std::size_t t = 0; t < d; ++t) centers(k, t) = num[k * d + t] / den[k];
    }
    return centers;
}

double max_abs_change(const MembershipMatrix& a, const MembershipMatrix& b) {
    const auto da = a.data();
    const auto db = b.data();
    double delta = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) delta = std::max(delta, std::abs(da[i] - db[i]));
    return delta;
}

struct ParallelKernels {
    static Centers centers(const FeatureSet& x, const MembershipMatrix& u, double m) {
        return update_centers(x, u, m);
    }
    static MembershipMatrix memberships(const FeatureSet& x, const Centers& c, double m) {
        return update_memberships(x, c, m);
    }
    static double objective(const FeatureSet& x, const MembershipMatrix& u, const Centers& c, double m) {
        return segpipe::objective(x, u, c, m);
    }
};

struct SerialKernels {
    static Centers centers(const FeatureSet& x, const MembershipMatrix& u, double m) {
        return serial::update_centers(x, u, m);
    }
    static MembershipMatrix memberships(const FeatureSet& x, const Centers& c, double m) {
        return serial::update_memberships(x, c, m);
    }
    static double objective(const FeatureSet& x, const MembershipMatrix& u, const Centers& c, double m) {
        return serial::objective(x, u, c, m);
    }
};

template <class Kernels>
FcmState run_fcm(const FeatureSet& x, const FcmConfig& cfg, MembershipMatrix u) {
    cfg.validate(x.rows());
    if (u.rows() != x.rows() || u.cols() != cfg.clusters) {
        throw std::invalid_argument("fcm: initial membership matrix has the wrong shape");
    }
    FcmState state;
    state.memberships = std::move(u);
    while (state.iterations < cfg.max_iters) {
        state.centers = Kernels::centers(x, state.memberships, cfg.fuzzifier);
        MembershipMatrix next = Kernels::memberships(x, state.centers, cfg.fuzzifier);
        const double delta = max_abs_change(next, state.memberships);
        state.memberships = std::move(next);
        ++state.iterations;
        state.objective_trace.push_back(Kernels::objective(x, state.memberships, state.centers, cfg.fuzzifier));
        if (delta < cfg.tolerance) {
            state.converged = true;
            break;
        }
    }
    return state;
}

}  // namespace

FeatureSet make_features(std::span<const double> values) {
    return FeatureSet(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

void FcmConfig::validate(std::size_t n) const {
    if (clusters < 1) throw std::invalid_argument("fcm: need at least one cluster");
    if (n < 1) throw std::invalid_argument("fcm: need at least one point");
    if (clusters > n) {
        throw std::invalid_argument("fcm: " + std::to_string(clusters) + " clusters exceed " + std::to_string(n) +
                                    " points");
    }
    if (!(fuzzifier > 1.0) || !std::isfinite(fuzzifier)) {
        throw std::invalid_argument("fcm: fuzzifier must be a finite value > 1");
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("fcm: tolerance must be > 0");
    if (max_iters < 1) throw std::invalid_argument("fcm: max_iters must be >= 1");
}

double objective(const FeatureSet& x, const MembershipMatrix& u, const Centers& c, double m) {
    check_shapes(x, u);
    check_shapes(x, c);
    const std::size_t n = x.rows();
    const auto nblocks = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = 0; j < c.rows(); ++j) {
                s += std::pow(u(i, j), m) * squared_distance(x.row(i), c.row(j));
            }
        }
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

Centers update_centers(const FeatureSet& x, const MembershipMatrix& u, double m) {
    check_shapes(x, u);
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const std::size_t c = u.cols();
    const std::size_t stride = c * (d + 1);
    const auto nblocks = static_cast<std::ptrdiff_t>(block_count(n));
    // Per block: c * d numerator sums followed by c denominators.
    std::vector<double> partial(static_cast<std::size_t>(nblocks) * stride, 0.0);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        double* acc = partial.data() + static_cast<std::size_t>(b) * stride;
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        for (std::size_t i = lo; i < hi; ++i) {
            const auto xi = x.row(i);
            for (std::size_t k = 0; k < c; ++k) {
                const double w = std::pow(u(i, k), m);
                acc[c * d + k] += w;
                for (std::size_t t = 0; t < d; ++t) acc[k * d + t] += w * xi[t];
            }
        }
    }

    std::vector<double> num(c * d, 0.0);
    std::vector<double> den(c, 0.0);
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const double* acc = partial.data() + static_cast<std::size_t>(b) * stride;
        for (std::size_t k = 0; k < c * d; ++k) num[k] += acc[k];
        for (std::size_t k = 0; k < c; ++k) den[k] += acc[c * d + k];
    }
    return finish_centers(c, d, num, den);
}

MembershipMatrix update_memberships(const FeatureSet& x, const Centers& c, double m) {
    check_shapes(x, c);
    MembershipMatrix u(x.rows(), c.rows());
    const auto n = static_cast<std::ptrdiff_t>(x.rows());
#pragma omp parallel
    {
        std::vector<double> dist;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto row = static_cast<std::size_t>(i);
            membership_row(x.row(row), c, m, u.row(row), dist);
        }
    }
    return u;
}

MembershipMatrix init_memberships(std::size_t n, std::size_t c, std::uint64_t seed) {
    if (c < 1 || n < c) throw std::invalid_argument("init_memberships: need n >= c >= 1");
    std::mt19937_64 gen(seed);
    MembershipMatrix u(n, c);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = u.row(i);
        double total = 0.0;
        for (double& v : row) {
            // Uniform in (0, 1) from the top 53 bits, then Exp(1).
            const double unit = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
            v = -std::log(unit);
            total += v;
        }
        for (double& v : row) v /= total;
    }
    return u;
}

FcmState fcm_cluster(const FeatureSet& x, const FcmConfig& cfg) {
    cfg.validate(x.rows());
    return run_fcm<ParallelKernels>(x, cfg, init_memberships(x.rows(), cfg.clusters, cfg.seed));
}

FcmState fcm_cluster(const FeatureSet& x, const FcmConfig& cfg, MembershipMatrix initial) {
    return run_fcm<ParallelKernels>(x, cfg, std::move(initial));
}

std::vector<std::uint32_t> defuzzify(const MembershipMatrix& u) {
    std::vector<std::uint32_t> labels(u.rows());
    for (std::size_t i = 0; i < u.rows(); ++i) {
        const auto row = u.row(i);
        labels[i] = static_cast<std::uint32_t>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    return labels;
}

double serial::objective(const FeatureSet& x, const MembershipMatrix& u, const Centers& c, double m) {
    check_shapes(x, u);
    check_shapes(x, c);
    double total = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < c.rows(); ++j) {
            total += std::pow(u(i, j), m) * squared_distance(x.row(i), c.row(j));
        }
    }
    return total;
}

Centers serial::update_centers(const FeatureSet& x, const MembershipMatrix& u, double m) {
    check_shapes(x, u);
    const std::size_t d = x.cols();
    const std::size_t c = u.cols();
    std::vector<double> num(c * d, 0.0);
    std::vector<double> den(c, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t k = 0; k < c; ++k) {
            const double w = std::pow(u(i, k), m);
            den[k] += w;
            for (std::size_t t = 0; t < d; ++t) num[k * d + t] += w * x(i, t);
        }
    }
    return finish_centers(c, d, num, den);
}

MembershipMatrix serial::update_memberships(const FeatureSet& x, const Centers& c, double m) {
    check_shapes(x, c);
    MembershipMatrix u(x.rows(), c.rows());
    std::vector<double> dist;
    for (std::size_t i = 0; i < x.rows(); ++i) membership_row(x.row(i), c, m, u.row(i), dist);
    return u;
}

FcmState serial::fcm_cluster(const FeatureSet& x, const FcmConfig& cfg) {
    cfg.validate(x.rows());
    return run_fcm<SerialKernels>(x, cfg, init_memberships(x.rows(), cfg.clusters, cfg.seed));
}

}  // namespace segpipe
