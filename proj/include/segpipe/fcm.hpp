#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace segpipe {

// Row-major dense matrix. The tag keeps features, centers and memberships
// from being mixed up at call sites.
template <class Tag>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw std::invalid_argument("DenseMatrix: data size mismatch");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct FeatureTag {};
struct CenterTag {};
struct MembershipTag {};

using FeatureSet = DenseMatrix<FeatureTag>;           // n x d points
using Centers = DenseMatrix<CenterTag>;               // c x d cluster centers
using MembershipMatrix = DenseMatrix<MembershipTag>;  // n x c degrees of belonging

/// One 1-D feature per value.
FeatureSet make_features(std::span<const double> values);

struct FcmConfig {
    std::size_t clusters = 2;
    double fuzzifier = 2.0;
    double tolerance = 1e-5;
    std::size_t max_iters = 300;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument unless 1 <= clusters <= n, fuzzifier > 1,
    // tolerance > 0 and max_iters >= 1.
    void validate(std::size_t n) const;
};

struct FcmState {
    Centers centers;
    MembershipMatrix memberships;
    std::vector<double> objective_trace;  // J after each iteration
    std::size_t iterations = 0;
    bool converged = false;
};

class DegenerateClusterError : public std::runtime_error {
public:
    explicit DegenerateClusterError(std::size_t cluster)
        : std::runtime_error("fcm: cluster " + std::to_string(cluster) + " has zero total membership weight"),
          cluster_(cluster) {}
    std::size_t cluster() const noexcept { return cluster_; }

private:
    std::size_t cluster_;
};

/// J = sum_ij u_ij^m * ||x_i - c_j||^2
double objective(const FeatureSet& x, const MembershipMatrix& u, const Centers& c, double m);

/// C_k = sum_i u_ik^m x_i / sum_i u_ik^m. Throws DegenerateClusterError on a zero denominator.
Centers update_centers(const FeatureSet& x, const MembershipMatrix& u, double m);

/// u_ij = 1 / sum_k (||x_i - c_j|| / ||x_i - c_k||)^(2/(m-1)).
/// A point sitting exactly on one or more centers splits its membership
/// equally among those centers and gets 0 elsewhere.
MembershipMatrix update_memberships(const FeatureSet& x, const Centers& c, double m);

/// Seeded random rows, uniform on the probability simplex.
MembershipMatrix init_memberships(std::size_t n, std::size_t c, std::uint64_t seed);

/// Alternate center and membership updates from a seeded random start until
/// max |U_new - U_old| < tolerance or max_iters is reached.
FcmState fcm_cluster(const FeatureSet& x, const FcmConfig& cfg);

/// Same, starting from a caller-supplied membership matrix (cfg.seed is unused).
FcmState fcm_cluster(const FeatureSet& x, const FcmConfig& cfg, MembershipMatrix initial);

/// Hard labels: argmax per row, ties to the lowest cluster index.
std::vector<std::uint32_t> defuzzify(const MembershipMatrix& u);

namespace serial {

double objective(const FeatureSet& x, const MembershipMatrix& u, const Centers& c, double m);
Centers update_centers(const FeatureSet& x, const MembershipMatrix& u, double m);
MembershipMatrix update_memberships(const FeatureSet& x, const Centers& c, double m);
FcmState fcm_cluster(const FeatureSet& x, const FcmConfig& cfg);

}  // namespace serial

}  // namespace segpipe
