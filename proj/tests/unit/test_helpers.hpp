#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "liftspectra/lift.hpp"

namespace test_helpers {

// Dense adjacency built through the neighbor enumeration; deliberately a
// different code path than the library's edge-stream builders.
inline Eigen::MatrixXd dense_oracle(const liftspectra::LiftedGraph& h) {
    const auto order = static_cast<Eigen::Index>(h.order());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(order, order);
    for (std::uint64_t v = 0; v < h.order(); ++v)
        h.for_each_neighbor(v, [&](std::uint64_t w) {
            a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) += 1.0;
        });
    return a;
}

inline std::vector<double> random_vector(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(dim);
    for (auto& v : x) v = dist(gen);
    return x;
}

inline void make_unit(std::vector<double>& x) {
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : x) v *= inv;
}

inline void project_off_ones(std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (auto& v : x) v -= mean;
}

inline std::vector<double> random_unit_perp_ones(std::size_t dim, std::uint64_t seed) {
    auto x = random_vector(dim, seed);
    project_off_ones(x);
    make_unit(x);
    return x;
}

} // namespace test_helpers
