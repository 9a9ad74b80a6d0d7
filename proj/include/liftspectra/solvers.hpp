#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liftspectra/lift.hpp"
#include "liftspectra/spectrum.hpp"

namespace liftspectra {

enum class SolverMethod { automatic, dense, lanczos };

struct SolverOptions {
    SolverMethod method = SolverMethod::automatic;
    std::uint32_t dense_cap = kDenseOrderCap; // automatic picks dense for order <= dense_cap
    std::uint32_t lanczos_k = 4;
    double lanczos_tol = 1e-9; // residual bound tol*d
};

/// Full dense eigendecomposition of A_H. Requires order <= kDenseOrderCap.
Spectrum dense_lift_spectrum(const LiftedGraph& h);

// Dense adjacency matrix of the lift as a flat row-major order*order array.
// Desk-scale tool (tests, bindings); requires order <= kDenseOrderCap.
std::vector<double> dense_adjacency(const LiftedGraph& h);

struct RitzPair {
    double value = 0.0;
    double residual = 0.0; // ||A y - value*y|| for the unit Ritz vector y
    std::vector<double> vector_;
};

struct LanczosResult {
    std::vector<RitzPair> largest;  // non-increasing values
    std::vector<RitzPair> smallest; // non-decreasing values
    std::uint32_t iterations = 0;
};

/// Symmetric Lanczos with full reorthogonalization on the matrix-free
/// adjacency apply; restarts against the converged subspace on breakdown,
/// so eigenvalue multiplicities of small degenerate lifts are recovered.
/// Iteration cap 10*k*ceil(log2(order)); throws SolverError if the k
/// extreme Ritz pairs at each end fail to reach residual <= tol*d in cap.
LanczosResult lanczos_extremes(const LiftedGraph& h, std::uint32_t k, double tol,
                               std::uint64_t seed);

struct LambdaReport {
    double lambda1 = 0.0;        // top eigenvalue; equals d for valid connected lifts
    double lambda_new = 0.0;     // max |.| after removing one copy of the top
    std::string method;          // "dense" | "lanczos"
    double residual = 0.0;
    bool ramanujan = false;
    double threshold = 0.0;      // 2*sqrt(d-1)
};

/// lambda(H): removes exactly one copy of the largest eigenvalue and takes
/// the max absolute value of the rest. If H is disconnected the second copy
/// of d is the reported maximum. Method chosen by order vs. dense_cap when
/// automatic. The Lanczos start-vector seed derives from the lift seed.
LambdaReport lambda_new(const LiftedGraph& h, const SolverOptions& opts = {});

/// lambda <= 2*sqrt(d-1) + 1e-9*d; the slack keeps the classification from
/// flipping on solver noise. A bipartite lift carries -d in its spectrum and
/// therefore never qualifies.
bool is_ramanujan(const LambdaReport& report, std::uint32_t d);

std::string lambda_report_to_json(const LambdaReport& r);

} // namespace liftspectra
