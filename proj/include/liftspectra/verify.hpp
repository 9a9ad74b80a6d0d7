#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liftspectra/base_graph.hpp"
#include "liftspectra/lift.hpp"
#include "liftspectra/solvers.hpp"

namespace liftspectra {

struct VertexSetPair {
    std::vector<std::uint32_t> a;
    std::vector<std::uint32_t> b;
};

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // rhs - lhs
    VertexSetPair witness;
    std::uint64_t samples_examined = 0;
    bool applicable = true; // false: precondition failed, check skipped

    bool violated() const { return applicable && margin < 0.0; }
};

std::string inequality_report_to_json(const InequalityReport& r);

/// Mixing bound on the base graph: |e(A,B) - (d/m)|A||B|| vs
/// lambda*sqrt(|A||B|), with e(A,B) the ordered-pair edge count.
InequalityReport check_mixing(const BaseGraph& g, std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b);

/// Cut bound on a lift: e(A,B) vs 802*lam*sqrt(|A||B|) + 75*(|A|+|B|)*log2(d)^2.
/// Applies only when |A||B| <= (2mn/lam)^2; otherwise reported as skipped.
InequalityReport check_cut_bound(const LiftedGraph& h, double lam,
                                 std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b);

/// Small-set cut bound on a lift: e(A,B) vs 50*(|A|+|B|) for
/// |A|+|B| <= n^(2/3); otherwise skipped.
InequalityReport check_small_cut(const LiftedGraph& h, std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b);

struct CheegerResult {
    double h = 0.0;
    std::vector<std::uint32_t> argmin; // subset achieving the minimum
};

/// Exact edge-isoperimetric constant min over nonempty proper S of
/// |boundary(S)| / min(|S|, m-|S|), by enumeration of all 2^(m-1)-1
/// subset classes. Requires 2 <= m <= 24.
CheegerResult cheeger_bruteforce(const BaseGraph& g);

/// Two-sided spectral bound on the Cheeger constant:
/// (d - lambda)/2 <= h <= sqrt(2d(d - lambda)). For bipartite graphs
/// lambda = d collapses the bounds to [0,0]; the literal check is still
/// reported, flagged degenerate, together with a variant using the second
/// largest (signed) eigenvalue.
struct CheegerSandwichReport {
    double h = 0.0;
    double lambda = 0.0;
    bool bipartite_degenerate = false;
    InequalityReport lower;
    InequalityReport upper;
    std::optional<InequalityReport> lower_lambda2;
    std::optional<InequalityReport> upper_lambda2;
};

CheegerSandwichReport check_cheeger_sandwich(const BaseGraph& g);

/// End-to-end eigenvalue bound over a batch of lift samples:
/// every lambda(H) <= 7500 * max(lambda, sqrt(d)) * log2(d), and every
/// lambda(H) >= lambda(G) - 1e-7 (inherited spectrum).
struct Theorem1Report {
    InequalityReport bound;       // lhs = max lambda(H) observed
    InequalityReport inheritance; // lhs = lambda(G) - 1e-7, rhs = min lambda(H)
    double ratio_vs_threshold = 0.0; // max lambda(H) / max(lambda, 2 sqrt(d-1))
};

Theorem1Report check_theorem1(std::span<const double> lambda_samples, const BaseGraph& g);

/// Greedy adversarial pair: alternately add to A (then B) the vertex with
/// the most edges into the other side (ties to the lowest id), starting
/// from a seeded random vertex on each side. Sides may overlap.
VertexSetPair greedy_dense_pair(const LiftedGraph& h, std::uint32_t size_a,
                                std::uint32_t size_b, std::uint64_t seed);

/// Statistical spot-check of the heavy/light contribution bounds over
/// `trials` independent lifts with one fixed pair of vectors:
///  - heavy: |R_h| <= 3500*lam*log2(d) and |R_h - mean| <= 7000*lam*log2(d),
///    with x, y random unit vectors orthogonal to the all-ones vector;
///  - light: |R_l - mean| <= 250*lam*log2(d), with x, y grid-rounded.
/// lam is max(lambda(G), sqrt(d)). Every trial must satisfy the bound.
struct SpotCheckReport {
    double lambda_used = 0.0;
    double abs_bound = 0.0;   // heavy only; 0 for light
    double dev_bound = 0.0;
    double worst_abs = 0.0;
    double worst_dev = 0.0;
    double mean = 0.0;
    std::uint32_t trials = 0;
    bool abs_ok = true;
    bool dev_ok = true;
};

SpotCheckReport heavy_spotcheck(const BaseGraph& g, std::uint32_t n, std::uint32_t trials,
                                std::uint64_t seed);
SpotCheckReport light_spotcheck(const BaseGraph& g, std::uint32_t n, std::uint32_t trials,
                                std::uint64_t seed);

} // namespace liftspectra
