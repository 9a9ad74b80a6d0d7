#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "liftspectra/base_graph.hpp"
#include "liftspectra/lift.hpp"

namespace liftspectra {

/// Bilinear-form contributions split at the product threshold lam/(m*n).
/// Both sums run over ordered adjacent pairs (each undirected edge in both
/// directions, loops twice on the diagonal), so r_heavy + r_light is
/// exactly x^T A_H y. Ties at the threshold go to the heavy side.
struct HeavyLightSplit {
    double r_heavy = 0.0;
    double r_light = 0.0;
    double threshold = 0.0; // lam/(m*n)
    std::uint64_t heavy_count = 0;
    std::uint64_t light_count = 0;
};

HeavyLightSplit heavy_light_split(const LiftedGraph& h, double lam,
                                  std::span<const double> x, std::span<const double> y);

enum class DyadicSide { heavy, light };

/// Partition of the support of x by magnitude bands of t = |x_a|*sqrt(mn/lam):
/// heavy side level l holds 2^l <= t < 2^(l+1); light side level l holds
/// 2^(-l) <= t < 2^(-l+1).
struct VectorDyadicProfile {
    std::map<int, std::vector<std::uint32_t>> levels;
    double scale = 0.0; // lam/(m*n)
    DyadicSide side = DyadicSide::heavy;

    // Heavy: sum over l of 4^l * |D_l| * scale; light uses 4^(-l).
    // Bounded by ||x||^2 for either side.
    double weight_sum() const;
};

VectorDyadicProfile vector_dyadic_profile(std::span<const double> x, double lam,
                                          std::uint64_t mn, DyadicSide side);

/// Partition of the fibers meeting a lift-vertex set A by the dyadic band of
/// their filled proportion: level i holds fibers with
/// 2^(-i-1) < |A ∩ fiber|/n <= 2^(-i). alpha_i = s_i * 2^(-i).
struct FiberDyadicProfile {
    struct Level {
        std::vector<std::uint32_t> fibers; // base vertices, ascending
        std::uint64_t members = 0;         // |A_i|
        double alpha = 0.0;
    };
    std::map<int, Level> levels;
    std::uint32_t n = 0;

    double alpha_sum() const;
};

FiberDyadicProfile fiber_dyadic_profile(std::span<const std::uint32_t> vertex_set,
                                        std::uint32_t n, std::uint32_t m);

/// Nearest vector to x in the grid (1/(d*sqrt(mn)))*Z^mn subject to norm <= 1.
/// Coordinate-wise nearest-multiple rounding; if the rounded vector exceeds
/// unit norm, coordinates that were rounded away from zero are stepped back
/// toward zero (largest magnitude first), which keeps every coordinate within
/// one grid step of x. Requires ||x|| <= 1. Guarantees ||x - out||_inf <=
/// 1/(d*sqrt(mn)) and ||x - out|| <= 1/d.
std::vector<double> lattice_round(std::span<const double> x, std::uint32_t d);

/// Exact expectation of x^T A_H y over uniform n-lifts of g:
/// (1/n) * w^T A_G z with fiber sums w_j = sum_i x_(i,j), z_j = sum_i y_(i,j).
/// Requires g loop-free. For unit x,y orthogonal to the all-ones vector the
/// value is at most the nontrivial spectral bound of g.
double expected_bilinear(const BaseGraph& g, std::uint32_t n,
                         std::span<const double> x, std::span<const double> y);

/// Unique z > 1 with z*log2(z) = b, for b > 0. Safeguarded Newton;
/// residual <= 1e-12*max(1,b). For b > 1 the solution obeys z < 2b/log2(b).
double solve_zlogz(double b);

/// w* = (9*e_st/2^(i+j)) * max(z*, 2) where z* solves
/// z log2 z = (2^(i+j)/(9*e_st)) * [(i+2)*alpha_i + (j+2)*beta_j + n^(-1/4)].
/// Requires e_st >= 1.
double w_star(std::uint64_t e_st, int i, int j, double alpha_i, double beta_j,
              std::uint64_t n);

/// Sum over all fiber-adjacent ordered pairs (all (i,j),(i',j') with j ~ j'
/// in g, multiplicity included) of x^2 * y^2 restricted to light products
/// |x_a y_b| < lam/(m*n). Requires ||x|| <= 1 and ||y|| <= 1.
double light_variance_quantity(const BaseGraph& g, std::uint32_t n, double lam,
                               std::span<const double> x, std::span<const double> y);

} // namespace liftspectra
