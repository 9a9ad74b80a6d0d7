#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liftspectra/base_graph.hpp"

namespace liftspectra {

// Largest order accepted by the dense symmetric eigensolver.
inline constexpr std::uint32_t kDenseOrderCap = 4096;

/// Sorted (non-increasing) real eigenvalue multiset of a symmetric
/// adjacency operator.
struct Spectrum {
    std::vector<double> values; // length = matrix order, non-increasing
    std::uint32_t declared_degree = 0;

    double top() const { return values.front(); }
    double bottom() const { return values.back(); }
};

/// Full dense eigendecomposition of the adjacency operator of g
/// (loop = diagonal entry 2). Requires m <= kDenseOrderCap.
Spectrum base_spectrum(const BaseGraph& g);

/// Largest absolute value over the nontrivial eigenvalues: the spectrum
/// minus exactly one copy of its top value. Requires g connected (otherwise
/// the top eigenvalue has multiplicity > 1 and "nontrivial" is ambiguous).
/// For m = 1 there are no nontrivial eigenvalues and the result is 0.
double lambda_of(const BaseGraph& g);

/// Spectral radius 2*sqrt(d-1) of the infinite d-regular tree; the
/// Ramanujan threshold. Requires d >= 2.
double universal_cover_radius(std::uint32_t d);

// CSV with header `index,eigenvalue`, shortest round-trip float format.
std::string spectrum_to_csv(const Spectrum& s);

} // namespace liftspectra
