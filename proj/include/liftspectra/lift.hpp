#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liftspectra/base_graph.hpp"

namespace liftspectra {

/// An n-lift of a base graph: one permutation of [0,n) per base edge.
/// Vertices are (i, j) with fiber index i in [0,n) and base vertex j,
/// laid out as id = j*n + i. For a non-loop edge {u,v} with permutation
/// pi the lift has the n edges {(i,u),(pi(i),v)}; for a loop at v it has
/// the n edges {(i,v),(pi(i),v)}, so fixed points of pi become loops
/// (degree 2) and 2-cycles become double edges.
///
/// Immutable after construction; adjacency is derived from the
/// permutations, never materialized.
class LiftedGraph {
public:
    static LiftedGraph random(const BaseGraph& g, std::uint32_t n, std::uint64_t seed);
    static LiftedGraph identity(const BaseGraph& g, std::uint32_t n); // requires g loop-free

    // No structural checks beyond sizes; verify_cover() reports problems.
    static LiftedGraph from_parts(BaseGraph base, std::uint32_t n,
                                  std::vector<std::vector<std::uint32_t>> perms,
                                  std::optional<std::uint64_t> seed);

    const BaseGraph& base() const { return base_; }
    std::uint32_t n() const { return n_; }
    std::uint64_t order() const { return static_cast<std::uint64_t>(base_.vertex_count()) * n_; }
    std::uint32_t degree() const { return base_.degree(); }
    std::optional<std::uint64_t> seed() const { return seed_; }
    const std::vector<std::vector<std::uint32_t>>& permutations() const { return perms_; }

    std::uint64_t vertex_id(std::uint32_t fiber, std::uint32_t base_vertex) const {
        return static_cast<std::uint64_t>(base_vertex) * n_ + fiber;
    }
    std::uint32_t fiber_of(std::uint64_t vid) const { return static_cast<std::uint32_t>(vid % n_); }
    std::uint32_t base_vertex_of(std::uint64_t vid) const { return static_cast<std::uint32_t>(vid / n_); }

    /// y = A_H x, streaming the permutations in edge-index order (fixed
    /// summation order). x and y must have length order() and not alias.
    void apply_adjacency(std::span<const double> x, std::span<double> y) const;
    std::vector<double> adjacency_apply(std::span<const double> x) const;

    /// Visits each undirected edge of H once, with multiplicity, as
    /// fn(a, b); a == b for loops.
    template <typename F>
    void for_each_edge(F&& fn) const {
        const auto& edges = base_.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& perm = perms_[e];
            for (std::uint32_t i = 0; i < n_; ++i)
                fn(vertex_id(i, edges[e].u), vertex_id(perm[i], edges[e].v));
        }
    }

    /// Visits the neighbors of vid with multiplicity (exactly degree()
    /// calls; a loop at vid yields vid twice).
    template <typename F>
    void for_each_neighbor(std::uint64_t vid, F&& fn) const {
        const std::uint32_t j = base_vertex_of(vid);
        const std::uint32_t i = fiber_of(vid);
        const auto& edges = base_.edges();
        for (const Incidence inc : incidence_[j]) {
            const Edge& e = edges[inc.edge];
            if (inc.forward)
                fn(vertex_id(perms_[inc.edge][i], e.v));
            else
                fn(vertex_id(inv_perms_[inc.edge][i], e.u));
        }
    }

    bool is_connected() const;

    // Ordered-pair edge count #{(a,b): a in A, b in B, ab in E(H)} with
    // multiplicity; a loop at a vertex in both sets counts twice.
    std::uint64_t edge_count_between(std::span<const std::uint32_t> a,
                                     std::span<const std::uint32_t> b) const;

private:
    struct Incidence {
        std::uint32_t edge;
        bool forward; // true: this endpoint is e.u (follow perm), else e.v (inverse)
    };

    LiftedGraph(BaseGraph base, std::uint32_t n,
                std::vector<std::vector<std::uint32_t>> perms,
                std::optional<std::uint64_t> seed);

    BaseGraph base_;
    std::uint32_t n_;
    std::vector<std::vector<std::uint32_t>> perms_;
    std::vector<std::vector<std::uint32_t>> inv_perms_;
    std::vector<std::vector<Incidence>> incidence_; // per base vertex
    std::optional<std::uint64_t> seed_;
};

/// True iff every permutation is a bijection of [0,n) and every lift vertex
/// has degree exactly d (the fiber projection is then a covering map).
bool verify_cover(const LiftedGraph& h);

// JSON round trip: {"base": <edge-list text>, "n": ..., "seed": ...?,
// "perms": [[...], ...]}. Bit-exact.
std::string lift_to_json(const LiftedGraph& h);
LiftedGraph lift_from_json(const std::string& text);

} // namespace liftspectra
