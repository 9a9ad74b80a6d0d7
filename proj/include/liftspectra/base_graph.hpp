#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liftspectra/errors.hpp"

namespace liftspectra {

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0; // normalized so u <= v; u == v is a loop

    bool is_loop() const { return u == v; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// d-regular multigraph on m labeled vertices. Loops are allowed; a loop
/// adds 2 to its endpoint's degree and 2 to the diagonal of the adjacency
/// operator. Construction checks exact d-regularity and endpoint ranges.
/// Immutable after construction.
class BaseGraph {
public:
    BaseGraph(std::uint32_t m, std::uint32_t d, std::vector<Edge> edges);

    std::uint32_t vertex_count() const { return m_; }
    std::uint32_t degree() const { return d_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::uint32_t loop_count() const { return loops_; }

    bool is_connected() const;
    bool is_simple() const;
    bool is_bipartite() const;

    // Edge multiset, sorted — for comparisons across differently ordered inputs.
    std::vector<Edge> sorted_edges() const;

private:
    std::uint32_t m_;
    std::uint32_t d_;
    std::vector<Edge> edges_;
    std::uint32_t loops_ = 0;
};

struct ValidationReport {
    bool regular = false;
    std::uint32_t degree = 0;
    bool connected = false;
    bool simple = false;
    bool bipartite = false;
};

// Recomputes every field from scratch (degree count, traversal, edge
// inspection, 2-coloring). Never fails.
ValidationReport validate(const BaseGraph& g);

// Named test graphs.
BaseGraph k4();
BaseGraph petersen();
BaseGraph dodecahedral(); // generalized Petersen graph GP(10,2)
BaseGraph complete(std::uint32_t k);
BaseGraph cycle(std::uint32_t m);
BaseGraph bouquet(std::uint32_t loop_count); // single vertex, d = 2*loop_count

/// Dispatch by name: "k4", "petersen", "dodecahedral", "complete(6)",
/// "cycle(5)", "bouquet(2)". Throws InputError on unknown names or bad params.
BaseGraph catalog(const std::string& spec);

/// Edge-list text format: header `m=<int> d=<int>`, then one `u v` pair per
/// line (0-based, u=v for loops). Blank lines and `#` comments are skipped.
BaseGraph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const BaseGraph& g);

} // namespace liftspectra
