#include "liftspectra/lift.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <queue>
#include <utility>

#include "liftspectra/rng.hpp"

namespace liftspectra {

LiftedGraph::LiftedGraph(BaseGraph base, std::uint32_t n,
                         std::vector<std::vector<std::uint32_t>> perms,
                         std::optional<std::uint64_t> seed)
    : base_(std::move(base)), n_(n), perms_(std::move(perms)), seed_(seed) {
    if (n_ < 1) throw InputError("covering number must be at least 1");
    if (perms_.size() != base_.edges().size())
        throw InputError("need one permutation per base edge");
    for (const auto& perm : perms_)
        if (perm.size() != n_) throw InputError("permutation length must equal n");

    inv_perms_.resize(perms_.size());
    for (std::size_t e = 0; e < perms_.size(); ++e) {
        inv_perms_[e].assign(n_, 0);
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (perms_[e][i] >= n_) throw InputError("permutation entry out of range");
            inv_perms_[e][perms_[e][i]] = i;
        }
    }

    incidence_.resize(base_.vertex_count());
    const auto& edges = base_.edges();
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        if (edges[e].is_loop()) {
            // Both half-edges of the loop live at the same base vertex.
            incidence_[edges[e].u].push_back({e, true});
            incidence_[edges[e].u].push_back({e, false});
        } else {
            incidence_[edges[e].u].push_back({e, true});
            incidence_[edges[e].v].push_back({e, false});
        }
    }
}

LiftedGraph LiftedGraph::random(const BaseGraph& g, std::uint32_t n, std::uint64_t seed) {
    if (n < 1) throw InputError("covering number must be at least 1");
    std::vector<std::vector<std::uint32_t>> perms;
    perms.reserve(g.edges().size());
    for (std::uint64_t e = 0; e < g.edges().size(); ++e) {
        SplitMix64 stream(derive_stream_seed(seed, e));
        perms.push_back(random_permutation(n, stream));
    }
    return LiftedGraph(g, n, std::move(perms), seed);
}

LiftedGraph LiftedGraph::identity(const BaseGraph& g, std::uint32_t n) {
    if (g.loop_count() > 0)
        throw InputError("identity lift is only defined for loop-free bases");
    std::vector<std::uint32_t> id(n);
    for (std::uint32_t i = 0; i < n; ++i) id[i] = i;
    std::vector<std::vector<std::uint32_t>> perms(g.edges().size(), id);
    return LiftedGraph(g, n, std::move(perms), std::nullopt);
}

LiftedGraph LiftedGraph::from_parts(BaseGraph base, std::uint32_t n,
                                    std::vector<std::vector<std::uint32_t>> perms,
                                    std::optional<std::uint64_t> seed) {
    return LiftedGraph(std::move(base), n, std::move(perms), seed);
}

void LiftedGraph::apply_adjacency(std::span<const double> x, std::span<double> y) const {
    const std::uint64_t order = this->order();
    if (x.size() != order || y.size() != order)
        throw InputError("vector length must equal m*n");
    std::fill(y.begin(), y.end(), 0.0);
    const auto& edges = base_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto* perm = perms_[e].data();
        const std::uint64_t ub = static_cast<std::uint64_t>(edges[e].u) * n_;
        const std::uint64_t vb = static_cast<std::uint64_t>(edges[e].v) * n_;
        for (std::uint32_t i = 0; i < n_; ++i) {
            y[vb + perm[i]] += x[ub + i];
            y[ub + i] += x[vb + perm[i]];
        }
    }
}

std::vector<double> LiftedGraph::adjacency_apply(std::span<const double> x) const {
    std::vector<double> y(order());
    apply_adjacency(x, y);
    return y;
}

bool LiftedGraph::is_connected() const {
    const std::uint64_t order = this->order();
    std::vector<bool> seen(order, false);
    std::queue<std::uint64_t> todo;
    todo.push(0);
    seen[0] = true;
    std::uint64_t reached = 1;
    while (!todo.empty()) {
        const std::uint64_t v = todo.front();
        todo.pop();
        for_each_neighbor(v, [&](std::uint64_t w) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                todo.push(w);
            }
        });
    }
    return reached == order;
}

std::uint64_t LiftedGraph::edge_count_between(std::span<const std::uint32_t> a,
                                              std::span<const std::uint32_t> b) const {
    std::vector<bool> in_b(order(), false);
    for (std::uint32_t v : b) in_b[v] = true;
    std::uint64_t count = 0;
    for (std::uint32_t v : a)
        for_each_neighbor(v, [&](std::uint64_t w) { count += in_b[w] ? 1 : 0; });
    return count;
}

bool verify_cover(const LiftedGraph& h) {
    const std::uint32_t n = h.n();
    if (h.permutations().size() != h.base().edges().size()) return false;
    std::vector<bool> hit(n);
    for (const auto& perm : h.permutations()) {
        if (perm.size() != n) return false;
        std::fill(hit.begin(), hit.end(), false);
        for (std::uint32_t img : perm) {
            if (img >= n || hit[img]) return false;
            hit[img] = true;
        }
    }
    // With every permutation a bijection, each lift vertex inherits exactly
    // the base vertex's incidences; recount degrees to catch anything else.
    const std::uint32_t d = h.degree();
    for (std::uint64_t v = 0; v < h.order(); ++v) {
        std::uint32_t deg = 0;
        h.for_each_neighbor(v, [&](std::uint64_t) { ++deg; });
        if (deg != d) return false;
    }
    return true;
}

std::string lift_to_json(const LiftedGraph& h) {
    nlohmann::json j;
    j["base"] = serialize_edge_list(h.base());
    j["n"] = h.n();
    if (h.seed()) j["seed"] = *h.seed();
    j["perms"] = h.permutations();
    return j.dump(2);
}

LiftedGraph lift_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad lift JSON: ") + e.what());
    }
    try {
        BaseGraph base = parse_edge_list(j.at("base").get<std::string>());
        const auto n = j.at("n").get<std::uint32_t>();
        auto perms = j.at("perms").get<std::vector<std::vector<std::uint32_t>>>();
        std::optional<std::uint64_t> seed;
        if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
        return LiftedGraph::from_parts(std::move(base), n, std::move(perms), seed);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad lift JSON: ") + e.what());
    }
}

} // namespace liftspectra
