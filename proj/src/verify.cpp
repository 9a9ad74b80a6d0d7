#include "liftspectra/verify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "liftspectra/decompose.hpp"
#include "liftspectra/rng.hpp"
#include "liftspectra/spectrum.hpp"

namespace liftspectra {

namespace {

// Neighbor multiset per base vertex; a loop lists its endpoint twice.
std::vector<std::vector<std::uint32_t>> base_neighbors(const BaseGraph& g) {
    std::vector<std::vector<std::uint32_t>> adj(g.vertex_count());
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

std::uint64_t base_edge_count_between(const BaseGraph& g, std::span<const std::uint32_t> a,
                                      std::span<const std::uint32_t> b) {
    const auto adj = base_neighbors(g);
    std::vector<std::uint32_t> in_b(g.vertex_count(), 0);
    for (std::uint32_t v : b) ++in_b[v];
    std::uint64_t count = 0;
    for (std::uint32_t v : a) {
        if (v >= g.vertex_count()) throw InputError("vertex out of range");
        for (std::uint32_t w : adj[v]) count += in_b[w];
    }
    return count;
}

VertexSetPair copy_pair(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    return {std::vector<std::uint32_t>(a.begin(), a.end()),
            std::vector<std::uint32_t>(b.begin(), b.end())};
}

double log2d(std::uint32_t d) { return std::log2(static_cast<double>(d)); }

double lambda_at_least_sqrt_d(const BaseGraph& g) {
    return std::max(lambda_of(g), std::sqrt(static_cast<double>(g.degree())));
}

} // namespace

std::string inequality_report_to_json(const InequalityReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["applicable"] = r.applicable;
    j["samples_examined"] = r.samples_examined;
    j["witness"] = {{"a", r.witness.a}, {"b", r.witness.b}};
    return j.dump();
}

InequalityReport check_mixing(const BaseGraph& g, std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
    InequalityReport r;
    r.name = "mixing";
    r.samples_examined = 1;
    r.witness = copy_pair(a, b);
    const auto e = static_cast<double>(base_edge_count_between(g, a, b));
    const double density = static_cast<double>(g.degree()) / g.vertex_count() *
                           static_cast<double>(a.size()) * static_cast<double>(b.size());
    r.lhs = std::abs(e - density);
    r.rhs = lambda_of(g) * std::sqrt(static_cast<double>(a.size()) * b.size());
    r.margin = r.rhs - r.lhs;
    return r;
}

InequalityReport check_cut_bound(const LiftedGraph& h, double lam,
                                 std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b) {
    InequalityReport r;
    r.name = "cut-bound";
    r.samples_examined = 1;
    r.witness = copy_pair(a, b);
    const double mn = static_cast<double>(h.order());
    const double size_product = static_cast<double>(a.size()) * b.size();
    if (size_product > (2.0 * mn / lam) * (2.0 * mn / lam)) {
        r.applicable = false; // bound does not claim anything here
        return r;
    }
    r.lhs = static_cast<double>(h.edge_count_between(a, b));
    const double l2 = log2d(h.degree());
    r.rhs = 802.0 * lam * std::sqrt(size_product) +
            75.0 * static_cast<double>(a.size() + b.size()) * l2 * l2;
    r.margin = r.rhs - r.lhs;
    return r;
}

InequalityReport check_small_cut(const LiftedGraph& h, std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b) {
    InequalityReport r;
    r.name = "small-cut";
    r.samples_examined = 1;
    r.witness = copy_pair(a, b);
    const std::uint64_t total = a.size() + b.size();
    const std::uint64_t n = h.n();
    if (total * total * total > n * n) { // |A|+|B| <= n^(2/3), integer-exact
        r.applicable = false;
        return r;
    }
    r.lhs = static_cast<double>(h.edge_count_between(a, b));
    r.rhs = 50.0 * static_cast<double>(total);
    r.margin = r.rhs - r.lhs;
    return r;
}

CheegerResult cheeger_bruteforce(const BaseGraph& g) {
    const std::uint32_t m = g.vertex_count();
    if (m < 2) throw InputError("cheeger constant needs at least 2 vertices");
    if (m > 24) throw InputError("cheeger brute force capped at 24 vertices");

    CheegerResult best;
    best.h = std::numeric_limits<double>::infinity();
    // Vertex 0 stays outside S; each {S, complement} class is visited once.
    const std::uint32_t classes = 1u << (m - 1);
    for (std::uint32_t mask = 1; mask < classes; ++mask) {
        const std::uint32_t size = static_cast<std::uint32_t>(std::popcount(mask));
        std::uint32_t boundary = 0;
        for (const Edge& e : g.edges()) {
            if (e.is_loop()) continue;
            const bool in_u = e.u > 0 && (mask >> (e.u - 1)) & 1u;
            const bool in_v = e.v > 0 && (mask >> (e.v - 1)) & 1u;
            boundary += in_u != in_v ? 1 : 0;
        }
        const double ratio =
            static_cast<double>(boundary) / std::min(size, m - size);
        if (ratio < best.h) {
            best.h = ratio;
            best.argmin.clear();
            for (std::uint32_t v = 1; v < m; ++v)
                if ((mask >> (v - 1)) & 1u) best.argmin.push_back(v);
        }
    }
    return best;
}

CheegerSandwichReport check_cheeger_sandwich(const BaseGraph& g) {
    if (!g.is_connected()) throw InputError("cheeger sandwich needs a connected graph");
    CheegerSandwichReport report;
    const CheegerResult cheeger = cheeger_bruteforce(g);
    report.h = cheeger.h;
    const double d = g.degree();
    report.lambda = lambda_of(g);

    auto make = [&](const std::string& name, double lhs, double rhs) {
        InequalityReport r;
        r.name = name;
        r.lhs = lhs;
        r.rhs = rhs;
        r.margin = rhs - lhs;
        r.witness.a = cheeger.argmin;
        r.samples_examined = 1;
        return r;
    };
    report.lower = make("cheeger-lower", (d - report.lambda) / 2.0, report.h);
    report.upper = make("cheeger-upper", report.h,
                        std::sqrt(2.0 * d * (d - report.lambda)));

    // For bipartite graphs lambda = d turns the bounds into [0,0]; keep the
    // literal reports but also evaluate against the second largest signed
    // eigenvalue, which is the quantity both bounds are really about.
    report.bipartite_degenerate = g.is_bipartite();
    if (report.bipartite_degenerate) {
        const Spectrum s = base_spectrum(g);
        const double lambda2 = s.values.size() > 1 ? s.values[1] : 0.0;
        report.lower_lambda2 = make("cheeger-lower-l2", (d - lambda2) / 2.0, report.h);
        report.upper_lambda2 =
            make("cheeger-upper-l2", report.h, std::sqrt(2.0 * d * (d - lambda2)));
    }
    return report;
}

Theorem1Report check_theorem1(std::span<const double> lambda_samples, const BaseGraph& g) {
    if (lambda_samples.empty()) throw InputError("need at least one lambda sample");
    Theorem1Report report;
    const double lam = lambda_at_least_sqrt_d(g);
    const double lam_exact = lambda_of(g);

    double max_sample = lambda_samples[0], min_sample = lambda_samples[0];
    for (double s : lambda_samples) {
        max_sample = std::max(max_sample, s);
        min_sample = std::min(min_sample, s);
    }

    report.bound.name = "eigenvalue-bound";
    report.bound.lhs = max_sample;
    report.bound.rhs = 7500.0 * lam * log2d(g.degree());
    report.bound.margin = report.bound.rhs - report.bound.lhs;
    report.bound.samples_examined = lambda_samples.size();

    report.inheritance.name = "spectrum-inheritance";
    report.inheritance.lhs = lam_exact - 1e-7;
    report.inheritance.rhs = min_sample;
    report.inheritance.margin = min_sample - (lam_exact - 1e-7);
    report.inheritance.samples_examined = lambda_samples.size();

    report.ratio_vs_threshold =
        max_sample / std::max(lam_exact, universal_cover_radius(g.degree()));
    return report;
}

VertexSetPair greedy_dense_pair(const LiftedGraph& h, std::uint32_t size_a,
                                std::uint32_t size_b, std::uint64_t seed) {
    const std::uint64_t order = h.order();
    if (size_a < 1 || size_b < 1) throw InputError("greedy pair needs nonempty sides");
    SplitMix64 rng(seed);
    VertexSetPair pair;
    std::vector<bool> in_a(order, false), in_b(order, false);
    // edges_to_a[v] counts edges from v into A (with multiplicity); the
    // greedy marginal gain of adding v to B.
    std::vector<std::uint32_t> edges_to_a(order, 0), edges_to_b(order, 0);

    auto add = [&](std::uint32_t v, bool to_a) {
        auto& members = to_a ? pair.a : pair.b;
        auto& flags = to_a ? in_a : in_b;
        auto& counts = to_a ? edges_to_a : edges_to_b;
        members.push_back(v);
        flags[v] = true;
        h.for_each_neighbor(v, [&](std::uint64_t w) { ++counts[w]; });
    };
    auto argmax = [&](const std::vector<std::uint32_t>& counts, const std::vector<bool>& taken) {
        std::uint32_t best = 0;
        std::int64_t best_count = -1;
        for (std::uint64_t v = 0; v < order; ++v)
            if (!taken[v] && static_cast<std::int64_t>(counts[v]) > best_count) {
                best_count = counts[v];
                best = static_cast<std::uint32_t>(v);
            }
        return best;
    };

    add(static_cast<std::uint32_t>(rng.next_below(order)), true);
    while (pair.a.size() < size_a || pair.b.size() < size_b) {
        if (pair.b.size() < size_b) add(argmax(edges_to_a, in_b), false);
        if (pair.a.size() < size_a) add(argmax(edges_to_b, in_a), true);
    }
    return pair;
}

namespace {

std::vector<double> random_unit_perp_ones(std::uint64_t dim, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> x(dim);
    double mean = 0.0;
    for (auto& v : x) {
        v = rng.next_symmetric();
        mean += v;
    }
    mean /= static_cast<double>(dim);
    double norm2 = 0.0;
    for (auto& v : x) {
        v -= mean;
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : x) v *= inv;
    return x;
}

SpotCheckReport run_spotcheck(const BaseGraph& g, std::uint32_t n, std::uint32_t trials,
                              std::uint64_t seed, bool heavy) {
    if (trials < 2) throw InputError("spot check needs at least 2 trials");
    SpotCheckReport report;
    report.trials = trials;
    report.lambda_used = lambda_at_least_sqrt_d(g);
    const double budget = report.lambda_used * log2d(g.degree());
    report.abs_bound = heavy ? 3500.0 * budget : 0.0;
    report.dev_bound = (heavy ? 7000.0 : 250.0) * budget;

    const std::uint64_t dim = static_cast<std::uint64_t>(g.vertex_count()) * n;
    std::vector<double> x = random_unit_perp_ones(dim, derive_stream_seed(seed, 1));
    std::vector<double> y = random_unit_perp_ones(dim, derive_stream_seed(seed, 2));
    if (!heavy) {
        x = lattice_round(x, g.degree());
        y = lattice_round(y, g.degree());
    }

    std::vector<double> values(trials);
    for (std::uint32_t t = 0; t < trials; ++t) {
        const auto h = LiftedGraph::random(g, n, derive_stream_seed(seed, 100 + t));
        const HeavyLightSplit split = heavy_light_split(h, report.lambda_used, x, y);
        values[t] = heavy ? split.r_heavy : split.r_light;
        report.worst_abs = std::max(report.worst_abs, std::abs(values[t]));
        report.mean += values[t];
    }
    report.mean /= trials;
    for (double v : values)
        report.worst_dev = std::max(report.worst_dev, std::abs(v - report.mean));
    report.abs_ok = !heavy || report.worst_abs <= report.abs_bound;
    report.dev_ok = report.worst_dev <= report.dev_bound;
    return report;
}

} // namespace

SpotCheckReport heavy_spotcheck(const BaseGraph& g, std::uint32_t n, std::uint32_t trials,
                                std::uint64_t seed) {
    return run_spotcheck(g, n, trials, seed, true);
}

SpotCheckReport light_spotcheck(const BaseGraph& g, std::uint32_t n, std::uint32_t trials,
                                std::uint64_t seed) {
    return run_spotcheck(g, n, trials, seed, false);
}

} // namespace liftspectra
