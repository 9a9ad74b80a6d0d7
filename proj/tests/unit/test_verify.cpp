#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "liftspectra/spectrum.hpp"
#include "liftspectra/verify.hpp"
#include "test_helpers.hpp"

using namespace liftspectra;

namespace {

std::vector<std::uint32_t> all_vertices(std::uint32_t m) {
    std::vector<std::uint32_t> v(m);
    for (std::uint32_t i = 0; i < m; ++i) v[i] = i;
    return v;
}

// Independently coded Cheeger enumeration: walks every nonempty proper
// subset (not just one representative per complement class) in descending
// mask order and counts the boundary through an adjacency matrix.
double cheeger_second_opinion(const BaseGraph& g) {
    const std::uint32_t m = g.vertex_count();
    std::vector<std::vector<int>> adj(m, std::vector<int>(m, 0));
    for (const Edge& e : g.edges())
        if (!e.is_loop()) {
            ++adj[e.u][e.v];
            ++adj[e.v][e.u];
        }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = (1u << m) - 2; mask >= 1; --mask) {
        const auto size = static_cast<std::uint32_t>(std::popcount(mask));
        if (size == 0 || size == m) continue;
        std::uint32_t boundary = 0;
        for (std::uint32_t u = 0; u < m; ++u)
            for (std::uint32_t v = u + 1; v < m; ++v)
                if (((mask >> u) & 1u) != ((mask >> v) & 1u)) boundary += adj[u][v];
        best = std::min(best, static_cast<double>(boundary) / std::min(size, m - size));
    }
    return best;
}

} // namespace

TEST_CASE("mixing bound on hand-checked pairs") {
    const BaseGraph g4 = k4();
    const auto v4 = all_vertices(4);
    const InequalityReport full = check_mixing(g4, v4, v4);
    CHECK(full.lhs == doctest::Approx(0.0).epsilon(1e-12)); // |12 - (3/4)*16|
    CHECK(full.rhs == doctest::Approx(4.0).epsilon(1e-12)); // lambda=1, sqrt(16)
    CHECK(full.margin == doctest::Approx(4.0).epsilon(1e-12));

    const BaseGraph pet = petersen();
    const std::vector<std::uint32_t> a = {0};
    std::vector<std::uint32_t> nb; // neighbors of vertex 0
    for (const Edge& e : pet.edges()) {
        if (e.u == 0) nb.push_back(e.v);
        else if (e.v == 0) nb.push_back(e.u);
    }
    const InequalityReport star = check_mixing(pet, a, nb);
    CHECK(star.lhs == doctest::Approx(2.1).epsilon(1e-12)); // |3 - 0.3*3|
    CHECK(star.rhs == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK_FALSE(star.violated());
}

TEST_CASE("mixing is exhaustive-clean on k4 and sample-clean elsewhere") {
    const BaseGraph g4 = k4();
    for (std::uint32_t am = 1; am < 16; ++am)
        for (std::uint32_t bm = 1; bm < 16; ++bm) {
            std::vector<std::uint32_t> a, b;
            for (std::uint32_t v = 0; v < 4; ++v) {
                if ((am >> v) & 1u) a.push_back(v);
                if ((bm >> v) & 1u) b.push_back(v);
            }
            CHECK_FALSE(check_mixing(g4, a, b).violated());
        }

    std::mt19937_64 gen(10);
    for (const char* name : {"petersen", "dodecahedral", "complete(7)", "cycle(9)"}) {
        const BaseGraph g = catalog(name);
        for (int round = 0; round < 10000; ++round) {
            std::vector<std::uint32_t> a, b;
            for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
                if (gen() & 1u) a.push_back(v);
                if (gen() & 1u) b.push_back(v);
            }
            if (a.empty() || b.empty()) continue;
            const InequalityReport r = check_mixing(g, a, b);
            REQUIRE_FALSE(r.violated());
        }
    }
}

TEST_CASE("witness re-evaluates to the reported lhs") {
    const BaseGraph g = petersen();
    const std::vector<std::uint32_t> a = {0, 1, 2}, b = {4, 5, 6, 7};
    const InequalityReport r = check_mixing(g, a, b);
    const InequalityReport again = check_mixing(g, r.witness.a, r.witness.b);
    CHECK(again.lhs == r.lhs);
    CHECK(again.rhs == r.rhs);
}

TEST_CASE("lift cut bound") {
    const LiftedGraph h = LiftedGraph::random(petersen(), 100, 41);
    const double lam = 2.0;

    const std::vector<std::uint32_t> single = {500};
    const InequalityReport tiny = check_cut_bound(h, lam, single, single);
    CHECK(tiny.applicable);
    CHECK(tiny.rhs >= 802.0 * lam);
    CHECK(tiny.lhs <= 3.0);

    std::mt19937_64 gen(4);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::uint32_t> a, b;
        for (int i = 0; i < 32; ++i) {
            a.push_back(static_cast<std::uint32_t>(gen() % h.order()));
            b.push_back(static_cast<std::uint32_t>(gen() % h.order()));
        }
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        CHECK_FALSE(check_cut_bound(h, lam, a, b).violated());
    }

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const VertexSetPair pair = greedy_dense_pair(h, 32, 32, seed);
        CHECK(pair.a.size() == 32);
        CHECK(pair.b.size() == 32);
        CHECK_FALSE(check_cut_bound(h, lam, pair.a, pair.b).violated());
    }

    // precondition failure is a skip, not a violation
    const LiftedGraph tiny_lift = LiftedGraph::random(petersen(), 2, 1);
    const auto everything = all_vertices(20);
    const InequalityReport skipped = check_cut_bound(tiny_lift, 20.0, everything, everything);
    CHECK_FALSE(skipped.applicable);
    CHECK_FALSE(skipped.violated());
}

TEST_CASE("small cut bound") {
    const LiftedGraph h = LiftedGraph::random(petersen(), 100, 8);

    const InequalityReport empty = check_small_cut(h, {}, {});
    CHECK(empty.applicable);
    CHECK(empty.lhs == 0.0);
    CHECK(empty.rhs == 0.0);

    std::uint64_t v = 0, w = 0;
    h.for_each_edge([&](std::uint64_t a, std::uint64_t b) {
        v = a;
        w = b;
    });
    const std::vector<std::uint32_t> a = {static_cast<std::uint32_t>(v)};
    const std::vector<std::uint32_t> b = {static_cast<std::uint32_t>(w)};
    const InequalityReport pair = check_small_cut(h, a, b);
    CHECK(pair.lhs >= 1.0);
    CHECK(pair.lhs <= 2.0);
    CHECK(pair.rhs == 100.0);

    // n^(2/3) cap: 22^3 > 100^2
    const std::vector<std::uint32_t> eleven(11, 1), twelve(12, 2);
    CHECK_FALSE(check_small_cut(h, eleven, twelve).applicable);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const LiftedGraph lift = LiftedGraph::random(petersen(), 100, 900 + seed);
        const VertexSetPair greedy = greedy_dense_pair(lift, 10, 10, seed);
        CHECK_FALSE(check_small_cut(lift, greedy.a, greedy.b).violated());
    }
}

TEST_CASE("cheeger brute force on knowns") {
    CHECK(cheeger_bruteforce(cycle(4)).h == doctest::Approx(1.0));
    CHECK(cheeger_bruteforce(k4()).h == doctest::Approx(2.0));
    CHECK(cheeger_bruteforce(BaseGraph(2, 1, {{0, 1}})).h == doctest::Approx(1.0));
    CHECK(cheeger_bruteforce(petersen()).h == doctest::Approx(1.0));

    // argmin witness reproduces the ratio
    const CheegerResult res = cheeger_bruteforce(petersen());
    std::uint32_t boundary = 0;
    const BaseGraph g = petersen();
    std::vector<bool> in_s(10, false);
    for (std::uint32_t v : res.argmin) in_s[v] = true;
    for (const Edge& e : g.edges())
        if (in_s[e.u] != in_s[e.v]) ++boundary;
    const auto size = static_cast<std::uint32_t>(res.argmin.size());
    CHECK(res.h == doctest::Approx(static_cast<double>(boundary) /
                                   std::min(size, 10 - size)));

    CHECK_THROWS_AS(cheeger_bruteforce(bouquet(2)), InputError);
}

TEST_CASE("cheeger agrees with an independent enumeration") {
    for (const char* name : {"k4", "petersen", "dodecahedral", "cycle(4)", "cycle(5)",
                             "cycle(6)", "complete(5)", "complete(6)"}) {
        const BaseGraph g = catalog(name);
        CHECK(cheeger_bruteforce(g).h == doctest::Approx(cheeger_second_opinion(g)).epsilon(1e-12));
    }
}

TEST_CASE("cheeger sandwich") {
    const CheegerSandwichReport pet = check_cheeger_sandwich(petersen());
    CHECK(pet.h == doctest::Approx(1.0));
    CHECK_FALSE(pet.bipartite_degenerate);
    CHECK(pet.lower.lhs == doctest::Approx(0.5));  // (3-2)/2
    CHECK(pet.upper.rhs == doctest::Approx(std::sqrt(6.0)));
    CHECK(pet.lower.margin >= 0.0);
    CHECK(pet.upper.margin >= 0.0);

    const CheegerSandwichReport four = check_cheeger_sandwich(k4());
    CHECK(four.h == doctest::Approx(2.0));
    CHECK(four.lower.lhs == doctest::Approx(1.0));
    CHECK(four.upper.rhs == doctest::Approx(std::sqrt(12.0)));
    CHECK(four.lower.margin >= 0.0);
    CHECK(four.upper.margin >= 0.0);

    // bipartite: the literal bounds collapse to [0,0]; the lambda_2 variant holds
    const CheegerSandwichReport c4 = check_cheeger_sandwich(cycle(4));
    CHECK(c4.bipartite_degenerate);
    CHECK(c4.upper.rhs == doctest::Approx(0.0));
    CHECK(c4.upper.margin < 0.0); // the literal reading fails, by design of the report
    REQUIRE(c4.lower_lambda2.has_value());
    CHECK(c4.lower_lambda2->lhs == doctest::Approx(1.0)); // (2-0)/2
    CHECK(c4.lower_lambda2->margin >= 0.0);
    CHECK(c4.upper_lambda2->rhs == doctest::Approx(std::sqrt(8.0)));
    CHECK(c4.upper_lambda2->margin >= 0.0);

    for (const char* name : {"k4", "petersen", "dodecahedral", "complete(5)", "cycle(5)"}) {
        const CheegerSandwichReport r = check_cheeger_sandwich(catalog(name));
        CHECK_FALSE(r.bipartite_degenerate);
        CHECK(r.lower.margin >= 0.0);
        CHECK(r.upper.margin >= 0.0);
    }
}

TEST_CASE("eigenvalue bound report over a sample batch") {
    const BaseGraph g = petersen();
    std::vector<double> samples;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        samples.push_back(lambda_new(LiftedGraph::random(g, 30, seed)).lambda_new);
    const Theorem1Report report = check_theorem1(samples, g);
    CHECK(report.bound.rhs ==
          doctest::Approx(7500.0 * 2.0 * std::log2(3.0))); // lambda = 2 >= sqrt(3)
    CHECK(report.bound.margin >= 0.0);
    CHECK(report.inheritance.margin >= 0.0);
    CHECK(report.ratio_vs_threshold > 0.0);
    CHECK(report.ratio_vs_threshold < 1.2); // empirically far below the proof constant
}

TEST_CASE("greedy pairs are deterministic and respect sizes") {
    const LiftedGraph h = LiftedGraph::random(k4(), 50, 77);
    const VertexSetPair p1 = greedy_dense_pair(h, 12, 9, 5);
    const VertexSetPair p2 = greedy_dense_pair(h, 12, 9, 5);
    CHECK(p1.a == p2.a);
    CHECK(p1.b == p2.b);
    CHECK(p1.a.size() == 12);
    CHECK(p1.b.size() == 9);
    // greedy beats a spread-out pair of the same sizes on cross edges
    std::vector<std::uint32_t> ra, rb;
    for (std::uint32_t i = 0; i < 12; ++i) ra.push_back(i * 16);
    for (std::uint32_t i = 0; i < 9; ++i) rb.push_back(i * 16 + 7);
    CHECK(h.edge_count_between(p1.a, p1.b) >= h.edge_count_between(ra, rb));
}

TEST_CASE("heavy and light spot checks hold at desk scale") {
    const SpotCheckReport heavy = heavy_spotcheck(petersen(), 20, 50, 1);
    CHECK(heavy.trials == 50);
    CHECK(heavy.abs_ok);
    CHECK(heavy.dev_ok);
    CHECK(heavy.worst_abs <= heavy.abs_bound);

    const SpotCheckReport light = light_spotcheck(petersen(), 20, 50, 2);
    CHECK(light.dev_ok);
    CHECK(light.worst_dev <= light.dev_bound);
}

TEST_CASE("inequality report json shape") {
    const BaseGraph g = k4();
    const auto v = all_vertices(4);
    const std::string j = inequality_report_to_json(check_mixing(g, v, v));
    for (const char* key : {"name", "lhs", "rhs", "margin", "witness", "samples_examined"})
        CHECK(j.find(key) != std::string::npos);
}
