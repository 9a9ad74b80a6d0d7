#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "liftspectra/decompose.hpp"
#include "liftspectra/spectrum.hpp"
#include "test_helpers.hpp"

using namespace liftspectra;
using test_helpers::dense_oracle;

namespace {

double bilinear_oracle(const LiftedGraph& h, const std::vector<double>& x,
                       const std::vector<double>& y) {
    const Eigen::MatrixXd a = dense_oracle(h);
    const Eigen::Map<const Eigen::VectorXd> xe(x.data(), a.rows());
    const Eigen::Map<const Eigen::VectorXd> ye(y.data(), a.rows());
    return xe.transpose() * (a * ye);
}

double norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

} // namespace

TEST_CASE("heavy/light split on distinguished vectors") {
    const LiftedGraph h = LiftedGraph::random(petersen(), 10, 3);
    const double mn = static_cast<double>(h.order());

    const std::vector<double> uniform(h.order(), 1.0 / std::sqrt(mn));
    const HeavyLightSplit flat = heavy_light_split(h, 2.0, uniform, uniform);
    CHECK(flat.r_heavy == 0.0); // all products 1/mn < 2/mn
    CHECK(flat.heavy_count == 0);
    CHECK(flat.r_light == doctest::Approx(3.0).epsilon(1e-12));

    // indicator pair on one adjacent ordered pair
    std::vector<double> ex(h.order(), 0.0), ey(h.order(), 0.0);
    std::uint64_t v = 0, w = 0;
    h.for_each_edge([&](std::uint64_t a, std::uint64_t b) {
        v = a;
        w = b;
    });
    ex[v] = 1.0;
    ey[w] = 1.0;
    const HeavyLightSplit ind = heavy_light_split(h, 5.0, ex, ey);
    CHECK(ind.r_heavy == 1.0);
    CHECK(ind.heavy_count == 1);
    CHECK(ind.r_light == 0.0);
}

TEST_CASE("ties at the product threshold go heavy") {
    const LiftedGraph h = LiftedGraph::random(k4(), 8, 11);
    const double mn = static_cast<double>(h.order());
    const std::vector<double> x(h.order(), 0.25);
    const double lam_tie = mn * 0.0625; // threshold exactly 0.25 * 0.25
    const HeavyLightSplit tie = heavy_light_split(h, lam_tie, x, x);
    CHECK(tie.light_count == 0);
    CHECK(tie.heavy_count == 2 * 8 * 6); // both directions of every lift edge

    const HeavyLightSplit above = heavy_light_split(h, lam_tie * (1.0 + 1e-9), x, x);
    CHECK(above.heavy_count == 0);
}

TEST_CASE("split partition matches the dense bilinear form") {
    const LiftedGraph h = LiftedGraph::random(petersen(), 20, 17);
    const Eigen::MatrixXd a = dense_oracle(h);
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        auto x = test_helpers::random_vector(h.order(), 9000 + trial);
        auto y = test_helpers::random_vector(h.order(), 77000 + trial);
        test_helpers::make_unit(x);
        test_helpers::make_unit(y);
        const double lam = 0.5 + static_cast<double>(trial % 7);
        const HeavyLightSplit split = heavy_light_split(h, lam, x, y);
        const double direct = bilinear_oracle(h, x, y);
        CHECK(std::abs(split.r_heavy + split.r_light - direct) <= 1e-12);
        CHECK(split.heavy_count + split.light_count == 2 * h.n() * 15);
    }
}

TEST_CASE("split partition also holds on loop lifts") {
    const LiftedGraph h = LiftedGraph::random(bouquet(2), 12, 9);
    auto x = test_helpers::random_vector(h.order(), 1);
    auto y = test_helpers::random_vector(h.order(), 2);
    test_helpers::make_unit(x);
    test_helpers::make_unit(y);
    const HeavyLightSplit split = heavy_light_split(h, 2.0, x, y);
    CHECK(split.r_heavy + split.r_light ==
          doctest::Approx(bilinear_oracle(h, x, y)).epsilon(1e-12));
}

TEST_CASE("raising the threshold parameter never shrinks the light side") {
    const LiftedGraph h = LiftedGraph::random(petersen(), 8, 23);
    auto x = test_helpers::random_vector(h.order(), 5);
    test_helpers::make_unit(x);
    std::uint64_t previous = 0;
    for (double lam : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        const HeavyLightSplit split = heavy_light_split(h, lam, x, x);
        CHECK(split.light_count >= previous);
        previous = split.light_count;
    }
}

TEST_CASE("vector dyadic profile boundaries") {
    // lam/mn = 0.25 and sqrt(mn/lam) = 2, both exact in binary
    const double lam = 2.5;
    const std::uint64_t mn = 10;

    std::vector<double> x(mn, 0.0);
    x[4] = 0.5; // t = 1, the lower edge of heavy level 0
    const auto heavy = vector_dyadic_profile(x, lam, mn, DyadicSide::heavy);
    REQUIRE(heavy.levels.size() == 1);
    CHECK(heavy.levels.begin()->first == 0);
    CHECK(heavy.levels.begin()->second == std::vector<std::uint32_t>{4});

    x[7] = 0.25; // t = 1/2: heavy level -1, light level 1
    const auto both = vector_dyadic_profile(x, lam, mn, DyadicSide::heavy);
    CHECK(both.levels.at(-1) == std::vector<std::uint32_t>{7});
    const auto light = vector_dyadic_profile(x, lam, mn, DyadicSide::light);
    CHECK(light.levels.at(1) == std::vector<std::uint32_t>{7});
    CHECK(light.levels.at(0) == std::vector<std::uint32_t>{4});

    const auto empty = vector_dyadic_profile(std::vector<double>(mn, 0.0), lam, mn,
                                             DyadicSide::heavy);
    CHECK(empty.levels.empty());
}

TEST_CASE("dyadic profile partitions the support and bounds the weight") {
    for (std::uint64_t seed : {3ull, 4ull, 5ull}) {
        auto x = test_helpers::random_vector(64, seed);
        x[seed] = 0.0;
        test_helpers::make_unit(x);
        x[2 * seed + 1] = 0.0; // norm now < 1; bound still applies
        const double lam = 1.7;
        for (const DyadicSide side : {DyadicSide::heavy, DyadicSide::light}) {
            const auto profile = vector_dyadic_profile(x, lam, 64, side);
            std::set<std::uint32_t> seen;
            std::size_t members = 0;
            for (const auto& [level, index_set] : profile.levels) {
                members += index_set.size();
                seen.insert(index_set.begin(), index_set.end());
                for (std::uint32_t a : index_set) CHECK(x[a] != 0.0);
            }
            CHECK(members == seen.size());
            std::size_t support = 0;
            for (double v : x) support += v != 0.0 ? 1 : 0;
            CHECK(members == support);
            CHECK(profile.weight_sum() <= norm(x) * norm(x) + 1e-12);
        }
    }
}

TEST_CASE("fiber dyadic profile") {
    const std::uint32_t n = 8, m = 5;

    // one full fiber -> level 0, alpha = 1
    std::vector<std::uint32_t> full;
    for (std::uint32_t i = 0; i < n; ++i) full.push_back(2 * n + i);
    const auto p0 = fiber_dyadic_profile(full, n, m);
    REQUIRE(p0.levels.size() == 1);
    CHECK(p0.levels.at(0).fibers == std::vector<std::uint32_t>{2});
    CHECK(p0.levels.at(0).alpha == 1.0);

    // a single vertex at n = 8 sits at 1/8: level 3
    const std::vector<std::uint32_t> lone = {3 * n + 1};
    const auto p3 = fiber_dyadic_profile(lone, n, m);
    REQUIRE(p3.levels.size() == 1);
    CHECK(p3.levels.begin()->first == 3);
    CHECK(p3.levels.at(3).alpha == doctest::Approx(0.125));

    // sandwich invariants on random sets
    std::mt19937_64 gen(99);
    for (int round = 0; round < 50; ++round) {
        std::vector<std::uint32_t> a;
        for (std::uint32_t v = 0; v < n * m; ++v)
            if (gen() % 3 == 0) a.push_back(v);
        if (a.empty()) continue;
        const auto profile = fiber_dyadic_profile(a, n, m);
        const double alpha = static_cast<double>(a.size()) / n;
        double alpha_sum = 0.0;
        std::uint64_t members = 0;
        for (const auto& [i, level] : profile.levels) {
            CHECK(level.members > 0.5 * level.alpha * n);
            CHECK(level.members <= level.alpha * n + 1e-9);
            alpha_sum += level.alpha;
            members += level.members;
        }
        CHECK(members == a.size());
        CHECK(alpha <= alpha_sum + 1e-12);
        CHECK(0.5 * alpha_sum < alpha + 1e-12);
    }
}

TEST_CASE("lattice rounding") {
    const std::uint32_t d = 3;

    // already on the grid: untouched
    const double eps = 1.0 / (d * std::sqrt(4.0));
    std::vector<double> grid = {eps, -2.0 * eps, 0.0, eps};
    CHECK(lattice_round(grid, d) == grid);

    // nearest multiple
    std::vector<double> x(4, 0.0);
    x[0] = 1.4 * eps;
    const auto rounded = lattice_round(x, d);
    CHECK(rounded[0] == doctest::Approx(eps).epsilon(1e-14));
    for (std::size_t i = 1; i < 4; ++i) CHECK(rounded[i] == 0.0);

    CHECK_THROWS_AS(lattice_round(std::vector<double>(4, 1.0), d), InputError);

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto v = test_helpers::random_vector(36, seed);
        test_helpers::make_unit(v);
        const auto tilde = lattice_round(v, d);
        const double step = 1.0 / (d * 6.0);
        double linf = 0.0, diff2 = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            linf = std::max(linf, std::abs(v[i] - tilde[i]));
            diff2 += (v[i] - tilde[i]) * (v[i] - tilde[i]);
            norm2 += tilde[i] * tilde[i];
            CHECK(std::abs(tilde[i] / step - std::round(tilde[i] / step)) <= 1e-9);
        }
        CHECK(linf <= step + 1e-15);
        CHECK(std::sqrt(diff2) <= 1.0 / d + 1e-12);
        CHECK(norm2 <= 1.0);
    }
}

TEST_CASE("grid vectors in the unit ball stay countable at tiny dimension") {
    // mn = 2, d = 3: integer points with (a^2 + b^2) <= (3 sqrt(2))^2 = 18
    const double eps = 1.0 / (3.0 * std::sqrt(2.0));
    std::uint64_t count = 0;
    for (int a = -5; a <= 5; ++a)
        for (int b = -5; b <= 5; ++b)
            if ((a * a + b * b) * eps * eps <= 1.0 + 1e-15) ++count;
    CHECK(count == 61);
    CHECK(count <= 288); // (4 sqrt(2) * 3)^2
}

TEST_CASE("expected bilinear form") {
    const BaseGraph g = petersen();
    const std::uint32_t n = 10;
    const std::uint64_t dim = 100;

    const std::vector<double> uniform(dim, 0.1); // 1/sqrt(mn)
    CHECK(expected_bilinear(g, n, uniform, uniform) == doctest::Approx(3.0).epsilon(1e-12));

    // supported on one fiber, summing to zero
    std::vector<double> balanced(dim, 0.0);
    balanced[30] = 1.0 / std::sqrt(2.0);
    balanced[31] = -1.0 / std::sqrt(2.0);
    CHECK(expected_bilinear(g, n, balanced, balanced) == 0.0);

    CHECK_THROWS_AS(expected_bilinear(bouquet(1), 4, std::vector<double>(4, 0.5),
                                      std::vector<double>(4, 0.5)),
                    InputError);
    CHECK_THROWS_AS(expected_bilinear(g, n, std::vector<double>(3, 0.0), uniform), InputError);
}

TEST_CASE("expectation formula matches a monte carlo estimate") {
    const BaseGraph g = petersen();
    const std::uint32_t n = 10;
    const auto x = test_helpers::random_unit_perp_ones(100, 5150);
    const auto y = test_helpers::random_unit_perp_ones(100, 5151);
    const double predicted = expected_bilinear(g, n, x, y);

    const int trials = 200;
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        const LiftedGraph h = LiftedGraph::random(g, n, 820000 + static_cast<std::uint64_t>(t));
        const auto ay = h.adjacency_apply(y);
        double value = 0.0;
        for (std::size_t i = 0; i < ay.size(); ++i) value += x[i] * ay[i];
        sum += value;
        sum_sq += value * value;
    }
    const double mean = sum / trials;
    const double stderr_ = std::sqrt((sum_sq / trials - mean * mean) / (trials - 1));
    CHECK(std::abs(mean - predicted) <= 3.0 * stderr_);
}

TEST_CASE("expectation of centered unit pairs stays below the spectral bound") {
    const BaseGraph g = petersen();
    const double lam = lambda_of(g);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto x = test_helpers::random_unit_perp_ones(50, 2 * seed);
        const auto y = test_helpers::random_unit_perp_ones(50, 2 * seed + 1);
        CHECK(expected_bilinear(g, 5, x, y) <= lam + 1e-9);
    }
}

TEST_CASE("z log z solver") {
    CHECK(solve_zlogz(2.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(solve_zlogz(8.0) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(solve_zlogz(24.0) == doctest::Approx(8.0).epsilon(1e-13));
    CHECK_THROWS_AS(solve_zlogz(0.0), InputError);
    CHECK_THROWS_AS(solve_zlogz(-1.0), InputError);

    // small b: z approaches 1 from above
    const double tiny = solve_zlogz(1e-9);
    CHECK(tiny > 1.0);
    CHECK(tiny * std::log2(tiny) == doctest::Approx(1e-9).epsilon(1e-6));

    const int points = 1000;
    for (int i = 0; i <= points; ++i) {
        const double b =
            1.01 * std::pow(1e6 / 1.01, static_cast<double>(i) / points);
        const double z = solve_zlogz(b);
        CHECK(z > 1.0);
        CHECK(std::abs(z * std::log2(z) - b) <= 1e-12 * std::max(1.0, b));
        if (b > 1.0) CHECK(z < 2.0 * b / std::log2(b));
    }
}

TEST_CASE("w star") {
    // (i+2) alpha + (j+2) beta + n^(-1/4) = 18 with prefactor 9 makes b = 2
    const double exact = w_star(1, 0, 0, 4.0, 4.5, 1);
    CHECK(exact == doctest::Approx(18.0).epsilon(1e-12)); // z* = 2, no clamping slack

    // tiny b clamps z* to 2
    const double clamped = w_star(100, 0, 0, 0.0, 0.0, 100000000);
    CHECK(clamped == doctest::Approx(9.0 * 100 * 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(w_star(0, 1, 1, 1.0, 1.0, 10), InputError);

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    for (int round = 0; round < 200; ++round) {
        const int i = static_cast<int>(gen() % 12);
        const int j = static_cast<int>(gen() % 12);
        const std::uint64_t e = 1 + gen() % 50;
        const double w = w_star(e, i, j, unif(gen), unif(gen), 1 + gen() % 1000);
        CHECK(w * std::ldexp(1.0, i + j) / (9.0 * static_cast<double>(e)) >= 2.0 - 1e-12);
    }
}

TEST_CASE("light variance quantity") {
    const BaseGraph g = petersen();
    const std::uint32_t n = 6;
    const std::uint64_t dim = 60;

    // uniform vectors: every ordered fiber-adjacent pair contributes 1/(mn)^2
    const std::vector<double> uniform(dim, 1.0 / std::sqrt(60.0));
    const double flat = light_variance_quantity(g, n, 2.0, uniform, uniform);
    CHECK(flat == doctest::Approx(3.0 / 10.0).epsilon(1e-12)); // d/m

    // independent brute force over all vertex pairs
    auto x = test_helpers::random_vector(dim, 303);
    auto y = test_helpers::random_vector(dim, 304);
    test_helpers::make_unit(x);
    test_helpers::make_unit(y);
    const double lam = 2.0;
    double brute = 0.0;
    std::vector<std::vector<int>> adj(10, std::vector<int>(10, 0));
    for (const Edge& e : g.edges()) {
        adj[e.u][e.v] += 1;
        adj[e.v][e.u] += 1;
    }
    for (std::uint64_t a = 0; a < dim; ++a)
        for (std::uint64_t b = 0; b < dim; ++b) {
            const int mult = adj[a / n][b / n];
            if (mult > 0 && std::abs(x[a] * y[b]) < lam / dim)
                brute += mult * x[a] * x[a] * y[b] * y[b];
        }
    CHECK(light_variance_quantity(g, n, lam, x, y) == doctest::Approx(brute).epsilon(1e-12));

    CHECK(light_variance_quantity(g, n, lam, std::vector<double>(dim, 0.0), y) == 0.0);
    CHECK_THROWS_AS(light_variance_quantity(g, n, lam, std::vector<double>(dim, 1.0), y),
                    InputError);
}

TEST_CASE("light variance bound over random unit pairs") {
    const BaseGraph g = petersen();
    const std::uint32_t n = 10;
    const double lam = lambda_of(g);
    const double bound = 50.0 * lam * lam * std::log2(3.0) / 10.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto x = test_helpers::random_vector(100, 40000 + seed);
        auto y = test_helpers::random_vector(100, 50000 + seed);
        test_helpers::make_unit(x);
        test_helpers::make_unit(y);
        CHECK(light_variance_quantity(g, n, lam, x, y) <= bound);
    }
}
