#include "liftspectra/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace liftspectra {

namespace {

double norm2_squared(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

} // namespace

HeavyLightSplit heavy_light_split(const LiftedGraph& h, double lam,
                                  std::span<const double> x, std::span<const double> y) {
    const std::uint64_t order = h.order();
    if (x.size() != order || y.size() != order)
        throw InputError("vector length must equal m*n");
    if (!(lam > 0.0)) throw InputError("threshold parameter must be positive");

    HeavyLightSplit split;
    split.threshold = lam / static_cast<double>(order);
    // Each undirected edge contributes both ordered directions, classified
    // independently; ties go heavy.
    h.for_each_edge([&](std::uint64_t a, std::uint64_t b) {
        const double fwd = x[a] * y[b];
        if (std::abs(fwd) >= split.threshold) {
            split.r_heavy += fwd;
            ++split.heavy_count;
        } else {
            split.r_light += fwd;
            ++split.light_count;
        }
        const double bwd = x[b] * y[a];
        if (std::abs(bwd) >= split.threshold) {
            split.r_heavy += bwd;
            ++split.heavy_count;
        } else {
            split.r_light += bwd;
            ++split.light_count;
        }
    });
    return split;
}

double VectorDyadicProfile::weight_sum() const {
    double total = 0.0;
    for (const auto& [level, members] : levels) {
        const int exponent = side == DyadicSide::heavy ? 2 * level : -2 * level;
        total += std::ldexp(static_cast<double>(members.size()), exponent) * scale;
    }
    return total;
}

VectorDyadicProfile vector_dyadic_profile(std::span<const double> x, double lam,
                                          std::uint64_t mn, DyadicSide side) {
    if (!(lam > 0.0)) throw InputError("threshold parameter must be positive");
    VectorDyadicProfile profile;
    profile.scale = lam / static_cast<double>(mn);
    profile.side = side;
    const double unit = std::sqrt(static_cast<double>(mn) / lam);
    for (std::uint32_t a = 0; a < x.size(); ++a) {
        const double t = std::abs(x[a]) * unit;
        if (t == 0.0) continue;
        const int floor_log = std::ilogb(t); // exact floor(log2 t)
        profile.levels[side == DyadicSide::heavy ? floor_log : -floor_log].push_back(a);
    }
    return profile;
}

double FiberDyadicProfile::alpha_sum() const {
    double total = 0.0;
    for (const auto& [level, entry] : levels) total += entry.alpha;
    return total;
}

FiberDyadicProfile fiber_dyadic_profile(std::span<const std::uint32_t> vertex_set,
                                        std::uint32_t n, std::uint32_t m) {
    FiberDyadicProfile profile;
    profile.n = n;
    std::vector<std::uint64_t> fill(m, 0);
    for (std::uint32_t vid : vertex_set) {
        const std::uint32_t fiber = vid / n;
        if (fiber >= m) throw InputError("vertex id out of range [0, m*n)");
        ++fill[fiber];
    }
    for (std::uint32_t v = 0; v < m; ++v) {
        const std::uint64_t c = fill[v];
        if (c == 0) continue;
        // level i: the largest i with c * 2^i <= n, i.e. 2^-(i+1) < c/n <= 2^-i
        int i = 0;
        std::uint64_t scaled = c;
        while (scaled * 2 <= n) {
            scaled *= 2;
            ++i;
        }
        auto& level = profile.levels[i];
        level.fibers.push_back(v);
        level.members += c;
    }
    for (auto& [i, level] : profile.levels)
        level.alpha = std::ldexp(static_cast<double>(level.fibers.size()), -i);
    return profile;
}

std::vector<double> lattice_round(std::span<const double> x, std::uint32_t d) {
    if (d < 1) throw InputError("grid spacing needs d >= 1");
    const double norm_in = std::sqrt(norm2_squared(x));
    if (norm_in > 1.0 + 1e-12) throw InputError("lattice_round requires ||x|| <= 1");

    const auto mn = static_cast<double>(x.size());
    const double eps = 1.0 / (d * std::sqrt(mn));
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::round(x[i] / eps) * eps;

    // Norm repair: undo rounded-away coordinates (largest magnitude first),
    // one grid step toward zero each, until the vector is back in the ball.
    // Undoing only those keeps every coordinate within eps of x.
    while (norm2_squared(out) > 1.0) {
        std::size_t best = x.size();
        double best_mag = -1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (std::abs(out[i]) > std::abs(x[i]) && std::abs(out[i]) > best_mag) {
                best_mag = std::abs(out[i]);
                best = i;
            }
        }
        if (best == x.size()) {
            // No rounded-away coordinate left; shrink the largest instead.
            for (std::size_t i = 0; i < x.size(); ++i)
                if (std::abs(out[i]) > best_mag) {
                    best_mag = std::abs(out[i]);
                    best = i;
                }
            if (best == x.size() || best_mag == 0.0) break;
        }
        out[best] -= out[best] > 0.0 ? eps : -eps;
    }
    return out;
}

double expected_bilinear(const BaseGraph& g, std::uint32_t n,
                         std::span<const double> x, std::span<const double> y) {
    if (g.loop_count() > 0)
        throw InputError("expected_bilinear is only defined for loop-free bases");
    const std::uint64_t order = static_cast<std::uint64_t>(g.vertex_count()) * n;
    if (x.size() != order || y.size() != order)
        throw InputError("vector length must equal m*n");

    const std::uint32_t m = g.vertex_count();
    std::vector<double> w(m, 0.0), z(m, 0.0);
    for (std::uint32_t j = 0; j < m; ++j)
        for (std::uint32_t i = 0; i < n; ++i) {
            w[j] += x[static_cast<std::uint64_t>(j) * n + i];
            z[j] += y[static_cast<std::uint64_t>(j) * n + i];
        }
    double total = 0.0;
    for (const Edge& e : g.edges()) total += w[e.u] * z[e.v] + w[e.v] * z[e.u];
    return total / n;
}

double solve_zlogz(double b) {
    if (!(b > 0.0)) throw InputError("solve_zlogz requires b > 0");
    auto f = [b](double z) { return z * std::log2(z) - b; };

    double lo = 1.0, hi = 2.0;
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    double z = std::min(hi, std::max(lo, 2.0 * b / std::max(std::log2(std::max(b, 2.0)), 1.0)));
    for (int iter = 0; iter < 200; ++iter) {
        const double fz = f(z);
        if (std::abs(fz) <= 1e-13 * std::max(1.0, b)) break;
        if (fz > 0.0) hi = z;
        else lo = z;
        const double dz = std::log2(z) + 1.0 / std::numbers::ln2;
        double next = z - fz / dz;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (next == z) break;
        z = next;
    }
    return z;
}

double w_star(std::uint64_t e_st, int i, int j, double alpha_i, double beta_j,
              std::uint64_t n) {
    if (e_st == 0) throw InputError("w_star requires e(S_i,T_j) >= 1");
    if (alpha_i < 0.0 || beta_j < 0.0) throw InputError("w_star requires alpha, beta >= 0");
    if (n < 1) throw InputError("w_star requires n >= 1");
    const double prefactor = 9.0 * static_cast<double>(e_st) / std::ldexp(1.0, i + j);
    const double b = ((i + 2) * alpha_i + (j + 2) * beta_j +
                      std::pow(static_cast<double>(n), -0.25)) /
                     prefactor;
    const double z = solve_zlogz(b);
    return prefactor * std::max(z, 2.0);
}

double light_variance_quantity(const BaseGraph& g, std::uint32_t n, double lam,
                               std::span<const double> x, std::span<const double> y) {
    if (!(lam > 0.0)) throw InputError("threshold parameter must be positive");
    const std::uint64_t order = static_cast<std::uint64_t>(g.vertex_count()) * n;
    if (x.size() != order || y.size() != order)
        throw InputError("vector length must equal m*n");
    if (norm2_squared(x) > 1.0 + 1e-9 || norm2_squared(y) > 1.0 + 1e-9)
        throw InputError("light_variance_quantity requires ||x||, ||y|| <= 1");

    const double threshold = lam / static_cast<double>(order);
    // All ordered pairs across fiber-adjacent base vertices, i.e. both
    // directions of every base edge expanded to full n x n blocks.
    auto block_sum = [&](std::uint32_t j_from, std::uint32_t j_to) {
        double total = 0.0;
        const std::uint64_t fb = static_cast<std::uint64_t>(j_from) * n;
        const std::uint64_t tb = static_cast<std::uint64_t>(j_to) * n;
        for (std::uint32_t i = 0; i < n; ++i) {
            const double xv = x[fb + i];
            if (xv == 0.0) {
                // zero products are light but contribute nothing
                continue;
            }
            for (std::uint32_t ip = 0; ip < n; ++ip) {
                const double yv = y[tb + ip];
                if (std::abs(xv * yv) < threshold) total += xv * xv * yv * yv;
            }
        }
        return total;
    };
    double total = 0.0;
    for (const Edge& e : g.edges()) {
        total += block_sum(e.u, e.v);
        total += block_sum(e.v, e.u);
    }
    return total;
}

} // namespace liftspectra
