#include "liftspectra/solvers.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "liftspectra/rng.hpp"

namespace liftspectra {

std::vector<double> dense_adjacency(const LiftedGraph& h) {
    const std::uint64_t order = h.order();
    if (order > kDenseOrderCap)
        throw SolverError("lift order " + std::to_string(order) +
                          " exceeds dense solver cap " + std::to_string(kDenseOrderCap));
    std::vector<double> a(order * order, 0.0);
    h.for_each_edge([&](std::uint64_t u, std::uint64_t v) {
        a[u * order + v] += 1.0;
        a[v * order + u] += 1.0; // a loop lands here twice: diagonal entry 2
    });
    return a;
}

namespace {

Eigen::MatrixXd dense_adjacency_matrix(const LiftedGraph& h) {
    const auto order = static_cast<Eigen::Index>(h.order());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(order, order);
    h.for_each_edge([&](std::uint64_t u, std::uint64_t v) {
        a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) += 1.0;
        a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) += 1.0;
    });
    return a;
}

} // namespace

Spectrum dense_lift_spectrum(const LiftedGraph& h) {
    if (h.order() > kDenseOrderCap)
        throw SolverError("lift order " + std::to_string(h.order()) +
                          " exceeds dense solver cap " + std::to_string(kDenseOrderCap));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(dense_adjacency_matrix(h), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    Spectrum s;
    s.declared_degree = h.degree();
    const auto& vals = solver.eigenvalues();
    s.values.assign(vals.data(), vals.data() + vals.size());
    std::reverse(s.values.begin(), s.values.end());
    return s;
}

namespace {

// One Lanczos run inside the orthogonal complement of `locked`. Appends the
// generated basis to `locked` when it ends (breakdown or convergence) so
// later runs explore fresh invariant subspaces.
struct LanczosBlock {
    std::vector<double> alpha;
    std::vector<double> beta; // beta[j] links v_j and v_{j+1}
    Eigen::MatrixXd basis;    // columns v_0..v_j
    Eigen::Index size = 0;
};

void orthogonalize(const Eigen::MatrixXd& locked, Eigen::Index locked_cols,
                   const Eigen::MatrixXd& basis, Eigen::Index basis_cols, Eigen::VectorXd& w) {
    // Two passes of classical Gram-Schmidt against everything retained.
    for (int pass = 0; pass < 2; ++pass) {
        if (locked_cols > 0) {
            const auto l = locked.leftCols(locked_cols);
            w.noalias() -= l * (l.transpose() * w);
        }
        if (basis_cols > 0) {
            const auto b = basis.leftCols(basis_cols);
            w.noalias() -= b * (b.transpose() * w);
        }
    }
}

struct TridiagEigen {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // empty unless requested
};

TridiagEigen tridiag_eigen(std::span<const double> alpha, std::span<const double> beta,
                           bool with_vectors) {
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd subdiag =
        k > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1))
              : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(
        diag, subdiag, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SolverError("tridiagonal eigensolver failed");
    TridiagEigen out;
    out.values = solver.eigenvalues();
    if (with_vectors) out.vectors = solver.eigenvectors();
    return out;
}

} // namespace

LanczosResult lanczos_extremes(const LiftedGraph& h, std::uint32_t k, double tol,
                               std::uint64_t seed) {
    if (k < 2) throw InputError("lanczos needs k >= 2");
    if (!(tol > 0.0)) throw InputError("lanczos needs tol > 0");
    const auto order = static_cast<Eigen::Index>(h.order());
    const double scale = static_cast<double>(h.degree()); // ||A|| <= d
    const auto want = static_cast<std::size_t>(std::min<std::uint64_t>(k, h.order()));
    const auto log_order =
        static_cast<std::uint32_t>(std::bit_width(std::max<std::uint64_t>(h.order() - 1, 1)));
    const std::uint32_t iter_cap =
        std::max<std::uint32_t>(10 * k * log_order, 2 * static_cast<std::uint32_t>(want) + 2);
    const double breakdown_tol = 1e-13 * std::max(scale, 1.0);

    SplitMix64 rng(seed);
    Eigen::MatrixXd locked(order, std::min<Eigen::Index>(order, iter_cap + 2));
    Eigen::Index locked_cols = 0;
    std::vector<RitzPair> finished; // extremes of completed blocks
    std::uint32_t iterations = 0;
    Eigen::VectorXd v(order), w(order), prev(order), y(order), ay(order);

    // Extreme Ritz pairs of the block's tridiagonal, with true residuals.
    auto harvest = [&](const LanczosBlock& blk) {
        std::vector<RitzPair> out;
        const auto eig = tridiag_eigen({blk.alpha.data(), static_cast<std::size_t>(blk.size)},
                                       {blk.beta.data(), static_cast<std::size_t>(blk.size)},
                                       true);
        const Eigen::Index kk = std::min<Eigen::Index>(static_cast<Eigen::Index>(want), blk.size);
        std::vector<Eigen::Index> pick;
        for (Eigen::Index i = 0; i < kk; ++i) pick.push_back(i);
        for (Eigen::Index i = std::max<Eigen::Index>(kk, blk.size - kk); i < blk.size; ++i)
            pick.push_back(i);
        for (const Eigen::Index idx : pick) {
            RitzPair rp;
            rp.value = eig.values(idx);
            y.noalias() = blk.basis.leftCols(blk.size) * eig.vectors.col(idx);
            y.normalize();
            h.apply_adjacency({y.data(), static_cast<std::size_t>(order)},
                              {ay.data(), static_cast<std::size_t>(order)});
            rp.residual = (ay - rp.value * y).norm();
            rp.vector_.assign(y.data(), y.data() + order);
            out.push_back(std::move(rp));
        }
        return out;
    };

    // True iff the `want` largest and smallest of `all` meet the residual bound.
    auto extremes_converged = [&](const std::vector<RitzPair>& all, Eigen::Index spanned) {
        if (all.size() < 2 * want && spanned < order) return false;
        if (all.empty()) return false;
        std::vector<const RitzPair*> sorted;
        sorted.reserve(all.size());
        for (const auto& p : all) sorted.push_back(&p);
        std::sort(sorted.begin(), sorted.end(),
                  [](auto* a, auto* b) { return a->value < b->value; });
        const std::size_t take = std::min(want, sorted.size());
        for (std::size_t i = 0; i < take; ++i) {
            if (sorted[i]->residual > tol * scale) return false;
            if (sorted[sorted.size() - 1 - i]->residual > tol * scale) return false;
        }
        return true;
    };

    bool done = false;
    while (!done && iterations < iter_cap && locked_cols < order) {
        // Fresh start vector, orthogonal to every previous block.
        for (Eigen::Index i = 0; i < order; ++i) v(i) = rng.next_symmetric();
        orthogonalize(locked, locked_cols, locked, 0, v);
        const double vnorm = v.norm();
        if (vnorm <= 1e-12) break; // previous blocks already span everything
        v /= vnorm;

        LanczosBlock blk;
        blk.basis.resize(order, std::min<Eigen::Index>(order - locked_cols,
                                                       static_cast<Eigen::Index>(iter_cap) + 1));
        double beta_prev = 0.0;
        prev.setZero();
        std::uint32_t next_check = 16;
        double last_top = std::numeric_limits<double>::quiet_NaN();
        double last_bottom = std::numeric_limits<double>::quiet_NaN();

        for (;;) {
            blk.basis.col(blk.size) = v;
            ++blk.size;
            ++iterations;

            h.apply_adjacency({v.data(), static_cast<std::size_t>(order)},
                              {w.data(), static_cast<std::size_t>(order)});
            w -= beta_prev * prev;
            const double a = v.dot(w);
            blk.alpha.push_back(a);
            w -= a * v;
            orthogonalize(locked, locked_cols, blk.basis, blk.size, w);
            const double b = w.norm();
            blk.beta.push_back(b);

            const bool out_of_room = blk.size >= blk.basis.cols() ||
                                     iterations >= iter_cap ||
                                     locked_cols + blk.size >= order;
            const bool breakdown = b <= breakdown_tol;
            bool check_now = out_of_room || breakdown;

            if (!check_now && blk.size >= next_check) {
                // Cheap stall test on the extreme Ritz values before paying
                // for Ritz vectors and true residuals.
                const auto eig = tridiag_eigen({blk.alpha.data(), blk.alpha.size()},
                                               {blk.beta.data(), blk.beta.size()}, false);
                const double top = eig.values(blk.size - 1);
                const double bottom = eig.values(0);
                check_now = std::abs(top - last_top) <= 0.01 * tol * scale &&
                            std::abs(bottom - last_bottom) <= 0.01 * tol * scale;
                last_top = top;
                last_bottom = bottom;
                next_check = static_cast<std::uint32_t>(blk.size) + 16;
            }

            if (check_now) {
                std::vector<RitzPair> all = finished;
                auto current = harvest(blk);
                all.insert(all.end(), current.begin(), current.end());
                const bool converged = extremes_converged(all, locked_cols + blk.size);
                if (converged || breakdown || out_of_room) {
                    finished = std::move(all);
                    locked.middleCols(locked_cols, blk.size) = blk.basis.leftCols(blk.size);
                    locked_cols += blk.size;
                    done = converged;
                    break;
                }
            }

            prev = v;
            v = w / b;
            beta_prev = b;
        }
    }

    if (!done && !extremes_converged(finished, locked_cols))
        throw SolverError("lanczos did not converge within " + std::to_string(iter_cap) +
                          " iterations (order " + std::to_string(h.order()) + ", k " +
                          std::to_string(k) + ")");

    std::sort(finished.begin(), finished.end(),
              [](const RitzPair& a, const RitzPair& b) { return a.value < b.value; });
    LanczosResult out;
    out.iterations = iterations;
    const std::size_t take = std::min(want, finished.size());
    for (std::size_t i = 0; i < take; ++i) out.smallest.push_back(finished[i]);
    for (std::size_t i = 0; i < take; ++i)
        out.largest.push_back(finished[finished.size() - 1 - i]);
    return out;
}

namespace {

constexpr std::uint64_t kLanczosSeedStream = 0x4c616e637a6f73ULL; // "Lanczos"

double dense_residual_estimate(const LiftedGraph& h) {
    // A priori backward-error scale of the symmetric QR algorithm.
    return std::numeric_limits<double>::epsilon() * h.degree() *
           std::sqrt(static_cast<double>(h.order()));
}

} // namespace

LambdaReport lambda_new(const LiftedGraph& h, const SolverOptions& opts) {
    const std::uint32_t d = h.degree();
    LambdaReport report;
    report.threshold = d >= 2 ? universal_cover_radius(d) : 0.0;

    SolverMethod method = opts.method;
    if (method == SolverMethod::automatic)
        method = h.order() <= opts.dense_cap ? SolverMethod::dense : SolverMethod::lanczos;

    if (method == SolverMethod::dense) {
        const Spectrum s = dense_lift_spectrum(h);
        report.method = "dense";
        report.lambda1 = s.values.front();
        report.residual = dense_residual_estimate(h);
        if (s.values.size() > 1)
            report.lambda_new = std::max(std::abs(s.values[1]), std::abs(s.values.back()));
    } else {
        const std::uint64_t lanczos_seed =
            derive_stream_seed(h.seed().value_or(0), kLanczosSeedStream);
        const LanczosResult lr =
            lanczos_extremes(h, opts.lanczos_k, opts.lanczos_tol, lanczos_seed);
        report.method = "lanczos";
        report.lambda1 = lr.largest[0].value;
        report.residual = lr.largest[0].residual;
        double lam = 0.0;
        if (lr.largest.size() > 1) {
            lam = std::abs(lr.largest[1].value);
            report.residual = std::max(report.residual, lr.largest[1].residual);
        }
        if (!lr.smallest.empty() && std::abs(lr.smallest[0].value) > lam) {
            lam = std::abs(lr.smallest[0].value);
            report.residual = std::max(report.residual, lr.smallest[0].residual);
        }
        report.lambda_new = lam;
        // A single Krylov run sees one copy of a repeated top eigenvalue;
        // a disconnected lift has at least two, so report the second copy.
        if (!h.is_connected()) report.lambda_new = std::max(report.lambda_new, report.lambda1);
    }

    report.ramanujan = is_ramanujan(report, d);
    return report;
}

bool is_ramanujan(const LambdaReport& report, std::uint32_t d) {
    if (d < 2) return true; // no cover radius; nothing nontrivial to exceed
    return report.lambda_new <= universal_cover_radius(d) + 1e-9 * d;
}

std::string lambda_report_to_json(const LambdaReport& r) {
    nlohmann::json j;
    j["lambda1"] = r.lambda1;
    j["lambda_new"] = r.lambda_new;
    j["method"] = r.method;
    j["residual"] = r.residual;
    j["ramanujan"] = r.ramanujan;
    j["threshold"] = r.threshold;
    return j.dump(2);
}

} // namespace liftspectra
