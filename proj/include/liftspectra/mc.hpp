#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "liftspectra/base_graph.hpp"
#include "liftspectra/solvers.hpp"

namespace liftspectra {

struct TrialResult {
    std::uint32_t trial = 0;
    std::uint64_t seed = 0; // derive_stream_seed(master_seed, trial)
    double lambda_new = 0.0;
    bool ramanujan = false;
    std::string method;
    double residual = 0.0;
};

struct WallStats {
    double total_ms = 0.0;
    double max_trial_ms = 0.0;
};

/// Seeded Monte Carlo batch of lambda(H) samples over random n-lifts.
/// Samples are reproducible bit-exact from (base, n, master_seed,
/// trial_count) at any parallelism level; wall stats are not.
struct TrialBatch {
    std::string base_name;
    std::uint32_t m = 0;
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    std::uint32_t trial_count = 0;
    std::uint64_t master_seed = 0;
    std::string quantile_method = "inclusive-linear";
    std::vector<TrialResult> trials;  // by trial index
    std::vector<double> samples;      // lambda values, sorted ascending
    WallStats wall;
};

/// Runs `trials` independent lifts with per-trial seeds
/// derive_stream_seed(master_seed, t), distributing over `jobs` threads.
/// A trial whose eigensolve fails is retried once with Lanczos k doubled;
/// a second failure aborts the batch with a SolverError naming the trial.
TrialBatch run_trials(const BaseGraph& g, const std::string& base_name, std::uint32_t n,
                      std::uint32_t trials, std::uint64_t master_seed, std::uint32_t jobs,
                      const SolverOptions& opts = {});

/// Right-continuous empirical c.d.f.; terminal step value is 1.
struct Ecdf {
    std::vector<double> points; // ascending, unique
    std::vector<double> steps;  // cumulative fractions, same length

    double at(double t) const;
    bool empty() const { return points.empty(); }
};

Ecdf ecdf(const TrialBatch& batch);
Ecdf ecdf_of(std::span<const double> sorted_samples);

/// Inclusive linear interpolation of order statistics (position q*(N-1)).
std::vector<double> quantiles(const TrialBatch& batch, std::span<const double> qs);

struct RamanujanEstimate {
    double fraction = 0.0;
    double wilson_lo = 0.0; // 95% Wilson score interval
    double wilson_hi = 0.0;
};

RamanujanEstimate ramanujan_probability(const TrialBatch& batch);

/// Exact sup-distance between two empirical step functions, via merged
/// breakpoints. Symmetric; obeys the triangle inequality.
double ks_distance(const Ecdf& a, const Ecdf& b);

// JSON persistence with schema version and content checksum; round trip is
// bit-exact including seeds and metadata. Corrupt or truncated files and
// schema mismatches raise InputError.
void save_batch(const TrialBatch& batch, const std::filesystem::path& path);
TrialBatch load_batch(const std::filesystem::path& path);
std::string batch_to_json(const TrialBatch& batch);
TrialBatch batch_from_json(const std::string& text);

// CSV export, header `trial,seed,lambda_new,ramanujan`, rows in trial order.
std::string batch_to_csv(const TrialBatch& batch);

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

} // namespace liftspectra
