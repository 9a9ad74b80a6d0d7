#include "liftspectra/mc.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "liftspectra/rng.hpp"

namespace liftspectra {

std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

TrialBatch run_trials(const BaseGraph& g, const std::string& base_name, std::uint32_t n,
                      std::uint32_t trials, std::uint64_t master_seed, std::uint32_t jobs,
                      const SolverOptions& opts) {
    if (trials < 1) throw InputError("need at least one trial");
    if (jobs < 1) jobs = 1;

    TrialBatch batch;
    batch.base_name = base_name;
    batch.m = g.vertex_count();
    batch.d = g.degree();
    batch.n = n;
    batch.trial_count = trials;
    batch.master_seed = master_seed;
    batch.trials.resize(trials);

    const auto start = std::chrono::steady_clock::now();
    std::atomic<std::uint32_t> next{0};
    std::atomic<double> max_trial_ms{0.0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&]() {
        for (;;) {
            const std::uint32_t t = next.fetch_add(1);
            if (t >= trials) return;
            const std::uint64_t seed = derive_stream_seed(master_seed, t);
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const LiftedGraph h = LiftedGraph::random(g, n, seed);
                LambdaReport report;
                try {
                    report = lambda_new(h, opts);
                } catch (const SolverError&) {
                    SolverOptions retry = opts; // one retry with doubled work
                    retry.lanczos_k *= 2;
                    report = lambda_new(h, retry);
                }
                batch.trials[t] = {t, seed, report.lambda_new, report.ramanujan,
                                   report.method, report.residual};
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                if (first_error.empty())
                    first_error = "trial " + std::to_string(t) + " (seed " +
                                  std::to_string(seed) + "): " + e.what();
                return;
            }
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            double seen = max_trial_ms.load();
            while (ms > seen && !max_trial_ms.compare_exchange_weak(seen, ms)) {
            }
        }
    };

    std::vector<std::thread> pool;
    const std::uint32_t threads = std::min(jobs, trials);
    pool.reserve(threads);
    for (std::uint32_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (!first_error.empty())
        throw SolverError("batch aborted after retry: " + first_error);

    batch.wall.total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    batch.wall.max_trial_ms = max_trial_ms.load();

    batch.samples.reserve(trials);
    for (const TrialResult& r : batch.trials) batch.samples.push_back(r.lambda_new);
    std::sort(batch.samples.begin(), batch.samples.end());
    return batch;
}

double Ecdf::at(double t) const {
    const auto it = std::upper_bound(points.begin(), points.end(), t);
    if (it == points.begin()) return 0.0;
    return steps[static_cast<std::size_t>(it - points.begin()) - 1];
}

Ecdf ecdf_of(std::span<const double> sorted_samples) {
    if (sorted_samples.empty()) throw InputError("ecdf needs a nonempty sample");
    Ecdf e;
    const auto total = static_cast<double>(sorted_samples.size());
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double v = sorted_samples[i];
        if (!e.points.empty() && e.points.back() == v)
            e.steps.back() = static_cast<double>(i + 1) / total;
        else {
            e.points.push_back(v);
            e.steps.push_back(static_cast<double>(i + 1) / total);
        }
    }
    return e;
}

Ecdf ecdf(const TrialBatch& batch) { return ecdf_of(batch.samples); }

std::vector<double> quantiles(const TrialBatch& batch, std::span<const double> qs) {
    if (batch.samples.empty()) throw InputError("quantiles need a nonempty batch");
    std::vector<double> out;
    out.reserve(qs.size());
    const auto& s = batch.samples;
    for (const double q : qs) {
        if (q < 0.0 || q > 1.0) throw InputError("quantile must lie in [0,1]");
        const double pos = q * static_cast<double>(s.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, s.size() - 1);
        out.push_back(s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]));
    }
    return out;
}

RamanujanEstimate ramanujan_probability(const TrialBatch& batch) {
    if (batch.trials.empty()) throw InputError("need a nonempty batch");
    const auto n = static_cast<double>(batch.trials.size());
    double hits = 0.0;
    for (const TrialResult& r : batch.trials) hits += r.ramanujan ? 1.0 : 0.0;

    RamanujanEstimate est;
    est.fraction = hits / n;
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double z2 = z * z;
    const double center = (est.fraction + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z *
                        std::sqrt(est.fraction * (1.0 - est.fraction) / n +
                                  z2 / (4.0 * n * n)) /
                        (1.0 + z2 / n);
    est.wilson_lo = std::max(0.0, center - half);
    est.wilson_hi = std::min(1.0, center + half);
    return est;
}

double ks_distance(const Ecdf& a, const Ecdf& b) {
    if (a.empty() || b.empty()) throw InputError("ks distance needs nonempty ecdfs");
    double dist = 0.0;
    std::size_t ia = 0, ib = 0;
    double fa = 0.0, fb = 0.0;
    while (ia < a.points.size() || ib < b.points.size()) {
        double t;
        if (ib >= b.points.size() || (ia < a.points.size() && a.points[ia] <= b.points[ib]))
            t = a.points[ia];
        else
            t = b.points[ib];
        while (ia < a.points.size() && a.points[ia] == t) fa = a.steps[ia++];
        while (ib < b.points.size() && b.points[ib] == t) fb = b.steps[ib++];
        dist = std::max(dist, std::abs(fa - fb));
    }
    return dist;
}

namespace {

constexpr std::uint32_t kBatchSchemaVersion = 1;

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
        hash ^= (value >> (8 * byte)) & 0xffULL;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t batch_checksum(const TrialBatch& b) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    hash = fnv1a(hash, b.master_seed);
    hash = fnv1a(hash, (static_cast<std::uint64_t>(b.m) << 32) | b.d);
    hash = fnv1a(hash, (static_cast<std::uint64_t>(b.n) << 32) | b.trial_count);
    for (const TrialResult& t : b.trials) {
        hash = fnv1a(hash, t.seed);
        hash = fnv1a(hash, std::bit_cast<std::uint64_t>(t.lambda_new));
        hash = fnv1a(hash, t.ramanujan ? 1 : 0);
    }
    return hash;
}

} // namespace

std::string batch_to_json(const TrialBatch& batch) {
    nlohmann::json j;
    j["schema_version"] = kBatchSchemaVersion;
    j["kind"] = "trial-batch";
    j["base_name"] = batch.base_name;
    j["m"] = batch.m;
    j["d"] = batch.d;
    j["n"] = batch.n;
    j["trial_count"] = batch.trial_count;
    j["master_seed"] = batch.master_seed;
    j["quantile_method"] = batch.quantile_method;
    j["wall"] = {{"total_ms", batch.wall.total_ms}, {"max_trial_ms", batch.wall.max_trial_ms}};
    auto& trials = j["trials"] = nlohmann::json::array();
    for (const TrialResult& t : batch.trials)
        trials.push_back({{"trial", t.trial},
                          {"seed", t.seed},
                          {"lambda_new", t.lambda_new},
                          {"ramanujan", t.ramanujan},
                          {"method", t.method},
                          {"residual", t.residual}});
    j["checksum"] = batch_checksum(batch);
    return j.dump(2);
}

TrialBatch batch_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad batch file: ") + e.what());
    }
    try {
        if (j.at("schema_version").get<std::uint32_t>() != kBatchSchemaVersion)
            throw InputError("unsupported batch schema version");
        TrialBatch b;
        b.base_name = j.at("base_name").get<std::string>();
        b.m = j.at("m").get<std::uint32_t>();
        b.d = j.at("d").get<std::uint32_t>();
        b.n = j.at("n").get<std::uint32_t>();
        b.trial_count = j.at("trial_count").get<std::uint32_t>();
        b.master_seed = j.at("master_seed").get<std::uint64_t>();
        b.quantile_method = j.at("quantile_method").get<std::string>();
        b.wall.total_ms = j.at("wall").at("total_ms").get<double>();
        b.wall.max_trial_ms = j.at("wall").at("max_trial_ms").get<double>();
        for (const auto& t : j.at("trials")) {
            TrialResult r;
            r.trial = t.at("trial").get<std::uint32_t>();
            r.seed = t.at("seed").get<std::uint64_t>();
            r.lambda_new = t.at("lambda_new").get<double>();
            r.ramanujan = t.at("ramanujan").get<bool>();
            r.method = t.at("method").get<std::string>();
            r.residual = t.at("residual").get<double>();
            b.trials.push_back(std::move(r));
        }
        if (b.trials.size() != b.trial_count)
            throw InputError("batch file truncated: trial count mismatch");
        if (j.at("checksum").get<std::uint64_t>() != batch_checksum(b))
            throw InputError("batch file corrupt: checksum mismatch");
        b.samples.reserve(b.trials.size());
        for (const TrialResult& t : b.trials) b.samples.push_back(t.lambda_new);
        std::sort(b.samples.begin(), b.samples.end());
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad batch file: ") + e.what());
    }
}

void save_batch(const TrialBatch& batch, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << batch_to_json(batch) << "\n";
}

TrialBatch load_batch(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return batch_from_json(buffer.str());
}

std::string batch_to_csv(const TrialBatch& batch) {
    std::string out = "trial,seed,lambda_new,ramanujan\n";
    for (const TrialResult& t : batch.trials) {
        out += std::to_string(t.trial);
        out += ',';
        out += std::to_string(t.seed);
        out += ',';
        out += format_double(t.lambda_new);
        out += ',';
        out += t.ramanujan ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace liftspectra
