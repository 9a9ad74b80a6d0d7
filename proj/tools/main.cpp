#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "liftspectra/decompose.hpp"
#include "liftspectra/mc.hpp"
#include "liftspectra/rng.hpp"
#include "liftspectra/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace liftspectra;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitSolver = 4;
constexpr int kExitCounterexample = 5;

struct RunConfig {
    std::string command;
    std::string base = "petersen";
    std::uint32_t n = 1;
    std::uint32_t trials = 1000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::uint32_t jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string out = "out";
    std::string format = "both"; // json|csv|both
    std::uint32_t dense_cap = 512;
    double lanczos_tol = 1e-9;
    std::uint32_t lanczos_k = 4;
    std::vector<double> quantile_list = {0.25, 0.5, 0.75};

    SolverOptions solver() const {
        SolverOptions opts;
        opts.dense_cap = dense_cap;
        opts.lanczos_tol = lanczos_tol;
        opts.lanczos_k = lanczos_k;
        return opts;
    }
};

json config_to_json(const RunConfig& c) {
    return json{{"command", c.command},   {"base", c.base},
                {"n", c.n},               {"trials", c.trials},
                {"seed", c.seed},         {"jobs", c.jobs},
                {"out", c.out},           {"format", c.format},
                {"dense_cap", c.dense_cap}, {"lanczos_tol", c.lanczos_tol},
                {"lanczos_k", c.lanczos_k}, {"quantiles", c.quantile_list}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.base = j.at("base").get<std::string>();
    c.n = j.at("n").get<std::uint32_t>();
    c.trials = j.at("trials").get<std::uint32_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.jobs = j.at("jobs").get<std::uint32_t>();
    c.out = j.at("out").get<std::string>();
    c.format = j.at("format").get<std::string>();
    c.dense_cap = j.at("dense_cap").get<std::uint32_t>();
    c.lanczos_tol = j.at("lanczos_tol").get<double>();
    c.lanczos_k = j.at("lanczos_k").get<std::uint32_t>();
    c.quantile_list = j.at("quantiles").get<std::vector<double>>();
    return c;
}

// --base accepts a catalog spec or a path to an edge-list file.
BaseGraph load_base(const std::string& spec) {
    if (fs::exists(spec)) {
        std::ifstream in(spec);
        if (!in) throw InputError("cannot read " + spec);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_edge_list(buf.str());
    }
    return catalog(spec);
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
}

void write_manifest(const RunConfig& c) {
    write_file(fs::path(c.out) / "manifest.json", config_to_json(c).dump(2) + "\n");
}

std::string ecdf_to_csv(const Ecdf& e) {
    std::string out = "lambda,cdf\n";
    for (std::size_t i = 0; i < e.points.size(); ++i)
        out += format_double(e.points[i]) + "," + format_double(e.steps[i]) + "\n";
    return out;
}

void write_batch_outputs(const RunConfig& c, const TrialBatch& batch,
                         const std::string& stem) {
    const fs::path dir(c.out);
    if (c.format != "csv") write_file(dir / (stem + ".json"), batch_to_json(batch) + "\n");
    if (c.format != "json") write_file(dir / (stem + ".csv"), batch_to_csv(batch));
}

TrialBatch run_configured_batch(const RunConfig& c, const BaseGraph& g,
                                const std::string& name, std::uint32_t n,
                                std::uint64_t seed) {
    return run_trials(g, name, n, c.trials, seed, c.jobs, c.solver());
}

int cmd_catalog(const RunConfig& c) {
    const BaseGraph g = load_base(c.base);
    const ValidationReport v = validate(g);
    write_file(fs::path(c.out) / "graph.edges", serialize_edge_list(g));
    json report{{"base", c.base},
                {"m", g.vertex_count()},
                {"d", g.degree()},
                {"regular", v.regular},
                {"connected", v.connected},
                {"simple", v.simple},
                {"bipartite", v.bipartite}};
    write_file(fs::path(c.out) / "validation.json", report.dump(2) + "\n");
    write_manifest(c);
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_spectrum(const RunConfig& c) {
    const BaseGraph g = load_base(c.base);
    const LiftedGraph h = LiftedGraph::random(g, c.n, c.seed);
    const LambdaReport report = lambda_new(h, c.solver());
    write_file(fs::path(c.out) / "lambda.json", lambda_report_to_json(report) + "\n");
    if (h.order() <= kDenseOrderCap) {
        const Spectrum s = dense_lift_spectrum(h);
        write_file(fs::path(c.out) / "spectrum.csv", spectrum_to_csv(s));
    }
    write_manifest(c);
    std::cout << lambda_report_to_json(report) << "\n";
    return kExitOk;
}

int cmd_lift(const RunConfig& c) {
    const BaseGraph g = load_base(c.base);
    const LiftedGraph h = LiftedGraph::random(g, c.n, c.seed);
    write_file(fs::path(c.out) / "lift.json", lift_to_json(h) + "\n");
    json summary{{"base", c.base},
                 {"n", c.n},
                 {"seed", c.seed},
                 {"order", h.order()},
                 {"degree", h.degree()},
                 {"cover_ok", verify_cover(h)},
                 {"connected", h.is_connected()}};
    write_file(fs::path(c.out) / "lift_summary.json", summary.dump(2) + "\n");
    write_manifest(c);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_ecdf(const RunConfig& c) {
    const BaseGraph g = load_base(c.base);
    const TrialBatch batch = run_configured_batch(c, g, c.base, c.n, c.seed);
    write_batch_outputs(c, batch, "batch");
    write_file(fs::path(c.out) / "ecdf.csv", ecdf_to_csv(ecdf(batch)));

    const std::vector<double> qs = quantiles(batch, c.quantile_list);
    std::string qcsv = "q,lambda\n";
    for (std::size_t i = 0; i < qs.size(); ++i)
        qcsv += format_double(c.quantile_list[i]) + "," + format_double(qs[i]) + "\n";
    write_file(fs::path(c.out) / "quantiles.csv", qcsv);

    const RamanujanEstimate est = ramanujan_probability(batch);
    json summary{{"base", c.base},
                 {"n", c.n},
                 {"trials", c.trials},
                 {"ramanujan_fraction", est.fraction},
                 {"wilson95", {est.wilson_lo, est.wilson_hi}},
                 {"quantile_method", batch.quantile_method}};
    write_file(fs::path(c.out) / "summary.json", summary.dump(2) + "\n");
    write_manifest(c);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_cheeger(const RunConfig& c) {
    const BaseGraph g = load_base(c.base);
    const CheegerSandwichReport report = check_cheeger_sandwich(g);
    json j{{"base", c.base},
           {"h", report.h},
           {"lambda", report.lambda},
           {"bipartite_degenerate", report.bipartite_degenerate},
           {"lower", json::parse(inequality_report_to_json(report.lower))},
           {"upper", json::parse(inequality_report_to_json(report.upper))}};
    if (report.lower_lambda2) {
        j["lower_lambda2"] = json::parse(inequality_report_to_json(*report.lower_lambda2));
        j["upper_lambda2"] = json::parse(inequality_report_to_json(*report.upper_lambda2));
    }
    write_file(fs::path(c.out) / "cheeger.json", j.dump(2) + "\n");
    write_manifest(c);
    std::cout << j.dump(2) << "\n";
    const bool ok = (!report.bipartite_degenerate &&
                     report.lower.margin >= 0 && report.upper.margin >= 0) ||
                    (report.bipartite_degenerate && report.lower_lambda2->margin >= 0 &&
                     report.upper_lambda2->margin >= 0);
    return ok ? kExitOk : kExitCounterexample;
}

// Random vertex subset of the lift, sized `size`.
std::vector<std::uint32_t> random_subset(std::uint64_t order, std::uint32_t size,
                                         SplitMix64& rng) {
    std::vector<std::uint32_t> out;
    out.reserve(size);
    std::vector<bool> used(order, false);
    while (out.size() < size) {
        const auto v = static_cast<std::uint32_t>(rng.next_below(order));
        if (!used[v]) {
            used[v] = true;
            out.push_back(v);
        }
    }
    return out;
}

int cmd_verify(const RunConfig& c) {
    const BaseGraph g = load_base(c.base);
    std::vector<std::string> lines;
    bool counterexample = false;
    auto emit = [&](const InequalityReport& r) {
        lines.push_back(inequality_report_to_json(r));
        if (r.violated()) counterexample = true;
    };

    // Base-graph mixing over seeded random subset pairs.
    {
        SplitMix64 rng(derive_stream_seed(c.seed, 1));
        const std::uint32_t m = g.vertex_count();
        InequalityReport worst;
        bool have = false;
        for (std::uint32_t s = 0; s < 2000; ++s) {
            std::vector<std::uint32_t> a, b;
            for (std::uint32_t v = 0; v < m; ++v) {
                if (rng.next_below(2)) a.push_back(v);
                if (rng.next_below(2)) b.push_back(v);
            }
            if (a.empty() || b.empty()) continue;
            const InequalityReport r = check_mixing(g, a, b);
            if (r.violated()) emit(r);
            if (!have || r.margin < worst.margin) {
                worst = r;
                have = true;
            }
        }
        worst.samples_examined = 2000;
        emit(worst);
    }

    // Lift cut bounds: random pairs plus greedy adversarial pairs.
    {
        const LiftedGraph h = LiftedGraph::random(g, c.n, c.seed);
        const double lam =
            std::max(lambda_of(g), std::sqrt(static_cast<double>(g.degree())));
        SplitMix64 rng(derive_stream_seed(c.seed, 2));
        const auto root_size = static_cast<std::uint32_t>(
            std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::sqrt(h.order()))));
        for (std::uint32_t s = 0; s < 20; ++s) {
            const auto a = random_subset(h.order(), root_size, rng);
            const auto b = random_subset(h.order(), root_size, rng);
            emit(check_cut_bound(h, lam, a, b));
        }
        for (std::uint32_t s = 0; s < 10; ++s) {
            const VertexSetPair pair =
                greedy_dense_pair(h, root_size, root_size, derive_stream_seed(c.seed, 300 + s));
            emit(check_cut_bound(h, lam, pair.a, pair.b));
        }
        const auto small_size = static_cast<std::uint32_t>(std::max(
            1.0, std::floor(std::cbrt(static_cast<double>(h.n()) * h.n()) / 2.0)));
        for (std::uint32_t s = 0; s < 10; ++s) {
            const VertexSetPair pair = greedy_dense_pair(h, small_size, small_size,
                                                         derive_stream_seed(c.seed, 400 + s));
            emit(check_small_cut(h, pair.a, pair.b));
        }
    }

    // Cheeger sandwich at desk scale.
    if (g.vertex_count() >= 2 && g.vertex_count() <= 24) {
        const CheegerSandwichReport sandwich = check_cheeger_sandwich(g);
        if (!sandwich.bipartite_degenerate) {
            emit(sandwich.lower);
            emit(sandwich.upper);
        } else {
            lines.push_back(inequality_report_to_json(sandwich.lower));
            lines.push_back(inequality_report_to_json(sandwich.upper));
            emit(*sandwich.lower_lambda2);
            emit(*sandwich.upper_lambda2);
        }
    }

    // Eigenvalue bound over a small batch.
    {
        const TrialBatch batch =
            run_trials(g, c.base, c.n, c.trials, c.seed, c.jobs, c.solver());
        const Theorem1Report t1 = check_theorem1(batch.samples, g);
        emit(t1.bound);
        emit(t1.inheritance);
    }

    std::string out;
    for (const auto& line : lines) out += line + "\n";
    write_file(fs::path(c.out) / "verify.jsonl", out);
    write_manifest(c);
    std::cout << (counterexample ? "counterexample found" : "all checks passed") << " ("
              << lines.size() << " reports)\n";
    return counterexample ? kExitCounterexample : kExitOk;
}

std::string boxes_csv(const std::vector<std::pair<std::uint32_t, std::vector<double>>>& rows) {
    std::string out = "n,min,q25,median,q75,max\n";
    for (const auto& [n, vals] : rows) {
        out += std::to_string(n);
        for (double v : vals) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

constexpr const char* kFig1Gnuplot = R"(set terminal svg size 720,480
set output 'fig1.svg'
set xlabel 'covering number n'
set ylabel 'largest nontrivial |eigenvalue|'
set boxwidth 10 absolute
set style fill empty
threshold = 2*sqrt(2)
plot 'boxes.csv' every ::1 using 1:3:2:6:5 with candlesticks whiskerbars lt 1 title 'quartile box', \
     'boxes.csv' every ::1 using 1:4:4:4:4 with candlesticks lt -1 notitle, \
     threshold with lines dashtype 2 lc rgb 'red' title '2*sqrt(2)'
)";

int cmd_reproduce_fig1(RunConfig c) {
    const BaseGraph g = petersen();
    std::vector<std::pair<std::uint32_t, std::vector<double>>> rows;
    const std::vector<double> qs = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (const std::uint32_t n : {50u, 100u, 200u}) {
        const TrialBatch batch = run_trials(g, "petersen", n, c.trials,
                                            derive_stream_seed(c.seed, n), c.jobs, c.solver());
        write_batch_outputs(c, batch, "petersen_n" + std::to_string(n));
        rows.emplace_back(n, quantiles(batch, qs));
    }
    write_file(fs::path(c.out) / "boxes.csv", boxes_csv(rows));
    write_file(fs::path(c.out) / "fig1.gnuplot", kFig1Gnuplot);
    c.command = "reproduce-fig1";
    c.base = "petersen";
    write_manifest(c);
    std::cout << "wrote " << (fs::path(c.out) / "boxes.csv").string() << "\n";
    return kExitOk;
}

constexpr const char* kFig2Gnuplot = R"(set terminal svg size 720,480
set output 'fig2.svg'
set xlabel 'largest nontrivial |eigenvalue|'
set ylabel 'empirical c.d.f.'
set key left top
threshold = 2*sqrt(2)
set arrow from threshold, graph 0 to threshold, graph 1 nohead dashtype 2 lc rgb 'red'
plot 'ecdf_k4_n500.csv' every ::1 using 1:2 with steps title 'K4, n=500', \
     'ecdf_petersen_n200.csv' every ::1 using 1:2 with steps title 'Petersen, n=200', \
     'ecdf_dodecahedral_n100.csv' every ::1 using 1:2 with steps title 'Dodecahedral, n=100'
)";

int cmd_reproduce_fig2(RunConfig c) {
    struct Entry {
        std::string name;
        BaseGraph graph;
        std::uint32_t n;
    };
    const std::vector<Entry> entries = {{"k4", k4(), 500},
                                        {"petersen", petersen(), 200},
                                        {"dodecahedral", dodecahedral(), 100}};
    std::vector<Ecdf> curves;
    for (const Entry& e : entries) {
        const TrialBatch batch = run_trials(e.graph, e.name, e.n, c.trials,
                                            derive_stream_seed(c.seed, e.n), c.jobs, c.solver());
        const std::string stem = e.name + "_n" + std::to_string(e.n);
        write_batch_outputs(c, batch, stem);
        curves.push_back(ecdf(batch));
        write_file(fs::path(c.out) / ("ecdf_" + stem + ".csv"), ecdf_to_csv(curves.back()));
    }

    std::string ks = "graph_a,graph_b,ks\n";
    json ksj = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            const double d = ks_distance(curves[i], curves[j]);
            ks += entries[i].name + "," + entries[j].name + "," + format_double(d) + "\n";
            ksj.push_back({{"a", entries[i].name}, {"b", entries[j].name}, {"ks", d}});
        }
    write_file(fs::path(c.out) / "ks_matrix.csv", ks);
    write_file(fs::path(c.out) / "ks_matrix.json", ksj.dump(2) + "\n");
    write_file(fs::path(c.out) / "fig2.gnuplot", kFig2Gnuplot);
    c.command = "reproduce-fig2";
    write_manifest(c);
    std::cout << ks;
    return kExitOk;
}

int dispatch(const RunConfig& c);

int cmd_replay(const std::string& manifest_path, std::optional<std::string> out,
               std::optional<std::uint32_t> jobs) {
    std::ifstream in(manifest_path);
    if (!in) throw InputError("cannot read manifest " + manifest_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("bad manifest: ") + e.what());
    }
    RunConfig c = config_from_json(j);
    if (out) c.out = *out;
    if (jobs) c.jobs = *jobs;
    return dispatch(c);
}

int dispatch(const RunConfig& c) {
    if (c.command == "catalog") return cmd_catalog(c);
    if (c.command == "spectrum") return cmd_spectrum(c);
    if (c.command == "lift") return cmd_lift(c);
    if (c.command == "ecdf") return cmd_ecdf(c);
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "cheeger") return cmd_cheeger(c);
    if (c.command == "reproduce-fig1") return cmd_reproduce_fig1(c);
    if (c.command == "reproduce-fig2") return cmd_reproduce_fig2(c);
    throw InputError("unknown command in manifest: " + c.command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random n-lifts of regular graphs: spectra, Monte Carlo campaigns, "
                 "and inequality verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string manifest_path;
    std::optional<std::string> replay_out;
    std::optional<std::uint32_t> replay_jobs;

    auto add_common = [&](CLI::App* cmd, bool with_base = true) {
        if (with_base)
            cmd->add_option("--base", cfg.base, "catalog name or edge-list file");
        cmd->add_option("--n", cfg.n, "covering number");
        cmd->add_option("--trials", cfg.trials, "Monte Carlo trials");
        cmd->add_option("--seed", cfg.seed, "master seed")->each([&](const std::string&) {
            cfg.seed_given = true;
        });
        cmd->add_option("--jobs", cfg.jobs, "worker threads");
        cmd->add_option("--out", cfg.out, "output directory");
        cmd->add_option("--format", cfg.format, "json|csv|both")
            ->check(CLI::IsMember({"json", "csv", "both"}));
        cmd->add_option("--dense-cap", cfg.dense_cap,
                        "largest order solved densely (above: matrix-free Lanczos)");
        cmd->add_option("--lanczos-tol", cfg.lanczos_tol, "Lanczos residual tolerance (times d)");
        cmd->add_option("--lanczos-k", cfg.lanczos_k, "Ritz values per spectrum end");
        cmd->add_option("--quantiles", cfg.quantile_list, "quantiles to report")->delimiter(',');
    };

    add_common(app.add_subcommand("catalog", "emit a named graph as an edge list"));
    add_common(app.add_subcommand("spectrum", "lambda report for a random lift"));
    add_common(app.add_subcommand("lift", "construct and serialize a random lift"));
    add_common(app.add_subcommand("ecdf", "Monte Carlo campaign with ecdf and quantiles"));
    add_common(app.add_subcommand("verify", "run the inequality checkers"));
    add_common(app.add_subcommand("cheeger", "brute-force Cheeger constant and spectral bounds"));
    add_common(app.add_subcommand("reproduce-fig1", "Petersen quartile boxes, n in {50,100,200}"));
    add_common(app.add_subcommand("reproduce-fig2", "matched-size ecdf overlay at m*n = 2000"));

    auto* replay = app.add_subcommand("replay", "re-run a command from its manifest");
    replay->add_option("--manifest", manifest_path, "manifest.json path")->required();
    std::string replay_out_val;
    std::uint32_t replay_jobs_val = 0;
    auto* out_opt = replay->add_option("--out", replay_out_val, "override output directory");
    auto* jobs_opt = replay->add_option("--jobs", replay_jobs_val, "override worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (!cfg.seed_given) {
        if (const char* env = std::getenv("LIFT_SPECTRA_SEED")) {
            try {
                cfg.seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "error: LIFT_SPECTRA_SEED is not an integer\n";
                return kExitUsage;
            }
        }
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        if (sub->get_name() == "replay") {
            if (out_opt->count()) replay_out = replay_out_val;
            if (jobs_opt->count()) replay_jobs = replay_jobs_val;
            return cmd_replay(manifest_path, replay_out, replay_jobs);
        }
        cfg.command = sub->get_name();
        return dispatch(cfg);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
