// asymbell: generate Khot-Vishnoi-type games, compute classical and quantum
// bounds of asymmetric Bell functionals, run the verification suites, and
// tabulate the bias-ratio scan.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "asymbell/bounds.hpp"
#include "asymbell/io.hpp"
#include "asymbell/kv.hpp"
#include "asymbell/numeric.hpp"
#include "asymbell/random_gen.hpp"
#include "asymbell/solve.hpp"

using namespace asymbell;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ManifestInfo {
    std::string path;
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
};

void write_manifest(const ManifestInfo& info) {
    if (info.path.empty()) return;
    json j;
    j["command"] = info.command;
    j["version"] = kVersion;
    j["seed"] = info.seed;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    json inputs = json::object(), outputs = json::object();
    for (const auto& [p, d] : info.inputs) inputs[p] = d;
    for (const auto& [p, d] : info.outputs) outputs[p] = d;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    io::atomic_write(info.path, io::canonical_dump(j));
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

void write_artifact(const std::string& path, const std::string& content, ManifestInfo& manifest) {
    io::atomic_write(path, content);
    manifest.outputs.emplace_back(path, io::hex64(io::fnv1a64(content)));
}

json load_artifact(const std::string& path, ManifestInfo& manifest) {
    const std::string text = io::read_file(path);
    manifest.inputs.emplace_back(path, io::hex64(io::fnv1a64(text)));
    return io::parse_json(text);
}

double resolve_eta(const std::string& eta_arg, int l, bool refuse_degenerate) {
    if (eta_arg == "auto") {
        const kv::EtaDefault d = kv::eta_default(1 << l);
        if (d.degenerate) {
            if (refuse_degenerate)
                throw UsageError("--eta auto is degenerate (eta = 0) at l = " + std::to_string(l) +
                                 "; pass an explicit --eta for this l");
            std::cerr << "warning: eta auto is degenerate (eta = 0) at l = " << l
                      << "; the game is noiseless\n";
        }
        return d.eta;
    }
    try {
        std::size_t pos = 0;
        const double eta = std::stod(eta_arg, &pos);
        if (pos != eta_arg.size()) throw std::invalid_argument(eta_arg);
        return eta;
    } catch (const std::exception&) {
        throw UsageError("--eta must be a number or 'auto', got '" + eta_arg + "'");
    }
}

json classical_report(const solve::ClassicalSolution& sol, std::optional<std::uint64_t> seed,
                      std::optional<double> elapsed_ms) {
    json j;
    j["value"] = sol.value;
    j["certificate"] = io::deterministic_to_json(sol.strategy);
    j["method"] = sol.method;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["elapsed_ms"] = elapsed_ms ? json(*elapsed_ms) : json(nullptr);
    return j;
}

bool is_game_json(const json& j) { return j.contains("A") && j.contains("B"); }

// Wall-clock timer used only when --timings is requested, so default runs
// stay byte-identical.
class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    std::optional<double> elapsed_ms() const {
        if (!enabled_) return std::nullopt;
        const auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

int run_checks(const std::string& which, int trials, int samples, int l, std::uint64_t seed,
               const std::string& out_path, ManifestInfo& manifest) {
    std::vector<bounds::CheckOutcome> outcomes;
    Philox rng(seed);

    if (which == "lemma1") {
        solve::SearchConfig config;
        config.restarts = 3;
        config.iterations = 25;
        for (int t = 0; t < trials; ++t) {
            config.seed = seed * 1000003ull + static_cast<std::uint64_t>(t);
            const int nx = 1 + static_cast<int>(rng.next_below(4));
            const int ny = 1 + static_cast<int>(rng.next_below(4));
            const int na = 1 + static_cast<int>(rng.next_below(3));
            const BellFunctional m = random_functional(nx, ny, na, rng, /*nonnegative=*/true);
            const double classical = bounds::nonnegative_collapse_bound(m).bound;
            const double quantum = solve::see_saw_lower_bound(m, 3, 3, config).value;
            outcomes.push_back(bounds::inequality_check(
                quantum, classical, 1e-7,
                "nonnegative functional " + std::to_string(t) + " (" + std::to_string(nx) + "x" +
                    std::to_string(ny) + "x" + std::to_string(na) + ")"));
        }
    } else if (which == "corollary1") {
        solve::SearchConfig config;
        config.restarts = 2;
        config.iterations = 20;
        for (int t = 0; t < trials; ++t) {
            config.seed = seed * 999983ull + static_cast<std::uint64_t>(t);
            const int nx = 1 + static_cast<int>(rng.next_below(3));
            const int ny = 1 + static_cast<int>(rng.next_below(3));
            const int na = 1 + static_cast<int>(rng.next_below(3));
            const Game g = random_game(nx, ny, na, 2, rng);
            bounds::CheckOutcome out = bounds::factor_two_check(g, 3, 3, config);
            out.context = "random binary-Bob game " + std::to_string(t) + ": " + out.context;
            outcomes.push_back(std::move(out));
        }
        config.seed = seed;
        bounds::CheckOutcome kv_out =
            bounds::factor_two_check(kv::build_asym_kv(2, 0.25).as_game(), 4, 4, config);
        kv_out.context = "asym KV game l=2: " + kv_out.context;
        outcomes.push_back(std::move(kv_out));
    } else if (which == "appendix-b") {
        for (int t = 0; t < trials; ++t) {
            const int nx = 1 + static_cast<int>(rng.next_below(3));
            const int ny = 1 + static_cast<int>(rng.next_below(3));
            const int k = t % 4 == 0 ? 2 : 2 + static_cast<int>(rng.next_below(3));
            const BellFunctional m = random_functional(nx, ny, k, rng);
            const QuantumStrategy s = random_observable_strategy(3, 3, nx, ny, k, rng);
            bounds::CheckOutcome out = bounds::appendix_b_identity_check(m, s);
            out.context = "identity pair " + std::to_string(t) + ": " + out.context;
            outcomes.push_back(std::move(out));
        }
        const BellFunctional m = random_functional(3, 3, 3, rng);
        outcomes.push_back(bounds::appendix_b_classical_estimate_check(m, samples, seed));
    } else if (which == "parseval") {
        const auto table = gf2::shared_coset_table(l);
        std::vector<std::pair<std::uint64_t, std::vector<double>>> batch;
        batch.reserve(static_cast<std::size_t>(trials));
        for (int t = 0; t < trials; ++t) {
            std::vector<double> values(static_cast<std::size_t>(table->n()));
            for (auto& v : values) v = 2.0 * rng.next_double() - 1.0;
            batch.emplace_back(rng.next_below(table->coset_count()), std::move(values));
        }
        outcomes.push_back(bounds::parseval_claim_check(batch, *table));
    } else if (which == "dim-bound") {
        for (int t = 0; t < trials; ++t) {
            const int nx = 1 + static_cast<int>(rng.next_below(3));
            const int ny = 1 + static_cast<int>(rng.next_below(3));
            const int k = 2 + static_cast<int>(rng.next_below(2));
            const int dim_bob = 1 + static_cast<int>(rng.next_below(4));
            const BellFunctional m = random_functional(nx, ny, k, rng);
            const QuantumStrategy s = random_observable_strategy(3, dim_bob, nx, ny, k, rng);
            bounds::CheckOutcome out = bounds::dimension_bound_probe(m, s);
            out.context = "probe " + std::to_string(t) + ": " + out.context;
            outcomes.push_back(std::move(out));
        }
    } else {
        throw UsageError("unknown check suite '" + which + "'");
    }

    json list = json::array();
    int failures = 0;
    for (const auto& out : outcomes) {
        list.push_back(io::check_to_json(out));
        if (!out.passed) ++failures;
    }
    const std::string rendered = io::canonical_dump(list);
    if (!out_path.empty())
        write_artifact(out_path, rendered, manifest);
    else
        std::cout << rendered;
    std::cerr << "check " << which << ": " << outcomes.size() - failures << "/" << outcomes.size()
              << " passed\n";
    return failures == 0 ? 0 : 1;
}

int run_scan(int l_lo, int l_hi, const std::string& eta_arg, std::uint64_t seed, int restarts,
             int iterations, const std::string& out_path, ManifestInfo& manifest) {
    std::vector<io::ScanRow> rows;
    for (int l = l_lo; l <= l_hi; ++l) {
        const double eta = resolve_eta(eta_arg, l, /*refuse_degenerate=*/true);
        io::ScanRow row;
        row.l = l;
        row.n = 1 << l;
        row.eta = eta;
        row.beta_star_lb = kv::kv_explicit_value_closed_form(l, eta);

        if (l == 2) {
            const auto exact = solve::classical_bias_exact(kv::build_asym_kv(l, eta).dense_functional());
            row.beta_classical = exact.value;
            row.classical_method = exact.method;
        } else {
            solve::SearchConfig config;
            config.restarts = restarts;
            config.iterations = iterations;
            config.seed = seed + static_cast<std::uint64_t>(l);
            const auto found = solve::asym_kv_bias_search(kv::build_asym_kv(l, eta), config);
            row.beta_classical = found.value;
            row.classical_method = found.method;
        }
        row.ratio = row.beta_star_lb / row.beta_classical;
        rows.push_back(std::move(row));
    }
    write_artifact(out_path, io::scan_rows_to_csv(rows), manifest);
    return 0;
}

int run_report(const std::vector<std::string>& paths, ManifestInfo& manifest) {
    int failures = 0;
    for (const auto& path : paths) {
        const std::string text = io::read_file(path);
        manifest.inputs.emplace_back(path, io::hex64(io::fnv1a64(text)));
        if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
            const auto rows = io::scan_rows_from_csv(text);
            std::printf("%-4s %-6s %-10s %-14s %-16s %-12s %s\n", "l", "n", "eta", "beta_star_lb",
                        "beta_classical", "ratio", "classical_method");
            for (const auto& r : rows)
                std::printf("%-4d %-6d %-10.6g %-14.9g %-16.9g %-12.9g %s\n", r.l, r.n, r.eta,
                            r.beta_star_lb, r.beta_classical, r.ratio,
                            r.classical_method.c_str());
            continue;
        }
        const json j = io::parse_json(text);
        if (j.is_array()) {
            int local_failures = 0;
            for (const auto& entry : j) {
                const bool passed = entry.value("passed", false);
                if (!passed) ++local_failures;
                std::printf("%-6s lhs=%-14.9g rhs=%-14.9g slack=%-12.3g %s\n",
                            passed ? "PASS" : "FAIL", entry.value("lhs", 0.0),
                            entry.value("rhs", 0.0), entry.value("slack", 0.0),
                            entry.value("context", std::string{}).c_str());
            }
            if (local_failures > 0) {
                std::printf("%d FAILED\n", local_failures);
                failures += local_failures;
            } else {
                std::printf("all %zu passed\n", j.size());
            }
            continue;
        }
        std::printf("%s\n", io::canonical_dump(j).c_str());
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymmetric Bell functionals: KV games, bounds, and verification suites"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    ManifestInfo manifest;
    manifest.command = join_args(argc, argv);

    // ---- gen
    auto* gen = app.add_subcommand("gen", "generate a game or functional as JSON");
    gen->require_subcommand(1);
    int gen_l = 2;
    std::string gen_eta = "auto";
    std::string gen_out;
    std::string manifest_path;
    auto* gen_kv = gen->add_subcommand("kv", "the KV game as a dense coefficient game");
    auto* gen_asym = gen->add_subcommand("asym-kv", "the asymmetric KV bias functional");
    for (auto* sub : {gen_kv, gen_asym}) {
        sub->add_option("--l", gen_l, "Hadamard parameter l (n = 2^l)")->required();
        sub->add_option("--eta", gen_eta, "noise rate in [0, 1/2], or 'auto'");
        sub->add_option("--out", gen_out, "output path")->required();
        sub->add_option("--manifest", manifest_path, "run-manifest path");
    }

    // ---- classical-exact / classical-search
    auto* cexact = app.add_subcommand("classical-exact", "exact classical value or bias");
    std::string in_path, out_path;
    bool timings = false;
    int workers = 0;
    cexact->add_option("--in", in_path, "game or functional JSON")->required();
    cexact->add_option("--out", out_path, "report path (stdout when absent)");
    cexact->add_option("--workers", workers, "worker-count hint");
    cexact->add_flag("--timings", timings, "include wall-clock timings in the report");
    cexact->add_option("--manifest", manifest_path, "run-manifest path");

    auto* csearch = app.add_subcommand("classical-search", "seeded classical local search");
    solve::SearchConfig search_config;
    csearch->add_option("--in", in_path, "game or functional JSON")->required();
    csearch->add_option("--out", out_path, "report path (stdout when absent)");
    csearch->add_option("--restarts", search_config.restarts, "restart count");
    csearch->add_option("--iters", search_config.iterations, "iteration cap per restart");
    csearch->add_option("--seed", search_config.seed, "RNG seed");
    csearch->add_flag("--timings", timings, "include wall-clock timings in the report");
    csearch->add_option("--manifest", manifest_path, "run-manifest path");

    // ---- see-saw
    auto* seesaw = app.add_subcommand("see-saw", "alternating-optimization quantum lower bound");
    int dim_alice = 2, dim_bob = 2;
    std::string init_path;
    seesaw->add_option("--in", in_path, "game or functional JSON")->required();
    seesaw->add_option("--out", out_path, "report path (stdout when absent)");
    seesaw->add_option("--dima", dim_alice, "Alice local dimension");
    seesaw->add_option("--dimb", dim_bob, "Bob local dimension");
    seesaw->add_option("--restarts", search_config.restarts, "restart count");
    seesaw->add_option("--iters", search_config.iterations, "iteration cap per restart");
    seesaw->add_option("--seed", search_config.seed, "RNG seed");
    seesaw->add_option("--init", init_path, "initial strategy JSON");
    seesaw->add_flag("--timings", timings, "include wall-clock timings in the report");
    seesaw->add_option("--manifest", manifest_path, "run-manifest path");

    // ---- mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo referee simulation");
    std::string strategy_arg = "explicit";
    std::int64_t samples = 1000000;
    std::uint64_t mc_seed = 1;
    bool mc_bias = false;
    mc->add_option("--in", in_path, "game JSON (needs KV metadata for built-in strategies)")
        ->required();
    mc->add_option("--strategy", strategy_arg,
                   "'explicit', 'transformed', or a strategy JSON path");
    mc->add_option("--samples", samples, "sample count");
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_flag("--bias", mc_bias, "estimate the bias instead of the win probability");
    mc->add_option("--out", out_path, "report path (stdout when absent)");
    mc->add_option("--manifest", manifest_path, "run-manifest path");

    // ---- check
    auto* check = app.add_subcommand("check", "run a verification suite");
    std::string suite;
    int trials = 100, chk_samples = 10000, chk_l = 3;
    std::uint64_t chk_seed = 7;
    check->add_option("suite", suite, "lemma1 | corollary1 | appendix-b | parseval | dim-bound")
        ->required();
    check->add_option("--trials", trials, "trial count");
    check->add_option("--samples", chk_samples, "sample count (appendix-b estimate)");
    check->add_option("--l", chk_l, "Hadamard parameter (parseval)");
    check->add_option("--seed", chk_seed, "RNG seed");
    check->add_option("--out", out_path, "outcome list path (stdout when absent)");
    check->add_option("--manifest", manifest_path, "run-manifest path");

    // ---- scan
    auto* scan = app.add_subcommand("scan", "tabulate bias ratios over a range of l");
    std::string l_range = "2:4";
    std::string scan_eta = "auto";
    std::uint64_t scan_seed = 1;
    int scan_restarts = 8, scan_iters = 50;
    scan->add_option("--l", l_range, "range lo:hi (or a single l)");
    scan->add_option("--eta", scan_eta, "noise rate or 'auto'");
    scan->add_option("--seed", scan_seed, "RNG seed for the heuristic rows");
    scan->add_option("--restarts", scan_restarts, "search restarts per heuristic row");
    scan->add_option("--iters", scan_iters, "search iteration cap");
    scan->add_option("--out", out_path, "CSV path")->required();
    scan->add_option("--manifest", manifest_path, "run-manifest path");

    // ---- report
    auto* report = app.add_subcommand("report", "render artifacts as tables");
    std::vector<std::string> report_paths;
    report->add_option("paths", report_paths, "scan CSVs, check lists, engine reports")
        ->required()
        ->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        manifest.path = manifest_path;

        if (gen_kv->parsed() || gen_asym->parsed()) {
            const double eta = resolve_eta(gen_eta, gen_l, /*refuse_degenerate=*/false);
            json j;
            if (gen_kv->parsed())
                j = io::game_to_json(kv::build_kv_game(gen_l, eta).as_game());
            else
                j = io::functional_to_json(kv::build_asym_kv(gen_l, eta).dense_functional());
            j["metadata"] = {{"l", gen_l},
                             {"n", 1 << gen_l},
                             {"eta", eta},
                             {"coset_count", (std::uint64_t{1} << (1 << gen_l)) >> gen_l}};
            write_artifact(gen_out, io::canonical_dump(j), manifest);
            write_manifest(manifest);
            return 0;
        }

        if (cexact->parsed()) {
            const json j = load_artifact(in_path, manifest);
            const Stopwatch watch(timings);
            const solve::ClassicalSolution sol =
                is_game_json(j) ? solve::classical_value_exact(io::game_from_json(j), workers)
                                : solve::classical_bias_exact(io::functional_from_json(j), workers);
            const std::string rendered =
                io::canonical_dump(classical_report(sol, std::nullopt, watch.elapsed_ms()));
            if (!out_path.empty())
                write_artifact(out_path, rendered, manifest);
            else
                std::cout << rendered;
            write_manifest(manifest);
            return 0;
        }

        if (csearch->parsed()) {
            const json j = load_artifact(in_path, manifest);
            const Stopwatch watch(timings);
            const solve::ClassicalSolution sol =
                is_game_json(j)
                    ? solve::classical_local_search(io::game_from_json(j), search_config)
                    : solve::classical_local_search(io::functional_from_json(j), search_config);
            const std::string rendered = io::canonical_dump(
                classical_report(sol, search_config.seed, watch.elapsed_ms()));
            if (!out_path.empty())
                write_artifact(out_path, rendered, manifest);
            else
                std::cout << rendered;
            write_manifest(manifest);
            return 0;
        }

        if (seesaw->parsed()) {
            const json j = load_artifact(in_path, manifest);
            std::optional<QuantumStrategy> initial;
            if (!init_path.empty())
                initial = io::strategy_from_json(load_artifact(init_path, manifest));
            const Stopwatch watch(timings);
            solve::SeeSawResult result =
                is_game_json(j)
                    ? solve::see_saw_lower_bound(io::game_from_json(j), dim_alice, dim_bob,
                                                 search_config, initial ? &*initial : nullptr)
                    : solve::see_saw_lower_bound(io::functional_from_json(j), dim_alice, dim_bob,
                                                 search_config, initial ? &*initial : nullptr);
            json out;
            out["value"] = result.value;
            out["raw_value"] = result.raw_value;
            out["method"] = "see-saw";
            out["seed"] = search_config.seed;
            out["elapsed_ms"] = watch.elapsed_ms() ? json(*watch.elapsed_ms()) : json(nullptr);
            out["certificate"] = io::strategy_to_json(result.strategy);
            const std::string rendered = io::canonical_dump(out);
            if (!out_path.empty())
                write_artifact(out_path, rendered, manifest);
            else
                std::cout << rendered;
            write_manifest(manifest);
            return 0;
        }

        if (mc->parsed()) {
            const json j = load_artifact(in_path, manifest);
            const Game game = io::game_from_json(j);
            solve::PlayableStrategy strategy = DeterministicStrategy{};
            if (strategy_arg == "explicit" || strategy_arg == "transformed") {
                if (!j.contains("metadata") || !j["metadata"].contains("l"))
                    throw UsageError("built-in strategies need KV metadata in the game file");
                const int l = j["metadata"]["l"].get<int>();
                if (strategy_arg == "explicit") {
                    strategy = kv::kv_explicit_strategy(l);
                } else {
                    const QuantumStrategy transformed = kv::kv_transformed_strategy(l);
                    std::vector<std::vector<MatrixXcd>> bob;
                    for (const auto& b : transformed.bob_observables()) {
                        const MatrixXcd id = MatrixXcd::Identity(b.rows(), b.cols());
                        bob.push_back({0.5 * (id + b), 0.5 * (id - b)});
                    }
                    const int n = transformed.dim_alice();
                    VectorXcd psi = VectorXcd::Zero(static_cast<Eigen::Index>(n) * n);
                    for (int i = 0; i < n; ++i)
                        psi(static_cast<Eigen::Index>(i) * n + i) = 1.0 / std::sqrt(n);
                    strategy = QuantumStrategy::with_povms(n, n, psi, transformed.alice_povms(),
                                                           std::move(bob));
                }
            } else {
                strategy = io::strategy_from_json(load_artifact(strategy_arg, manifest));
            }
            const solve::EstimateReport est = solve::monte_carlo_estimate(
                game, strategy, samples, mc_seed,
                mc_bias ? solve::EstimateKind::Bias : solve::EstimateKind::WinProbability);
            json out = io::estimate_to_json(est);
            out["method"] = mc_bias ? "mc-bias" : "mc-win-probability";
            const std::string rendered = io::canonical_dump(out);
            if (!out_path.empty())
                write_artifact(out_path, rendered, manifest);
            else
                std::cout << rendered;
            write_manifest(manifest);
            return 0;
        }

        if (check->parsed()) {
            const int code = run_checks(suite, trials, chk_samples, chk_l, chk_seed, out_path,
                                        manifest);
            write_manifest(manifest);
            return code;
        }

        if (scan->parsed()) {
            int lo = 0, hi = -1;
            const auto colon = l_range.find(':');
            try {
                if (colon == std::string::npos) {
                    lo = hi = std::stoi(l_range);
                } else {
                    lo = std::stoi(l_range.substr(0, colon));
                    hi = std::stoi(l_range.substr(colon + 1));
                }
            } catch (const std::exception&) {
                throw UsageError("--l must be 'lo:hi' or a single integer, got '" + l_range + "'");
            }
            manifest.seed = scan_seed;
            const int code = run_scan(lo, hi, scan_eta, scan_seed, scan_restarts, scan_iters,
                                      out_path, manifest);
            write_manifest(manifest);
            return code;
        }

        if (report->parsed()) return run_report(report_paths, manifest);

        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
