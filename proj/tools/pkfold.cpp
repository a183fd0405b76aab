#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pkfold/decomposition.hpp"
#include "pkfold/energy.hpp"
#include "pkfold/fold.hpp"
#include "pkfold/io.hpp"
#include "pkfold/motifs.hpp"
#include "pkfold/oracle.hpp"
#include "pkfold/series.hpp"

using namespace pkfold;

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_fold_result(const std::string& seq, const FoldResult& res, const std::string& format) {
    std::cout << seq << "\n";
    if (format != "arcs") std::cout << bracket_string(res.structure) << "\n";
    std::cout << "ENERGY " << energy_to_string(res.energy) << "\n";
    if (format != "bracket") std::cout << emit_arcs(res.structure);
}

std::string random_sequence(std::mt19937& rng, int len) {
    static const char alphabet[] = "ACGU";
    std::uniform_int_distribution<int> dist(0, 3);
    std::string s;
    for (int x = 0; x < len; ++x) s.push_back(alphabet[dist(rng)]);
    return s;
}

double fixed4(double v) { return std::round(v * 10000.0) / 10000.0; }

int run_selftest(const EnergyModel& em, int sigma, unsigned seed) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    // golden growth rates
    {
        const double want_struct[][3] = {{3, 3, 2.0348}, {4, 3, 2.2644}, {3, 4, 1.7898}, {3, 5, 1.6465}};
        bool ok = true;
        for (auto& row : want_struct) {
            GrowthRate g = structure_growth_rate(static_cast<int>(row[0]), static_cast<int>(row[1]));
            if (std::abs(fixed4(g.value) - row[2]) > 1e-3) ok = false;
        }
        const double want_motif[][2] = {{2, 1.7424}, {3, 1.5457}, {5, 1.3721}};
        for (auto& row : want_motif) {
            GrowthRate g = motif_growth_rate(static_cast<int>(row[0]));
            if (std::abs(fixed4(g.value) - row[1]) > 1e-3) ok = false;
        }
        report("growth-rate golden table", ok);
    }
    // motif counts against path enumeration
    {
        bool ok = true;
        MotifCounts counts = count_motifs(14, 3, 3);
        for (int n = 0; n <= 14; ++n) {
            auto motifs = enumerate_motifs(n, 3, 3);
            if (counts.mu_star[n] != static_cast<long>(motifs.size())) ok = false;
        }
        report("motif recurrence vs enumeration (n <= 14)", ok);
    }
    // series coefficients against the brute-force census
    {
        bool ok = true;
        auto series = structure_series(12, 3, sigma);
        for (int n = 1; n <= 12; ++n) {
            const auto& census = structure_census(n, {3, 4, sigma});
            if (series[n] != static_cast<long>(census.entries.size())) ok = false;
        }
        report("series coefficients vs census (n <= 12)", ok);
    }
    // folding against the exhaustive oracle
    {
        std::mt19937 rng(seed);
        bool ok = true;
        std::string witness;
        for (int trial = 0; trial < 40 && ok; ++trial) {
            int len = 14 + static_cast<int>(rng() % 7);
            std::string seq = random_sequence(rng, len);
            FoldOptions opts;
            opts.sigma = sigma;
            opts.max_shadow_stacks = 4;
            FoldResult got = fold(seq, em, opts);
            FoldResult want = brute_force_fold(seq, em, {3, 4, sigma});
            if (got.energy != want.energy || !(got.structure == want.structure)) {
                ok = false;
                witness = seq;
            }
        }
        report("fold equals exhaustive oracle (40 random sequences)", ok, witness);
    }
    std::cout << case_study_exclusion_note() << "\n";
    std::cout << (failures == 0 ? "selftest OK" : "selftest FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-noncrossing canonical RNA pseudoknot folding"};
    app.require_subcommand(1);
    app.fallthrough();

    int sigma = 3;
    int max_shadow_stacks = 3;
    int ceiling = 30;
    int threads = 1;
    unsigned seed = 0;
    bool seed_set = false;
    std::string energy_path, format = "both";
    app.add_option("--sigma", sigma, "minimum stack length (>= 3)");
    app.add_option("--max-shadow-stacks", max_shadow_stacks, "stack cap for irreducible shadows (>= 2)");
    app.add_option("--energy", energy_path, "energy configuration file");
    app.add_option("--ceiling", ceiling, "brute-force size ceiling");
    app.add_option("--threads", threads, "worker threads");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (required for random modes)");
    app.add_option("--format", format, "fold output: bracket|arcs|both")
        ->check(CLI::IsMember({"bracket", "arcs", "both"}));

    auto* cmd_fold = app.add_subcommand("fold", "fold a sequence");
    std::string fold_input;
    bool benchmark = false;
    int bench_min = 12, bench_max = 24, bench_per = 5;
    cmd_fold->add_option("input", fold_input, "sequence file (default: stdin)");
    cmd_fold->add_flag("--benchmark", benchmark, "time folds of random sequences");
    cmd_fold->add_option("--bench-min", bench_min, "benchmark minimum length");
    cmd_fold->add_option("--bench-max", bench_max, "benchmark maximum length");
    cmd_fold->add_option("--bench-per", bench_per, "sequences per length");

    auto* cmd_oracle = app.add_subcommand("oracle-fold", "exhaustive reference fold");
    std::string oracle_input;
    cmd_oracle->add_option("input", oracle_input, "sequence file (default: stdin)");

    auto* cmd_dec = app.add_subcommand("decompose", "loop decomposition of an arc list");
    std::string dec_input;
    cmd_dec->add_option("input", dec_input, "arc-list file (default: stdin)");

    auto* cmd_motifs = app.add_subcommand("motifs", "count or list motifs");
    int motifs_n = 0;
    bool motifs_enum = false;
    cmd_motifs->add_option("--n", motifs_n, "length")->required();
    cmd_motifs->add_flag("--enumerate", motifs_enum, "list the motifs as arc lists");

    auto* cmd_census = app.add_subcommand("census", "count structures");
    int census_n = 0;
    bool census_series = false;
    cmd_census->add_option("--n", census_n, "length")->required();
    cmd_census->add_flag("--series", census_series, "use the generating-function pipeline");

    auto* cmd_growth = app.add_subcommand("growth", "exponential growth rates");
    int growth_k = 0;
    bool growth_motif = false, growth_table = false;
    cmd_growth->add_option("--k", growth_k, "crossing parameter");
    cmd_growth->add_flag("--motif", growth_motif, "motif growth rate for --sigma");
    cmd_growth->add_flag("--table", growth_table, "full structure table k=3..9, sigma=3..9");

    auto* cmd_selftest = app.add_subcommand("selftest", "built-in verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sigma < 3 && !(cmd_growth->parsed() && growth_motif))
            throw Error(Errc::InvalidParams, "--sigma must be >= 3");
        if (max_shadow_stacks < 2) throw Error(Errc::InvalidParams, "--max-shadow-stacks must be >= 2");
        seed_set = seed_opt->count() > 0;
        EnergyModel em = energy_path.empty() ? EnergyModel{} : load_energy_config(energy_path);
        FoldOptions opts;
        opts.sigma = sigma;
        opts.max_shadow_stacks = max_shadow_stacks;
        opts.threads = threads;

        if (cmd_fold->parsed()) {
            if (benchmark) {
                if (!seed_set) throw Error(Errc::InvalidParams, "--benchmark requires --seed");
                std::mt19937 rng(seed);
                for (int len = bench_min; len <= bench_max; ++len) {
                    double total = 0.0;
                    for (int t = 0; t < bench_per; ++t) {
                        std::string seq = random_sequence(rng, len);
                        auto t0 = std::chrono::steady_clock::now();
                        fold(seq, em, opts);
                        auto t1 = std::chrono::steady_clock::now();
                        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                        total += ms;
                        std::cout << "bench n=" << len << " seq=" << t << " ms=" << ms << "\n";
                    }
                    std::cout << "bench-mean n=" << len << " ms=" << total / bench_per << "\n";
                }
                return 0;
            }
            std::string seq = parse_sequence(read_input(fold_input));
            FoldResult res = fold(seq, em, opts);
            print_fold_result(seq, res, format);
            return 0;
        }
        if (cmd_oracle->parsed()) {
            std::string seq = parse_sequence(read_input(oracle_input));
            FoldResult res = brute_force_fold(seq, em, {3, 4, sigma}, ceiling);
            print_fold_result(seq, res, format);
            return 0;
        }
        if (cmd_dec->parsed()) {
            Structure s = parse_arcs(read_input(dec_input), {3, 4, sigma});
            LoopDecomposition dec = loop_decompose(s);
            for (const Loop& lp : dec.loops) {
                std::cout << "loop " << loop_kind_name(lp.kind) << " closing";
                for (const Arc& a : lp.closing) std::cout << " " << to_string(a);
                std::cout << " intervals";
                if (lp.intervals.empty()) std::cout << " -";
                for (auto& iv : lp.intervals) std::cout << " [" << iv.first << "," << iv.second << "]";
                std::cout << "\n";
            }
            for (size_t x = 0; x < s.arcs().size(); ++x)
                std::cout << "arc " << to_string(s.arcs()[x]) << " " << color_name(dec.arc_colors[x]) << "\n";
            for (int v = 1; v <= s.length(); ++v)
                std::cout << "vertex " << v << " " << color_name(dec.vertex_colors[v]) << "\n";
            return 0;
        }
        if (cmd_motifs->parsed()) {
            if (motifs_enum) {
                for (const Structure& m : enumerate_motifs(motifs_n, 3, sigma)) {
                    std::cout << emit_arcs(m);
                    std::cout << "-\n";
                }
            } else {
                MotifCounts counts = count_motifs(motifs_n, 3, sigma);
                std::cout << motifs_n << " " << counts.mu_star[motifs_n].get_str() << "\n";
            }
            return 0;
        }
        if (cmd_census->parsed()) {
            if (census_series) {
                std::cout << census_n << " " << series_count(census_n, 3, sigma).get_str() << "\n";
            } else {
                const auto& census = structure_census(census_n, {3, 4, sigma}, ceiling);
                std::cout << census_n << " " << census.entries.size() << "\n";
            }
            return 0;
        }
        if (cmd_growth->parsed()) {
            std::cout.setf(std::ios::fixed);
            std::cout.precision(4);
            if (growth_motif) {
                GrowthRate g = motif_growth_rate(sigma);
                std::cout << sigma << " " << g.value << "\n";
            } else if (growth_table) {
                for (int s = 3; s <= 9; ++s)
                    for (int k = 3; k <= 9; ++k) {
                        GrowthRate g = structure_growth_rate(k, s);
                        std::cout << k << " " << s << " " << g.value << "\n";
                    }
            } else {
                if (growth_k < 3) throw Error(Errc::InvalidParams, "growth needs --k >= 3 (or --motif/--table)");
                GrowthRate g = structure_growth_rate(growth_k, sigma);
                std::cout << growth_k << " " << sigma << " " << g.value << "\n";
            }
            return 0;
        }
        if (cmd_selftest->parsed()) {
            return run_selftest(em, sigma, seed_set ? seed : 0x5eedu);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
