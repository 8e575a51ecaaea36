// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The heavy statistical checks pin every tolerance in code; nothing
// is calibrated at runtime.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperim/cascade.hpp"
#include "hyperim/experiment.hpp"
#include "hyperim/ga.hpp"
#include "hyperim/generator.hpp"
#include "hyperim/io.hpp"
#include "hyperim/metrics.hpp"
#include "hyperim/selectors.hpp"
#include "hyperim/stats.hpp"
#include "support/oracles.hpp"

using namespace hyperim;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++g_failures;
    }
}

void report_skip(int id, const std::string& name, const std::string& why) {
    std::printf("SKIP  criterion %2d: %s -- %s\n", id, name.c_str(), why.c_str());
    std::fflush(stdout);
}

Hypergraph hub_graph() {
    return Hypergraph::from_edges(6, {{0, 1, 2}, {2, 3}, {2, 4}, {3, 4, 5}});
}

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
    const double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) {
        acc += (x - m) * (x - m);
    }
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double pooled_std(const std::vector<double>& a, const std::vector<double>& b) {
    const double va = sample_std(a) * sample_std(a);
    const double vb = sample_std(b) * sample_std(b);
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    return std::sqrt(((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0));
}

// ---------------------------------------------------------------------------
// 1. Fitness golden value on the six-node worked instance.
// ---------------------------------------------------------------------------
void criterion_1() {
    const Hypergraph h = hub_graph();
    FitnessEvaluator eval(h, {0.3, 0.2});
    const std::vector<NodeId> seeds{2, 3};
    const FitnessBreakdown parts = eval.components(seeds);
    const bool pass = std::abs(parts.sigma0 - 2.0) <= 1e-12 &&
                      std::abs(parts.sigma1 - 1.41) <= 1e-12 &&
                      std::abs(parts.sigma2 - 0.2964) <= 1e-12 &&
                      std::abs(parts.total() - 3.7064) <= 1e-12;
    std::ostringstream detail;
    detail << "W = " << parts.total() << " (sigma1 = " << parts.sigma1
           << ", sigma2 = " << parts.sigma2 << ")";
    report(1, "fitness golden value 3.7064", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 2. hci1 equals the depth-1 arc-enumeration oracle on 100+ tiny instances;
//    hci2 with s = 0 collapses to hci1 exactly.
// ---------------------------------------------------------------------------
void criterion_2() {
    Rng rng(0xC2);
    std::size_t graphs = 0;
    std::size_t checked = 0;
    bool pass = true;
    double worst = 0.0;
    while (graphs < 120) {
        const Hypergraph h = oracles::random_tiny_hypergraph(rng, 12, 6, 13);
        ++graphs;
        const double t = 0.05 + 0.9 * rng.uniform();
        for (NodeId v = 0; v < h.num_nodes(); ++v) {
            const double expected = static_cast<double>(h.hyperdegree(v)) +
                                    oracles::depth1_expected_spill(h, v, t);
            const double got = hci1(h, {t, 0.0}, v);
            worst = std::max(worst, std::abs(got - expected));
            if (std::abs(got - expected) > 1e-9) {
                pass = false;
            }
            if (hci2(h, {t, 0.0}, v) != hci1(h, {t, 0.0}, v)) {
                pass = false;
            }
            ++checked;
        }
    }
    std::ostringstream detail;
    detail << graphs << " graphs, " << checked << " nodes, worst |delta| = " << worst;
    report(2, "hci1 matches the arc-enumeration oracle", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 3. Monte Carlo estimates sit within 4 standard errors of the brute-force
//    enumeration on 20 tiny instances (>= 19/20), including the analytic
//    pair-graph case.
// ---------------------------------------------------------------------------
void criterion_3() {
    const std::size_t trials = 100000;
    std::size_t within = 0;
    std::size_t cases = 0;
    bool analytic_ok = false;

    const auto check_case = [&](const Hypergraph& h, PropagationParams p,
                                const std::vector<NodeId>& seeds, Rng mc_rng) {
        const ExactInfluence exact = exact_influence_bruteforce(h, p, seeds);
        const InfluenceEstimate est = estimate_influence(h, p, seeds, trials, mc_rng, 4);
        // A zero sample variance cannot prove exact equality: a single
        // deviating trial would shift the mean by 1/trials, so that is the
        // resolution floor for the standard error.
        const double floor_se = 1.0 / static_cast<double>(trials);
        const double se_n =
            std::max(est.std_nodes / std::sqrt(static_cast<double>(trials)), floor_se);
        const double se_e =
            std::max(est.std_edges / std::sqrt(static_cast<double>(trials)), floor_se);
        const bool ok_n = std::abs(est.mean_nodes - exact.mean_nodes) <= 4.0 * se_n;
        const bool ok_e = std::abs(est.mean_edges - exact.mean_edges) <= 4.0 * se_e;
        ++cases;
        if (ok_n && ok_e) {
            ++within;
        } else {
            std::fprintf(stderr, "case %zu: d=%zu dn=%.6g de=%.6g std=(%.3g, %.3g)\n",
                         cases, h.total_incidence(),
                         est.mean_nodes - exact.mean_nodes,
                         est.mean_edges - exact.mean_edges, est.std_nodes,
                         est.std_edges);
        }
        return exact;
    };

    // Analytic case: single hyperedge {1,2}, seed {1}, t = s = 0.5.
    {
        const Hypergraph pair = Hypergraph::from_edges(2, {{0, 1}});
        const ExactInfluence exact =
            check_case(pair, {0.5, 0.5}, {0}, Rng(0xAC3).fork(0));
        analytic_ok = std::abs(exact.mean_nodes - 1.25) <= 1e-12 &&
                      std::abs(exact.mean_edges - 0.5) <= 1e-12;
    }

    Rng rng(0xC3);
    // Mix of incidence sizes up to the enumeration cap; each instance is
    // redrawn until its total incidence lands within 1 of the target.
    const std::size_t caps[] = {6, 7, 8, 8, 9, 9, 10, 10, 10, 11, 11, 11, 12, 12, 12,
                                13, 13, 13, 13};
    for (std::size_t i = 0; i < std::size(caps); ++i) {
        Hypergraph h = oracles::random_tiny_hypergraph(rng, 10, 5, caps[i]);
        while (h.total_incidence() + 1 < caps[i]) {
            h = oracles::random_tiny_hypergraph(rng, 10, 5, caps[i]);
        }
        const PropagationParams p{0.1 + 0.8 * rng.uniform(), 0.1 + 0.8 * rng.uniform()};
        std::vector<NodeId> seeds{static_cast<NodeId>(rng.uniform_below(h.num_nodes()))};
        if (h.num_nodes() > 1 && rng.bernoulli(0.5)) {
            const auto second = static_cast<NodeId>(rng.uniform_below(h.num_nodes()));
            if (second != seeds[0]) {
                seeds.push_back(second);
            }
        }
        check_case(h, p, seeds, rng.fork(500 + i));
    }

    std::ostringstream detail;
    detail << within << "/" << cases << " within 4 SE, analytic case "
           << (analytic_ok ? "exact" : "WRONG");
    report(3, "Monte Carlo consistency against the exact oracle",
           analytic_ok && cases == 20 && within >= 19, detail.str());
}

// ---------------------------------------------------------------------------
// 4. Degenerate cascades: t = 0 pins the spread at the seeds with zero
//    variance; t = s = 1 covers the seed components with zero variance.
// ---------------------------------------------------------------------------
void criterion_4() {
    bool pass = true;
    Rng rng(0xC4);
    std::vector<Hypergraph> instances;
    instances.push_back(hub_graph());
    for (int i = 0; i < 4; ++i) {
        instances.push_back(oracles::random_hypergraph(rng, 40, 25, 5));
    }
    GeneratorSpec er;
    er.kind = GeneratorKind::ER;
    er.num_nodes = 120;
    er.num_edges = 120;
    er.mean_hyperdegree = 4.0;
    Rng gen_rng(4);
    instances.push_back(generate(er, gen_rng));

    for (std::size_t i = 0; i < instances.size(); ++i) {
        const Hypergraph& h = instances[i];
        std::vector<NodeId> seeds{static_cast<NodeId>(rng.uniform_below(h.num_nodes()))};
        const auto second = static_cast<NodeId>(rng.uniform_below(h.num_nodes()));
        if (second != seeds[0]) {
            seeds.push_back(second);
        }

        const InfluenceEstimate zero =
            estimate_influence(h, {0.0, 0.8}, seeds, 2000, rng.fork(10 + i), 2);
        pass &= zero.mean_nodes == static_cast<double>(seeds.size());
        pass &= zero.mean_edges == 0.0;
        pass &= zero.std_nodes == 0.0 && zero.std_edges == 0.0;

        const auto reach = oracles::reachable_from(h, seeds);
        const InfluenceEstimate one =
            estimate_influence(h, {1.0, 1.0}, seeds, 2000, rng.fork(40 + i), 2);
        pass &= one.mean_nodes == static_cast<double>(reach.nodes.size());
        pass &= one.mean_edges == static_cast<double>(reach.edges.size());
        pass &= one.std_nodes == 0.0 && one.std_edges == 0.0;
    }
    report(4, "degenerate cascades (t=0 and t=s=1) with zero variance", pass);
}

// ---------------------------------------------------------------------------
// 5 + 6. Ablation ordering on the ER desk instance, and monotone
//        convergence of every trace.
// ---------------------------------------------------------------------------
struct AblationData {
    std::vector<double> gen0_hci;
    std::vector<double> gen0_random;
    std::vector<double> final_gciim;
    std::vector<double> final_gci;
    std::vector<double> final_ga;
    std::vector<Individual> gciim_best;
    bool monotone = true;
    Hypergraph graph;
};

AblationData run_ablation() {
    AblationData data;

    GeneratorSpec er;
    er.kind = GeneratorKind::ER;
    er.num_nodes = 500;
    er.num_edges = 500;
    er.mean_hyperdegree = 5.0;
    Rng gen_rng(0xE5);
    data.graph = largest_connected_component(generate(er, gen_rng)).graph;

    const PropagationParams p{0.15, 0.15};
    const std::size_t k = 20;

    GAConfig base;
    base.popnum = 128;
    base.maxgen = 50;

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (GAVariant variant : {GAVariant::GCIIM, GAVariant::GCI, GAVariant::GA}) {
            GAConfig cfg = base;
            cfg.apply_variant(variant);
            cfg.rng_seed = seed;
            const RunTrace trace = run_gciim(data.graph, p, k, cfg);

            for (std::size_t g = 1; g < trace.generations.size(); ++g) {
                if (trace.generations[g].best_fitness <
                    trace.generations[g - 1].best_fitness) {
                    data.monotone = false;
                }
            }

            const double gen0 = trace.generations.front().best_fitness;
            const double final_best = trace.best_fitness;
            switch (variant) {
            case GAVariant::GCIIM:
                data.gen0_hci.push_back(gen0);
                data.final_gciim.push_back(final_best);
                data.gciim_best.push_back(trace.best);
                break;
            case GAVariant::GCI:
                data.final_gci.push_back(final_best);
                break;
            case GAVariant::GA:
                data.gen0_random.push_back(gen0);
                data.final_ga.push_back(final_best);
                break;
            }
        }
    }
    return data;
}

void criterion_5_6(const AblationData& data) {
    const double p_init = rank_sum_p_greater(data.gen0_hci, data.gen0_random);
    const bool init_better = mean_of(data.gen0_hci) > mean_of(data.gen0_random);

    const double m_gciim = mean_of(data.final_gciim);
    const double m_gci = mean_of(data.final_gci);
    const double m_ga = mean_of(data.final_ga);
    const double p_final = rank_sum_p_greater(data.final_gciim, data.final_ga);

    const bool pass = init_better && p_init < 0.05 && m_gciim >= m_gci && m_gci >= m_ga &&
                      m_gciim > m_ga && p_final < 0.05;
    std::ostringstream detail;
    detail << "gen0 HCI " << mean_of(data.gen0_hci) << " vs random "
           << mean_of(data.gen0_random) << " (p = " << p_init << "); final "
           << m_gciim << " >= " << m_gci << " >= " << m_ga << " (gciim>ga p = " << p_final
           << ")";
    report(5, "ablation ordering on the ER desk instance", pass, detail.str());
    report(6, "per-generation best fitness is non-decreasing (30 traces)", data.monotone);
}

// ---------------------------------------------------------------------------
// 7. Directional baseline comparison: G-CIIM's Monte Carlo spread is at
//    least the best baseline minus one pooled standard deviation.
// ---------------------------------------------------------------------------
void criterion_7(const AblationData& data) {
    const Hypergraph& h = data.graph;
    const PropagationParams p{0.15, 0.15};
    const std::size_t k = 20;
    const std::size_t trials = 10000;
    const Rng master(0xC7);

    std::vector<double> gciim_spread;
    for (std::size_t r = 0; r < data.gciim_best.size(); ++r) {
        gciim_spread.push_back(
            estimate_influence(h, p, data.gciim_best[r], trials, master.fork(1, r), 4)
                .mean_nodes);
    }

    std::vector<Strategy> baselines{Strategy::HHD, Strategy::HCI1, Strategy::HCI2,
                                    Strategy::NP, Strategy::PR, Strategy::RD};
    double best_mean = -1.0;
    std::string best_name;
    std::vector<double> best_sample;
    for (std::size_t b = 0; b < baselines.size(); ++b) {
        SelectorSpec spec;
        spec.strategy = baselines[b];
        spec.k = k;
        std::vector<double> sample;
        for (std::size_t r = 0; r < 10; ++r) {
            const std::vector<NodeId> seeds =
                select_seeds(h, p, spec, master.fork(2, b, r));
            sample.push_back(
                estimate_influence(h, p, seeds, trials, master.fork(3, b * 16 + r), 4)
                    .mean_nodes);
        }
        const double m = mean_of(sample);
        if (m > best_mean) {
            best_mean = m;
            best_name = to_string(baselines[b]);
            best_sample = sample;
        }
    }

    const double gciim_mean = mean_of(gciim_spread);
    const double pool = pooled_std(gciim_spread, best_sample);
    const bool pass = gciim_mean >= best_mean - pool;
    std::ostringstream detail;
    detail << "gciim " << gciim_mean << " vs best baseline " << best_name << " "
           << best_mean << " (pooled std " << pool << ")";
    report(7, "G-CIIM spread dominates the baselines directionally", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 8. Optional real-dataset spot check (Restaurant-rev, Table-style numbers).
// ---------------------------------------------------------------------------
void criterion_8(const std::string& repo_dir) {
    const char* env = std::getenv("HYPERIM_RESTAURANT_REV");
    std::string path = env ? env : repo_dir + "/data/restaurant-rev/hyperedges.txt";
    if (!std::filesystem::exists(path)) {
        report_skip(8, "Restaurant-rev spot check",
                    "dataset not fetched (" + path + " missing); see README");
        return;
    }

    const Hypergraph raw = load_hyperedge_file(path, FileFormat::Lines);
    const Hypergraph h = largest_connected_component(raw).graph;
    const PropagationParams p{0.1, 0.1};
    const std::size_t k = 30;
    const std::size_t trials = 10000;
    const Rng master(0xC8);

    SelectorSpec hhd;
    hhd.strategy = Strategy::HHD;
    hhd.k = k;
    const auto hhd_seeds = select_seeds(h, p, hhd, master);
    const double hhd_mean =
        estimate_influence(h, p, hhd_seeds, trials, master.fork(1), 0).mean_nodes;

    SelectorSpec gciim;
    gciim.strategy = Strategy::GCIIM;
    gciim.k = k;
    gciim.ga = GAConfig{}; // table defaults: 512 / 0.5 / 0.5 / 100 / 5
    const auto gciim_seeds = select_seeds(h, p, gciim, master.fork(2));
    const double gciim_mean =
        estimate_influence(h, p, gciim_seeds, trials, master.fork(3), 0).mean_nodes;

    const bool hhd_ok = std::abs(hhd_mean - 151.97) <= 0.1 * 151.97;
    const bool gciim_ok = std::abs(gciim_mean - 152.44) <= 0.1 * 152.44;
    std::ostringstream detail;
    detail << "N = " << raw.num_nodes() << ", M = " << raw.num_edges() << ", HHD "
           << hhd_mean << " (target 151.97 +/- 10%), G-CIIM " << gciim_mean
           << " (target 152.44 +/- 10%)";
    report(8, "Restaurant-rev spot check", hhd_ok && gciim_ok, detail.str());
}

// ---------------------------------------------------------------------------
// 9. End-to-end determinism of the experiment subcommand: byte-identical CSV
//    across reruns and across thread counts 1 and 8.
// ---------------------------------------------------------------------------
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_9(const std::string& cli) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hyperim_acceptance";
    fs::create_directories(dir);
    const std::string config_path = (dir / "determinism.json").string();
    {
        std::ofstream cfg(config_path);
        cfg << R"({
  "source": {"kind": "generator", "type": "er", "nodes": 80, "edges": 80,
             "mean_hyperdegree": 4.0},
  "take_lcc": true,
  "propagation": {"t": 0.2, "s": 0.2},
  "k_values": [3, 5],
  "strategies": [{"name": "hhd"}, {"name": "rd"},
                 {"name": "gciim",
                  "ga": {"popnum": 16, "maxgen": 4, "elite_count": 2, "tournsize": 3}}],
  "repeats": 2,
  "mc_trials": 2000,
  "master_seed": 90210,
  "record_timing": false,
  "output": {"path": "", "format": "csv"}
})";
    }

    std::vector<std::string> outputs;
    bool ran_ok = true;
    const std::vector<std::pair<std::string, unsigned>> runs = {
        {"run1_t1", 1}, {"run2_t1", 1}, {"run3_t8", 8}};
    if (!cli.empty()) {
        for (const auto& [name, threads] : runs) {
            const std::string out_path = (dir / (name + ".csv")).string();
            const std::string cmd = cli + " experiment --config " + config_path +
                                    " --threads " + std::to_string(threads) + " --out " +
                                    out_path + " 2>/dev/null";
            if (std::system(cmd.c_str()) != 0) {
                ran_ok = false;
                break;
            }
            outputs.push_back(read_file(out_path));
        }
    } else {
        // In-process fallback when no CLI path was provided.
        ExperimentSpec spec = load_experiment_file(config_path);
        for (const auto& [name, threads] : runs) {
            spec.threads = threads;
            const ExperimentOutcome outcome = run_experiment(spec);
            std::ostringstream csv;
            emit_csv(csv, outcome.records);
            outputs.push_back(csv.str());
        }
    }

    const bool pass = ran_ok && outputs.size() == 3 && !outputs[0].empty() &&
                      outputs[0] == outputs[1] && outputs[0] == outputs[2];
    std::ostringstream detail;
    detail << (cli.empty() ? "in-process" : "via CLI") << ", " << outputs.size()
           << " runs compared";
    report(9, "experiment CSV is byte-identical across reruns and thread counts", pass,
           detail.str());
}

// ---------------------------------------------------------------------------
// 10. Rank-sum test against the frozen reference oracle.
// ---------------------------------------------------------------------------
void criterion_10(const std::string& data_dir) {
    std::ifstream in(data_dir + "/wilcoxon_oracle.json");
    if (!in.good()) {
        report(10, "rank-sum oracle file present", false, "missing wilcoxon_oracle.json");
        return;
    }
    const nlohmann::json cases = nlohmann::json::parse(in);
    std::size_t ok = 0;
    double worst = 0.0;
    for (const auto& c : cases) {
        const auto a = c.at("a").get<std::vector<double>>();
        const auto b = c.at("b").get<std::vector<double>>();
        const double expected = c.at("p").get<double>();
        const double got = wilcoxon_rank_sum(a, b).p_value;
        worst = std::max(worst, std::abs(got - expected));
        if (std::abs(got - expected) <= 1e-6) {
            ++ok;
        }
    }
    std::ostringstream detail;
    detail << ok << "/" << cases.size() << " pairs, worst |delta p| = " << worst;
    report(10, "wilcoxon_rank_sum matches the reference oracle", ok == cases.size(),
           detail.str());
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") {
            cli = argv[i + 1];
        }
    }
#ifdef HYPERIM_REPO_DIR
    const std::string repo_dir = HYPERIM_REPO_DIR;
#else
    const std::string repo_dir = ".";
#endif
#ifdef HYPERIM_TEST_DATA_DIR
    const std::string data_dir = HYPERIM_TEST_DATA_DIR;
#else
    const std::string data_dir = "tests/data";
#endif

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    const AblationData ablation = run_ablation();
    criterion_5_6(ablation);
    criterion_7(ablation);
    criterion_8(repo_dir);
    criterion_9(cli);
    criterion_10(data_dir);

    if (g_failures > 0) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
