#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hyperim/cascade.hpp"
#include "hyperim/errors.hpp"
#include "hyperim/experiment.hpp"
#include "hyperim/generator.hpp"
#include "hyperim/io.hpp"
#include "hyperim/metrics.hpp"
#include "hyperim/selectors.hpp"

namespace {

using namespace hyperim;

struct InputOptions {
    std::string path;
    std::string format = "lines";
    std::string labels = "int";
    bool take_lcc = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("-i,--input", in.path, "hyperedge list file")->required();
    cmd->add_option("--fmt", in.format, "input format: lines|bipartite");
    cmd->add_option("--labels", in.labels, "label policy: int|string");
    cmd->add_flag("--lcc", in.take_lcc, "restrict to the largest connected component");
}

Hypergraph load_input(const InputOptions& in) {
    Hypergraph h = load_hyperedge_file(in.path, parse_file_format(in.format),
                                       parse_label_policy(in.labels));
    if (in.take_lcc) {
        h = largest_connected_component(h).graph;
    }
    return h;
}

std::vector<NodeId> parse_seed_labels(const Hypergraph& h, const std::string& csv) {
    std::vector<NodeId> seeds;
    std::string token;
    std::istringstream stream(csv);
    while (std::getline(stream, token, ',')) {
        if (token.empty()) {
            continue;
        }
        const NodeId v = h.node_by_label(token);
        if (v == kInvalidNode) {
            throw std::invalid_argument("unknown node label '" + token + "'");
        }
        seeds.push_back(v);
    }
    if (seeds.empty()) {
        throw std::invalid_argument("no seeds given");
    }
    return seeds;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) {
        return std::cout;
    }
    file.open(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    return file;
}

struct GAOptions {
    std::size_t popnum = 512;
    double cxpb = 0.5;
    double mutpb = 0.5;
    std::size_t maxgen = 100;
    std::size_t tournsize = 5;
    std::size_t elite = 2;
    std::optional<double> gene_mut_rate;
    std::optional<std::size_t> cand_sample;
    bool exact_halves = false;
};

void add_ga_options(CLI::App* cmd, GAOptions& ga) {
    cmd->add_option("--popnum", ga.popnum, "population size");
    cmd->add_option("--cxpb", ga.cxpb, "crossover probability");
    cmd->add_option("--mutpb", ga.mutpb, "mutation probability per individual");
    cmd->add_option("--maxgen", ga.maxgen, "generation count");
    cmd->add_option("--tournsize", ga.tournsize, "tournament size");
    cmd->add_option("--elite", ga.elite, "elite individuals kept per generation");
    cmd->add_option("--gene-mut-rate", [&ga](const std::vector<std::string>& vals) {
        ga.gene_mut_rate = std::stod(vals.front());
        return true;
    }, "per-gene mutation rate (default 1/k)");
    cmd->add_option("--cand-sample", [&ga](const std::vector<std::string>& vals) {
        ga.cand_sample = std::stoul(vals.front());
        return true;
    }, "mutation candidate sample size (default k)");
    cmd->add_flag("--exact-halves", ga.exact_halves,
                  "split HCI/random initialization into exact halves");
}

GAConfig make_ga_config(const GAOptions& ga) {
    GAConfig cfg;
    cfg.popnum = ga.popnum;
    cfg.cxpb = ga.cxpb;
    cfg.mutpb = ga.mutpb;
    cfg.maxgen = ga.maxgen;
    cfg.tournsize = ga.tournsize;
    cfg.elite_count = ga.elite;
    cfg.gene_mut_rate = ga.gene_mut_rate;
    cfg.cand_sample = ga.cand_sample;
    cfg.init_split = ga.exact_halves ? InitSplit::ExactHalves : InitSplit::CoinFlip;
    return cfg;
}

int cmd_generate(const GeneratorSpec& spec, std::uint64_t seed, const std::string& out) {
    Rng rng(seed);
    const Hypergraph h = generate(spec, rng);
    if (out.empty()) {
        write_lines(std::cout, h);
    } else {
        write_lines_file(out, h);
        std::cerr << "wrote " << h.num_nodes() << " nodes, " << h.num_edges()
                  << " hyperedges to " << out << "\n";
    }
    return 0;
}

int cmd_stats(const InputOptions& in, const std::string& out_path) {
    const Hypergraph h = load_input(in);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);

    std::map<std::size_t, std::size_t> degree_hist;
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        ++degree_hist[h.hyperdegree(v)];
    }
    std::map<std::size_t, std::size_t> card_hist;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        ++card_hist[h.cardinality(e)];
    }

    out << "nodes," << h.num_nodes() << "\n";
    out << "hyperedges," << h.num_edges() << "\n";
    out << "incidences," << h.total_incidence() << "\n";
    if (h.num_nodes() > 0) {
        out << "mean_hyperdegree,"
            << static_cast<double>(h.total_incidence()) / static_cast<double>(h.num_nodes())
            << "\n";
    }
    if (h.num_edges() > 0) {
        out << "mean_cardinality,"
            << static_cast<double>(h.total_incidence()) / static_cast<double>(h.num_edges())
            << "\n";
    }
    out << "section,value,count\n";
    for (const auto& [k, c] : degree_hist) {
        out << "hyperdegree," << k << ',' << c << "\n";
    }
    for (const auto& [m, c] : card_hist) {
        out << "cardinality," << m << ',' << c << "\n";
    }
    return 0;
}

int cmd_rank(const InputOptions& in, const std::string& strategy_name, std::size_t k,
             PropagationParams params, double damping, const GAOptions& ga,
             std::uint64_t seed, const std::string& out_path) {
    const Hypergraph h = load_input(in);
    SelectorSpec spec;
    spec.strategy = parse_strategy(strategy_name);
    spec.k = k;
    spec.damping = damping;
    spec.ga = make_ga_config(ga);

    const std::vector<NodeId> seeds = select_seeds(h, params, spec, Rng(seed));

    // Score column where the strategy defines one.
    std::vector<double> scores;
    switch (spec.strategy) {
    case Strategy::HHD: {
        scores.resize(h.num_nodes());
        for (NodeId v = 0; v < h.num_nodes(); ++v) {
            scores[v] = static_cast<double>(h.hyperdegree(v));
        }
        break;
    }
    case Strategy::HCI1:
        scores = all_hci1(h, params);
        break;
    case Strategy::HCI2:
        scores = all_hci2(h, params);
        break;
    case Strategy::PR: {
        scores.resize(h.num_nodes());
        for (const NodeScore& ns : pagerank_scores(h, damping)) {
            scores[ns.node] = ns.value;
        }
        break;
    }
    default:
        break;
    }

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << "rank,node,score\n";
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        out << i + 1 << ',' << h.label_of(seeds[i]) << ',';
        if (!scores.empty()) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12g", scores[seeds[i]]);
            out << buf;
        }
        out << "\n";
    }
    return 0;
}

int cmd_simulate(const InputOptions& in, const std::string& seed_labels,
                 PropagationParams params, std::size_t trials, std::uint64_t seed,
                 unsigned threads) {
    const Hypergraph h = load_input(in);
    const std::vector<NodeId> seeds = parse_seed_labels(h, seed_labels);
    const InfluenceEstimate est =
        estimate_influence(h, params, seeds, trials, Rng(seed), threads);
    std::printf("trials,%zu\n", est.trials);
    std::printf("mean_nodes,%.10g\n", est.mean_nodes);
    std::printf("std_nodes,%.10g\n", est.std_nodes);
    std::printf("mean_edges,%.10g\n", est.mean_edges);
    std::printf("std_edges,%.10g\n", est.std_edges);
    return 0;
}

int cmd_optimize(const InputOptions& in, std::size_t k, const std::string& variant_name,
                 PropagationParams params, const GAOptions& ga, std::uint64_t seed,
                 const std::string& out_path) {
    const Hypergraph h = load_input(in);
    GAConfig cfg = make_ga_config(ga);
    cfg.apply_variant(parse_ga_variant(variant_name));
    cfg.rng_seed = seed;

    const RunTrace trace = run_gciim(h, params, k, cfg);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << "generation,best_fitness,mean_fitness,evaluations,best_seeds\n";
    for (std::size_t g = 0; g < trace.generations.size(); ++g) {
        const GenerationStats& stats = trace.generations[g];
        char best[64];
        char mean[64];
        std::snprintf(best, sizeof(best), "%.12g", stats.best_fitness);
        std::snprintf(mean, sizeof(mean), "%.12g", stats.mean_fitness);
        out << g << ',' << best << ',' << mean << ',' << stats.evaluations << ',';
        for (std::size_t i = 0; i < stats.best.size(); ++i) {
            if (i > 0) {
                out << ' ';
            }
            out << h.label_of(stats.best[i]);
        }
        out << "\n";
    }
    std::cerr << "best fitness " << trace.best_fitness << " after "
              << trace.total_evaluations << " evaluations\n";
    return 0;
}

int cmd_experiment(const std::string& config_path, std::optional<std::uint64_t> seed,
                   std::optional<unsigned> threads, std::string out_path,
                   std::string format_name) {
    ExperimentSpec spec = load_experiment_file(config_path);
    if (seed) {
        spec.master_seed = *seed;
    }
    if (threads) {
        spec.threads = *threads;
    }
    if (!out_path.empty()) {
        spec.output.path = out_path;
    }
    if (!format_name.empty()) {
        spec.output.format = parse_output_format(format_name);
    }
    if (spec.output.path.empty()) {
        throw ConfigError("no output path (set output.path in the config or pass --out)");
    }

    const ExperimentOutcome outcome = run_experiment(spec);
    for (const std::string& err : outcome.errors) {
        std::cerr << "warning: " << err << "\n";
    }
    emit_results(outcome.records, spec.output.format, spec.output.path);
    std::cerr << "wrote " << outcome.records.size() << " records to " << spec.output.path
              << "\n";
    return 0;
}

int cmd_test_oracle(const InputOptions& in, const std::string& seed_labels,
                    PropagationParams params, std::size_t max_incidence) {
    const Hypergraph h = load_input(in);
    const std::vector<NodeId> seeds = parse_seed_labels(h, seed_labels);
    const ExactInfluence exact =
        exact_influence_bruteforce(h, params, seeds, max_incidence);
    std::printf("exact_mean_nodes,%.15g\n", exact.mean_nodes);
    std::printf("exact_mean_edges,%.15g\n", exact.mean_edges);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypergraph influence maximization toolkit"};
    app.require_subcommand(1);

    // generate
    auto* generate_cmd = app.add_subcommand("generate", "write a synthetic hypergraph");
    std::string gen_type = "er";
    GeneratorSpec gen_spec;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    double gen_mean_k = -1.0;
    double gen_mean_m = -1.0;
    generate_cmd->add_option("--type", gen_type, "er|sf|kuf")->required();
    generate_cmd->add_option("--nodes", gen_spec.num_nodes, "node count")->required();
    generate_cmd->add_option("--edges", gen_spec.num_edges, "hyperedge count")->required();
    generate_cmd->add_option("--lambda", gen_spec.lambda, "SF power-law exponent");
    generate_cmd->add_option("--m", gen_spec.uniform_cardinality, "KUF cardinality");
    generate_cmd->add_option("--mean-k", gen_mean_k, "mean hyperdegree (er/kuf)");
    generate_cmd->add_option("--mean-m", gen_mean_m, "mean cardinality (er)");
    generate_cmd->add_option("--seed", gen_seed, "generator seed");
    generate_cmd->add_option("-o,--out", gen_out, "output file (default stdout)");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "degree/cardinality distributions");
    InputOptions stats_in;
    std::string stats_out;
    add_input_options(stats_cmd, stats_in);
    stats_cmd->add_option("-o,--out", stats_out, "output file (default stdout)");

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "select seeds by one strategy");
    InputOptions rank_in;
    std::string rank_strategy;
    std::size_t rank_k = 1;
    PropagationParams rank_params;
    double rank_damping = 0.85;
    GAOptions rank_ga;
    std::uint64_t rank_seed = 0;
    std::string rank_out;
    add_input_options(rank_cmd, rank_in);
    rank_cmd->add_option("--strategy", rank_strategy, "hhd|hci1|hci2|np|pr|rd|gciim|gci|ga")
        ->required();
    rank_cmd->add_option("-k,--k", rank_k, "seed count")->required();
    rank_cmd->add_option("--t", rank_params.t, "node->hyperedge probability");
    rank_cmd->add_option("--s", rank_params.s, "hyperedge->node probability");
    rank_cmd->add_option("--damping", rank_damping, "PageRank damping");
    add_ga_options(rank_cmd, rank_ga);
    rank_cmd->add_option("--seed", rank_seed, "rng seed");
    rank_cmd->add_option("-o,--out", rank_out, "output file (default stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo influence of a seed list");
    InputOptions sim_in;
    std::string sim_seeds;
    PropagationParams sim_params;
    std::size_t sim_trials = 10000;
    std::uint64_t sim_seed = 0;
    unsigned sim_threads = 1;
    add_input_options(sim_cmd, sim_in);
    sim_cmd->add_option("--seeds", sim_seeds, "comma-separated node labels")->required();
    sim_cmd->add_option("--t", sim_params.t, "node->hyperedge probability")->required();
    sim_cmd->add_option("--s", sim_params.s, "hyperedge->node probability")->required();
    sim_cmd->add_option("--trials", sim_trials, "Monte Carlo trials");
    sim_cmd->add_option("--seed", sim_seed, "master seed");
    sim_cmd->add_option("--threads", sim_threads, "worker threads (0 = auto)");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "run one GA variant, emit its trace");
    InputOptions opt_in;
    std::size_t opt_k = 1;
    std::string opt_variant = "gciim";
    PropagationParams opt_params;
    GAOptions opt_ga;
    std::uint64_t opt_seed = 0;
    std::string opt_out;
    add_input_options(opt_cmd, opt_in);
    opt_cmd->add_option("-k,--k", opt_k, "seed count")->required();
    opt_cmd->add_option("--variant", opt_variant, "gciim|gci|ga");
    opt_cmd->add_option("--t", opt_params.t, "node->hyperedge probability")->required();
    opt_cmd->add_option("--s", opt_params.s, "hyperedge->node probability")->required();
    add_ga_options(opt_cmd, opt_ga);
    opt_cmd->add_option("--seed", opt_seed, "GA master seed");
    opt_cmd->add_option("-o,--out", opt_out, "trace output file (default stdout)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "full sweep from a config file");
    std::string exp_config;
    std::optional<std::uint64_t> exp_seed;
    std::optional<unsigned> exp_threads;
    std::string exp_out;
    std::string exp_format;
    exp_cmd->add_option("-c,--config", exp_config, "experiment config (JSON)")->required();
    exp_cmd->add_option("--seed", [&exp_seed](const std::vector<std::string>& vals) {
        exp_seed = std::stoull(vals.front());
        return true;
    }, "override master seed");
    exp_cmd->add_option("--threads", [&exp_threads](const std::vector<std::string>& vals) {
        exp_threads = static_cast<unsigned>(std::stoul(vals.front()));
        return true;
    }, "worker threads (0 = auto)");
    exp_cmd->add_option("-o,--out", exp_out, "override output path");
    exp_cmd->add_option("--format", exp_format, "override output format: csv|json");

    // test-oracle
    auto* oracle_cmd =
        app.add_subcommand("test-oracle", "brute-force exact influence (tiny instances)");
    InputOptions oracle_in;
    std::string oracle_seeds;
    PropagationParams oracle_params;
    std::size_t oracle_cap = 13;
    add_input_options(oracle_cmd, oracle_in);
    oracle_cmd->add_option("--seeds", oracle_seeds, "comma-separated node labels")
        ->required();
    oracle_cmd->add_option("--t", oracle_params.t, "node->hyperedge probability")
        ->required();
    oracle_cmd->add_option("--s", oracle_params.s, "hyperedge->node probability")
        ->required();
    oracle_cmd->add_option("--max-incidence", oracle_cap, "enumeration cap on d");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate_cmd->parsed()) {
            gen_spec.kind = parse_generator_kind(gen_type);
            if (gen_mean_k > 0.0) {
                gen_spec.mean_hyperdegree = gen_mean_k;
            }
            if (gen_mean_m > 0.0) {
                gen_spec.mean_cardinality = gen_mean_m;
            }
            return cmd_generate(gen_spec, gen_seed, gen_out);
        }
        if (stats_cmd->parsed()) {
            return cmd_stats(stats_in, stats_out);
        }
        if (rank_cmd->parsed()) {
            return cmd_rank(rank_in, rank_strategy, rank_k, rank_params, rank_damping,
                            rank_ga, rank_seed, rank_out);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_in, sim_seeds, sim_params, sim_trials, sim_seed,
                                sim_threads);
        }
        if (opt_cmd->parsed()) {
            return cmd_optimize(opt_in, opt_k, opt_variant, opt_params, opt_ga, opt_seed,
                                opt_out);
        }
        if (exp_cmd->parsed()) {
            return cmd_experiment(exp_config, exp_seed, exp_threads, exp_out, exp_format);
        }
        if (oracle_cmd->parsed()) {
            return cmd_test_oracle(oracle_in, oracle_seeds, oracle_params, oracle_cap);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
