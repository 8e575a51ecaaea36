#include "hyperim/experiment.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hyperim/cascade.hpp"
#include "hyperim/errors.hpp"
#include "hyperim/metrics.hpp"

namespace hyperim {

namespace {

using nlohmann::json;

enum Stream : std::uint64_t { kGenerate = 0x67656E, kCell = 0x63656C, kMc = 0x6D63 };

bool is_deterministic(Strategy s) {
    switch (s) {
    case Strategy::HHD:
    case Strategy::HCI1:
    case Strategy::HCI2:
    case Strategy::NP:
    case Strategy::PR:
        return true;
    default:
        return false;
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json ga_to_json(const GAConfig& cfg) {
    json j;
    j["popnum"] = cfg.popnum;
    j["cxpb"] = cfg.cxpb;
    j["mutpb"] = cfg.mutpb;
    j["maxgen"] = cfg.maxgen;
    j["tournsize"] = cfg.tournsize;
    j["elite_count"] = cfg.elite_count;
    if (cfg.gene_mut_rate) {
        j["gene_mut_rate"] = *cfg.gene_mut_rate;
    }
    if (cfg.cand_sample) {
        j["cand_sample"] = *cfg.cand_sample;
    }
    j["init_mode"] = cfg.init_mode == InitMode::HCI ? "hci" : "random";
    j["mutation_mode"] = cfg.mutation_mode == MutationMode::CM ? "cm" : "random";
    j["init_split"] =
        cfg.init_split == InitSplit::CoinFlip ? "coin_flip" : "exact_halves";
    return j;
}

GAConfig ga_from_json(const json& j) {
    GAConfig cfg;
    cfg.popnum = j.value("popnum", cfg.popnum);
    cfg.cxpb = j.value("cxpb", cfg.cxpb);
    cfg.mutpb = j.value("mutpb", cfg.mutpb);
    cfg.maxgen = j.value("maxgen", cfg.maxgen);
    cfg.tournsize = j.value("tournsize", cfg.tournsize);
    cfg.elite_count = j.value("elite_count", cfg.elite_count);
    if (j.contains("gene_mut_rate")) {
        cfg.gene_mut_rate = j.at("gene_mut_rate").get<double>();
    }
    if (j.contains("cand_sample")) {
        cfg.cand_sample = j.at("cand_sample").get<std::size_t>();
    }
    if (j.contains("init_mode")) {
        const auto mode = j.at("init_mode").get<std::string>();
        if (mode != "hci" && mode != "random") {
            throw ConfigError("init_mode must be hci|random");
        }
        cfg.init_mode = mode == "hci" ? InitMode::HCI : InitMode::Random;
    }
    if (j.contains("mutation_mode")) {
        const auto mode = j.at("mutation_mode").get<std::string>();
        if (mode != "cm" && mode != "random") {
            throw ConfigError("mutation_mode must be cm|random");
        }
        cfg.mutation_mode = mode == "cm" ? MutationMode::CM : MutationMode::Random;
    }
    if (j.contains("init_split")) {
        const auto split = j.at("init_split").get<std::string>();
        if (split != "coin_flip" && split != "exact_halves") {
            throw ConfigError("init_split must be coin_flip|exact_halves");
        }
        cfg.init_split =
            split == "coin_flip" ? InitSplit::CoinFlip : InitSplit::ExactHalves;
    }
    return cfg;
}

json spec_to_json(const ExperimentSpec& spec) {
    json j;
    json src;
    if (spec.source.kind == SourceSpec::Kind::File) {
        src["kind"] = "file";
        src["path"] = spec.source.path;
        src["format"] = spec.source.format == FileFormat::Lines ? "lines" : "bipartite";
        src["labels"] =
            spec.source.labels == LabelPolicy::Integer ? "int" : "string";
    } else {
        const GeneratorSpec& g = spec.source.generator;
        src["kind"] = "generator";
        src["type"] = to_string(g.kind);
        src["nodes"] = g.num_nodes;
        src["edges"] = g.num_edges;
        src["lambda"] = g.lambda;
        src["m"] = g.uniform_cardinality;
        if (g.mean_hyperdegree) {
            src["mean_hyperdegree"] = *g.mean_hyperdegree;
        }
        if (g.mean_cardinality) {
            src["mean_cardinality"] = *g.mean_cardinality;
        }
    }
    j["source"] = src;
    j["take_lcc"] = spec.take_lcc;
    j["propagation"] = {{"t", spec.params.t}, {"s", spec.params.s}};
    j["k_values"] = spec.k_values;
    json strategies = json::array();
    for (const SelectorSpec& s : spec.strategies) {
        json js;
        js["name"] = to_string(s.strategy);
        if (s.strategy == Strategy::PR) {
            js["damping"] = s.damping;
        }
        if (s.strategy == Strategy::GCIIM || s.strategy == Strategy::GCI ||
            s.strategy == Strategy::GA) {
            js["ga"] = ga_to_json(s.ga);
        }
        strategies.push_back(js);
    }
    j["strategies"] = strategies;
    j["repeats"] = spec.repeats;
    j["mc_trials"] = spec.mc_trials;
    j["master_seed"] = spec.master_seed;
    j["record_timing"] = spec.record_timing;
    return j;
}

} // namespace

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    if (name == "json") {
        return OutputFormat::Json;
    }
    throw ConfigError("unknown output format '" + name + "' (expected csv|json)");
}

void ExperimentSpec::validate() const {
    params.validate();
    if (repeats < 1) {
        throw ConfigError("repeats must be >= 1");
    }
    if (mc_trials < 1) {
        throw ConfigError("mc_trials must be >= 1");
    }
    if (k_values.empty()) {
        throw ConfigError("k_values must be non-empty");
    }
    if (strategies.empty()) {
        throw ConfigError("strategies must be non-empty");
    }
    if (source.kind == SourceSpec::Kind::Generator) {
        source.generator.validate();
    }
    for (const SelectorSpec& s : strategies) {
        if (s.strategy == Strategy::GCIIM || s.strategy == Strategy::GCI ||
            s.strategy == Strategy::GA) {
            s.ga.validate();
        }
    }
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Rng master(spec.master_seed);

    Hypergraph h;
    if (spec.source.kind == SourceSpec::Kind::File) {
        h = load_hyperedge_file(spec.source.path, spec.source.format, spec.source.labels);
    } else {
        Rng gen_rng = master.fork(kGenerate);
        h = generate(spec.source.generator, gen_rng);
    }
    if (spec.take_lcc) {
        h = largest_connected_component(h).graph;
    }

    const std::string fingerprint = experiment_fingerprint(spec);
    FitnessEvaluator fitness_of(h, spec.params);

    ExperimentOutcome outcome;
    for (std::size_t si = 0; si < spec.strategies.size(); ++si) {
        SelectorSpec sel = spec.strategies[si];
        for (std::size_t ki = 0; ki < spec.k_values.size(); ++ki) {
            const std::size_t k = spec.k_values[ki];
            if (k > h.num_nodes()) {
                outcome.errors.push_back("strategy " + to_string(sel.strategy) + ": k=" +
                                         std::to_string(k) +
                                         " infeasible (component has " +
                                         std::to_string(h.num_nodes()) + " nodes)");
                continue;
            }
            sel.k = k;
            const std::size_t cell_base = si * spec.k_values.size() + ki;

            std::vector<NodeId> static_seeds;
            if (is_deterministic(sel.strategy)) {
                static_seeds = select_seeds(h, spec.params, sel, Rng(0));
            }

            for (std::size_t r = 0; r < spec.repeats; ++r) {
                const auto started = std::chrono::steady_clock::now();
                const Rng cell = master.fork(kCell, cell_base, r);
                const std::vector<NodeId> seeds =
                    is_deterministic(sel.strategy)
                        ? static_seeds
                        : select_seeds(h, spec.params, sel, cell);
                const InfluenceEstimate est =
                    estimate_influence(h, spec.params, seeds, spec.mc_trials,
                                       cell.fork(kMc), spec.threads);

                RunRecord rec;
                rec.strategy = sel.strategy;
                rec.k = k;
                rec.repeat = r;
                rec.seeds = seeds;
                for (NodeId v : seeds) {
                    rec.seed_labels.push_back(h.label_of(v));
                }
                rec.mean_nodes = est.mean_nodes;
                rec.std_nodes = est.std_nodes;
                rec.mean_edges = est.mean_edges;
                rec.std_edges = est.std_edges;
                rec.fitness = fitness_of(seeds);
                rec.master_seed = spec.master_seed;
                rec.fingerprint = fingerprint;
                if (spec.record_timing) {
                    rec.seconds =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                      started)
                            .count();
                }
                outcome.records.push_back(std::move(rec));
            }
        }
    }
    return outcome;
}

void emit_csv(std::ostream& out, std::span<const RunRecord> records) {
    out << "strategy,k,repeat,mean_nodes,std_nodes,mean_edges,std_edges,fitness,"
           "seconds,seed_list\n";
    for (const RunRecord& rec : records) {
        out << to_string(rec.strategy) << ',' << rec.k << ',' << rec.repeat << ','
            << format_double(rec.mean_nodes) << ',' << format_double(rec.std_nodes) << ','
            << format_double(rec.mean_edges) << ',' << format_double(rec.std_edges) << ','
            << format_double(rec.fitness) << ',' << format_double(rec.seconds) << ',';
        for (std::size_t i = 0; i < rec.seed_labels.size(); ++i) {
            if (i > 0) {
                out << ' ';
            }
            out << rec.seed_labels[i];
        }
        out << '\n';
    }
}

void emit_json(std::ostream& out, std::span<const RunRecord> records) {
    json arr = json::array();
    for (const RunRecord& rec : records) {
        json j;
        j["strategy"] = to_string(rec.strategy);
        j["k"] = rec.k;
        j["repeat"] = rec.repeat;
        j["seeds"] = rec.seeds;
        j["seed_labels"] = rec.seed_labels;
        j["mean_nodes"] = rec.mean_nodes;
        j["std_nodes"] = rec.std_nodes;
        j["mean_edges"] = rec.mean_edges;
        j["std_edges"] = rec.std_edges;
        j["fitness"] = rec.fitness;
        j["seconds"] = rec.seconds;
        j["master_seed"] = rec.master_seed;
        j["fingerprint"] = rec.fingerprint;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

void emit_results(std::span<const RunRecord> records, OutputFormat format,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    if (format == OutputFormat::Csv) {
        emit_csv(out, records);
    } else {
        emit_json(out, records);
    }
    if (!out.flush()) {
        throw IoError("write failed for '" + path + "'");
    }
}

std::vector<RunRecord> parse_records_json(std::istream& in) {
    json arr = json::parse(in);
    std::vector<RunRecord> records;
    for (const json& j : arr) {
        RunRecord rec;
        rec.strategy = parse_strategy(j.at("strategy").get<std::string>());
        rec.k = j.at("k").get<std::size_t>();
        rec.repeat = j.at("repeat").get<std::size_t>();
        rec.seeds = j.at("seeds").get<std::vector<NodeId>>();
        rec.seed_labels = j.at("seed_labels").get<std::vector<std::string>>();
        rec.mean_nodes = j.at("mean_nodes").get<double>();
        rec.std_nodes = j.at("std_nodes").get<double>();
        rec.mean_edges = j.at("mean_edges").get<double>();
        rec.std_edges = j.at("std_edges").get<double>();
        rec.fitness = j.at("fitness").get<double>();
        rec.seconds = j.at("seconds").get<double>();
        rec.master_seed = j.at("master_seed").get<std::uint64_t>();
        rec.fingerprint = j.at("fingerprint").get<std::string>();
        records.push_back(std::move(rec));
    }
    return records;
}

std::string experiment_fingerprint(const ExperimentSpec& spec) {
    const std::string canonical = spec_to_json(spec).dump();
    std::uint64_t hash = 0xCBF29CE484222325ULL; // FNV-1a
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return buf;
}

ExperimentSpec parse_experiment_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    ExperimentSpec spec;
    try {
        const json& src = j.at("source");
        const auto kind = src.at("kind").get<std::string>();
        if (kind == "file") {
            spec.source.kind = SourceSpec::Kind::File;
            spec.source.path = src.at("path").get<std::string>();
            spec.source.format = parse_file_format(src.value("format", "lines"));
            spec.source.labels = parse_label_policy(src.value("labels", "int"));
        } else if (kind == "generator") {
            spec.source.kind = SourceSpec::Kind::Generator;
            GeneratorSpec& g = spec.source.generator;
            g.kind = parse_generator_kind(src.at("type").get<std::string>());
            g.num_nodes = src.at("nodes").get<std::size_t>();
            g.num_edges = src.at("edges").get<std::size_t>();
            g.lambda = src.value("lambda", g.lambda);
            g.uniform_cardinality = src.value("m", g.uniform_cardinality);
            if (src.contains("mean_hyperdegree")) {
                g.mean_hyperdegree = src.at("mean_hyperdegree").get<double>();
            }
            if (src.contains("mean_cardinality")) {
                g.mean_cardinality = src.at("mean_cardinality").get<double>();
            }
        } else {
            throw ConfigError("source.kind must be file|generator");
        }

        spec.take_lcc = j.value("take_lcc", true);
        const json& prop = j.at("propagation");
        spec.params.t = prop.at("t").get<double>();
        spec.params.s = prop.at("s").get<double>();
        spec.k_values = j.at("k_values").get<std::vector<std::size_t>>();
        for (const json& js : j.at("strategies")) {
            SelectorSpec sel;
            sel.strategy = parse_strategy(js.at("name").get<std::string>());
            sel.damping = js.value("damping", sel.damping);
            if (js.contains("ga")) {
                sel.ga = ga_from_json(js.at("ga"));
            }
            spec.strategies.push_back(std::move(sel));
        }
        spec.repeats = j.value("repeats", spec.repeats);
        spec.mc_trials = j.value("mc_trials", spec.mc_trials);
        spec.master_seed = j.value("master_seed", spec.master_seed);
        spec.threads = j.value("threads", spec.threads);
        spec.record_timing = j.value("record_timing", spec.record_timing);
        if (j.contains("output")) {
            spec.output.path = j.at("output").value("path", "");
            spec.output.format =
                parse_output_format(j.at("output").value("format", "csv"));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    spec.validate();
    return spec;
}

ExperimentSpec load_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_json(buffer.str());
}

} // namespace hyperim
