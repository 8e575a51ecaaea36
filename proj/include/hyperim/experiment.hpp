#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hyperim/generator.hpp"
#include "hyperim/hypergraph.hpp"
#include "hyperim/io.hpp"
#include "hyperim/selectors.hpp"

namespace hyperim {

/// Where the experiment hypergraph comes from: a dataset file or a
/// synthetic generator spec.
struct SourceSpec {
    enum class Kind { File, Generator };
    Kind kind = Kind::Generator;
    std::string path;
    FileFormat format = FileFormat::Lines;
    LabelPolicy labels = LabelPolicy::Integer;
    GeneratorSpec generator;
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(const std::string& name);

struct OutputSpec {
    std::string path;
    OutputFormat format = OutputFormat::Csv;
};

/// Declarative sweep: strategies x seed counts x repeats, each cell scored
/// by Monte Carlo simulation.
struct ExperimentSpec {
    SourceSpec source;
    bool take_lcc = true;
    PropagationParams params;
    std::vector<std::size_t> k_values;
    std::vector<SelectorSpec> strategies;
    std::size_t repeats = 30;
    std::size_t mc_trials = 10000;
    std::uint64_t master_seed = 0;
    unsigned threads = 1; // 0 = hardware concurrency
    bool record_timing = true;
    OutputSpec output;

    void validate() const;
};

struct RunRecord {
    Strategy strategy = Strategy::HHD;
    std::size_t k = 0;
    std::size_t repeat = 0;
    std::vector<NodeId> seeds;
    std::vector<std::string> seed_labels;
    double mean_nodes = 0.0;
    double std_nodes = 0.0;
    double mean_edges = 0.0;
    double std_edges = 0.0;
    double fitness = 0.0;
    double seconds = 0.0;
    std::uint64_t master_seed = 0;
    std::string fingerprint;
};

struct ExperimentOutcome {
    std::vector<RunRecord> records;
    std::vector<std::string> errors; // infeasible cells, run continues
};

/// Loads or generates the hypergraph once, optionally reduces to the LCC,
/// then evaluates every (strategy, k, repeat) cell. Deterministic strategies
/// select once per (strategy, k) and vary only the Monte Carlo substream
/// across repeats. All randomness derives from (master_seed, cell index).
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

/// CSV with the fixed header
/// strategy,k,repeat,mean_nodes,std_nodes,mean_edges,std_edges,fitness,seconds,seed_list
/// and 17-significant-digit numbers; byte-stable for identical records.
void emit_csv(std::ostream& out, std::span<const RunRecord> records);

/// JSON array of complete records; parse-back is lossless.
void emit_json(std::ostream& out, std::span<const RunRecord> records);

void emit_results(std::span<const RunRecord> records, OutputFormat format,
                  const std::string& path);

std::vector<RunRecord> parse_records_json(std::istream& in);

/// Stable hash of the canonical spec serialization; stamped on every record
/// so result sets can be checked for configuration mismatches.
std::string experiment_fingerprint(const ExperimentSpec& spec);

ExperimentSpec parse_experiment_json(const std::string& text);
ExperimentSpec load_experiment_file(const std::string& path);

} // namespace hyperim
