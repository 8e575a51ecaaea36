#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperim/hypergraph.hpp"
#include "hyperim/rng.hpp"

namespace hyperim {

/// GA chromosome: exactly k distinct node ids.
using Individual = std::vector<NodeId>;

enum class InitMode { HCI, Random };
enum class MutationMode { CM, Random };

/// Whether the HCI/random initialization branches are chosen by a fair coin
/// per individual (the default) or the population is split into exact halves.
enum class InitSplit { CoinFlip, ExactHalves };

enum class GAVariant { GCIIM, GCI, GA };

GAVariant parse_ga_variant(const std::string& name);
std::string to_string(GAVariant variant);

struct GAConfig {
    std::size_t popnum = 512;
    double cxpb = 0.5;
    double mutpb = 0.5;
    std::size_t maxgen = 100;
    std::size_t tournsize = 5;
    std::size_t elite_count = 2;
    std::optional<double> gene_mut_rate;    // default 1 / k
    std::optional<std::size_t> cand_sample; // default k
    InitMode init_mode = InitMode::HCI;
    MutationMode mutation_mode = MutationMode::CM;
    InitSplit init_split = InitSplit::CoinFlip;
    std::uint64_t rng_seed = 0;

    void validate() const;

    /// G-CIIM = (HCI, CM); G-CI = (HCI, Random); GA = (Random, Random).
    void apply_variant(GAVariant variant);

    double resolved_gene_mut_rate(std::size_t k) const;
    std::size_t resolved_cand_sample(std::size_t k) const;
};

struct GenerationStats {
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    Individual best;
    std::size_t evaluations = 0; // fitness evaluations spent on this generation
};

struct RunTrace {
    std::vector<GenerationStats> generations; // index 0 = initial population
    Individual best;                          // fittest individual ever observed
    double best_fitness = 0.0;
    std::size_t total_evaluations = 0;
};

/// Builds popnum individuals. In HCI mode each individual either takes the
/// top-k nodes by hci1 * uniform(0,1) noise or is a uniform k-subset; in
/// Random mode all individuals are uniform k-subsets.
std::vector<Individual> init_population(const Hypergraph& h, PropagationParams p,
                                        std::size_t k, const GAConfig& cfg, const Rng& rng);

/// Two-point crossover with duplicate repair: duplicates introduced by the
/// segment swap are replaced by uniform draws from nodes absent from the
/// child. Lengths below 2 pass through unchanged.
std::pair<Individual, Individual> crossover_two_point(const Individual& a,
                                                      const Individual& b,
                                                      std::size_t num_nodes, Rng& rng);

/// Multi-point mutation: each position mutates with the per-gene rate; the
/// replacement is the highest-CM node among cand_sample uniform candidates
/// (CM mode) or a uniform draw from the candidate pool (Random mode).
Individual mutate(const Individual& ind, const Hypergraph& h, PropagationParams p,
                  const GAConfig& cfg, Rng& rng);

/// Full generational loop with elitism and tournament selection; fitness is
/// the closed-form W(S) surrogate, never Monte Carlo. Deterministic per
/// cfg.rng_seed.
RunTrace run_gciim(const Hypergraph& h, PropagationParams p, std::size_t k,
                   const GAConfig& cfg);

namespace detail {

/// Segment swap of [p1, p2) without repair; exposed for tests.
std::pair<Individual, Individual> swap_segments(const Individual& a, const Individual& b,
                                                std::size_t p1, std::size_t p2);

/// Replaces later duplicate occurrences by uniform draws from absent nodes.
void repair_duplicates(Individual& child, std::size_t num_nodes, Rng& rng);

/// Argmax-CM candidate for a mutation at `pos` given an explicit candidate
/// set; ties by lower id. hci1_scores must hold hci1 for every node.
NodeId cm_choose(const Hypergraph& h, const Individual& ind, std::size_t pos,
                 std::span<const NodeId> candidates, std::span<const double> hci1_scores);

/// Top-k nodes by score * weight with (value desc, id asc) ordering.
Individual weighted_top_k(std::span<const double> scores, std::span<const double> weights,
                          std::size_t k);

/// k distinct uniform draws from [0, num_nodes).
Individual sample_k_distinct(std::size_t num_nodes, std::size_t k, Rng& rng);

} // namespace detail

} // namespace hyperim
