#pragma once

#include <optional>
#include <string>

#include "hyperim/hypergraph.hpp"
#include "hyperim/rng.hpp"

namespace hyperim {

enum class GeneratorKind { ER, SF, KUF };

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

/// Configuration-model synthetic hypergraph spec.
///  - ER:  hyperdegrees ~ Poisson(mean_hyperdegree), cardinalities
///         ~ Poisson(mean_cardinality) conditioned >= 1.
///  - SF:  hyperdegrees ~ k^lambda on [2, sqrt(N)], cardinalities
///         ~ Poisson(total_stubs / M) conditioned >= 1.
///  - KUF: uniform cardinality m, hyperdegrees ~ Poisson(mean_hyperdegree).
/// Unset means default to mean_hyperdegree = 5 and the value balancing
/// N * <k> = M * <m>.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::ER;
    std::size_t num_nodes = 0;
    std::size_t num_edges = 0;
    double lambda = -2.0;                       // SF only, must be < 0
    std::size_t uniform_cardinality = 5;        // KUF only, >= 1
    std::optional<double> mean_hyperdegree;     // ER, KUF
    std::optional<double> mean_cardinality;     // ER

    void validate() const;
};

/// Samples a hypergraph from the configuration model: draw degree and
/// cardinality sequences, equalize total stub counts, then wire node stubs
/// to hyperedge stubs by uniform random matching. A matching that would
/// duplicate an incidence within one hyperedge is re-drawn per stub up to a
/// retry cap, then the stub pair is discarded. Deterministic per rng seed.
Hypergraph generate(const GeneratorSpec& spec, Rng& rng);

} // namespace hyperim
