#include "hyperim/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperim/errors.hpp"

namespace hyperim {

namespace {

constexpr int kStubRetryCap = 100;

std::vector<std::size_t> sample_power_law_degrees(std::size_t n, double lambda, Rng& rng) {
    const auto k_max = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    if (k_max < 2) {
        throw GenerationError("SF generator needs N >= 4 so the degree support [2, sqrt(N)] is non-empty");
    }
    // Inverse-CDF sampling over the integer support [2, k_max].
    std::vector<double> cumulative;
    cumulative.reserve(k_max - 1);
    double total = 0.0;
    for (std::size_t k = 2; k <= k_max; ++k) {
        total += std::pow(static_cast<double>(k), lambda);
        cumulative.push_back(total);
    }
    std::vector<std::size_t> degrees(n);
    for (auto& d : degrees) {
        const double u = rng.uniform() * total;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        d = 2 + static_cast<std::size_t>(it - cumulative.begin());
        if (d > k_max) {
            d = k_max;
        }
    }
    return degrees;
}

// Knuth's method underflows past exp(-746); keep well clear of it.
double checked_mean(double mean) {
    if (!(mean > 0.0) || mean > 600.0) {
        throw GenerationError("Poisson mean out of supported range (0, 600]: " +
                              std::to_string(mean));
    }
    return mean;
}

std::size_t positive_poisson(double mean, Rng& rng) {
    std::size_t v;
    do {
        v = rng.poisson(mean);
    } while (v == 0);
    return v;
}

std::size_t total_of(const std::vector<std::size_t>& xs) {
    return std::accumulate(xs.begin(), xs.end(), std::size_t{0});
}

// Equalizes sum(cardinalities) to sum(degrees) by incrementing/decrementing
// randomly chosen cardinalities, bounded >= 1. If the degree total is below
// the minimum feasible cardinality total (one node per edge), the degree
// side is raised instead.
void equalize_on_cardinalities(std::vector<std::size_t>& degrees,
                               std::vector<std::size_t>& cardinalities, Rng& rng) {
    std::size_t total_k = total_of(degrees);
    std::size_t total_m = total_of(cardinalities);
    while (total_k < cardinalities.size()) {
        ++degrees[rng.uniform_below(degrees.size())];
        ++total_k;
    }
    while (total_m < total_k) {
        ++cardinalities[rng.uniform_below(cardinalities.size())];
        ++total_m;
    }
    while (total_m > total_k) {
        auto& m = cardinalities[rng.uniform_below(cardinalities.size())];
        if (m > 1) {
            --m;
            --total_m;
        }
    }
}

// KUF keeps cardinalities pinned at the uniform value, so the degree side
// absorbs the stub-count mismatch (bounded >= 0).
void equalize_on_degrees(std::vector<std::size_t>& degrees, std::size_t target, Rng& rng) {
    std::size_t total_k = total_of(degrees);
    while (total_k < target) {
        ++degrees[rng.uniform_below(degrees.size())];
        ++total_k;
    }
    while (total_k > target) {
        auto& k = degrees[rng.uniform_below(degrees.size())];
        if (k > 0) {
            --k;
            --total_k;
        }
    }
}

Hypergraph match_stubs(std::size_t num_nodes, const std::vector<std::size_t>& degrees,
                       const std::vector<std::size_t>& cardinalities, Rng& rng) {
    std::vector<NodeId> node_stubs;
    node_stubs.reserve(total_of(degrees));
    for (NodeId v = 0; v < num_nodes; ++v) {
        node_stubs.insert(node_stubs.end(), degrees[v], v);
    }
    std::vector<EdgeId> edge_stubs;
    edge_stubs.reserve(node_stubs.size());
    for (EdgeId e = 0; e < cardinalities.size(); ++e) {
        edge_stubs.insert(edge_stubs.end(), cardinalities[e], e);
    }
    rng.shuffle(node_stubs);

    std::vector<std::vector<NodeId>> members(cardinalities.size());
    const std::size_t len = node_stubs.size();
    for (std::size_t p = 0; p < len; ++p) {
        const EdgeId e = edge_stubs[p];
        auto& edge = members[e];
        const auto conflicts = [&](NodeId v) {
            return std::find(edge.begin(), edge.end(), v) != edge.end();
        };
        int tries = 0;
        while (conflicts(node_stubs[p]) && tries < kStubRetryCap && p + 1 < len) {
            const std::size_t q = p + 1 + rng.uniform_below(len - p - 1);
            std::swap(node_stubs[p], node_stubs[q]);
            ++tries;
        }
        if (!conflicts(node_stubs[p])) {
            edge.push_back(node_stubs[p]);
        }
        // else: stub pair discarded.
    }

    // An edge's first stub can never conflict, so every edge is non-empty.
    return Hypergraph::from_edges(num_nodes, members);
}

} // namespace

GeneratorKind parse_generator_kind(const std::string& name) {
    if (name == "er") {
        return GeneratorKind::ER;
    }
    if (name == "sf") {
        return GeneratorKind::SF;
    }
    if (name == "kuf") {
        return GeneratorKind::KUF;
    }
    throw ConfigError("unknown generator kind '" + name + "' (expected er|sf|kuf)");
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::ER:
        return "er";
    case GeneratorKind::SF:
        return "sf";
    case GeneratorKind::KUF:
        return "kuf";
    }
    return "?";
}

void GeneratorSpec::validate() const {
    if (num_nodes < 1 || num_edges < 1) {
        throw GenerationError("generator spec requires N >= 1 and M >= 1");
    }
    if (kind == GeneratorKind::SF && !(lambda < 0.0)) {
        throw GenerationError("SF generator requires lambda < 0");
    }
    if (kind == GeneratorKind::KUF) {
        if (uniform_cardinality < 1) {
            throw GenerationError("KUF generator requires m >= 1");
        }
        if (uniform_cardinality > num_nodes) {
            throw GenerationError("KUF generator infeasible: m > N");
        }
    }
    if (mean_hyperdegree && *mean_hyperdegree <= 0.0) {
        throw GenerationError("mean hyperdegree must be positive");
    }
    if (mean_cardinality && *mean_cardinality <= 0.0) {
        throw GenerationError("mean cardinality must be positive");
    }
}

Hypergraph generate(const GeneratorSpec& spec, Rng& rng) {
    spec.validate();
    const std::size_t n = spec.num_nodes;
    const std::size_t m = spec.num_edges;
    const double n_over_m = static_cast<double>(n) / static_cast<double>(m);

    std::vector<std::size_t> degrees;
    std::vector<std::size_t> cardinalities;

    switch (spec.kind) {
    case GeneratorKind::ER: {
        const double mean_k = checked_mean(spec.mean_hyperdegree.value_or(5.0));
        const double mean_m =
            checked_mean(spec.mean_cardinality.value_or(mean_k * n_over_m));
        degrees.resize(n);
        for (auto& d : degrees) {
            d = rng.poisson(mean_k);
        }
        cardinalities.resize(m);
        for (auto& c : cardinalities) {
            c = positive_poisson(mean_m, rng);
        }
        equalize_on_cardinalities(degrees, cardinalities, rng);
        break;
    }
    case GeneratorKind::SF: {
        degrees = sample_power_law_degrees(n, spec.lambda, rng);
        const double mean_m = checked_mean(
            static_cast<double>(total_of(degrees)) / static_cast<double>(m));
        cardinalities.resize(m);
        for (auto& c : cardinalities) {
            c = positive_poisson(mean_m, rng);
        }
        equalize_on_cardinalities(degrees, cardinalities, rng);
        break;
    }
    case GeneratorKind::KUF: {
        const std::size_t card = spec.uniform_cardinality;
        const double mean_k = checked_mean(
            spec.mean_hyperdegree.value_or(static_cast<double>(card) / n_over_m));
        degrees.resize(n);
        for (auto& d : degrees) {
            d = rng.poisson(mean_k);
        }
        cardinalities.assign(m, card);
        equalize_on_degrees(degrees, m * card, rng);
        break;
    }
    }

    return match_stubs(n, degrees, cardinalities, rng);
}

} // namespace hyperim
