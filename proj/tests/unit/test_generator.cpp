#include <doctest.h>

#include <algorithm>
#include <map>

#include "hyperim/errors.hpp"
#include "hyperim/generator.hpp"

using namespace hyperim;

namespace {

GeneratorSpec kuf_spec(std::size_t n, std::size_t m, std::size_t card) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::KUF;
    spec.num_nodes = n;
    spec.num_edges = m;
    spec.uniform_cardinality = card;
    return spec;
}

} // namespace

TEST_CASE("k-uniform generator keeps cardinalities at m") {
    const GeneratorSpec spec = kuf_spec(2000, 2000, 5);
    Rng rng(7);
    const Hypergraph h = generate(spec, rng);
    CHECK(h.num_edges() == 2000);
    std::size_t exact = 0;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        CHECK(h.cardinality(e) <= 5);
        if (h.cardinality(e) == 5) {
            ++exact;
        }
    }
    // At most 1% of edges may lose a stub to duplicate-incidence discards.
    CHECK(exact >= h.num_edges() * 99 / 100);
}

TEST_CASE("scale-free degrees decay monotonically over octave bins") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::SF;
    spec.num_nodes = 2000;
    spec.num_edges = 500;
    spec.lambda = -2.0;
    Rng rng(11);
    const Hypergraph h = generate(spec, rng);

    // Bin k >= 2 into octaves [2,3], [4,7], [8,15], ...
    std::map<std::size_t, double> density;
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        const std::size_t k = h.hyperdegree(v);
        if (k < 2) {
            continue;
        }
        std::size_t bin = 0;
        for (std::size_t low = 2; low * 2 <= k; low *= 2) {
            ++bin;
        }
        density[bin] += 1.0;
    }
    for (auto& [bin, count] : density) {
        count /= static_cast<double>(std::size_t{2} << bin); // bin width
    }
    double prev = 1e18;
    for (const auto& [bin, d] : density) {
        CHECK(d <= prev);
        prev = d;
    }
}

TEST_CASE("same seed reproduces the hypergraph bit for bit") {
    const GeneratorSpec spec = kuf_spec(300, 300, 4);
    Rng a(123);
    Rng b(123);
    CHECK(generate(spec, a) == generate(spec, b));

    Rng c(124);
    CHECK_FALSE(generate(spec, c) == generate(spec, a));
}

TEST_CASE("er generator balances stub totals around the requested mean") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::ER;
    spec.num_nodes = 1000;
    spec.num_edges = 1000;
    spec.mean_hyperdegree = 5.0;
    Rng rng(99);
    const Hypergraph h = generate(spec, rng);
    const double mean_k =
        static_cast<double>(h.total_incidence()) / static_cast<double>(h.num_nodes());
    CHECK(mean_k > 4.5);
    CHECK(mean_k < 5.5);
    CHECK(h.num_edges() == 1000);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        CHECK(h.cardinality(e) >= 1);
    }
}

TEST_CASE("infeasible specs are rejected") {
    CHECK_THROWS_AS(([] {
                        Rng rng(1);
                        GeneratorSpec spec = kuf_spec(4, 10, 5); // m > N
                        return generate(spec, rng);
                    }()),
                    GenerationError);
    CHECK_THROWS_AS(([] {
                        Rng rng(1);
                        GeneratorSpec spec;
                        spec.kind = GeneratorKind::SF;
                        spec.num_nodes = 100;
                        spec.num_edges = 10;
                        spec.lambda = 1.5; // must be negative
                        return generate(spec, rng);
                    }()),
                    GenerationError);
    CHECK_THROWS_AS(([] {
                        Rng rng(1);
                        GeneratorSpec spec;
                        spec.kind = GeneratorKind::SF;
                        spec.num_nodes = 3; // sqrt(N) < 2
                        spec.num_edges = 2;
                        return generate(spec, rng);
                    }()),
                    GenerationError);
    CHECK_THROWS_AS(([] {
                        Rng rng(1);
                        GeneratorSpec spec = kuf_spec(0, 1, 1);
                        return generate(spec, rng);
                    }()),
                    GenerationError);
}

TEST_CASE("generated hypergraphs satisfy the duality invariant") {
    GeneratorSpec spec = kuf_spec(400, 400, 5);
    Rng rng(17);
    const Hypergraph h = generate(spec, rng);
    // Full N x M cross-walk.
    for (NodeId i = 0; i < h.num_nodes(); ++i) {
        const auto edges = h.edges_of(i);
        for (EdgeId e = 0; e < h.num_edges(); ++e) {
            const auto nodes = h.nodes_of(e);
            const bool a = std::find(edges.begin(), edges.end(), e) != edges.end();
            const bool b = std::find(nodes.begin(), nodes.end(), i) != nodes.end();
            if (a != b) {
                FAIL("duality violated at node ", i, " edge ", e);
            }
        }
    }
}

TEST_CASE("generator kind names") {
    CHECK(parse_generator_kind("er") == GeneratorKind::ER);
    CHECK(parse_generator_kind("sf") == GeneratorKind::SF);
    CHECK(parse_generator_kind("kuf") == GeneratorKind::KUF);
    CHECK(to_string(GeneratorKind::SF) == "sf");
    CHECK_THROWS_AS(parse_generator_kind("ba"), ConfigError);
}
