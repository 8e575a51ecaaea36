#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "hyperim/errors.hpp"
#include "hyperim/selectors.hpp"
#include "support/fixtures.hpp"

using namespace hyperim;

namespace {

SelectorSpec make(Strategy s, std::size_t k) {
    SelectorSpec spec;
    spec.strategy = s;
    spec.k = k;
    spec.ga.popnum = 8;
    spec.ga.maxgen = 3;
    spec.ga.elite_count = 1;
    spec.ga.tournsize = 2;
    return spec;
}

} // namespace

TEST_CASE("strategy names round-trip") {
    for (Strategy s : {Strategy::HHD, Strategy::HCI1, Strategy::HCI2, Strategy::NP,
                       Strategy::PR, Strategy::RD, Strategy::GCIIM, Strategy::GCI,
                       Strategy::GA}) {
        CHECK(parse_strategy(to_string(s)) == s);
    }
    CHECK_THROWS_AS(parse_strategy("celf"), ConfigError);
}

TEST_CASE("high hyperdegree picks the hub") {
    const Hypergraph h = fixtures::hub_graph();
    const auto seeds = select_seeds(h, {0.3, 0.2}, make(Strategy::HHD, 1), Rng(1));
    CHECK(seeds == std::vector<NodeId>{2});
}

TEST_CASE("hci1 top-2 with the lower-id tie break") {
    const Hypergraph h = fixtures::hub_graph();
    const auto seeds = select_seeds(h, {0.3, 0.2}, make(Strategy::HCI1, 2), Rng(1));
    CHECK(seeds == std::vector<NodeId>{2, 3});
}

TEST_CASE("hci1 with t = 0 degenerates to hyperdegree order") {
    const Hypergraph h = fixtures::hub_graph();
    const auto hhd = select_seeds(h, {0.0, 0.0}, make(Strategy::HHD, 3), Rng(1));
    const auto hci = select_seeds(h, {0.0, 0.0}, make(Strategy::HCI1, 3), Rng(1));
    CHECK(hhd == hci);
}

TEST_CASE("static strategies ignore the rng") {
    const Hypergraph h = fixtures::hub_graph();
    for (Strategy s : {Strategy::HHD, Strategy::HCI1, Strategy::HCI2, Strategy::NP,
                       Strategy::PR}) {
        const auto a = select_seeds(h, {0.3, 0.2}, make(s, 3), Rng(1));
        const auto b = select_seeds(h, {0.3, 0.2}, make(s, 3), Rng(982451653));
        CHECK(a == b);
    }
}

TEST_CASE("random selection is a reproducible k-subset") {
    const Hypergraph h = fixtures::hub_graph();
    const auto a = select_seeds(h, {0.3, 0.2}, make(Strategy::RD, 4), Rng(10));
    const auto b = select_seeds(h, {0.3, 0.2}, make(Strategy::RD, 4), Rng(10));
    CHECK(a == b);
    std::vector<NodeId> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted.back() < h.num_nodes());

    const auto c = select_seeds(h, {0.3, 0.2}, make(Strategy::RD, 4), Rng(11));
    CHECK(a != c);
}

TEST_CASE("evolutionary strategies return k distinct ids deterministically") {
    const Hypergraph h = fixtures::hub_graph();
    for (Strategy s : {Strategy::GCIIM, Strategy::GCI, Strategy::GA}) {
        const auto a = select_seeds(h, {0.3, 0.2}, make(s, 2), Rng(5));
        const auto b = select_seeds(h, {0.3, 0.2}, make(s, 2), Rng(5));
        CHECK(a == b);
        CHECK(a.size() == 2);
        CHECK(a[0] != a[1]);
        CHECK(std::max(a[0], a[1]) < h.num_nodes());
    }
}

TEST_CASE("k larger than the node count is rejected") {
    const Hypergraph h = fixtures::hub_graph();
    CHECK_THROWS_AS(select_seeds(h, {0.3, 0.2}, make(Strategy::HHD, 7), Rng(1)),
                    std::invalid_argument);
}
