#pragma once

#include <vector>

#include "hyperim/hypergraph.hpp"

namespace fixtures {

// Six nodes, four hyperedges: {0,1,2}, {2,3}, {2,4}, {3,4,5}. Node 2 is the
// hub; with t=0.3 its hci1 is 4.2 and fitness({2,3}) at t=0.3, s=0.2 is
// 3.7064. Used across metric and optimizer tests.
inline hyperim::Hypergraph hub_graph() {
    return hyperim::Hypergraph::from_edges(6, {{0, 1, 2}, {2, 3}, {2, 4}, {3, 4, 5}});
}

// One hyperedge over two nodes; the smallest non-trivial cascade instance.
inline hyperim::Hypergraph pair_graph() {
    return hyperim::Hypergraph::from_edges(2, {{0, 1}});
}

// Two components: {0,1} and {2,3,4} (the larger one has two hyperedges).
inline hyperim::Hypergraph split_graph() {
    return hyperim::Hypergraph::from_edges(5, {{0, 1}, {2, 3}, {3, 4}});
}

// One hyperedge containing every node.
inline hyperim::Hypergraph star_graph(std::size_t n) {
    std::vector<hyperim::NodeId> all(n);
    for (std::size_t i = 0; i < n; ++i) {
        all[i] = static_cast<hyperim::NodeId>(i);
    }
    return hyperim::Hypergraph::from_edges(n, {all});
}

} // namespace fixtures
