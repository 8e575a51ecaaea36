#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperim/hypergraph.hpp"
#include "hyperim/rng.hpp"

namespace hyperim {

/// Outcome of one cascade realization.
struct CascadeResult {
    std::vector<NodeId> failed_nodes;   // sorted, includes the seeds
    std::vector<EdgeId> failed_edges;   // sorted
    std::size_t rounds = 0;             // alternating node->edge / edge->node phases
};

/// A fixed liveness assignment for every directed incidence arc, indexed by
/// CSR position (node_to_edge[h.node_arc_offset(i) + j] gates the arc from
/// node i to its j-th incident hyperedge, and symmetrically for edges).
struct ArcRealization {
    std::vector<std::uint8_t> node_to_edge;
    std::vector<std::uint8_t> edge_to_node;
};

/// Samples arc liveness: node->edge arcs live with probability t,
/// edge->node arcs with probability s.
ArcRealization draw_arc_realization(const Hypergraph& h, PropagationParams p, Rng& rng);

/// One synchronous independent-cascade realization. Newly failed nodes
/// attempt each incident non-failed hyperedge once with probability t;
/// newly failed hyperedges attempt each incident non-failed node once with
/// probability s; phases alternate until one produces no new failure.
CascadeResult simulate_once(const Hypergraph& h, PropagationParams p,
                            std::span<const NodeId> seeds, Rng& rng);

/// Same propagation semantics under a fixed arc realization; the failed set
/// is exactly the forward-reachable set over live arcs. Used for
/// shared-realization properties such as seed monotonicity.
CascadeResult simulate_with_arcs(const Hypergraph& h, const ArcRealization& arcs,
                                 std::span<const NodeId> seeds);

struct InfluenceEstimate {
    double mean_nodes = 0.0;
    double mean_edges = 0.0;
    double std_nodes = 0.0;
    double std_edges = 0.0;
    std::size_t trials = 0;
};

/// Monte Carlo estimate of expected failed node/hyperedge counts over
/// independent realizations. Trial i consumes the substream rng.fork(i), so
/// the result is a deterministic function of (master seed, trials) no matter
/// how many worker threads execute it (threads = 0 picks hardware size).
InfluenceEstimate estimate_influence(const Hypergraph& h, PropagationParams p,
                                     std::span<const NodeId> seeds, std::size_t trials,
                                     const Rng& rng, unsigned threads = 1);

struct ExactInfluence {
    double mean_nodes = 0.0;
    double mean_edges = 0.0;
};

/// Exact expected failed counts by full enumeration of live/blocked
/// assignments over all 2*(total incidence) directed arcs. Equals the
/// expectation of simulate_once because every arc is attempted at most once
/// per realization. Throws CapacityError when total incidence exceeds
/// max_incidence (default 13, i.e. 2^26 assignments).
ExactInfluence exact_influence_bruteforce(const Hypergraph& h, PropagationParams p,
                                          std::span<const NodeId> seeds,
                                          std::size_t max_incidence = 13);

} // namespace hyperim
