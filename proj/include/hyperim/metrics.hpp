#pragma once

#include <span>
#include <vector>

#include "hyperim/hypergraph.hpp"

namespace hyperim {

struct NodeScore {
    NodeId node = 0;
    double value = 0.0;
};

std::size_t hyperdegree(const Hypergraph& h, NodeId i);

/// 1-order collective influence under the cascade model:
/// k_i + t * sum over incident hyperedges of (cardinality - 1).
double hci1(const Hypergraph& h, PropagationParams p, NodeId i);

/// 2-order collective influence: hci1 plus the second-layer term
/// t * s * sum over incident edges e, members j != i of (1 - n_j)(k_j - 1).
/// seed_indicator is the per-node 0/1 vector n (empty = all zero).
double hci2(const Hypergraph& h, PropagationParams p, NodeId i,
            std::span<const std::uint8_t> seed_indicator = {});

/// Batch variants over all nodes (seed indicator all-zero for hci2).
std::vector<double> all_hci1(const Hypergraph& h, PropagationParams p);
std::vector<double> all_hci2(const Hypergraph& h, PropagationParams p);

struct FitnessBreakdown {
    double sigma0 = 0.0; // seed count
    double sigma1 = 0.0; // expected failed first-layer hyperedges
    double sigma2 = 0.0; // expected failed first-layer neighbor nodes
    double total() const { return sigma0 + sigma1 + sigma2; }
};

// Joint node/hyperedge influence surrogate
//   W(S) = |S| + sum_{e in E_S} (1 - (1-t)^{|S ∩ e|})
//        + sum_{u in N_S \ S} (1 - prod_{e in E_S, e ∋ u} (1 - p_e s)),
// with p_e = 1 - (1-t)^{|S ∩ e|}. Holds reusable scratch sized to the
// hypergraph; not safe for concurrent calls on one instance.
class FitnessEvaluator {
  public:
    FitnessEvaluator(const Hypergraph& h, PropagationParams p);

    /// Throws std::invalid_argument on duplicate or out-of-range seed ids.
    double operator()(std::span<const NodeId> seeds) { return components(seeds).total(); }

    FitnessBreakdown components(std::span<const NodeId> seeds);

  private:
    const Hypergraph* h_;
    PropagationParams p_;
    std::vector<std::uint32_t> edge_seed_count_;
    std::vector<double> edge_prob_;
    std::vector<double> node_survival_;
    std::vector<std::uint8_t> in_seed_;
    std::vector<EdgeId> touched_edges_;
};

double fitness(const Hypergraph& h, PropagationParams p, std::span<const NodeId> seeds);

/// Non-overlapping ratio of the candidate's first-layer neighbors against
/// the union of the others' neighborhoods: |NS(i) - NS(T)| / |NS(i)|,
/// defined as 1 when NS(i) is empty.
double overlap_influence(const Hypergraph& h, NodeId candidate,
                         std::span<const NodeId> others);

/// CM = overlap_influence * hci1.
double comprehensive_metric(const Hypergraph& h, PropagationParams p, NodeId candidate,
                            std::span<const NodeId> others);

/// PageRank on the unweighted clique expansion (nodes adjacent iff they
/// co-occur in at least one hyperedge). Power iteration until the L1 change
/// drops below 1e-10 or 1000 iterations; scores sum to 1.
std::vector<NodeScore> pagerank_scores(const Hypergraph& h, double damping = 0.85);

/// Adaptive greedy: repeatedly pick the node with the most first-layer
/// neighbors not yet covered (covered = selected nodes and their neighbors),
/// ties by lower id.
std::vector<NodeId> neighbor_priority_rank(const Hypergraph& h, std::size_t k);

namespace detail {
/// Indices of the k largest scores, ranked by (score desc, id asc).
std::vector<NodeId> top_k_by_score(std::span<const double> scores, std::size_t k);
} // namespace detail

} // namespace hyperim
