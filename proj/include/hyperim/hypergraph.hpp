#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hyperim {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();
inline constexpr EdgeId kInvalidEdge = std::numeric_limits<EdgeId>::max();

/// Per-incidence failure probabilities of the hypergraph cascade:
/// t is node -> hyperedge, s is hyperedge -> node, uniform over incidences.
struct PropagationParams {
    double t = 0.0;
    double s = 0.0;

    void validate() const;
};

// Immutable hypergraph with bidirectional incidence stored in CSR form.
// Node ids are dense in [0, num_nodes), hyperedge ids dense in [0, num_edges).
// Safe to share across threads once constructed.
class Hypergraph {
  public:
    Hypergraph() = default;

    /// Builds from explicit hyperedge member lists and validates all
    /// invariants (ids in range, no duplicate member within an edge,
    /// no empty edge). Throws std::invalid_argument on violation.
    static Hypergraph from_edges(std::size_t num_nodes,
                                 const std::vector<std::vector<NodeId>>& edges,
                                 std::vector<std::string> node_labels = {});

    std::size_t num_nodes() const { return node_offsets_.empty() ? 0 : node_offsets_.size() - 1; }
    std::size_t num_edges() const { return edge_offsets_.empty() ? 0 : edge_offsets_.size() - 1; }

    /// Total incidence count d = sum of hyperdegrees = sum of cardinalities.
    std::size_t total_incidence() const { return node_members_.size(); }

    /// Hyperedges incident to node i, in insertion order.
    std::span<const EdgeId> edges_of(NodeId i) const {
        return {node_members_.data() + node_offsets_[i],
                node_members_.data() + node_offsets_[i + 1]};
    }

    /// Member nodes of hyperedge e, in insertion order.
    std::span<const NodeId> nodes_of(EdgeId e) const {
        return {edge_members_.data() + edge_offsets_[e],
                edge_members_.data() + edge_offsets_[e + 1]};
    }

    std::size_t hyperdegree(NodeId i) const { return node_offsets_[i + 1] - node_offsets_[i]; }
    std::size_t cardinality(EdgeId e) const { return edge_offsets_[e + 1] - edge_offsets_[e]; }

    /// Offset of the first incidence arc of node i / edge e in the global
    /// arc numbering (arcs are indexed by CSR position; there are
    /// total_incidence() arcs in each direction).
    std::size_t node_arc_offset(NodeId i) const { return node_offsets_[i]; }
    std::size_t edge_arc_offset(EdgeId e) const { return edge_offsets_[e]; }

    /// Original input labels, one per node; empty if nodes were created
    /// without labels (label of node i is then the decimal string of i).
    const std::vector<std::string>& node_labels() const { return node_labels_; }

    std::string label_of(NodeId i) const;

    /// Resolves a label back to a node id; returns kInvalidNode if unknown.
    NodeId node_by_label(const std::string& label) const;

    bool operator==(const Hypergraph& other) const {
        return node_offsets_ == other.node_offsets_ && node_members_ == other.node_members_ &&
               edge_offsets_ == other.edge_offsets_ && edge_members_ == other.edge_members_;
    }

  private:
    // CSR pairs: node -> incident edges, edge -> member nodes.
    std::vector<std::size_t> node_offsets_;
    std::vector<EdgeId> node_members_;
    std::vector<std::size_t> edge_offsets_;
    std::vector<NodeId> edge_members_;
    std::vector<std::string> node_labels_;
};

/// Result of largest-connected-component extraction: the induced
/// sub-hypergraph plus old->new id maps (kInvalidNode / kInvalidEdge for
/// entities outside the component).
struct ComponentResult {
    Hypergraph graph;
    std::vector<NodeId> node_map;
    std::vector<EdgeId> edge_map;
};

/// Largest connected component of the bipartite node-hyperedge incidence
/// graph, by node count; ties broken by smallest minimum original node id.
ComponentResult largest_connected_component(const Hypergraph& h);

} // namespace hyperim
