#include "hyperim/hypergraph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace hyperim {

void PropagationParams::validate() const {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("propagation probability t must be in [0,1]");
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument("propagation probability s must be in [0,1]");
    }
}

Hypergraph Hypergraph::from_edges(std::size_t num_nodes,
                                  const std::vector<std::vector<NodeId>>& edges,
                                  std::vector<std::string> node_labels) {
    if (!node_labels.empty() && node_labels.size() != num_nodes) {
        throw std::invalid_argument("label count does not match node count");
    }

    Hypergraph h;
    h.node_labels_ = std::move(node_labels);

    std::vector<std::size_t> degree(num_nodes, 0);
    std::size_t total = 0;
    std::vector<std::uint8_t> seen(num_nodes, 0);
    for (const auto& edge : edges) {
        if (edge.empty()) {
            throw std::invalid_argument("empty hyperedge");
        }
        for (NodeId v : edge) {
            if (v >= num_nodes) {
                throw std::invalid_argument("node id out of range in hyperedge");
            }
            if (seen[v]) {
                throw std::invalid_argument("duplicate node within hyperedge");
            }
            seen[v] = 1;
            ++degree[v];
            ++total;
        }
        for (NodeId v : edge) {
            seen[v] = 0;
        }
    }

    h.node_offsets_.assign(num_nodes + 1, 0);
    for (std::size_t i = 0; i < num_nodes; ++i) {
        h.node_offsets_[i + 1] = h.node_offsets_[i] + degree[i];
    }
    h.node_members_.resize(total);
    h.edge_offsets_.assign(edges.size() + 1, 0);
    h.edge_members_.resize(total);

    std::vector<std::size_t> cursor(h.node_offsets_.begin(), h.node_offsets_.end() - 1);
    std::size_t pos = 0;
    for (EdgeId e = 0; e < edges.size(); ++e) {
        h.edge_offsets_[e + 1] = h.edge_offsets_[e] + edges[e].size();
        for (NodeId v : edges[e]) {
            h.edge_members_[pos++] = v;
            h.node_members_[cursor[v]++] = e;
        }
    }
    return h;
}

std::string Hypergraph::label_of(NodeId i) const {
    if (i < node_labels_.size()) {
        return node_labels_[i];
    }
    return std::to_string(i);
}

NodeId Hypergraph::node_by_label(const std::string& label) const {
    if (node_labels_.empty()) {
        // Identity labels.
        try {
            const unsigned long v = std::stoul(label);
            if (v < num_nodes()) {
                return static_cast<NodeId>(v);
            }
        } catch (const std::exception&) {
        }
        return kInvalidNode;
    }
    for (NodeId i = 0; i < node_labels_.size(); ++i) {
        if (node_labels_[i] == label) {
            return i;
        }
    }
    return kInvalidNode;
}

ComponentResult largest_connected_component(const Hypergraph& h) {
    const std::size_t n = h.num_nodes();
    const std::size_t m = h.num_edges();

    // BFS over the bipartite incidence graph. Component id per node/edge.
    constexpr std::uint32_t kUnassigned = 0xFFFFFFFFu;
    std::vector<std::uint32_t> node_comp(n, kUnassigned);
    std::vector<std::uint32_t> edge_comp(m, kUnassigned);
    std::uint32_t num_comp = 0;
    std::vector<std::size_t> comp_nodes;

    std::vector<NodeId> node_stack;
    std::vector<EdgeId> edge_stack;
    for (NodeId start = 0; start < n; ++start) {
        if (node_comp[start] != kUnassigned) {
            continue;
        }
        const std::uint32_t c = num_comp++;
        comp_nodes.push_back(0);
        node_comp[start] = c;
        node_stack.push_back(start);
        while (!node_stack.empty() || !edge_stack.empty()) {
            if (!node_stack.empty()) {
                const NodeId v = node_stack.back();
                node_stack.pop_back();
                ++comp_nodes[c];
                for (EdgeId e : h.edges_of(v)) {
                    if (edge_comp[e] == kUnassigned) {
                        edge_comp[e] = c;
                        edge_stack.push_back(e);
                    }
                }
            } else {
                const EdgeId e = edge_stack.back();
                edge_stack.pop_back();
                for (NodeId v : h.nodes_of(e)) {
                    if (node_comp[v] == kUnassigned) {
                        node_comp[v] = c;
                        node_stack.push_back(v);
                    }
                }
            }
        }
    }

    ComponentResult result;
    result.node_map.assign(n, kInvalidNode);
    result.edge_map.assign(m, kInvalidEdge);
    if (num_comp == 0) {
        return result;
    }

    // Largest by node count. Components are discovered in increasing order
    // of their minimum node id, so keeping the first maximum implements the
    // smallest-minimum-id tie break.
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < num_comp; ++c) {
        if (comp_nodes[c] > comp_nodes[best]) {
            best = c;
        }
    }

    std::vector<std::string> labels;
    const bool has_labels = !h.node_labels().empty();
    NodeId next_node = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (node_comp[v] == best) {
            result.node_map[v] = next_node++;
            if (has_labels) {
                labels.push_back(h.node_labels()[v]);
            }
        }
    }
    std::vector<std::vector<NodeId>> edges;
    for (EdgeId e = 0; e < m; ++e) {
        if (edge_comp[e] == best) {
            result.edge_map[e] = static_cast<EdgeId>(edges.size());
            std::vector<NodeId> members;
            members.reserve(h.cardinality(e));
            for (NodeId v : h.nodes_of(e)) {
                members.push_back(result.node_map[v]);
            }
            edges.push_back(std::move(members));
        }
    }
    result.graph = Hypergraph::from_edges(next_node, edges, std::move(labels));
    return result;
}

} // namespace hyperim
