#include "hyperim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyperim {

namespace {

void check_node(const Hypergraph& h, NodeId i) {
    if (i >= h.num_nodes()) {
        throw std::invalid_argument("node id out of range");
    }
}

double pow_small(double base, std::uint32_t exp) {
    double v = 1.0;
    for (std::uint32_t i = 0; i < exp; ++i) {
        v *= base;
    }
    return v;
}

} // namespace

std::size_t hyperdegree(const Hypergraph& h, NodeId i) {
    check_node(h, i);
    return h.hyperdegree(i);
}

double hci1(const Hypergraph& h, PropagationParams p, NodeId i) {
    check_node(h, i);
    double spill = 0.0;
    for (EdgeId e : h.edges_of(i)) {
        spill += static_cast<double>(h.cardinality(e) - 1);
    }
    return static_cast<double>(h.hyperdegree(i)) + p.t * spill;
}

double hci2(const Hypergraph& h, PropagationParams p, NodeId i,
            std::span<const std::uint8_t> seed_indicator) {
    check_node(h, i);
    if (!seed_indicator.empty() && seed_indicator.size() != h.num_nodes()) {
        throw std::invalid_argument("seed indicator length must equal node count");
    }
    double second = 0.0;
    for (EdgeId e : h.edges_of(i)) {
        for (NodeId j : h.nodes_of(e)) {
            if (j == i) {
                continue;
            }
            const double gate =
                seed_indicator.empty() ? 1.0 : (seed_indicator[j] ? 0.0 : 1.0);
            second += gate * static_cast<double>(h.hyperdegree(j) - 1);
        }
    }
    return hci1(h, p, i) + p.t * p.s * second;
}

std::vector<double> all_hci1(const Hypergraph& h, PropagationParams p) {
    std::vector<double> scores(h.num_nodes());
    for (NodeId i = 0; i < h.num_nodes(); ++i) {
        scores[i] = hci1(h, p, i);
    }
    return scores;
}

std::vector<double> all_hci2(const Hypergraph& h, PropagationParams p) {
    // Per-edge totals of (k_j - 1) let each node subtract its own term.
    std::vector<double> edge_total(h.num_edges(), 0.0);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        double sum = 0.0;
        for (NodeId j : h.nodes_of(e)) {
            sum += static_cast<double>(h.hyperdegree(j) - 1);
        }
        edge_total[e] = sum;
    }
    std::vector<double> scores(h.num_nodes());
    for (NodeId i = 0; i < h.num_nodes(); ++i) {
        double second = 0.0;
        for (EdgeId e : h.edges_of(i)) {
            second += edge_total[e] - static_cast<double>(h.hyperdegree(i) - 1);
        }
        scores[i] = hci1(h, p, i) + p.t * p.s * second;
    }
    return scores;
}

FitnessEvaluator::FitnessEvaluator(const Hypergraph& h, PropagationParams p)
    : h_(&h), p_(p), edge_seed_count_(h.num_edges(), 0), edge_prob_(h.num_edges(), 0.0),
      node_survival_(h.num_nodes(), 1.0), in_seed_(h.num_nodes(), 0) {
    p.validate();
}

FitnessBreakdown FitnessEvaluator::components(std::span<const NodeId> seeds) {
    const Hypergraph& h = *h_;
    for (NodeId v : seeds) {
        if (v >= h.num_nodes()) {
            throw std::invalid_argument("seed node id out of range");
        }
    }
    for (NodeId v : seeds) {
        if (in_seed_[v]) {
            for (NodeId u : seeds) {
                in_seed_[u] = 0;
            }
            throw std::invalid_argument("duplicate node id in seed set");
        }
        in_seed_[v] = 1;
    }

    // First-layer hyperedges and per-edge seed counts.
    for (NodeId v : seeds) {
        for (EdgeId e : h.edges_of(v)) {
            if (edge_seed_count_[e]++ == 0) {
                touched_edges_.push_back(e);
            }
        }
    }

    FitnessBreakdown out;
    out.sigma0 = static_cast<double>(seeds.size());
    for (EdgeId e : touched_edges_) {
        const double p_e = 1.0 - pow_small(1.0 - p_.t, edge_seed_count_[e]);
        edge_prob_[e] = p_e;
        out.sigma1 += p_e;
    }

    // First-layer neighbor nodes survive every incident failed-edge attempt.
    for (EdgeId e : touched_edges_) {
        const double keep = 1.0 - edge_prob_[e] * p_.s;
        for (NodeId u : h.nodes_of(e)) {
            if (!in_seed_[u]) {
                node_survival_[u] *= keep;
            }
        }
    }
    // Second pass collects each neighbor once and restores its scratch slot.
    // A survival product that stayed exactly 1.0 contributes exactly 0.
    out.sigma2 = 0.0;
    for (EdgeId e : touched_edges_) {
        for (NodeId u : h.nodes_of(e)) {
            if (!in_seed_[u] && node_survival_[u] != 1.0) {
                out.sigma2 += 1.0 - node_survival_[u];
                node_survival_[u] = 1.0;
            }
        }
    }

    for (NodeId v : seeds) {
        in_seed_[v] = 0;
    }
    for (EdgeId e : touched_edges_) {
        edge_seed_count_[e] = 0;
        edge_prob_[e] = 0.0;
    }
    touched_edges_.clear();
    return out;
}

double fitness(const Hypergraph& h, PropagationParams p, std::span<const NodeId> seeds) {
    FitnessEvaluator eval(h, p);
    return eval(seeds);
}

double overlap_influence(const Hypergraph& h, NodeId candidate,
                         std::span<const NodeId> others) {
    check_node(h, candidate);
    for (NodeId j : others) {
        check_node(h, j);
    }

    std::vector<std::uint8_t> in_ns_t(h.num_nodes(), 0);
    for (NodeId j : others) {
        for (EdgeId e : h.edges_of(j)) {
            for (NodeId u : h.nodes_of(e)) {
                if (u != j) {
                    in_ns_t[u] = 1;
                }
            }
        }
    }

    std::vector<std::uint8_t> counted(h.num_nodes(), 0);
    std::size_t total = 0;
    std::size_t fresh = 0;
    for (EdgeId e : h.edges_of(candidate)) {
        for (NodeId u : h.nodes_of(e)) {
            if (u == candidate || counted[u]) {
                continue;
            }
            counted[u] = 1;
            ++total;
            if (!in_ns_t[u]) {
                ++fresh;
            }
        }
    }
    if (total == 0) {
        return 1.0;
    }
    return static_cast<double>(fresh) / static_cast<double>(total);
}

double comprehensive_metric(const Hypergraph& h, PropagationParams p, NodeId candidate,
                            std::span<const NodeId> others) {
    return overlap_influence(h, candidate, others) * hci1(h, p, candidate);
}

std::vector<NodeScore> pagerank_scores(const Hypergraph& h, double damping) {
    if (!(damping > 0.0 && damping < 1.0)) {
        throw std::invalid_argument("damping must be in (0,1)");
    }
    const std::size_t n = h.num_nodes();
    std::vector<NodeScore> result(n);
    if (n == 0) {
        return result;
    }

    // Clique expansion adjacency, deduplicated.
    std::vector<std::vector<NodeId>> nbr(n);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        const auto members = h.nodes_of(e);
        for (NodeId u : members) {
            for (NodeId v : members) {
                if (u != v) {
                    nbr[u].push_back(v);
                }
            }
        }
    }
    for (auto& list : nbr) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> x(n, inv_n);
    std::vector<double> y(n);
    for (int iter = 0; iter < 1000; ++iter) {
        double dangling = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            if (nbr[v].empty()) {
                dangling += x[v];
            }
        }
        const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
        for (NodeId v = 0; v < n; ++v) {
            double in = 0.0;
            for (NodeId u : nbr[v]) {
                in += x[u] / static_cast<double>(nbr[u].size());
            }
            y[v] = base + damping * in;
        }
        double l1 = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            l1 += std::abs(y[v] - x[v]);
        }
        x.swap(y);
        if (l1 < 1e-10) {
            break;
        }
    }

    for (NodeId v = 0; v < n; ++v) {
        result[v] = {v, x[v]};
    }
    return result;
}

std::vector<NodeId> neighbor_priority_rank(const Hypergraph& h, std::size_t k) {
    const std::size_t n = h.num_nodes();
    if (k > n) {
        throw std::invalid_argument("k exceeds node count");
    }

    std::vector<std::vector<NodeId>> ns(n);
    for (NodeId v = 0; v < n; ++v) {
        std::vector<std::uint8_t> seen(n, 0);
        for (EdgeId e : h.edges_of(v)) {
            for (NodeId u : h.nodes_of(e)) {
                if (u != v && !seen[u]) {
                    seen[u] = 1;
                    ns[v].push_back(u);
                }
            }
        }
    }

    std::vector<std::uint8_t> covered(n, 0);
    std::vector<std::uint8_t> selected(n, 0);
    std::vector<NodeId> picks;
    picks.reserve(k);
    while (picks.size() < k) {
        NodeId best = kInvalidNode;
        std::size_t best_count = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (selected[v]) {
                continue;
            }
            std::size_t count = 0;
            for (NodeId u : ns[v]) {
                if (!covered[u]) {
                    ++count;
                }
            }
            if (best == kInvalidNode || count > best_count) {
                best = v;
                best_count = count;
            }
        }
        selected[best] = 1;
        covered[best] = 1;
        for (NodeId u : ns[best]) {
            covered[u] = 1;
        }
        picks.push_back(best);
    }
    return picks;
}

namespace detail {

std::vector<NodeId> top_k_by_score(std::span<const double> scores, std::size_t k) {
    if (k > scores.size()) {
        throw std::invalid_argument("k exceeds score count");
    }
    std::vector<NodeId> ids(scores.size());
    std::iota(ids.begin(), ids.end(), 0);
    const auto better = [&](NodeId a, NodeId b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return a < b;
    };
    std::partial_sort(ids.begin(), ids.begin() + static_cast<long>(k), ids.end(), better);
    ids.resize(k);
    return ids;
}

} // namespace detail

} // namespace hyperim
