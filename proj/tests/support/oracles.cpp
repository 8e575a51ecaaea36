#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace oracles {

using hyperim::EdgeId;
using hyperim::Hypergraph;
using hyperim::NodeId;
using hyperim::Rng;

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

std::size_t largest_component_nodes_union_find(const Hypergraph& h) {
    const std::size_t n = h.num_nodes();
    const std::size_t m = h.num_edges();
    UnionFind uf(n + m);
    for (EdgeId e = 0; e < m; ++e) {
        for (NodeId v : h.nodes_of(e)) {
            uf.unite(v, n + e);
        }
    }
    std::vector<std::size_t> count(n + m, 0);
    std::size_t best = 0;
    for (NodeId v = 0; v < n; ++v) {
        const std::size_t c = ++count[uf.find(v)];
        best = std::max(best, c);
    }
    return best;
}

Reachable reachable_from(const Hypergraph& h, const std::vector<NodeId>& seeds) {
    std::vector<char> node_seen(h.num_nodes(), 0);
    std::vector<char> edge_seen(h.num_edges(), 0);
    std::deque<NodeId> queue;
    for (NodeId v : seeds) {
        if (!node_seen[v]) {
            node_seen[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (EdgeId e : h.edges_of(v)) {
            if (edge_seen[e]) {
                continue;
            }
            edge_seen[e] = 1;
            for (NodeId u : h.nodes_of(e)) {
                if (!node_seen[u]) {
                    node_seen[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }
    Reachable out;
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        if (node_seen[v]) {
            out.nodes.push_back(v);
        }
    }
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        if (edge_seen[e]) {
            out.edges.push_back(e);
        }
    }
    return out;
}

double depth1_expected_spill(const Hypergraph& h, NodeId i, double t) {
    const auto edges = h.edges_of(i);
    const std::size_t k = edges.size();
    double expected = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        double prob = 1.0;
        double spill = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (mask >> j & 1) {
                prob *= t;
                spill += static_cast<double>(h.cardinality(edges[j]) - 1);
            } else {
                prob *= 1.0 - t;
            }
        }
        expected += prob * spill;
    }
    return expected;
}

double depth1_expected_failed_edges(const Hypergraph& h, const std::vector<NodeId>& seeds,
                                    double t) {
    // Arcs leaving the seed set, in (seed, incident edge) order.
    std::vector<EdgeId> arc_edge;
    for (NodeId v : seeds) {
        for (EdgeId e : h.edges_of(v)) {
            arc_edge.push_back(e);
        }
    }
    const std::size_t a = arc_edge.size();
    if (a > 24) {
        throw std::invalid_argument("depth-1 oracle instance too large");
    }
    double expected = 0.0;
    std::vector<char> failed(h.num_edges(), 0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << a); ++mask) {
        double prob = 1.0;
        std::fill(failed.begin(), failed.end(), 0);
        for (std::size_t j = 0; j < a; ++j) {
            if (mask >> j & 1) {
                prob *= t;
                failed[arc_edge[j]] = 1;
            } else {
                prob *= 1.0 - t;
            }
        }
        expected +=
            prob * static_cast<double>(std::count(failed.begin(), failed.end(), 1));
    }
    return expected;
}

std::vector<double> dense_pagerank(const Hypergraph& h, double damping) {
    const std::size_t n = h.num_nodes();
    if (n == 0) {
        return {};
    }
    // Dense adjacency of the clique expansion.
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        const auto members = h.nodes_of(e);
        for (NodeId u : members) {
            for (NodeId v : members) {
                if (u != v) {
                    adj[u][v] = 1;
                }
            }
        }
    }
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        degree[u] = static_cast<std::size_t>(
            std::count(adj[u].begin(), adj[u].end(), 1));
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> x(n, inv_n);
    std::vector<double> y(n);
    for (int iter = 0; iter < 1000; ++iter) {
        double dangling = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            if (degree[u] == 0) {
                dangling += x[u];
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            double in = 0.0;
            for (std::size_t u = 0; u < n; ++u) {
                if (adj[u][v]) {
                    in += x[u] / static_cast<double>(degree[u]);
                }
            }
            y[v] = (1.0 - damping) * inv_n + damping * dangling * inv_n + damping * in;
        }
        double l1 = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            l1 += std::abs(y[v] - x[v]);
        }
        x.swap(y);
        if (l1 < 1e-10) {
            break;
        }
    }
    return x;
}

// Series and continued-fraction evaluation of the regularized incomplete
// gamma functions (Numerical Recipes style).
namespace {

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double frac = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        frac *= delta;
        if (std::abs(delta - 1.0) < 1e-15) {
            break;
        }
    }
    return frac * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) {
        throw std::invalid_argument("gamma_q domain error");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x < a + 1.0) {
        return 1.0 - gamma_p_series(a, x);
    }
    return gamma_q_cf(a, x);
}

double chi_square_sf(double x, double df) { return gamma_q(df / 2.0, x / 2.0); }

Hypergraph random_hypergraph(Rng& rng, std::size_t max_nodes, std::size_t max_edges,
                             std::size_t max_card) {
    const std::size_t n = 1 + rng.uniform_below(max_nodes);
    const std::size_t m = 1 + rng.uniform_below(max_edges);
    std::vector<std::vector<NodeId>> edges(m);
    for (auto& edge : edges) {
        const std::size_t card = 1 + rng.uniform_below(std::min(max_card, n));
        std::vector<NodeId> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < card; ++i) {
            const std::size_t j = i + rng.uniform_below(pool.size() - i);
            std::swap(pool[i], pool[j]);
            edge.push_back(pool[i]);
        }
    }
    return Hypergraph::from_edges(n, edges);
}

Hypergraph random_tiny_hypergraph(Rng& rng, std::size_t max_nodes, std::size_t max_edges,
                                  std::size_t max_incidence) {
    for (;;) {
        Hypergraph h = random_hypergraph(rng, max_nodes, max_edges, 4);
        if (h.total_incidence() <= max_incidence) {
            return h;
        }
    }
}

} // namespace oracles
