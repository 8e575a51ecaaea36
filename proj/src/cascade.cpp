#include "hyperim/cascade.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hyperim/errors.hpp"

namespace hyperim {

namespace {

void validate_seeds(const Hypergraph& h, std::span<const NodeId> seeds) {
    if (seeds.empty()) {
        throw std::invalid_argument("seed set must be non-empty");
    }
    for (NodeId v : seeds) {
        if (v >= h.num_nodes()) {
            throw std::invalid_argument("seed node id out of range");
        }
    }
}

// Reusable cascade state; flags are cleared via the failed lists so repeated
// trials cost O(cascade size), not O(N + M).
struct Scratch {
    std::vector<std::uint8_t> node_failed;
    std::vector<std::uint8_t> edge_failed;
    std::vector<NodeId> failed_nodes;
    std::vector<EdgeId> failed_edges;
    std::vector<std::size_t> node_frontier; // indices into failed_nodes
#ifndef NDEBUG
    std::vector<std::uint8_t> arc_attempted_ne;
    std::vector<std::uint8_t> arc_attempted_en;
#endif

    explicit Scratch(const Hypergraph& h)
        : node_failed(h.num_nodes(), 0), edge_failed(h.num_edges(), 0) {
#ifndef NDEBUG
        arc_attempted_ne.assign(h.total_incidence(), 0);
        arc_attempted_en.assign(h.total_incidence(), 0);
#endif
    }

    void reset() {
        for (NodeId v : failed_nodes) {
            node_failed[v] = 0;
        }
        for (EdgeId e : failed_edges) {
            edge_failed[e] = 0;
        }
        failed_nodes.clear();
        failed_edges.clear();
#ifndef NDEBUG
        std::fill(arc_attempted_ne.begin(), arc_attempted_ne.end(), 0);
        std::fill(arc_attempted_en.begin(), arc_attempted_en.end(), 0);
#endif
    }
};

// Gate abstraction: Bernoulli draws for Monte Carlo, table lookups for a
// fixed realization.
struct RandomGate {
    PropagationParams p;
    Rng* rng;
    bool node_to_edge(std::size_t) { return rng->bernoulli(p.t); }
    bool edge_to_node(std::size_t) { return rng->bernoulli(p.s); }
};

struct FixedGate {
    const ArcRealization* arcs;
    bool node_to_edge(std::size_t arc) { return (*arcs).node_to_edge[arc] != 0; }
    bool edge_to_node(std::size_t arc) { return (*arcs).edge_to_node[arc] != 0; }
};

template <typename Gate>
std::size_t run_cascade(const Hypergraph& h, std::span<const NodeId> seeds, Gate gate,
                        Scratch& s) {
    s.reset();
    for (NodeId v : seeds) {
        if (!s.node_failed[v]) {
            s.node_failed[v] = 1;
            s.failed_nodes.push_back(v);
        }
    }

    std::size_t rounds = 0;
    std::size_t node_from = 0; // start of the newly failed node frontier
    std::size_t edge_from = 0;
    while (node_from < s.failed_nodes.size()) {
        // Node -> hyperedge phase.
        ++rounds;
        const std::size_t node_to = s.failed_nodes.size();
        for (std::size_t i = node_from; i < node_to; ++i) {
            const NodeId v = s.failed_nodes[i];
            const std::size_t base = h.node_arc_offset(v);
            const auto edges = h.edges_of(v);
            for (std::size_t j = 0; j < edges.size(); ++j) {
                const EdgeId e = edges[j];
                if (s.edge_failed[e]) {
                    continue;
                }
#ifndef NDEBUG
                assert(!s.arc_attempted_ne[base + j] && "arc attempted twice");
                s.arc_attempted_ne[base + j] = 1;
#endif
                if (gate.node_to_edge(base + j)) {
                    s.edge_failed[e] = 1;
                    s.failed_edges.push_back(e);
                }
            }
        }
        node_from = node_to;

        // Hyperedge -> node phase.
        if (edge_from == s.failed_edges.size()) {
            break;
        }
        ++rounds;
        const std::size_t edge_to = s.failed_edges.size();
        for (std::size_t i = edge_from; i < edge_to; ++i) {
            const EdgeId e = s.failed_edges[i];
            const std::size_t base = h.edge_arc_offset(e);
            const auto nodes = h.nodes_of(e);
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                const NodeId u = nodes[j];
                if (s.node_failed[u]) {
                    continue;
                }
#ifndef NDEBUG
                assert(!s.arc_attempted_en[base + j] && "arc attempted twice");
                s.arc_attempted_en[base + j] = 1;
#endif
                if (gate.edge_to_node(base + j)) {
                    s.node_failed[u] = 1;
                    s.failed_nodes.push_back(u);
                }
            }
        }
        edge_from = edge_to;
    }
    return rounds;
}

CascadeResult collect(Scratch& s, std::size_t rounds) {
    CascadeResult result;
    result.failed_nodes = s.failed_nodes;
    result.failed_edges = s.failed_edges;
    std::sort(result.failed_nodes.begin(), result.failed_nodes.end());
    std::sort(result.failed_edges.begin(), result.failed_edges.end());
    result.rounds = rounds;
    return result;
}

} // namespace

ArcRealization draw_arc_realization(const Hypergraph& h, PropagationParams p, Rng& rng) {
    p.validate();
    ArcRealization arcs;
    arcs.node_to_edge.resize(h.total_incidence());
    arcs.edge_to_node.resize(h.total_incidence());
    for (auto& a : arcs.node_to_edge) {
        a = rng.bernoulli(p.t) ? 1 : 0;
    }
    for (auto& a : arcs.edge_to_node) {
        a = rng.bernoulli(p.s) ? 1 : 0;
    }
    return arcs;
}

CascadeResult simulate_once(const Hypergraph& h, PropagationParams p,
                            std::span<const NodeId> seeds, Rng& rng) {
    p.validate();
    validate_seeds(h, seeds);
    Scratch scratch(h);
    const std::size_t rounds = run_cascade(h, seeds, RandomGate{p, &rng}, scratch);
    return collect(scratch, rounds);
}

CascadeResult simulate_with_arcs(const Hypergraph& h, const ArcRealization& arcs,
                                 std::span<const NodeId> seeds) {
    validate_seeds(h, seeds);
    if (arcs.node_to_edge.size() != h.total_incidence() ||
        arcs.edge_to_node.size() != h.total_incidence()) {
        throw std::invalid_argument("arc realization size does not match hypergraph");
    }
    Scratch scratch(h);
    const std::size_t rounds = run_cascade(h, seeds, FixedGate{&arcs}, scratch);
    return collect(scratch, rounds);
}

InfluenceEstimate estimate_influence(const Hypergraph& h, PropagationParams p,
                                     std::span<const NodeId> seeds, std::size_t trials,
                                     const Rng& rng, unsigned threads) {
    p.validate();
    validate_seeds(h, seeds);
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));

    // Exact integer accumulators make the reduction order irrelevant, so the
    // estimate is bit-identical for any thread count.
    struct Partial {
        std::uint64_t sum_n = 0, sum_e = 0;
        unsigned __int128 sq_n = 0, sq_e = 0;
    };
    std::vector<Partial> partials(threads);

    auto worker = [&](unsigned w, std::size_t lo, std::size_t hi) {
        Scratch scratch(h);
        Partial acc;
        for (std::size_t trial = lo; trial < hi; ++trial) {
            Rng trial_rng = rng.fork(trial);
            run_cascade(h, seeds, RandomGate{p, &trial_rng}, scratch);
            const std::uint64_t n = scratch.failed_nodes.size();
            const std::uint64_t e = scratch.failed_edges.size();
            acc.sum_n += n;
            acc.sum_e += e;
            acc.sq_n += static_cast<unsigned __int128>(n) * n;
            acc.sq_e += static_cast<unsigned __int128>(e) * e;
        }
        partials[w] = acc;
    };

    if (threads == 1) {
        worker(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t lo = trials * w / threads;
            const std::size_t hi = trials * (w + 1) / threads;
            pool.emplace_back(worker, w, lo, hi);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    Partial total;
    for (const auto& part : partials) {
        total.sum_n += part.sum_n;
        total.sum_e += part.sum_e;
        total.sq_n += part.sq_n;
        total.sq_e += part.sq_e;
    }

    const auto finish = [trials](std::uint64_t sum, unsigned __int128 sq, double& mean,
                                 double& sd) {
        const auto n = static_cast<double>(trials);
        mean = static_cast<double>(sum) / n;
        if (trials < 2) {
            sd = 0.0;
            return;
        }
        // trials * sum(x^2) - sum(x)^2 >= 0, computed exactly in integers.
        const unsigned __int128 numer =
            static_cast<unsigned __int128>(trials) * sq -
            static_cast<unsigned __int128>(sum) * sum;
        sd = std::sqrt(static_cast<double>(numer) / (n * (n - 1.0)));
    };

    InfluenceEstimate est;
    est.trials = trials;
    finish(total.sum_n, total.sq_n, est.mean_nodes, est.std_nodes);
    finish(total.sum_e, total.sq_e, est.mean_edges, est.std_edges);
    return est;
}

ExactInfluence exact_influence_bruteforce(const Hypergraph& h, PropagationParams p,
                                          std::span<const NodeId> seeds,
                                          std::size_t max_incidence) {
    p.validate();
    validate_seeds(h, seeds);
    const std::size_t d = h.total_incidence();
    if (d > max_incidence || d > 20) {
        throw CapacityError("instance too large for brute-force arc enumeration (d = " +
                            std::to_string(d) + ")");
    }

    // Compact incident nodes to local indices; isolated seeds only ever fail
    // as seeds and contribute a constant. M <= d because edges are non-empty.
    const std::size_t m = h.num_edges();
    std::vector<int> local_of(h.num_nodes(), -1);
    std::vector<NodeId> incident_nodes;
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        if (h.hyperdegree(v) > 0) {
            local_of[v] = static_cast<int>(incident_nodes.size());
            incident_nodes.push_back(v);
        }
    }
    const std::size_t ln = incident_nodes.size();

    std::uint32_t seed_mask = 0;
    std::size_t isolated_seeds = 0;
    std::vector<std::uint8_t> is_seed(h.num_nodes(), 0);
    for (NodeId v : seeds) {
        if (is_seed[v]) {
            continue;
        }
        is_seed[v] = 1;
        if (local_of[v] >= 0) {
            seed_mask |= 1u << local_of[v];
        } else {
            ++isolated_seeds;
        }
    }

    // Directed arcs in CSR order; each direction has exactly d arcs.
    struct NodeArc {
        std::uint8_t node; // local
        std::uint8_t edge;
    };
    std::vector<NodeArc> node_arcs;
    node_arcs.reserve(d);
    for (std::size_t li = 0; li < ln; ++li) {
        for (EdgeId e : h.edges_of(incident_nodes[li])) {
            node_arcs.push_back({static_cast<std::uint8_t>(li), static_cast<std::uint8_t>(e)});
        }
    }
    std::vector<NodeArc> edge_arcs;
    edge_arcs.reserve(d);
    for (EdgeId e = 0; e < m; ++e) {
        for (NodeId v : h.nodes_of(e)) {
            edge_arcs.push_back(
                {static_cast<std::uint8_t>(local_of[v]), static_cast<std::uint8_t>(e)});
        }
    }

    // Probability of a configuration with c live arcs out of d.
    const auto weight_table = [d](double q) {
        std::vector<double> w(d + 1);
        for (std::size_t c = 0; c <= d; ++c) {
            double val = 1.0;
            for (std::size_t i = 0; i < c; ++i) {
                val *= q;
            }
            for (std::size_t i = c; i < d; ++i) {
                val *= 1.0 - q;
            }
            w[c] = val;
        }
        return w;
    };
    const std::vector<double> pt = weight_table(p.t);
    const std::vector<double> ps = weight_table(p.s);

    const std::size_t configs = std::size_t{1} << d;

    // live_edges_of[A][local node] and live_nodes_of[B][edge], precomputed
    // per assignment half to keep the inner loop at the fixpoint only.
    std::vector<std::uint32_t> live_edges_of(configs * std::max<std::size_t>(ln, 1), 0);
    std::vector<std::uint32_t> live_nodes_of(configs * std::max<std::size_t>(m, 1), 0);
    for (std::size_t a = 0; a < configs; ++a) {
        for (std::size_t arc = 0; arc < d; ++arc) {
            if (a >> arc & 1) {
                live_edges_of[a * ln + node_arcs[arc].node] |= 1u << node_arcs[arc].edge;
            }
        }
    }
    for (std::size_t b = 0; b < configs; ++b) {
        for (std::size_t arc = 0; arc < d; ++arc) {
            if (b >> arc & 1) {
                live_nodes_of[b * m + edge_arcs[arc].edge] |= 1u << edge_arcs[arc].node;
            }
        }
    }

    double exp_nodes = 0.0;
    double exp_edges = 0.0;
    for (std::size_t a = 0; a < configs; ++a) {
        const std::uint32_t* la = &live_edges_of[a * ln];
        const double wa = pt[static_cast<std::size_t>(std::popcount(a))];
        for (std::size_t b = 0; b < configs; ++b) {
            const std::uint32_t* lb = &live_nodes_of[b * m];
            std::uint32_t failed_n = seed_mask;
            std::uint32_t failed_e = 0;
            // Forward reachability to fixpoint.
            for (;;) {
                std::uint32_t fe = failed_e;
                std::uint32_t rest = failed_n;
                while (rest) {
                    fe |= la[std::countr_zero(rest)];
                    rest &= rest - 1;
                }
                if (fe == failed_e) {
                    break;
                }
                failed_e = fe;
                std::uint32_t fn = failed_n;
                rest = failed_e;
                while (rest) {
                    fn |= lb[std::countr_zero(rest)];
                    rest &= rest - 1;
                }
                if (fn == failed_n) {
                    break;
                }
                failed_n = fn;
            }
            const double w = wa * ps[static_cast<std::size_t>(std::popcount(b))];
            exp_nodes += w * static_cast<double>(std::popcount(failed_n));
            exp_edges += w * static_cast<double>(std::popcount(failed_e));
        }
    }

    return {exp_nodes + static_cast<double>(isolated_seeds), exp_edges};
}

} // namespace hyperim
