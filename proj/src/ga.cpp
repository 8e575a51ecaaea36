#include "hyperim/ga.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_map>

#include "hyperim/errors.hpp"
#include "hyperim/metrics.hpp"

namespace hyperim {

namespace {

// Substream tags so every stochastic operator has its own fork of the
// master seed, keyed by (generation, index).
enum Stream : std::uint64_t { kInit = 1, kSelect = 2, kCross = 3, kMut = 4 };

void check_individual([[maybe_unused]] const Individual& ind, [[maybe_unused]] std::size_t k,
                      [[maybe_unused]] std::size_t num_nodes) {
#ifndef NDEBUG
    assert(ind.size() == k);
    Individual sorted = ind;
    std::sort(sorted.begin(), sorted.end());
    assert(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    assert(sorted.empty() || sorted.back() < num_nodes);
#endif
}

struct SeedSetHash {
    std::size_t operator()(const Individual& genes) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (NodeId v : genes) {
            h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

// Fitness with memoization on the sorted gene vector.
class CachedFitness {
  public:
    CachedFitness(const Hypergraph& h, PropagationParams p) : eval_(h, p) {}

    double operator()(const Individual& ind) {
        key_ = ind;
        std::sort(key_.begin(), key_.end());
        const auto it = cache_.find(key_);
        if (it != cache_.end()) {
            return it->second;
        }
        const double value = eval_(ind);
        cache_.emplace(key_, value);
        ++evaluations_;
        return value;
    }

    std::size_t evaluations() const { return evaluations_; }

  private:
    FitnessEvaluator eval_;
    std::unordered_map<Individual, double, SeedSetHash> cache_;
    Individual key_;
    std::size_t evaluations_ = 0;
};

// Samples `count` distinct nodes outside the individual (pool = N - k).
// Falls back to an explicit complement list when the pool is small.
void sample_candidates(std::size_t num_nodes, const std::vector<std::uint8_t>& in_ind,
                       std::size_t pool, std::size_t count, Rng& rng,
                       std::vector<NodeId>& out) {
    out.clear();
    if (pool == 0 || count == 0) {
        return;
    }
    if (count * 2 >= pool) {
        std::vector<NodeId> complement;
        complement.reserve(pool);
        for (NodeId v = 0; v < num_nodes; ++v) {
            if (!in_ind[v]) {
                complement.push_back(v);
            }
        }
        const std::size_t take = std::min(count, complement.size());
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t j = i + rng.uniform_below(complement.size() - i);
            std::swap(complement[i], complement[j]);
            out.push_back(complement[i]);
        }
        return;
    }
    std::vector<std::uint8_t> chosen(num_nodes, 0);
    while (out.size() < count) {
        const auto v = static_cast<NodeId>(rng.uniform_below(num_nodes));
        if (!in_ind[v] && !chosen[v]) {
            chosen[v] = 1;
            out.push_back(v);
        }
    }
}

// Mutation engine reusing per-run scratch and precomputed hci1 scores.
class Mutator {
  public:
    Mutator(const Hypergraph& h, const GAConfig& cfg, std::vector<double> hci1_scores)
        : h_(&h), cfg_(&cfg), hci1_(std::move(hci1_scores)),
          in_ind_(h.num_nodes(), 0), ns_t_(h.num_nodes(), 0), counted_(h.num_nodes(), 0) {}

    void operator()(Individual& ind, Rng& rng) {
        const Hypergraph& h = *h_;
        const std::size_t k = ind.size();
        const double gene_rate = cfg_->resolved_gene_mut_rate(k);
        const std::size_t cand = cfg_->resolved_cand_sample(k);
        for (NodeId v : ind) {
            in_ind_[v] = 1;
        }
        for (std::size_t pos = 0; pos < k; ++pos) {
            if (!rng.bernoulli(gene_rate)) {
                continue;
            }
            const std::size_t want = cfg_->mutation_mode == MutationMode::CM ? cand : 1;
            sample_candidates(h.num_nodes(), in_ind_, h.num_nodes() - k, want, rng,
                              candidates_);
            if (candidates_.empty()) {
                continue; // pool exhausted (k == N)
            }
            NodeId replacement;
            if (cfg_->mutation_mode == MutationMode::CM) {
                replacement = choose_by_cm(ind, pos);
            } else {
                replacement = candidates_[0];
            }
            in_ind_[ind[pos]] = 0;
            in_ind_[replacement] = 1;
            ind[pos] = replacement;
        }
        for (NodeId v : ind) {
            in_ind_[v] = 0;
        }
    }

  private:
    NodeId choose_by_cm(const Individual& ind, std::size_t pos) {
        const Hypergraph& h = *h_;
        // NS(T): union of first-layer neighborhoods of all genes but `pos`.
        touched_.clear();
        for (std::size_t j = 0; j < ind.size(); ++j) {
            if (j == pos) {
                continue;
            }
            const NodeId g = ind[j];
            for (EdgeId e : h.edges_of(g)) {
                for (NodeId u : h.nodes_of(e)) {
                    if (u != g && !ns_t_[u]) {
                        ns_t_[u] = 1;
                        touched_.push_back(u);
                    }
                }
            }
        }

        NodeId best = candidates_[0];
        double best_cm = -1.0;
        for (NodeId c : candidates_) {
            std::size_t total = 0;
            std::size_t fresh = 0;
            for (EdgeId e : h.edges_of(c)) {
                for (NodeId u : h.nodes_of(e)) {
                    if (u == c || counted_[u]) {
                        continue;
                    }
                    counted_[u] = 1;
                    count_reset_.push_back(u);
                    ++total;
                    if (!ns_t_[u]) {
                        ++fresh;
                    }
                }
            }
            for (NodeId u : count_reset_) {
                counted_[u] = 0;
            }
            count_reset_.clear();
            const double oi =
                total == 0 ? 1.0
                           : static_cast<double>(fresh) / static_cast<double>(total);
            const double cm = oi * hci1_[c];
            if (cm > best_cm || (cm == best_cm && c < best)) {
                best_cm = cm;
                best = c;
            }
        }

        for (NodeId u : touched_) {
            ns_t_[u] = 0;
        }
        return best;
    }

    const Hypergraph* h_;
    const GAConfig* cfg_;
    std::vector<double> hci1_;
    std::vector<std::uint8_t> in_ind_;
    std::vector<std::uint8_t> ns_t_;
    std::vector<std::uint8_t> counted_;
    std::vector<NodeId> candidates_;
    std::vector<NodeId> touched_;
    std::vector<NodeId> count_reset_;
};

Individual hci_branch_individual(std::span<const double> scores, std::size_t k, Rng& rng) {
    std::vector<double> weights(scores.size());
    for (auto& w : weights) {
        w = rng.uniform();
    }
    return detail::weighted_top_k(scores, weights, k);
}

} // namespace

GAVariant parse_ga_variant(const std::string& name) {
    if (name == "gciim") {
        return GAVariant::GCIIM;
    }
    if (name == "gci") {
        return GAVariant::GCI;
    }
    if (name == "ga") {
        return GAVariant::GA;
    }
    throw ConfigError("unknown GA variant '" + name + "' (expected gciim|gci|ga)");
}

std::string to_string(GAVariant variant) {
    switch (variant) {
    case GAVariant::GCIIM:
        return "gciim";
    case GAVariant::GCI:
        return "gci";
    case GAVariant::GA:
        return "ga";
    }
    return "?";
}

void GAConfig::validate() const {
    if (popnum < 2 || popnum % 2 != 0) {
        throw ConfigError("popnum must be even and >= 2");
    }
    const auto is_prob = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!is_prob(cxpb) || !is_prob(mutpb)) {
        throw ConfigError("cxpb and mutpb must be in [0,1]");
    }
    if (gene_mut_rate && !is_prob(*gene_mut_rate)) {
        throw ConfigError("gene_mut_rate must be in [0,1]");
    }
    if (tournsize < 1) {
        throw ConfigError("tournsize must be >= 1");
    }
    if (elite_count >= popnum) {
        throw ConfigError("elite_count must be < popnum");
    }
    if (cand_sample && *cand_sample < 1) {
        throw ConfigError("cand_sample must be >= 1");
    }
}

void GAConfig::apply_variant(GAVariant variant) {
    switch (variant) {
    case GAVariant::GCIIM:
        init_mode = InitMode::HCI;
        mutation_mode = MutationMode::CM;
        break;
    case GAVariant::GCI:
        init_mode = InitMode::HCI;
        mutation_mode = MutationMode::Random;
        break;
    case GAVariant::GA:
        init_mode = InitMode::Random;
        mutation_mode = MutationMode::Random;
        break;
    }
}

double GAConfig::resolved_gene_mut_rate(std::size_t k) const {
    if (gene_mut_rate) {
        return *gene_mut_rate;
    }
    return k == 0 ? 0.0 : 1.0 / static_cast<double>(k);
}

std::size_t GAConfig::resolved_cand_sample(std::size_t k) const {
    return cand_sample.value_or(std::max<std::size_t>(k, 1));
}

std::vector<Individual> init_population(const Hypergraph& h, PropagationParams p,
                                        std::size_t k, const GAConfig& cfg, const Rng& rng) {
    cfg.validate();
    if (k > h.num_nodes()) {
        throw std::invalid_argument("seed count k exceeds node count");
    }

    std::vector<double> hci;
    if (cfg.init_mode == InitMode::HCI) {
        hci = all_hci1(h, p);
    }

    std::vector<Individual> pop;
    pop.reserve(cfg.popnum);
    for (std::size_t i = 0; i < cfg.popnum; ++i) {
        Rng sub = rng.fork(kInit, i);
        bool use_hci = false;
        if (cfg.init_mode == InitMode::HCI) {
            use_hci = cfg.init_split == InitSplit::CoinFlip ? sub.bernoulli(0.5)
                                                            : i < cfg.popnum / 2;
        }
        Individual ind = use_hci ? hci_branch_individual(hci, k, sub)
                                 : detail::sample_k_distinct(h.num_nodes(), k, sub);
        check_individual(ind, k, h.num_nodes());
        pop.push_back(std::move(ind));
    }
    return pop;
}

std::pair<Individual, Individual> crossover_two_point(const Individual& a,
                                                      const Individual& b,
                                                      std::size_t num_nodes, Rng& rng) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("crossover parents must have equal length");
    }
    const std::size_t k = a.size();
    if (k < 2) {
        return {a, b};
    }
    // Uniform pair of cut positions 0 <= p1 < p2 <= k.
    const std::size_t p1 = rng.uniform_below(k + 1);
    std::size_t p2 = rng.uniform_below(k);
    if (p2 >= p1) {
        ++p2;
    }
    auto children = detail::swap_segments(a, b, std::min(p1, p2), std::max(p1, p2));
    detail::repair_duplicates(children.first, num_nodes, rng);
    detail::repair_duplicates(children.second, num_nodes, rng);
    check_individual(children.first, k, num_nodes);
    check_individual(children.second, k, num_nodes);
    return children;
}

Individual mutate(const Individual& ind, const Hypergraph& h, PropagationParams p,
                  const GAConfig& cfg, Rng& rng) {
    Mutator mut(h, cfg, cfg.mutation_mode == MutationMode::CM
                            ? all_hci1(h, p)
                            : std::vector<double>(h.num_nodes(), 0.0));
    Individual out = ind;
    mut(out, rng);
    check_individual(out, ind.size(), h.num_nodes());
    return out;
}

RunTrace run_gciim(const Hypergraph& h, PropagationParams p, std::size_t k,
                   const GAConfig& cfg) {
    cfg.validate();
    if (k > h.num_nodes()) {
        throw std::invalid_argument("seed count k exceeds node count");
    }
    const Rng master(cfg.rng_seed);
    CachedFitness fit(h, p);
    Mutator mutator(h, cfg, all_hci1(h, p));

    std::vector<Individual> pop = init_population(h, p, k, cfg, master);
    std::vector<double> fits(cfg.popnum);
    std::size_t evals_before = 0;

    RunTrace trace;
    const auto record = [&](std::size_t) {
        GenerationStats stats;
        stats.evaluations = fit.evaluations() - evals_before;
        evals_before = fit.evaluations();
        std::size_t best_idx = 0;
        double sum = 0.0;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            sum += fits[i];
            if (fits[i] > fits[best_idx]) {
                best_idx = i;
            }
        }
        stats.best_fitness = fits[best_idx];
        stats.mean_fitness = sum / static_cast<double>(pop.size());
        stats.best = pop[best_idx];
        if (trace.generations.empty() || stats.best_fitness > trace.best_fitness) {
            trace.best = stats.best;
            trace.best_fitness = stats.best_fitness;
        }
        trace.generations.push_back(std::move(stats));
    };

    for (std::size_t i = 0; i < pop.size(); ++i) {
        fits[i] = fit(pop[i]);
    }
    record(0);

    const std::size_t offspring_count = cfg.popnum - cfg.elite_count;
    for (std::size_t g = 1; g <= cfg.maxgen; ++g) {
        // Elites: fittest individuals, ties by earlier index.
        std::vector<std::size_t> order(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return fits[x] > fits[y]; });
        std::vector<std::size_t> pool(order.begin() + static_cast<long>(cfg.elite_count),
                                      order.end());
        std::sort(pool.begin(), pool.end()); // non-elite pool in original order

        Rng sel = master.fork(kSelect, g);
        std::vector<Individual> offspring;
        offspring.reserve(cfg.popnum);
        for (std::size_t j = 0; j < offspring_count; ++j) {
            std::size_t winner = pool[sel.uniform_below(pool.size())];
            for (std::size_t round = 1; round < cfg.tournsize; ++round) {
                const std::size_t challenger = pool[sel.uniform_below(pool.size())];
                if (fits[challenger] > fits[winner] ||
                    (fits[challenger] == fits[winner] && challenger < winner)) {
                    winner = challenger;
                }
            }
            offspring.push_back(pop[winner]);
        }

        for (std::size_t pair = 0; pair + 1 < offspring_count; pair += 2) {
            Rng cx = master.fork(kCross, g, pair / 2);
            if (cx.bernoulli(cfg.cxpb)) {
                auto children = crossover_two_point(offspring[pair], offspring[pair + 1],
                                                    h.num_nodes(), cx);
                offspring[pair] = std::move(children.first);
                offspring[pair + 1] = std::move(children.second);
            }
        }

        for (std::size_t j = 0; j < offspring_count; ++j) {
            Rng mu = master.fork(kMut, g, j);
            if (mu.bernoulli(cfg.mutpb)) {
                mutator(offspring[j], mu);
                check_individual(offspring[j], k, h.num_nodes());
            }
        }

        // Next generation: offspring then elites (elites keep cached fitness).
        std::vector<double> next_fits(cfg.popnum);
        for (std::size_t j = 0; j < offspring_count; ++j) {
            next_fits[j] = fit(offspring[j]);
        }
        for (std::size_t i = 0; i < cfg.elite_count; ++i) {
            offspring.push_back(pop[order[i]]);
            next_fits[offspring_count + i] = fits[order[i]];
        }
        pop.swap(offspring);
        fits.swap(next_fits);
        record(g);
    }

    trace.total_evaluations = fit.evaluations();
    return trace;
}

namespace detail {

std::pair<Individual, Individual> swap_segments(const Individual& a, const Individual& b,
                                                std::size_t p1, std::size_t p2) {
    Individual ca = a;
    Individual cb = b;
    for (std::size_t i = p1; i < p2; ++i) {
        std::swap(ca[i], cb[i]);
    }
    return {std::move(ca), std::move(cb)};
}

void repair_duplicates(Individual& child, std::size_t num_nodes, Rng& rng) {
    std::vector<std::uint8_t> present(num_nodes, 0);
    for (std::size_t i = 0; i < child.size(); ++i) {
        while (present[child[i]]) {
            child[i] = static_cast<NodeId>(rng.uniform_below(num_nodes));
        }
        present[child[i]] = 1;
    }
}

NodeId cm_choose(const Hypergraph& h, const Individual& ind, std::size_t pos,
                 std::span<const NodeId> candidates, std::span<const double> hci1_scores) {
    std::vector<NodeId> others;
    others.reserve(ind.size() - 1);
    for (std::size_t j = 0; j < ind.size(); ++j) {
        if (j != pos) {
            others.push_back(ind[j]);
        }
    }
    NodeId best = candidates[0];
    double best_cm = -1.0;
    for (NodeId c : candidates) {
        const double cm = overlap_influence(h, c, others) * hci1_scores[c];
        if (cm > best_cm || (cm == best_cm && c < best)) {
            best_cm = cm;
            best = c;
        }
    }
    return best;
}

Individual weighted_top_k(std::span<const double> scores, std::span<const double> weights,
                          std::size_t k) {
    assert(scores.size() == weights.size());
    std::vector<NodeId> ids(scores.size());
    std::iota(ids.begin(), ids.end(), 0);
    const auto better = [&](NodeId x, NodeId y) {
        const double wx = scores[x] * weights[x];
        const double wy = scores[y] * weights[y];
        if (wx != wy) {
            return wx > wy;
        }
        return x < y;
    };
    std::partial_sort(ids.begin(), ids.begin() + static_cast<long>(k), ids.end(), better);
    ids.resize(k);
    return ids;
}

Individual sample_k_distinct(std::size_t num_nodes, std::size_t k, Rng& rng) {
    if (k > num_nodes) {
        throw std::invalid_argument("cannot sample more distinct nodes than exist");
    }
    // Floyd's algorithm keeps the draw count at k for any pool size.
    std::vector<std::uint8_t> taken(num_nodes, 0);
    Individual out;
    out.reserve(k);
    for (std::size_t j = num_nodes - k; j < num_nodes; ++j) {
        const auto t = static_cast<NodeId>(rng.uniform_below(j + 1));
        if (taken[t]) {
            out.push_back(static_cast<NodeId>(j));
            taken[j] = 1;
        } else {
            out.push_back(t);
            taken[t] = 1;
        }
    }
    return out;
}

} // namespace detail

} // namespace hyperim
