#include "hyperim/selectors.hpp"

#include <stdexcept>

#include "hyperim/errors.hpp"
#include "hyperim/metrics.hpp"

namespace hyperim {

namespace {

std::vector<NodeId> run_variant(const Hypergraph& h, PropagationParams p,
                                const SelectorSpec& spec, GAVariant variant,
                                const Rng& rng) {
    GAConfig cfg = spec.ga;
    cfg.apply_variant(variant);
    cfg.rng_seed = rng.fork(0x6761).next_u64(); // derive the GA master seed
    const RunTrace trace = run_gciim(h, p, spec.k, cfg);
    return trace.best;
}

} // namespace

Strategy parse_strategy(const std::string& name) {
    if (name == "hhd") {
        return Strategy::HHD;
    }
    if (name == "hci1") {
        return Strategy::HCI1;
    }
    if (name == "hci2") {
        return Strategy::HCI2;
    }
    if (name == "np") {
        return Strategy::NP;
    }
    if (name == "pr") {
        return Strategy::PR;
    }
    if (name == "rd") {
        return Strategy::RD;
    }
    if (name == "gciim") {
        return Strategy::GCIIM;
    }
    if (name == "gci") {
        return Strategy::GCI;
    }
    if (name == "ga") {
        return Strategy::GA;
    }
    throw ConfigError("unknown strategy '" + name + "'");
}

std::string to_string(Strategy strategy) {
    switch (strategy) {
    case Strategy::HHD:
        return "hhd";
    case Strategy::HCI1:
        return "hci1";
    case Strategy::HCI2:
        return "hci2";
    case Strategy::NP:
        return "np";
    case Strategy::PR:
        return "pr";
    case Strategy::RD:
        return "rd";
    case Strategy::GCIIM:
        return "gciim";
    case Strategy::GCI:
        return "gci";
    case Strategy::GA:
        return "ga";
    }
    return "?";
}

void SelectorSpec::validate(std::size_t num_nodes) const {
    if (k > num_nodes) {
        throw std::invalid_argument("seed count k exceeds node count");
    }
    if (strategy == Strategy::PR && !(damping > 0.0 && damping < 1.0)) {
        throw ConfigError("PR damping must be in (0,1)");
    }
    if (strategy == Strategy::GCIIM || strategy == Strategy::GCI ||
        strategy == Strategy::GA) {
        ga.validate();
    }
}

std::vector<NodeId> select_seeds(const Hypergraph& h, PropagationParams p,
                                 const SelectorSpec& spec, const Rng& rng) {
    spec.validate(h.num_nodes());
    switch (spec.strategy) {
    case Strategy::HHD: {
        std::vector<double> degrees(h.num_nodes());
        for (NodeId v = 0; v < h.num_nodes(); ++v) {
            degrees[v] = static_cast<double>(h.hyperdegree(v));
        }
        return detail::top_k_by_score(degrees, spec.k);
    }
    case Strategy::HCI1:
        return detail::top_k_by_score(all_hci1(h, p), spec.k);
    case Strategy::HCI2:
        return detail::top_k_by_score(all_hci2(h, p), spec.k);
    case Strategy::NP:
        return neighbor_priority_rank(h, spec.k);
    case Strategy::PR: {
        std::vector<double> scores(h.num_nodes());
        for (const NodeScore& ns : pagerank_scores(h, spec.damping)) {
            scores[ns.node] = ns.value;
        }
        return detail::top_k_by_score(scores, spec.k);
    }
    case Strategy::RD: {
        Rng sub = rng.fork(0x7264);
        return detail::sample_k_distinct(h.num_nodes(), spec.k, sub);
    }
    case Strategy::GCIIM:
        return run_variant(h, p, spec, GAVariant::GCIIM, rng);
    case Strategy::GCI:
        return run_variant(h, p, spec, GAVariant::GCI, rng);
    case Strategy::GA:
        return run_variant(h, p, spec, GAVariant::GA, rng);
    }
    throw std::logic_error("unreachable strategy");
}

} // namespace hyperim
