#pragma once

#include <string>
#include <vector>

#include "hyperim/ga.hpp"
#include "hyperim/hypergraph.hpp"
#include "hyperim/rng.hpp"

namespace hyperim {

/// Seed-selection strategies. The first six are non-evolutionary baselines;
/// the last three run the optimizer variants.
enum class Strategy { HHD, HCI1, HCI2, NP, PR, RD, GCIIM, GCI, GA };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy strategy);

struct SelectorSpec {
    Strategy strategy = Strategy::HHD;
    std::size_t k = 1;
    double damping = 0.85; // PR only
    GAConfig ga;           // evolutionary strategies only

    void validate(std::size_t num_nodes) const;
};

/// Returns k distinct node ids. Static strategies (hhd, hci1, hci2, np, pr)
/// ignore rng and are deterministic; rd and the GA variants consume it.
/// Top-k rankings break ties by lower node id.
std::vector<NodeId> select_seeds(const Hypergraph& h, PropagationParams p,
                                 const SelectorSpec& spec, const Rng& rng);

} // namespace hyperim
