#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cakebandit/errors.hpp"

namespace cakebandit {

// One cut piece of the cake, kept as metadata for report readability.
// No algorithm reads the endpoints; everything operates on valuations.
struct Piece {
    double left = 0.0;
    double right = 0.0;
    std::int64_t round_index = 0;  // 1-based round number

    bool operator==(const Piece&) const = default;
};

// The adversary's full instance: one valuation per (round, agent), all in [0,1].
// The payment of agent a for the round-t piece is alpha * value(t, a).
// Immutable after construction by convention; safe to share across episode
// runners running concurrently.
struct ValuationSchedule {
    std::int64_t horizon = 0;    // T
    int num_agents = 0;          // n
    std::vector<double> values;  // row-major horizon x num_agents
    double alpha = 1.0;          // payment scale factor
    std::vector<Piece> pieces;   // optional; empty or exactly horizon entries

    double value(std::int64_t t, int a) const {
        return values[static_cast<std::size_t>(t) * num_agents + a];
    }
    double& value(std::int64_t t, int a) {
        return values[static_cast<std::size_t>(t) * num_agents + a];
    }
    double payment(std::int64_t t, int a) const { return alpha * value(t, a); }

    bool operator==(const ValuationSchedule&) const = default;
};

// Checks dimensions, the per-value [0,1] bound, alpha > 0, and (when present)
// the piece chain 0 <= left <= right <= 1 with piece t starting where piece
// t-1 ended. Returns its argument so call sites can validate in passing.
const ValuationSchedule& validate_schedule(const ValuationSchedule& schedule);

// One round of an episode. The chosen agent fully determines the round's
// allocation indicators: x[a][t] = (a == chosen_agent).
struct RoundRecord {
    int chosen_agent = 0;               // 0-based
    double sampling_probability = 1.0;  // probability of chosen_agent under the policy's full distribution
    double observed_payment = 0.0;      // alpha * v[t][chosen_agent]

    bool operator==(const RoundRecord&) const = default;
};

struct EpisodeTrace {
    std::uint64_t rng_seed = 0;
    std::vector<RoundRecord> rounds;

    std::int64_t horizon() const { return static_cast<std::int64_t>(rounds.size()); }
    int indicator(std::int64_t t, int agent) const {
        return rounds[static_cast<std::size_t>(t)].chosen_agent == agent ? 1 : 0;
    }

    bool operator==(const EpisodeTrace&) const = default;
};

// Regret summary for one trace (or one aggregate). Curves are cumulative and
// have horizon+1 entries with curve[0] = 0, so curve.back() equals the scalar.
struct RegretReport {
    double revenue_regret = 0.0;
    double fairness_value = 0.0;
    std::optional<double> fairness_regret_vs_opt;  // set only when the oracle ran
    double fairness_regret_vs_zero = 0.0;          // equals fairness_value for a single trace
    std::vector<double> revenue_regret_curve;
    std::vector<double> fairness_value_curve;
};

}  // namespace cakebandit
