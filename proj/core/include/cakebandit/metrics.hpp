#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cakebandit/model.hpp"

// Regret computations over (schedule, trace) pairs.
//
// Revenue regret compares collected payments with the best single agent in
// hindsight. The fairness value F is the spread between the highest and lowest
// cumulative valuations the agents received; F = 0 means the allocation is
// envy-free. Fairness regret subtracts the offline optimum, obtained either
// from the exhaustive oracle (small instances) or from the zero baseline,
// which lower-bounds every instance since F >= 0.

namespace cakebandit {

struct OptResult {
    double opt_fairness = 0.0;
    std::vector<int> opt_assignment;  // piece t -> agent, lexicographically smallest witness
    std::uint64_t instances_searched = 0;
};

// Default cap on exhaustive enumeration: n^T assignments.
inline constexpr std::uint64_t kDefaultOptBudget = std::uint64_t{1} << 22;

// Agent with the largest cumulative payment and that payment; ties break to
// the lowest index.
std::pair<int, double> best_fixed_agent_revenue(const ValuationSchedule& schedule);

// Best fixed agent's cumulative payment minus the trace's. May be negative on
// a single trace; only the Monte-Carlo mean is bound-checked.
double revenue_regret(const ValuationSchedule& schedule, const EpisodeTrace& trace);

double fairness_value(const ValuationSchedule& schedule, const EpisodeTrace& trace);

// Prefix curves with horizon+1 entries, curve[0] = 0 rounds, so curve.back()
// equals the scalar metric. The revenue curve re-derives the best fixed agent
// per prefix (anytime regret).
std::vector<double> revenue_regret_curve(const ValuationSchedule& schedule,
                                         const EpisodeTrace& trace);
std::vector<double> fairness_value_curve(const ValuationSchedule& schedule,
                                         const EpisodeTrace& trace);

// Whether n^horizon assignments fit the enumeration budget (overflow-safe).
bool oracle_within_budget(int num_agents, std::int64_t horizon, std::uint64_t budget);

// Enumerates all n^T assignments of pieces to agents and returns the minimal
// fairness value with its first (lexicographically smallest) witness. Throws
// BudgetExceeded before enumerating when n^T > budget.
OptResult brute_force_opt_fairness(const ValuationSchedule& schedule,
                                   std::uint64_t budget = kDefaultOptBudget);

// Mean fairness value across traces minus opt_fairness. Pass 0 for the zero
// baseline, or OptResult::opt_fairness when the oracle ran.
double fairness_regret(const ValuationSchedule& schedule, std::span<const EpisodeTrace> traces,
                       double opt_fairness = 0.0);

// Least-squares slope of log(regret) against log(horizon); regrets are clamped
// at 1e-9 before the log. Needs >= 3 strictly increasing horizons.
double sublinearity_slope(std::span<const std::int64_t> horizons,
                          std::span<const double> regrets);

}  // namespace cakebandit
