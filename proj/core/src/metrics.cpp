#include "cakebandit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cakebandit/errors.hpp"

namespace cakebandit {

namespace {

void check_trace(const ValuationSchedule& schedule, const EpisodeTrace& trace) {
    if (trace.horizon() != schedule.horizon) {
        throw DimensionMismatch("trace has " + std::to_string(trace.horizon()) +
                                " rounds, schedule has " + std::to_string(schedule.horizon));
    }
    for (std::int64_t t = 0; t < trace.horizon(); ++t) {
        const int a = trace.rounds[static_cast<std::size_t>(t)].chosen_agent;
        if (a < 0 || a >= schedule.num_agents) {
            throw IndexOutOfRange("trace round " + std::to_string(t + 1) + " chose agent " +
                                  std::to_string(a) + ", schedule has " +
                                  std::to_string(schedule.num_agents));
        }
    }
}

double spread(const std::vector<double>& sums) {
    const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    return *hi - *lo;
}

}  // namespace

std::pair<int, double> best_fixed_agent_revenue(const ValuationSchedule& schedule) {
    validate_schedule(schedule);
    std::vector<double> totals(static_cast<std::size_t>(schedule.num_agents), 0.0);
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        for (int a = 0; a < schedule.num_agents; ++a) {
            totals[static_cast<std::size_t>(a)] += schedule.payment(t, a);
        }
    }
    const auto best = std::max_element(totals.begin(), totals.end());
    return {static_cast<int>(best - totals.begin()), *best};
}

double revenue_regret(const ValuationSchedule& schedule, const EpisodeTrace& trace) {
    check_trace(schedule, trace);
    double collected = 0.0;
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        collected += schedule.payment(t, trace.rounds[static_cast<std::size_t>(t)].chosen_agent);
    }
    return best_fixed_agent_revenue(schedule).second - collected;
}

double fairness_value(const ValuationSchedule& schedule, const EpisodeTrace& trace) {
    check_trace(schedule, trace);
    std::vector<double> received(static_cast<std::size_t>(schedule.num_agents), 0.0);
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        const int a = trace.rounds[static_cast<std::size_t>(t)].chosen_agent;
        received[static_cast<std::size_t>(a)] += schedule.value(t, a);
    }
    return spread(received);
}

std::vector<double> revenue_regret_curve(const ValuationSchedule& schedule,
                                         const EpisodeTrace& trace) {
    check_trace(schedule, trace);
    std::vector<double> curve(static_cast<std::size_t>(schedule.horizon) + 1, 0.0);
    std::vector<double> fixed(static_cast<std::size_t>(schedule.num_agents), 0.0);
    double collected = 0.0;
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        for (int a = 0; a < schedule.num_agents; ++a) {
            fixed[static_cast<std::size_t>(a)] += schedule.payment(t, a);
        }
        collected += schedule.payment(t, trace.rounds[static_cast<std::size_t>(t)].chosen_agent);
        curve[static_cast<std::size_t>(t) + 1] =
            *std::max_element(fixed.begin(), fixed.end()) - collected;
    }
    return curve;
}

std::vector<double> fairness_value_curve(const ValuationSchedule& schedule,
                                         const EpisodeTrace& trace) {
    check_trace(schedule, trace);
    std::vector<double> curve(static_cast<std::size_t>(schedule.horizon) + 1, 0.0);
    std::vector<double> received(static_cast<std::size_t>(schedule.num_agents), 0.0);
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        const int a = trace.rounds[static_cast<std::size_t>(t)].chosen_agent;
        received[static_cast<std::size_t>(a)] += schedule.value(t, a);
        curve[static_cast<std::size_t>(t) + 1] = spread(received);
    }
    return curve;
}

bool oracle_within_budget(int num_agents, std::int64_t horizon, std::uint64_t budget) {
    if (num_agents < 1 || horizon < 0) return false;
    std::uint64_t total = 1;
    for (std::int64_t t = 0; t < horizon; ++t) {
        if (total > budget / static_cast<std::uint64_t>(num_agents)) return false;
        total *= static_cast<std::uint64_t>(num_agents);
    }
    return total <= budget;
}

OptResult brute_force_opt_fairness(const ValuationSchedule& schedule, std::uint64_t budget) {
    validate_schedule(schedule);
    const int n = schedule.num_agents;
    const std::int64_t horizon = schedule.horizon;
    if (!oracle_within_budget(n, horizon, budget)) {
        throw BudgetExceeded(n, horizon, budget);
    }
    std::uint64_t total = 1;
    for (std::int64_t t = 0; t < horizon; ++t) {
        total *= static_cast<std::uint64_t>(n);
    }

    // Odometer over assignments with the last round as the least significant
    // digit, so enumeration is lexicographic and the first minimum found is
    // the lexicographically smallest witness. Sums update incrementally.
    std::vector<int> assignment(static_cast<std::size_t>(horizon), 0);
    std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t t = 0; t < horizon; ++t) {
        sums[0] += schedule.value(t, 0);
    }

    OptResult result;
    result.opt_fairness = spread(sums);
    result.opt_assignment = assignment;
    result.instances_searched = total;

    for (std::uint64_t step = 1; step < total; ++step) {
        std::int64_t pos = horizon - 1;
        while (assignment[static_cast<std::size_t>(pos)] == n - 1) {
            sums[static_cast<std::size_t>(n - 1)] -= schedule.value(pos, n - 1);
            sums[0] += schedule.value(pos, 0);
            assignment[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        const int from = assignment[static_cast<std::size_t>(pos)];
        sums[static_cast<std::size_t>(from)] -= schedule.value(pos, from);
        sums[static_cast<std::size_t>(from) + 1] += schedule.value(pos, from + 1);
        ++assignment[static_cast<std::size_t>(pos)];

        const double f = spread(sums);
        if (f < result.opt_fairness) {
            result.opt_fairness = f;
            result.opt_assignment = assignment;
        }
    }
    return result;
}

double fairness_regret(const ValuationSchedule& schedule, std::span<const EpisodeTrace> traces,
                       double opt_fairness) {
    if (traces.empty()) {
        throw EmptyTraceSet("fairness_regret needs at least one trace");
    }
    double mean = 0.0;
    for (const EpisodeTrace& trace : traces) {
        mean += fairness_value(schedule, trace);
    }
    mean /= static_cast<double>(traces.size());
    return mean - opt_fairness;
}

double sublinearity_slope(std::span<const std::int64_t> horizons,
                          std::span<const double> regrets) {
    if (horizons.size() != regrets.size()) {
        throw LengthMismatch("got " + std::to_string(horizons.size()) + " horizons but " +
                             std::to_string(regrets.size()) + " regrets");
    }
    if (horizons.size() < 3) {
        throw InsufficientPoints("slope fit needs at least 3 points, got " +
                                 std::to_string(horizons.size()));
    }
    const std::size_t m = horizons.size();
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1])) {
            throw InvalidParameter("horizons must be positive and strictly increasing");
        }
        x[i] = std::log(static_cast<double>(horizons[i]));
        y[i] = std::log(std::max(regrets[i], 1e-9));
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
    }
    return sxy / sxx;
}

}  // namespace cakebandit
