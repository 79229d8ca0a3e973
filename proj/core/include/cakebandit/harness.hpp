#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cakebandit/adversaries.hpp"
#include "cakebandit/metrics.hpp"
#include "cakebandit/model.hpp"
#include "cakebandit/policies.hpp"

// Experiment runner: builds adversary and policy from a config, runs seeded
// episodes and horizon sweeps, aggregates Monte-Carlo statistics, and renders
// reports. Reproducibility contract: identical configs (including base_seed)
// produce byte-identical reports, independent of thread count.
//
// Seed rule: stream(h, r) = splitmix64(splitmix64(splitmix64(base_seed) ^ h) ^ r)
// where h is the horizon index and r the replicate index; the per-horizon
// schedule uses r = 2^64 - 1. The rule is echoed in every report.

namespace cakebandit {

enum class PolicyKind { Exp3, AllocateToMin, FrmExp3, Uniform };

PolicyKind policy_kind_from_name(std::string_view name);
std::string_view policy_kind_name(PolicyKind kind);

struct PolicySpec {
    PolicyKind kind = PolicyKind::Exp3;
    std::optional<double> eta;    // default: default_eta(T, n), or 0 when n = 1
    std::optional<double> theta;  // default: default_theta(T)
};

enum class OptMode { Oracle, Zero, Auto };

OptMode opt_mode_from_name(std::string_view name);
std::string_view opt_mode_name(OptMode mode);

enum class ReportFormat { Json, Csv };

ReportFormat report_format_from_name(std::string_view name);
std::string_view report_format_name(ReportFormat format);

struct ExperimentConfig {
    AdversarySpec adversary;  // horizon and seed fields are overridden per swept horizon
    PolicySpec policy;
    std::vector<std::int64_t> horizons;  // must be empty for from_file adversaries
    int num_seeds = 100;
    std::uint64_t base_seed = 0;
    double alpha = 1.0;
    OptMode opt_mode = OptMode::Auto;
    std::uint64_t opt_budget = kDefaultOptBudget;
    double slope_margin = 0.9;  // verdict sublinear iff slope <= margin
    int max_threads = 0;        // 0 = hardware concurrency
    std::string out_path;       // empty = subcommand default
    ReportFormat format = ReportFormat::Json;
};

struct ReplicateResult {
    std::uint64_t seed = 0;
    double revenue_regret = 0.0;
    double fairness_value = 0.0;
    std::vector<double> revenue_regret_curve;  // horizon+1 entries, [0] = 0
    std::vector<double> fairness_value_curve;
};

struct HorizonReport {
    std::int64_t horizon = 0;
    std::uint64_t schedule_seed = 0;
    double mean_revenue_regret = 0.0;
    double stddev_revenue_regret = 0.0;  // sample stddev, 0 for a single replicate
    double mean_fairness_value = 0.0;
    double stddev_fairness_value = 0.0;
    double fairness_regret_vs_zero = 0.0;  // mean fairness value, since F(OPT) >= 0
    std::optional<double> opt_fairness;    // set when the oracle ran
    std::optional<double> fairness_regret_vs_opt;
    std::vector<double> mean_revenue_regret_curve;
    std::vector<double> mean_fairness_value_curve;
    std::vector<ReplicateResult> replicates;  // ordered by replicate index
};

struct SweepSummary {
    double revenue_slope = 0.0;
    double fairness_slope = 0.0;  // fitted on the zero-baseline fairness regret
    double margin = 0.9;
    bool revenue_sublinear = false;
    bool fairness_sublinear = false;
};

struct RunResult {
    ExperimentConfig config;
    std::vector<HorizonReport> horizons;
    std::optional<SweepSummary> sweep;
};

// One episode: per round the policy picks an agent, sees only that agent's
// payment, and the round is recorded. A zero-horizon schedule yields an empty
// trace. The trace is a pure function of (schedule, policy state, seed).
EpisodeTrace run_episode(const ValuationSchedule& schedule, Policy& policy, std::uint64_t seed);

// Fresh policy instance with per-horizon defaults filled in.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::int64_t horizon, int num_agents,
                                    double alpha);

// Per horizon: regenerate the schedule from the adversary spec, run num_seeds
// replicates (concurrently; aggregation is an ordered reduction), attach the
// oracle per opt_mode. Sweep additionally fits log-log slopes over horizons
// (needs >= 3) and attaches the sublinearity verdicts.
RunResult run_monte_carlo(const ExperimentConfig& config);
RunResult run_sweep(const ExperimentConfig& config);

// JSON: one document with config echo, seed rule, per-horizon aggregates,
// per-replicate scalars, and mean per-round curves. CSV: long format
// `horizon,seed,metric,round,value` with every replicate's cumulative curves.
std::string render_report(const RunResult& result, ReportFormat format);
void emit_report(const RunResult& result, ReportFormat format, const std::string& path);

// Config file is JSON; unknown keys are rejected. CLI overrides are applied by
// the caller after loading.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin);
std::string config_to_json(const ExperimentConfig& config);

}  // namespace cakebandit
