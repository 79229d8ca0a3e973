#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cakebandit/model.hpp"

// Schedule generators for the environment classes the policies are measured
// against, a window-domination check, and CSV ingestion for user schedules.
// Generators are pure functions of (parameters, seed): identical inputs give
// bit-identical schedules, and every generated schedule passes
// validate_schedule before it is returned.

namespace cakebandit {

enum class AdversaryKind { QuasiUniform, SingleDominant, Fmds, FromFile };

AdversaryKind adversary_kind_from_name(std::string_view name);
std::string_view adversary_kind_name(AdversaryKind kind);

// A chain of trends: during trend k the k-th block of agents draws around
// v_high while everyone else draws around v_low, and trend lengths grow with
// the trend index so the k-th trend's cumulative in-trend advantage is about
// k times the first one's.
struct FmdsParams {
    std::vector<int> trend_order;               // permutation of agents; empty = identity
    std::vector<std::int64_t> trend_lengths;    // per trend, summing to T; empty = proportional split
    double v_high = 0.9;
    double v_low = 0.05;
    double noise_amplitude = 0.05;
    int block_size = 1;  // consecutive agents per trend sharing v_high
};

struct AdversarySpec {
    AdversaryKind kind = AdversaryKind::QuasiUniform;
    std::int64_t horizon = 0;
    int num_agents = 0;
    std::uint64_t seed = 0;

    double mean = 0.5;     // quasi-uniform
    double spread = 0.1;   // quasi-uniform
    double v_top = 0.99;   // single-dominant
    double epsilon = 0.01; // single-dominant
    FmdsParams fmds;
    std::string path;      // from-file
};

// Every v[t][a] drawn independently uniform on [mean-spread, mean+spread].
ValuationSchedule gen_quasi_uniform(std::int64_t horizon, int num_agents, double mean,
                                    double spread, std::uint64_t seed);

// Agent 1 worth v_top every round, everyone else epsilon. Deterministic; the
// seed is accepted for interface uniformity and recorded by the harness.
ValuationSchedule gen_single_dominant(std::int64_t horizon, int num_agents, double v_top,
                                      double epsilon, std::uint64_t seed);

ValuationSchedule gen_fmds(std::int64_t horizon, int num_agents, const FmdsParams& params,
                           std::uint64_t seed);

// Dispatches on spec.kind; FromFile loads spec.path.
ValuationSchedule generate_schedule(const AdversarySpec& spec);

// Default trend lengths: proportional to the 1-based trend index, apportioned
// to sum exactly to the horizon, each at least 1, non-decreasing.
std::vector<std::int64_t> default_trend_lengths(std::int64_t horizon, int num_trends);

enum class GrowthFunction { Sqrt, Log, Linear };

GrowthFunction growth_function_from_name(std::string_view name);
double growth_value(GrowthFunction f, double window_length);

// One-sided window check over rounds [t_begin, t_end), 0-based: does agent a's
// valuation sum exceed agent b's by at least c * f(t_end - t_begin)?
// A finite inequality, not an asymptotic-class test.
bool check_domination(const ValuationSchedule& schedule, std::int64_t t_begin,
                      std::int64_t t_end, int agent_a, int agent_b, double c,
                      GrowthFunction f);

// CSV schedule format: header `t,agent_1,...,agent_n` with optional trailing
// `left,right` columns, one row per round, decimal literals. Values written
// with shortest round-trip precision, so save/load is bit-exact.
ValuationSchedule load_csv_schedule(const std::string& path);
void write_csv_schedule(const ValuationSchedule& schedule, const std::string& path);

}  // namespace cakebandit
