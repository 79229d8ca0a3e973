#include "cakebandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cakebandit/errors.hpp"
#include "cakebandit/random.hpp"

namespace cakebandit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSeedRule =
    "stream(h,r) = splitmix64(splitmix64(splitmix64(base_seed) ^ h) ^ r); "
    "h = horizon index, r = replicate index; the schedule stream uses r = 2^64-1";

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

[[noreturn]] void config_fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return it.key() == k; });
        if (!known) config_fail(where, "unknown key '" + it.key() + "'");
    }
}

// Returns nullptr for both missing keys and explicit nulls.
const json* opt_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
}

const json& require_object(const json& obj, const char* key, const std::string& where) {
    const json* field = opt_field(obj, key);
    if (field == nullptr) config_fail(where, "missing required key '" + std::string(key) + "'");
    if (!field->is_object()) config_fail(where, "'" + std::string(key) + "' must be an object");
    return *field;
}

double get_double(const json& obj, const char* key, double fallback, const std::string& where) {
    const json* field = opt_field(obj, key);
    if (field == nullptr) return fallback;
    if (!field->is_number()) config_fail(where, "'" + std::string(key) + "' must be a number");
    return field->get<double>();
}

std::int64_t get_int(const json& obj, const char* key, std::int64_t fallback,
                     const std::string& where) {
    const json* field = opt_field(obj, key);
    if (field == nullptr) return fallback;
    if (!field->is_number_integer()) {
        config_fail(where, "'" + std::string(key) + "' must be an integer");
    }
    return field->get<std::int64_t>();
}

std::uint64_t get_uint64(const json& obj, const char* key, std::uint64_t fallback,
                         const std::string& where) {
    const json* field = opt_field(obj, key);
    if (field == nullptr) return fallback;
    if (field->is_number_unsigned()) return field->get<std::uint64_t>();
    if (field->is_number_integer() && field->get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(field->get<std::int64_t>());
    }
    config_fail(where, "'" + std::string(key) + "' must be a non-negative integer");
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where) {
    const json* field = opt_field(obj, key);
    if (field == nullptr) return fallback;
    if (!field->is_string()) config_fail(where, "'" + std::string(key) + "' must be a string");
    return field->get<std::string>();
}

AdversarySpec parse_adversary(const json& obj, const std::string& where) {
    AdversarySpec spec;
    const std::string kind = get_string(obj, "kind", "", where);
    if (kind.empty()) config_fail(where, "missing required key 'kind'");
    try {
        spec.kind = adversary_kind_from_name(kind);
    } catch (const Error& e) {
        config_fail(where, e.what());
    }
    switch (spec.kind) {
        case AdversaryKind::QuasiUniform:
            check_keys(obj, {"kind", "num_agents", "mean", "spread"}, where);
            spec.mean = get_double(obj, "mean", spec.mean, where);
            spec.spread = get_double(obj, "spread", spec.spread, where);
            break;
        case AdversaryKind::SingleDominant:
            check_keys(obj, {"kind", "num_agents", "v_top", "epsilon"}, where);
            spec.v_top = get_double(obj, "v_top", spec.v_top, where);
            spec.epsilon = get_double(obj, "epsilon", spec.epsilon, where);
            break;
        case AdversaryKind::Fmds: {
            check_keys(obj, {"kind", "num_agents", "fmds"}, where);
            const json* params = opt_field(obj, "fmds");
            if (params != nullptr) {
                if (!params->is_object()) config_fail(where, "'fmds' must be an object");
                const std::string sub = where + ".fmds";
                check_keys(*params,
                           {"trend_order", "trend_lengths", "v_high", "v_low",
                            "noise_amplitude", "block_size"},
                           sub);
                spec.fmds.v_high = get_double(*params, "v_high", spec.fmds.v_high, sub);
                spec.fmds.v_low = get_double(*params, "v_low", spec.fmds.v_low, sub);
                spec.fmds.noise_amplitude =
                    get_double(*params, "noise_amplitude", spec.fmds.noise_amplitude, sub);
                spec.fmds.block_size = static_cast<int>(
                    get_int(*params, "block_size", spec.fmds.block_size, sub));
                if (const json* order = opt_field(*params, "trend_order")) {
                    if (!order->is_array()) config_fail(sub, "'trend_order' must be an array");
                    for (const json& v : *order) {
                        if (!v.is_number_integer()) {
                            config_fail(sub, "'trend_order' entries must be integers");
                        }
                        spec.fmds.trend_order.push_back(v.get<int>());
                    }
                }
                if (const json* lens = opt_field(*params, "trend_lengths")) {
                    if (!lens->is_array()) config_fail(sub, "'trend_lengths' must be an array");
                    for (const json& v : *lens) {
                        if (!v.is_number_integer()) {
                            config_fail(sub, "'trend_lengths' entries must be integers");
                        }
                        spec.fmds.trend_lengths.push_back(v.get<std::int64_t>());
                    }
                }
            }
            break;
        }
        case AdversaryKind::FromFile:
            check_keys(obj, {"kind", "path"}, where);
            spec.path = get_string(obj, "path", "", where);
            if (spec.path.empty()) config_fail(where, "from_file requires a non-empty 'path'");
            break;
    }
    if (spec.kind != AdversaryKind::FromFile) {
        spec.num_agents = static_cast<int>(get_int(obj, "num_agents", 0, where));
        if (spec.num_agents < 1) {
            config_fail(where, "'num_agents' must be a positive integer");
        }
    }
    return spec;
}

PolicySpec parse_policy(const json& obj, const std::string& where) {
    PolicySpec spec;
    const std::string kind = get_string(obj, "kind", "", where);
    if (kind.empty()) config_fail(where, "missing required key 'kind'");
    try {
        spec.kind = policy_kind_from_name(kind);
    } catch (const Error& e) {
        config_fail(where, e.what());
    }
    switch (spec.kind) {
        case PolicyKind::Exp3:
            check_keys(obj, {"kind", "eta"}, where);
            break;
        case PolicyKind::FrmExp3:
            check_keys(obj, {"kind", "eta", "theta"}, where);
            break;
        case PolicyKind::AllocateToMin:
        case PolicyKind::Uniform:
            check_keys(obj, {"kind"}, where);
            break;
    }
    if (const json* eta = opt_field(obj, "eta")) {
        if (!eta->is_number()) config_fail(where, "'eta' must be a number");
        spec.eta = eta->get<double>();
    }
    if (const json* theta = opt_field(obj, "theta")) {
        if (!theta->is_number()) config_fail(where, "'theta' must be a number");
        spec.theta = theta->get<double>();
    }
    return spec;
}

ordered_json adversary_to_json(const AdversarySpec& spec) {
    ordered_json j;
    j["kind"] = std::string(adversary_kind_name(spec.kind));
    switch (spec.kind) {
        case AdversaryKind::QuasiUniform:
            j["num_agents"] = spec.num_agents;
            j["mean"] = spec.mean;
            j["spread"] = spec.spread;
            break;
        case AdversaryKind::SingleDominant:
            j["num_agents"] = spec.num_agents;
            j["v_top"] = spec.v_top;
            j["epsilon"] = spec.epsilon;
            break;
        case AdversaryKind::Fmds: {
            j["num_agents"] = spec.num_agents;
            ordered_json f;
            if (!spec.fmds.trend_order.empty()) f["trend_order"] = spec.fmds.trend_order;
            if (!spec.fmds.trend_lengths.empty()) f["trend_lengths"] = spec.fmds.trend_lengths;
            f["v_high"] = spec.fmds.v_high;
            f["v_low"] = spec.fmds.v_low;
            f["noise_amplitude"] = spec.fmds.noise_amplitude;
            f["block_size"] = spec.fmds.block_size;
            j["fmds"] = std::move(f);
            break;
        }
        case AdversaryKind::FromFile:
            j["path"] = spec.path;
            break;
    }
    return j;
}

ordered_json config_to_ordered_json(const ExperimentConfig& config) {
    ordered_json j;
    j["adversary"] = adversary_to_json(config.adversary);
    ordered_json policy;
    policy["kind"] = std::string(policy_kind_name(config.policy.kind));
    if (config.policy.eta) policy["eta"] = *config.policy.eta;
    if (config.policy.theta) policy["theta"] = *config.policy.theta;
    j["policy"] = std::move(policy);
    j["horizons"] = config.horizons;
    j["num_seeds"] = config.num_seeds;
    j["base_seed"] = config.base_seed;
    j["alpha"] = config.alpha;
    j["opt_mode"] = std::string(opt_mode_name(config.opt_mode));
    j["opt_budget"] = config.opt_budget;
    j["slope_margin"] = config.slope_margin;
    j["max_threads"] = config.max_threads;
    ordered_json output;
    output["path"] = config.out_path;
    output["format"] = std::string(report_format_name(config.format));
    j["output"] = std::move(output);
    return j;
}

// Claims replicate indices from a shared counter; the first failure wins and
// is rethrown on the caller's thread after everyone joins.
void parallel_for(std::size_t jobs, int max_threads,
                  const std::function<void(std::size_t)>& body) {
    unsigned hardware = std::thread::hardware_concurrency();
    if (hardware == 0) hardware = 1;
    std::size_t workers = max_threads > 0 ? static_cast<std::size_t>(max_threads) : hardware;
    workers = std::min(workers, jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs) return;
            try {
                body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

HorizonReport run_horizon(const ExperimentConfig& config, const ValuationSchedule& schedule,
                          std::uint64_t schedule_seed, std::size_t horizon_index) {
    HorizonReport report;
    report.horizon = schedule.horizon;
    report.schedule_seed = schedule_seed;
    const std::size_t reps = static_cast<std::size_t>(config.num_seeds);
    report.replicates.resize(reps);

    parallel_for(reps, config.max_threads, [&](std::size_t rep) {
        ReplicateResult& out = report.replicates[rep];
        out.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(horizon_index),
                               static_cast<std::uint64_t>(rep));
        auto policy = make_policy(config.policy, schedule.horizon, schedule.num_agents,
                                  schedule.alpha);
        const EpisodeTrace trace = run_episode(schedule, *policy, out.seed);
        out.revenue_regret_curve = revenue_regret_curve(schedule, trace);
        out.fairness_value_curve = fairness_value_curve(schedule, trace);
        out.revenue_regret = out.revenue_regret_curve.back();
        out.fairness_value = out.fairness_value_curve.back();
    });

    // Ordered reduction: replicate index order, not completion order, so the
    // aggregates are independent of thread scheduling.
    const auto count = static_cast<double>(reps);
    double sum_rev = 0.0, sum_fair = 0.0;
    for (const ReplicateResult& r : report.replicates) {
        sum_rev += r.revenue_regret;
        sum_fair += r.fairness_value;
    }
    report.mean_revenue_regret = sum_rev / count;
    report.mean_fairness_value = sum_fair / count;
    if (reps > 1) {
        double ss_rev = 0.0, ss_fair = 0.0;
        for (const ReplicateResult& r : report.replicates) {
            ss_rev += (r.revenue_regret - report.mean_revenue_regret) *
                      (r.revenue_regret - report.mean_revenue_regret);
            ss_fair += (r.fairness_value - report.mean_fairness_value) *
                       (r.fairness_value - report.mean_fairness_value);
        }
        report.stddev_revenue_regret = std::sqrt(ss_rev / (count - 1.0));
        report.stddev_fairness_value = std::sqrt(ss_fair / (count - 1.0));
    }

    const std::size_t points = static_cast<std::size_t>(schedule.horizon) + 1;
    report.mean_revenue_regret_curve.assign(points, 0.0);
    report.mean_fairness_value_curve.assign(points, 0.0);
    for (const ReplicateResult& r : report.replicates) {
        for (std::size_t i = 0; i < points; ++i) {
            report.mean_revenue_regret_curve[i] += r.revenue_regret_curve[i];
            report.mean_fairness_value_curve[i] += r.fairness_value_curve[i];
        }
    }
    for (std::size_t i = 0; i < points; ++i) {
        report.mean_revenue_regret_curve[i] /= count;
        report.mean_fairness_value_curve[i] /= count;
    }

    report.fairness_regret_vs_zero = report.mean_fairness_value;
    const bool want_oracle =
        config.opt_mode == OptMode::Oracle ||
        (config.opt_mode == OptMode::Auto &&
         oracle_within_budget(schedule.num_agents, schedule.horizon, config.opt_budget));
    if (want_oracle) {
        const OptResult opt = brute_force_opt_fairness(schedule, config.opt_budget);
        report.opt_fairness = opt.opt_fairness;
        report.fairness_regret_vs_opt = report.mean_fairness_value - opt.opt_fairness;
    }
    return report;
}

}  // namespace

PolicyKind policy_kind_from_name(std::string_view name) {
    if (name == "exp3") return PolicyKind::Exp3;
    if (name == "allocate_to_min") return PolicyKind::AllocateToMin;
    if (name == "frm_exp3") return PolicyKind::FrmExp3;
    if (name == "uniform") return PolicyKind::Uniform;
    throw InvalidParameter("unknown policy '" + std::string(name) + "'");
}

std::string_view policy_kind_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Exp3: return "exp3";
        case PolicyKind::AllocateToMin: return "allocate_to_min";
        case PolicyKind::FrmExp3: return "frm_exp3";
        case PolicyKind::Uniform: return "uniform";
    }
    throw InvalidParameter("unknown policy kind");
}

OptMode opt_mode_from_name(std::string_view name) {
    if (name == "oracle") return OptMode::Oracle;
    if (name == "zero") return OptMode::Zero;
    if (name == "auto") return OptMode::Auto;
    throw InvalidParameter("unknown opt mode '" + std::string(name) + "'");
}

std::string_view opt_mode_name(OptMode mode) {
    switch (mode) {
        case OptMode::Oracle: return "oracle";
        case OptMode::Zero: return "zero";
        case OptMode::Auto: return "auto";
    }
    throw InvalidParameter("unknown opt mode");
}

ReportFormat report_format_from_name(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    throw InvalidParameter("unknown report format '" + std::string(name) + "'");
}

std::string_view report_format_name(ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return "json";
        case ReportFormat::Csv: return "csv";
    }
    throw InvalidParameter("unknown report format");
}

EpisodeTrace run_episode(const ValuationSchedule& schedule, Policy& policy, std::uint64_t seed) {
    if (schedule.horizon < 0 || schedule.num_agents < 1 ||
        schedule.values.size() != static_cast<std::size_t>(schedule.horizon) *
                                      static_cast<std::size_t>(schedule.num_agents)) {
        throw DimensionMismatch("schedule dimensions are inconsistent");
    }
    EpisodeTrace trace;
    trace.rng_seed = seed;
    trace.rounds.reserve(static_cast<std::size_t>(schedule.horizon));
    std::mt19937_64 rng(seed);
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        const PolicyDecision decision = policy.select(rng);
        if (decision.chosen_agent < 0 || decision.chosen_agent >= schedule.num_agents) {
            throw IndexOutOfRange("policy chose agent " + std::to_string(decision.chosen_agent) +
                                  ", schedule has " + std::to_string(schedule.num_agents));
        }
        // Bandit feedback: the policy sees the chosen agent's payment, nothing
        // else from the valuation row.
        const double payment = schedule.payment(t, decision.chosen_agent);
        policy.observe(decision, payment);
        trace.rounds.push_back({decision.chosen_agent, decision.probability_used, payment});
    }
    return trace;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::int64_t horizon, int num_agents,
                                    double alpha) {
    const auto eta = [&] {
        if (spec.eta) return *spec.eta;
        // default_eta rejects n = 1; eta is irrelevant for a single agent.
        return num_agents >= 2 ? default_eta(horizon, num_agents) : 0.0;
    };
    switch (spec.kind) {
        case PolicyKind::Exp3:
            return std::make_unique<Exp3Policy>(num_agents, eta(), alpha);
        case PolicyKind::AllocateToMin:
            return std::make_unique<AllocateToMinPolicy>(num_agents, alpha);
        case PolicyKind::FrmExp3:
            return std::make_unique<FrmExp3Policy>(
                num_agents, eta(), spec.theta ? *spec.theta : default_theta(horizon), alpha);
        case PolicyKind::Uniform:
            return std::make_unique<UniformRandomPolicy>(num_agents);
    }
    throw InvalidParameter("unknown policy kind");
}

RunResult run_monte_carlo(const ExperimentConfig& config) {
    if (config.num_seeds < 1) {
        throw ConfigError("num_seeds must be at least 1, got " +
                          std::to_string(config.num_seeds));
    }
    if (!(config.alpha > 0.0)) {
        throw NonPositiveAlpha("alpha must be > 0, got " + format_double(config.alpha));
    }
    RunResult result;
    result.config = config;
    if (config.adversary.kind == AdversaryKind::FromFile) {
        if (!config.horizons.empty()) {
            throw ConfigError("horizons cannot be combined with a from_file adversary; "
                              "the file fixes the horizon");
        }
        ValuationSchedule schedule = load_csv_schedule(config.adversary.path);
        schedule.alpha = config.alpha;
        result.horizons.push_back(
            run_horizon(config, schedule, derive_seed(config.base_seed, 0, kScheduleStream), 0));
        return result;
    }
    for (std::size_t h = 0; h < config.horizons.size(); ++h) {
        AdversarySpec spec = config.adversary;
        spec.horizon = config.horizons[h];
        spec.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(h), kScheduleStream);
        ValuationSchedule schedule = generate_schedule(spec);
        schedule.alpha = config.alpha;
        result.horizons.push_back(run_horizon(config, schedule, spec.seed, h));
    }
    return result;
}

RunResult run_sweep(const ExperimentConfig& config) {
    if (config.horizons.size() < 3) {
        throw InsufficientPoints("sweep needs at least 3 horizons, got " +
                                 std::to_string(config.horizons.size()));
    }
    RunResult result = run_monte_carlo(config);
    std::vector<double> revenue, fairness;
    revenue.reserve(result.horizons.size());
    fairness.reserve(result.horizons.size());
    for (const HorizonReport& h : result.horizons) {
        revenue.push_back(h.mean_revenue_regret);
        fairness.push_back(h.fairness_regret_vs_zero);
    }
    SweepSummary summary;
    summary.revenue_slope = sublinearity_slope(config.horizons, revenue);
    summary.fairness_slope = sublinearity_slope(config.horizons, fairness);
    summary.margin = config.slope_margin;
    summary.revenue_sublinear = summary.revenue_slope <= summary.margin;
    summary.fairness_sublinear = summary.fairness_slope <= summary.margin;
    result.sweep = summary;
    return result;
}

std::string render_report(const RunResult& result, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::string out = "horizon,seed,metric,round,value\n";
        for (const HorizonReport& h : result.horizons) {
            for (const ReplicateResult& rep : h.replicates) {
                const auto emit = [&](const char* metric, const std::vector<double>& curve) {
                    for (std::size_t round = 0; round < curve.size(); ++round) {
                        out += std::to_string(h.horizon);
                        out += ',';
                        out += std::to_string(rep.seed);
                        out += ',';
                        out += metric;
                        out += ',';
                        out += std::to_string(round);
                        out += ',';
                        out += format_double(curve[round]);
                        out += '\n';
                    }
                };
                emit("revenue_regret", rep.revenue_regret_curve);
                emit("fairness_value", rep.fairness_value_curve);
            }
        }
        return out;
    }

    ordered_json doc;
    doc["tool"] = "cakebandit/1.0.0";
    doc["config"] = config_to_ordered_json(result.config);
    doc["seed_rule"] = kSeedRule;
    ordered_json horizons = ordered_json::array();
    for (const HorizonReport& h : result.horizons) {
        ordered_json entry;
        entry["horizon"] = h.horizon;
        entry["schedule_seed"] = h.schedule_seed;
        entry["num_replicates"] = h.replicates.size();
        ordered_json seeds = ordered_json::array();
        ordered_json rev = ordered_json::array();
        ordered_json fair = ordered_json::array();
        for (const ReplicateResult& rep : h.replicates) {
            seeds.push_back(rep.seed);
            rev.push_back(rep.revenue_regret);
            fair.push_back(rep.fairness_value);
        }
        entry["replicate_seeds"] = std::move(seeds);
        entry["revenue_regret"] = {{"mean", h.mean_revenue_regret},
                                   {"stddev", h.stddev_revenue_regret},
                                   {"per_replicate", std::move(rev)}};
        entry["fairness_value"] = {{"mean", h.mean_fairness_value},
                                   {"stddev", h.stddev_fairness_value},
                                   {"per_replicate", std::move(fair)}};
        entry["fairness_regret_vs_zero"] = h.fairness_regret_vs_zero;
        entry["opt_fairness"] = h.opt_fairness ? ordered_json(*h.opt_fairness) : ordered_json();
        entry["fairness_regret_vs_opt"] =
            h.fairness_regret_vs_opt ? ordered_json(*h.fairness_regret_vs_opt) : ordered_json();
        entry["mean_revenue_regret_curve"] = h.mean_revenue_regret_curve;
        entry["mean_fairness_value_curve"] = h.mean_fairness_value_curve;
        horizons.push_back(std::move(entry));
    }
    doc["horizons"] = std::move(horizons);
    if (result.sweep) {
        ordered_json sweep;
        sweep["margin"] = result.sweep->margin;
        sweep["revenue_slope"] = result.sweep->revenue_slope;
        sweep["revenue_verdict"] = result.sweep->revenue_sublinear ? "sublinear" : "linear";
        sweep["fairness_slope"] = result.sweep->fairness_slope;
        sweep["fairness_verdict"] = result.sweep->fairness_sublinear ? "sublinear" : "linear";
        doc["sweep"] = std::move(sweep);
    }
    return doc.dump(2) + "\n";
}

void emit_report(const RunResult& result, ReportFormat format, const std::string& path) {
    const std::string body = render_report(result, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << body;
    if (!out) {
        throw IoError("failed while writing '" + path + "'");
    }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
    check_keys(doc,
               {"adversary", "policy", "horizons", "num_seeds", "base_seed", "alpha", "opt_mode",
                "opt_budget", "slope_margin", "max_threads", "output"},
               origin);

    ExperimentConfig config;
    config.adversary = parse_adversary(require_object(doc, "adversary", origin),
                                       origin + ".adversary");
    config.policy = parse_policy(require_object(doc, "policy", origin), origin + ".policy");

    if (const json* horizons = opt_field(doc, "horizons")) {
        if (!horizons->is_array()) config_fail(origin, "'horizons' must be an array");
        for (const json& h : *horizons) {
            if (!h.is_number_integer() || h.get<std::int64_t>() < 1) {
                config_fail(origin, "'horizons' entries must be positive integers");
            }
            config.horizons.push_back(h.get<std::int64_t>());
        }
    }
    config.num_seeds = static_cast<int>(get_int(doc, "num_seeds", config.num_seeds, origin));
    if (config.num_seeds < 1) config_fail(origin, "'num_seeds' must be at least 1");
    config.base_seed = get_uint64(doc, "base_seed", config.base_seed, origin);
    config.alpha = get_double(doc, "alpha", config.alpha, origin);
    if (!(config.alpha > 0.0)) config_fail(origin, "'alpha' must be > 0");
    try {
        config.opt_mode = opt_mode_from_name(get_string(doc, "opt_mode", "auto", origin));
    } catch (const Error& e) {
        config_fail(origin, e.what());
    }
    config.opt_budget = get_uint64(doc, "opt_budget", config.opt_budget, origin);
    if (config.opt_budget < 1) config_fail(origin, "'opt_budget' must be at least 1");
    config.slope_margin = get_double(doc, "slope_margin", config.slope_margin, origin);
    if (!(config.slope_margin > 0.0)) config_fail(origin, "'slope_margin' must be > 0");
    config.max_threads = static_cast<int>(get_int(doc, "max_threads", 0, origin));
    if (config.max_threads < 0) config_fail(origin, "'max_threads' must be >= 0");
    if (const json* output = opt_field(doc, "output")) {
        if (!output->is_object()) config_fail(origin, "'output' must be an object");
        check_keys(*output, {"path", "format"}, origin + ".output");
        config.out_path = get_string(*output, "path", "", origin + ".output");
        try {
            config.format =
                report_format_from_name(get_string(*output, "format", "json", origin + ".output"));
        } catch (const Error& e) {
            config_fail(origin + ".output", e.what());
        }
    }
    if (config.adversary.kind == AdversaryKind::FromFile && !config.horizons.empty()) {
        config_fail(origin, "'horizons' cannot be combined with a from_file adversary");
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}

std::string config_to_json(const ExperimentConfig& config) {
    return config_to_ordered_json(config).dump(2) + "\n";
}

}  // namespace cakebandit
