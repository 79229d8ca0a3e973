// Command-line front end: `run` (Monte-Carlo over configured horizons),
// `sweep` (multi-horizon slope fit), `gen` (emit a schedule CSV), `opt`
// (exhaustive fairness oracle on a CSV schedule).
//
// Exit codes: 0 success, 2 config/usage error, 3 enumeration budget exceeded,
// 4 I/O error. CAKEBANDIT_OUT_DIR sets the directory for default output paths;
// explicit --out values are used verbatim.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cakebandit/adversaries.hpp"
#include "cakebandit/errors.hpp"
#include "cakebandit/harness.hpp"
#include "cakebandit/metrics.hpp"

namespace {

using namespace cakebandit;

std::string default_out(const std::string& filename) {
    const char* dir = std::getenv("CAKEBANDIT_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return filename;
    return (std::filesystem::path(dir) / filename).string();
}

std::string report_path(const ExperimentConfig& config, const std::string& stem) {
    if (!config.out_path.empty()) return config.out_path;
    return default_out(stem + "." + std::string(report_format_name(config.format)));
}

struct RunArgs {
    std::string config_path;
    int seeds = 0;
    std::uint64_t base_seed = 0;
    std::vector<std::int64_t> horizons;
    double margin = 0.0;
    int threads = -1;
    std::string out;
    std::string format;

    CLI::Option* seeds_opt = nullptr;
    CLI::Option* base_seed_opt = nullptr;
    CLI::Option* horizons_opt = nullptr;
    CLI::Option* margin_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
};

void add_run_options(CLI::App& cmd, RunArgs& args, bool sweep) {
    cmd.add_option("--config", args.config_path, "JSON experiment config")->required();
    args.seeds_opt = cmd.add_option("--seeds", args.seeds, "override num_seeds");
    args.base_seed_opt = cmd.add_option("--base-seed", args.base_seed, "override base_seed");
    args.threads_opt = cmd.add_option("--threads", args.threads,
                                      "override max_threads (0 = hardware)");
    cmd.add_option("--out", args.out, "report path");
    cmd.add_option("--format", args.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    if (sweep) {
        args.horizons_opt = cmd.add_option("--horizons", args.horizons,
                                           "comma-separated horizon list (>= 3)")
                                ->delimiter(',');
        args.margin_opt = cmd.add_option("--margin", args.margin,
                                         "sublinearity slope margin");
    }
}

ExperimentConfig load_with_overrides(const RunArgs& args) {
    ExperimentConfig config = load_config(args.config_path);
    if (args.seeds_opt->count() > 0) {
        if (args.seeds < 1) throw ConfigError("--seeds must be at least 1");
        config.num_seeds = args.seeds;
    }
    if (args.base_seed_opt->count() > 0) config.base_seed = args.base_seed;
    if (args.threads_opt->count() > 0) {
        if (args.threads < 0) throw ConfigError("--threads must be >= 0");
        config.max_threads = args.threads;
    }
    if (args.horizons_opt != nullptr && args.horizons_opt->count() > 0) {
        config.horizons = args.horizons;
    }
    if (args.margin_opt != nullptr && args.margin_opt->count() > 0) {
        if (!(args.margin > 0.0)) throw ConfigError("--margin must be > 0");
        config.slope_margin = args.margin;
    }
    if (!args.out.empty()) config.out_path = args.out;
    if (!args.format.empty()) config.format = report_format_from_name(args.format);
    return config;
}

void print_horizon_lines(const RunResult& result) {
    for (const HorizonReport& h : result.horizons) {
        std::cout << "T=" << h.horizon << " mean_revenue_regret=" << h.mean_revenue_regret
                  << " mean_fairness_value=" << h.mean_fairness_value;
        if (h.opt_fairness) {
            std::cout << " opt_fairness=" << *h.opt_fairness;
        }
        std::cout << "\n";
    }
}

int do_run(const RunArgs& args) {
    const ExperimentConfig config = load_with_overrides(args);
    const RunResult result = run_monte_carlo(config);
    const std::string path = report_path(config, "report");
    emit_report(result, config.format, path);
    print_horizon_lines(result);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int do_sweep(const RunArgs& args) {
    const ExperimentConfig config = load_with_overrides(args);
    const RunResult result = run_sweep(config);
    const std::string path = report_path(config, "sweep");
    emit_report(result, config.format, path);
    print_horizon_lines(result);
    const SweepSummary& s = *result.sweep;
    std::cout << "revenue slope " << s.revenue_slope << " ("
              << (s.revenue_sublinear ? "sublinear" : "linear") << "), fairness slope "
              << s.fairness_slope << " (" << (s.fairness_sublinear ? "sublinear" : "linear")
              << "), margin " << s.margin << "\n";
    std::cout << "wrote " << path << "\n";
    return 0;
}

struct GenArgs {
    std::string adversary;
    std::int64_t horizon = 0;
    int num_agents = 0;
    std::uint64_t seed = 0;
    std::string out;
    double mean = 0.5, spread = 0.1;
    double v_top = 0.99, epsilon = 0.01;
    double v_high = 0.9, v_low = 0.05, noise = 0.05;
    int block_size = 1;
    std::vector<int> trend_order;
    std::vector<std::int64_t> trend_lengths;
    bool pieces = false;
};

int do_gen(const GenArgs& args) {
    AdversarySpec spec;
    spec.kind = adversary_kind_from_name(args.adversary);
    if (spec.kind == AdversaryKind::FromFile) {
        throw ConfigError("gen produces files; --adversary from_file makes no sense");
    }
    spec.horizon = args.horizon;
    spec.num_agents = args.num_agents;
    spec.seed = args.seed;
    spec.mean = args.mean;
    spec.spread = args.spread;
    spec.v_top = args.v_top;
    spec.epsilon = args.epsilon;
    spec.fmds.v_high = args.v_high;
    spec.fmds.v_low = args.v_low;
    spec.fmds.noise_amplitude = args.noise;
    spec.fmds.block_size = args.block_size;
    spec.fmds.trend_order = args.trend_order;
    spec.fmds.trend_lengths = args.trend_lengths;

    ValuationSchedule schedule = generate_schedule(spec);
    if (args.pieces) {
        // Equal slicing: piece t is [t/T, (t+1)/T]. Shared endpoints come from
        // the same expression, so the chain is exact.
        schedule.pieces.resize(static_cast<std::size_t>(schedule.horizon));
        for (std::int64_t t = 0; t < schedule.horizon; ++t) {
            Piece& p = schedule.pieces[static_cast<std::size_t>(t)];
            p.left = static_cast<double>(t) / static_cast<double>(schedule.horizon);
            p.right = static_cast<double>(t + 1) / static_cast<double>(schedule.horizon);
            p.round_index = t + 1;
        }
    }
    const std::string path = args.out.empty() ? default_out("schedule.csv") : args.out;
    write_csv_schedule(schedule, path);
    std::cout << "wrote " << path << " (T=" << schedule.horizon << ", n=" << schedule.num_agents
              << ")\n";
    return 0;
}

struct OptArgs {
    std::string schedule_path;
    std::uint64_t budget = kDefaultOptBudget;
    std::string out;
};

int do_opt(const OptArgs& args) {
    const ValuationSchedule schedule = load_csv_schedule(args.schedule_path);
    const OptResult opt = brute_force_opt_fairness(schedule, args.budget);
    nlohmann::ordered_json doc;
    doc["horizon"] = schedule.horizon;
    doc["num_agents"] = schedule.num_agents;
    doc["opt_fairness"] = opt.opt_fairness;
    nlohmann::ordered_json assignment = nlohmann::ordered_json::array();
    for (int a : opt.opt_assignment) {
        assignment.push_back(a + 1);  // agents numbered as in the CSV header
    }
    doc["opt_assignment"] = std::move(assignment);
    doc["instances_searched"] = opt.instances_searched;
    if (args.out.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream file(args.out, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + args.out + "' for writing");
        file << doc.dump(2) << "\n";
        if (!file) throw IoError("failed while writing '" + args.out + "'");
        std::cout << "wrote " << args.out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online cake-cutting bandit experiments"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "Monte-Carlo run over configured horizons");
    add_run_options(*run_cmd, run_args, /*sweep=*/false);

    RunArgs sweep_args;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "multi-horizon sweep with log-log slope verdicts");
    add_run_options(*sweep_cmd, sweep_args, /*sweep=*/true);

    GenArgs gen_args;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a schedule CSV");
    gen_cmd->add_option("--adversary", gen_args.adversary, "generator kind")
        ->required()
        ->check(CLI::IsMember({"quasi_uniform", "single_dominant", "fmds"}));
    gen_cmd->add_option("--T", gen_args.horizon, "number of rounds")->required();
    gen_cmd->add_option("--n", gen_args.num_agents, "number of agents")->required();
    gen_cmd->add_option("--seed", gen_args.seed, "generator seed");
    gen_cmd->add_option("--out", gen_args.out, "output CSV path");
    gen_cmd->add_option("--mean", gen_args.mean, "quasi_uniform mean");
    gen_cmd->add_option("--spread", gen_args.spread, "quasi_uniform spread");
    gen_cmd->add_option("--v-top", gen_args.v_top, "single_dominant top valuation");
    gen_cmd->add_option("--epsilon", gen_args.epsilon, "single_dominant low valuation");
    gen_cmd->add_option("--v-high", gen_args.v_high, "fmds in-trend valuation");
    gen_cmd->add_option("--v-low", gen_args.v_low, "fmds out-of-trend valuation");
    gen_cmd->add_option("--noise", gen_args.noise, "fmds noise amplitude");
    gen_cmd->add_option("--block-size", gen_args.block_size, "fmds agents per trend");
    gen_cmd->add_option("--trend-order", gen_args.trend_order, "fmds agent permutation")
        ->delimiter(',');
    gen_cmd->add_option("--trend-lengths", gen_args.trend_lengths, "fmds trend lengths")
        ->delimiter(',');
    gen_cmd->add_flag("--pieces", gen_args.pieces, "include equal-slicing left,right columns");

    OptArgs opt_args;
    CLI::App* opt_cmd = app.add_subcommand("opt", "exhaustive fairness oracle on a CSV schedule");
    opt_cmd->add_option("--schedule", opt_args.schedule_path, "schedule CSV")->required();
    opt_cmd->add_option("--budget", opt_args.budget, "max assignments to enumerate");
    opt_cmd->add_option("--out", opt_args.out, "write the result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_args);
        if (sweep_cmd->parsed()) return do_sweep(sweep_args);
        if (gen_cmd->parsed()) return do_gen(gen_args);
        if (opt_cmd->parsed()) return do_opt(opt_args);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const cakebandit::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cakebandit::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
