#include "cakebandit/adversaries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <system_error>

#include "cakebandit/errors.hpp"
#include "cakebandit/random.hpp"

namespace cakebandit {

namespace {

void check_dimensions(std::int64_t horizon, int num_agents) {
    if (horizon < 1) {
        throw DimensionMismatch("horizon must be at least 1, got " + std::to_string(horizon));
    }
    if (num_agents < 1) {
        throw DimensionMismatch("num_agents must be at least 1, got " +
                                std::to_string(num_agents));
    }
}

double clip01(double x) { return std::min(1.0, std::max(0.0, x)); }

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, std::int64_t line) {
    double out = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ParseError(line, "expected a decimal number, got '" + std::string(token) + "'");
    }
    return out;
}

std::int64_t parse_int(std::string_view token, std::int64_t line) {
    std::int64_t out = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
    }
    return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

AdversaryKind adversary_kind_from_name(std::string_view name) {
    if (name == "quasi_uniform") return AdversaryKind::QuasiUniform;
    if (name == "single_dominant") return AdversaryKind::SingleDominant;
    if (name == "fmds") return AdversaryKind::Fmds;
    if (name == "from_file") return AdversaryKind::FromFile;
    throw InvalidParameter("unknown adversary '" + std::string(name) + "'");
}

std::string_view adversary_kind_name(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::QuasiUniform: return "quasi_uniform";
        case AdversaryKind::SingleDominant: return "single_dominant";
        case AdversaryKind::Fmds: return "fmds";
        case AdversaryKind::FromFile: return "from_file";
    }
    throw InvalidParameter("unknown adversary kind");
}

ValuationSchedule gen_quasi_uniform(std::int64_t horizon, int num_agents, double mean,
                                    double spread, std::uint64_t seed) {
    check_dimensions(horizon, num_agents);
    if (spread < 0.0) {
        throw RangeViolation("spread must be non-negative, got " + format_double(spread));
    }
    if (mean - spread < 0.0 || mean + spread > 1.0) {
        throw RangeViolation("[mean-spread, mean+spread] must lie inside [0, 1], got [" +
                             format_double(mean - spread) + ", " + format_double(mean + spread) +
                             "]");
    }
    ValuationSchedule schedule;
    schedule.horizon = horizon;
    schedule.num_agents = num_agents;
    schedule.values.resize(static_cast<std::size_t>(horizon) * num_agents);
    std::mt19937_64 rng(seed);
    for (double& v : schedule.values) {
        v = uniform_in(rng, mean - spread, mean + spread);
    }
    validate_schedule(schedule);
    return schedule;
}

ValuationSchedule gen_single_dominant(std::int64_t horizon, int num_agents, double v_top,
                                      double epsilon, std::uint64_t /*seed*/) {
    check_dimensions(horizon, num_agents);
    if (!(0.0 <= epsilon && epsilon < v_top && v_top <= 1.0)) {
        throw RangeViolation("need 0 <= epsilon < v_top <= 1, got epsilon=" +
                             format_double(epsilon) + " v_top=" + format_double(v_top));
    }
    ValuationSchedule schedule;
    schedule.horizon = horizon;
    schedule.num_agents = num_agents;
    schedule.values.assign(static_cast<std::size_t>(horizon) * num_agents, epsilon);
    for (std::int64_t t = 0; t < horizon; ++t) {
        schedule.values[static_cast<std::size_t>(t) * num_agents] = v_top;
    }
    validate_schedule(schedule);
    return schedule;
}

std::vector<std::int64_t> default_trend_lengths(std::int64_t horizon, int num_trends) {
    if (num_trends < 1) {
        throw InvalidParameter("num_trends must be at least 1, got " +
                               std::to_string(num_trends));
    }
    if (horizon < num_trends) {
        throw LengthMismatch("horizon " + std::to_string(horizon) + " cannot cover " +
                             std::to_string(num_trends) + " trends of length at least 1");
    }
    // Cumulative rounding of the proportional-to-index split keeps the sum
    // exact; the fixup pass lifts rounded-away trends back to length 1.
    const std::int64_t k = num_trends;
    const double total_weight = 0.5 * static_cast<double>(k) * static_cast<double>(k + 1);
    std::vector<std::int64_t> lengths(static_cast<std::size_t>(k));
    std::int64_t cum_prev = 0;
    std::int64_t weight_prefix = 0;
    for (std::int64_t i = 0; i < k; ++i) {
        weight_prefix += i + 1;
        std::int64_t cum = (i + 1 == k)
            ? horizon
            : static_cast<std::int64_t>(std::floor(static_cast<double>(horizon) *
                                                   static_cast<double>(weight_prefix) /
                                                   total_weight));
        lengths[static_cast<std::size_t>(i)] = cum - cum_prev;
        cum_prev = cum;
    }
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        while (lengths[i] < 1) {
            auto longest = std::max_element(lengths.begin(), lengths.end());
            ++lengths[i];
            --*longest;
        }
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

ValuationSchedule gen_fmds(std::int64_t horizon, int num_agents, const FmdsParams& params,
                           std::uint64_t seed) {
    check_dimensions(horizon, num_agents);
    if (!(0.0 < params.v_high && params.v_high <= 1.0)) {
        throw RangeViolation("v_high must lie in (0, 1], got " + format_double(params.v_high));
    }
    if (!(0.0 <= params.v_low && params.v_low < params.v_high)) {
        throw RangeViolation("v_low must lie in [0, v_high), got " + format_double(params.v_low));
    }
    if (params.noise_amplitude < 0.0) {
        throw RangeViolation("noise_amplitude must be non-negative, got " +
                             format_double(params.noise_amplitude));
    }
    if (params.block_size < 1) {
        throw InvalidParameter("block_size must be at least 1, got " +
                               std::to_string(params.block_size));
    }

    std::vector<int> order = params.trend_order;
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(num_agents));
        std::iota(order.begin(), order.end(), 0);
    } else {
        if (order.size() != static_cast<std::size_t>(num_agents)) {
            throw InvalidParameter("trend_order must list all " + std::to_string(num_agents) +
                                   " agents, got " + std::to_string(order.size()));
        }
        std::vector<bool> seen(static_cast<std::size_t>(num_agents), false);
        for (int a : order) {
            if (a < 0 || a >= num_agents || seen[static_cast<std::size_t>(a)]) {
                throw InvalidParameter("trend_order is not a permutation of the agents");
            }
            seen[static_cast<std::size_t>(a)] = true;
        }
    }

    const int num_trends =
        (num_agents + params.block_size - 1) / params.block_size;
    std::vector<std::int64_t> lengths = params.trend_lengths;
    if (lengths.empty()) {
        lengths = default_trend_lengths(horizon, num_trends);
    } else {
        if (lengths.size() != static_cast<std::size_t>(num_trends)) {
            throw LengthMismatch("expected " + std::to_string(num_trends) +
                                 " trend lengths, got " + std::to_string(lengths.size()));
        }
        std::int64_t sum = 0;
        for (std::int64_t len : lengths) {
            if (len < 1) {
                throw LengthMismatch("trend lengths must be positive");
            }
            sum += len;
        }
        if (sum != horizon) {
            throw LengthMismatch("trend lengths sum to " + std::to_string(sum) +
                                 ", expected horizon " + std::to_string(horizon));
        }
    }

    // Agent -> trend index through the permuted block partition.
    std::vector<int> trend_of_agent(static_cast<std::size_t>(num_agents));
    for (int pos = 0; pos < num_agents; ++pos) {
        trend_of_agent[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
            pos / params.block_size;
    }

    ValuationSchedule schedule;
    schedule.horizon = horizon;
    schedule.num_agents = num_agents;
    schedule.values.resize(static_cast<std::size_t>(horizon) * num_agents);
    std::mt19937_64 rng(seed);
    std::int64_t t = 0;
    for (int trend = 0; trend < num_trends; ++trend) {
        for (std::int64_t step = 0; step < lengths[static_cast<std::size_t>(trend)];
             ++step, ++t) {
            for (int a = 0; a < num_agents; ++a) {
                const double center =
                    trend_of_agent[static_cast<std::size_t>(a)] == trend ? params.v_high
                                                                         : params.v_low;
                const double lo = center - params.noise_amplitude;
                const double hi = center + params.noise_amplitude;
                schedule.values[static_cast<std::size_t>(t) * num_agents + a] =
                    clip01(uniform_in(rng, lo, hi));
            }
        }
    }
    validate_schedule(schedule);
    return schedule;
}

ValuationSchedule generate_schedule(const AdversarySpec& spec) {
    switch (spec.kind) {
        case AdversaryKind::QuasiUniform:
            return gen_quasi_uniform(spec.horizon, spec.num_agents, spec.mean, spec.spread,
                                     spec.seed);
        case AdversaryKind::SingleDominant:
            return gen_single_dominant(spec.horizon, spec.num_agents, spec.v_top, spec.epsilon,
                                       spec.seed);
        case AdversaryKind::Fmds:
            return gen_fmds(spec.horizon, spec.num_agents, spec.fmds, spec.seed);
        case AdversaryKind::FromFile:
            return load_csv_schedule(spec.path);
    }
    throw InvalidParameter("unknown adversary kind");
}

GrowthFunction growth_function_from_name(std::string_view name) {
    if (name == "sqrt") return GrowthFunction::Sqrt;
    if (name == "log") return GrowthFunction::Log;
    if (name == "linear") return GrowthFunction::Linear;
    throw InvalidParameter("unknown growth function '" + std::string(name) + "'");
}

double growth_value(GrowthFunction f, double window_length) {
    switch (f) {
        case GrowthFunction::Sqrt: return std::sqrt(window_length);
        // log(1 + len) keeps the value finite and non-negative at len = 0.
        case GrowthFunction::Log: return std::log1p(window_length);
        case GrowthFunction::Linear: return window_length;
    }
    throw InvalidParameter("unknown growth function");
}

bool check_domination(const ValuationSchedule& schedule, std::int64_t t_begin,
                      std::int64_t t_end, int agent_a, int agent_b, double c,
                      GrowthFunction f) {
    if (t_begin < 0 || t_end > schedule.horizon || t_begin > t_end) {
        throw IndexOutOfRange("window [" + std::to_string(t_begin) + ", " +
                              std::to_string(t_end) + ") does not fit horizon " +
                              std::to_string(schedule.horizon));
    }
    if (agent_a < 0 || agent_a >= schedule.num_agents || agent_b < 0 ||
        agent_b >= schedule.num_agents) {
        throw IndexOutOfRange("agent index outside [0, " +
                              std::to_string(schedule.num_agents) + ")");
    }
    if (c < 0.0) {
        throw RangeViolation("domination constant must be non-negative, got " +
                             format_double(c));
    }
    double advantage = 0.0;
    for (std::int64_t t = t_begin; t < t_end; ++t) {
        advantage += schedule.value(t, agent_a) - schedule.value(t, agent_b);
    }
    return advantage >= c * growth_value(f, static_cast<double>(t_end - t_begin));
}

ValuationSchedule load_csv_schedule(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw MissingHeader("'" + path + "' is empty");
    }
    if (!header.empty() && header.back() == '\r') header.pop_back();

    auto header_fields = split_fields(header);
    if (header_fields.empty() || header_fields[0] != "t") {
        throw MissingHeader("'" + path + "' must start with a 't,agent_1,...' header row");
    }
    int num_agents = 0;
    std::size_t col = 1;
    while (col < header_fields.size() &&
           header_fields[col] == "agent_" + std::to_string(num_agents + 1)) {
        ++num_agents;
        ++col;
    }
    bool has_pieces = false;
    if (col + 2 == header_fields.size() && header_fields[col] == "left" &&
        header_fields[col + 1] == "right") {
        has_pieces = true;
        col += 2;
    }
    if (num_agents == 0 || col != header_fields.size()) {
        throw MissingHeader("'" + path +
                            "' header must be t,agent_1,...,agent_n with optional left,right");
    }

    ValuationSchedule schedule;
    schedule.num_agents = num_agents;
    std::string line;
    std::int64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_fields(line);
        const std::size_t expected = 1 + static_cast<std::size_t>(num_agents) +
                                     (has_pieces ? 2 : 0);
        if (fields.size() != expected) {
            throw ParseError(line_no, "expected " + std::to_string(expected) +
                                          " fields, got " + std::to_string(fields.size()));
        }
        const std::int64_t t = parse_int(fields[0], line_no);
        for (int a = 0; a < num_agents; ++a) {
            schedule.values.push_back(parse_double(fields[1 + static_cast<std::size_t>(a)],
                                                   line_no));
        }
        if (has_pieces) {
            Piece piece;
            piece.left = parse_double(fields[fields.size() - 2], line_no);
            piece.right = parse_double(fields[fields.size() - 1], line_no);
            piece.round_index = t;
            schedule.pieces.push_back(piece);
        }
    }
    schedule.horizon = static_cast<std::int64_t>(schedule.values.size()) / num_agents;
    validate_schedule(schedule);
    return schedule;
}

void write_csv_schedule(const ValuationSchedule& schedule, const std::string& path) {
    validate_schedule(schedule);
    std::ostringstream out;
    out << "t";
    for (int a = 1; a <= schedule.num_agents; ++a) {
        out << ",agent_" << a;
    }
    const bool has_pieces = !schedule.pieces.empty();
    if (has_pieces) {
        out << ",left,right";
    }
    out << "\n";
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        out << (t + 1);
        for (int a = 0; a < schedule.num_agents; ++a) {
            out << "," << format_double(schedule.value(t, a));
        }
        if (has_pieces) {
            const Piece& piece = schedule.pieces[static_cast<std::size_t>(t)];
            out << "," << format_double(piece.left) << "," << format_double(piece.right);
        }
        out << "\n";
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << out.str();
    if (!file) {
        throw IoError("failed while writing '" + path + "'");
    }
}

}  // namespace cakebandit
