#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cakebandit {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A valuation or payment fell outside its admissible interval.
struct OutOfRangeValue : Error {
    OutOfRangeValue(std::int64_t round, int agent, double value)
        : Error("value " + std::to_string(value) + " out of [0,1] at round " +
                std::to_string(round + 1) + ", agent " + std::to_string(agent + 1)),
          round(round), agent(agent), value(value) {}
    explicit OutOfRangeValue(const std::string& what) : Error(what) {}

    std::int64_t round = -1;  // 0-based, -1 when not applicable
    int agent = -1;
    double value = 0.0;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NonPositiveAlpha : Error {
    using Error::Error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct NonPositiveProbability : Error {
    using Error::Error;
};

struct RangeViolation : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

// CSV parse failure; line is 1-based (header is line 1).
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line = 0;
};

struct MissingHeader : Error {
    using Error::Error;
};

// Exhaustive search would exceed the configured enumeration budget.
struct BudgetExceeded : Error {
    BudgetExceeded(int num_agents, std::int64_t horizon, std::uint64_t budget)
        : Error("exhaustive search over " + std::to_string(num_agents) + "^" +
                std::to_string(horizon) + " assignments exceeds budget " +
                std::to_string(budget) + "; use the zero baseline instead"),
          num_agents(num_agents), horizon(horizon), budget(budget) {}
    int num_agents = 0;
    std::int64_t horizon = 0;
    std::uint64_t budget = 0;
};

struct EmptyTraceSet : Error {
    using Error::Error;
};

struct InsufficientPoints : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace cakebandit
