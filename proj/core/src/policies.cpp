#include "cakebandit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cakebandit/random.hpp"

namespace cakebandit {

namespace {

void check_agent_count(int num_agents) {
    if (num_agents < 1) {
        throw InvalidParameter("num_agents must be >= 1, got " + std::to_string(num_agents));
    }
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0)) {
        throw NonPositiveAlpha("alpha must be > 0, got " + std::to_string(alpha));
    }
}

void check_decision(const PolicyDecision& decision, int num_agents) {
    if (decision.chosen_agent < 0 || decision.chosen_agent >= num_agents) {
        throw IndexOutOfRange("chosen_agent " + std::to_string(decision.chosen_agent) +
                              " outside [0, " + std::to_string(num_agents) + ")");
    }
}

double normalized_valuation(double payment, double alpha) {
    const double v = payment / alpha;
    if (!(v >= 0.0 && v <= 1.0)) {
        throw OutOfRangeValue("payment " + std::to_string(payment) + " outside [0, alpha=" +
                              std::to_string(alpha) + "]");
    }
    return v;
}

}  // namespace

double default_eta(std::int64_t horizon, int num_agents) {
    if (horizon < 1) {
        throw InvalidParameter("horizon must be >= 1, got " + std::to_string(horizon));
    }
    if (num_agents < 2) {
        throw InvalidParameter("default_eta requires num_agents >= 2 (ln(1) = 0 degenerates the rate)");
    }
    return std::sqrt(std::log(static_cast<double>(num_agents)) /
                     (static_cast<double>(horizon) * num_agents));
}

Exp3Policy::Exp3Policy(int num_agents, double eta, double alpha)
    : s_hat_(static_cast<std::size_t>(std::max(num_agents, 0)), 0.0), eta_(eta), alpha_(alpha) {
    check_agent_count(num_agents);
    check_alpha(alpha);
    if (!(eta >= 0.0)) {
        throw InvalidParameter("eta must be >= 0, got " + std::to_string(eta));
    }
}

std::vector<double> Exp3Policy::probabilities() const {
    const std::size_t n = s_hat_.size();
    std::vector<double> probs(n);
    // S grows linearly with t, so exponentiate only the max-shifted scores.
    double max_score = -std::numeric_limits<double>::infinity();
    for (double s : s_hat_) max_score = std::max(max_score, eta_ * s);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::max(std::exp(eta_ * s_hat_[i] - max_score),
                                  std::numeric_limits<double>::min());
        probs[i] = e;
        sum += e;
    }
    double check = 0.0;
    for (double& p : probs) {
        p /= sum;
        check += p;
    }
    if (!(std::abs(check - 1.0) <= 1e-12) ||
        !std::all_of(probs.begin(), probs.end(), [](double p) { return p > 0.0; })) {
        throw Error("exponential weighting produced an invalid distribution");
    }
    return probs;
}

PolicyDecision Exp3Policy::select(std::mt19937_64& rng) {
    const auto probs = probabilities();
    const int chosen = sample_categorical(probs, uniform01(rng));
    return {chosen, probs[static_cast<std::size_t>(chosen)]};
}

void Exp3Policy::observe(const PolicyDecision& decision, double payment) {
    check_decision(decision, num_agents());
    if (!(decision.probability_used > 0.0)) {
        throw NonPositiveProbability("probability_used must be > 0, got " +
                                     std::to_string(decision.probability_used));
    }
    const double loss = 1.0 - normalized_valuation(payment, alpha_);
    for (double& s : s_hat_) s += 1.0;
    s_hat_[static_cast<std::size_t>(decision.chosen_agent)] -= loss / decision.probability_used;
    ++round_;
}

AllocateToMinPolicy::AllocateToMinPolicy(int num_agents, double alpha)
    : accumulated_(static_cast<std::size_t>(std::max(num_agents, 0)), 0.0), alpha_(alpha) {
    check_agent_count(num_agents);
    check_alpha(alpha);
}

int AllocateToMinPolicy::argmin_agent() const {
    return static_cast<int>(
        std::min_element(accumulated_.begin(), accumulated_.end()) - accumulated_.begin());
}

PolicyDecision AllocateToMinPolicy::select(std::mt19937_64&) {
    return {argmin_agent(), 1.0};
}

void AllocateToMinPolicy::observe(const PolicyDecision& decision, double payment) {
    check_decision(decision, num_agents());
    accumulated_[static_cast<std::size_t>(decision.chosen_agent)] +=
        normalized_valuation(payment, alpha_);
}

double default_theta(std::int64_t horizon) {
    if (horizon < 1) {
        throw InvalidParameter("horizon must be >= 1, got " + std::to_string(horizon));
    }
    return 1.0 / std::sqrt(static_cast<double>(horizon));
}

FrmExp3Policy::FrmExp3Policy(int num_agents, double eta, double theta, double alpha)
    : exp3_(num_agents, eta, alpha), atm_(num_agents, alpha), theta_(theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw InvalidParameter("theta must be in [0,1], got " + std::to_string(theta));
    }
}

PolicyDecision FrmExp3Policy::select(std::mt19937_64& rng) {
    const auto probs = exp3_.probabilities();
    const int min_agent = atm_.argmin_agent();
    int chosen;
    if (uniform01(rng) < theta_) {
        chosen = min_agent;
    } else {
        chosen = sample_categorical(probs, uniform01(rng));
    }
    const double mixture = (1.0 - theta_) * probs[static_cast<std::size_t>(chosen)] +
                           (chosen == min_agent ? theta_ : 0.0);
    return {chosen, mixture};
}

void FrmExp3Policy::observe(const PolicyDecision& decision, double payment) {
    exp3_.observe(decision, payment);
    atm_.observe(decision, payment);
}

UniformRandomPolicy::UniformRandomPolicy(int num_agents) : num_agents_(num_agents) {
    check_agent_count(num_agents);
}

PolicyDecision UniformRandomPolicy::select(std::mt19937_64& rng) {
    const double u = uniform01(rng);
    int chosen = static_cast<int>(u * num_agents_);
    chosen = std::min(chosen, num_agents_ - 1);
    return {chosen, 1.0 / num_agents_};
}

}  // namespace cakebandit
