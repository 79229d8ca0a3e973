#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "cakebandit/errors.hpp"

// Sequential allocation policies under bandit feedback: each round the policy
// picks an agent for the freshly cut piece, observes only that agent's payment,
// and updates its state.
//
//   Exp3Policy          exponential weighting over importance-weighted loss
//                       estimates; targets the revenue of the best fixed agent.
//   AllocateToMinPolicy gives every piece to the agent with the smallest
//                       accumulated valuation; keeps the valuation spread <= 1.
//   FrmExp3Policy       mixture: EXP3 with probability 1-theta, allocate-to-min
//                       with probability theta (theta = 1/sqrt(T) by default).
//   UniformRandomPolicy baseline for curve comparison.

namespace cakebandit {

struct PolicyDecision {
    int chosen_agent = 0;
    // Probability of chosen_agent under the policy's full sampling distribution
    // at this round. For mixtures this is the mixture probability, not the
    // sub-policy's conditional one.
    double probability_used = 1.0;
};

class Policy {
public:
    virtual ~Policy() = default;
    virtual PolicyDecision select(std::mt19937_64& rng) = 0;
    // payment is the chosen agent's alpha-scaled valuation; the only feedback
    // a policy ever receives.
    virtual void observe(const PolicyDecision& decision, double payment) = 0;
    virtual std::string_view name() const noexcept = 0;
};

// sqrt(ln(n) / (T*n)), the rate under which the revenue regret of EXP3 stays
// below 2*sqrt(T*n*ln(n)). Rejects n < 2: ln(1) = 0 gives a degenerate rate.
double default_eta(std::int64_t horizon, int num_agents);

class Exp3Policy final : public Policy {
public:
    // num_agents >= 1, eta >= 0 (0 means uniform), alpha > 0.
    Exp3Policy(int num_agents, double eta, double alpha = 1.0);

    // Exponential weights P_i = exp(eta*S[i]) / sum_j exp(eta*S[j]), computed
    // with max-subtraction; entries floored at the smallest normal double so
    // the vector stays strictly positive. Sum is 1 within 1e-12 (checked).
    std::vector<double> probabilities() const;

    PolicyDecision select(std::mt19937_64& rng) override;

    // All agents' estimates shift by +1; the chosen agent's additionally takes
    // -(1 - payment/alpha) / probability_used, the importance-weighted loss.
    void observe(const PolicyDecision& decision, double payment) override;

    std::string_view name() const noexcept override { return "exp3"; }

    const std::vector<double>& estimated_rewards() const { return s_hat_; }
    double eta() const { return eta_; }
    int num_agents() const { return static_cast<int>(s_hat_.size()); }
    std::int64_t round() const { return round_; }

private:
    std::vector<double> s_hat_;
    double eta_;
    double alpha_;
    std::int64_t round_ = 0;
};

class AllocateToMinPolicy final : public Policy {
public:
    AllocateToMinPolicy(int num_agents, double alpha = 1.0);

    // Lowest index among the agents with minimal accumulated valuation.
    // Exact floating-point comparison, no epsilon.
    int argmin_agent() const;

    PolicyDecision select(std::mt19937_64& rng) override;  // deterministic, rng unused
    void observe(const PolicyDecision& decision, double payment) override;

    std::string_view name() const noexcept override { return "allocate_to_min"; }

    const std::vector<double>& accumulated_valuations() const { return accumulated_; }
    int num_agents() const { return static_cast<int>(accumulated_.size()); }

private:
    std::vector<double> accumulated_;
    double alpha_;
};

// 1/sqrt(T).
double default_theta(std::int64_t horizon);

class FrmExp3Policy final : public Policy {
public:
    FrmExp3Policy(int num_agents, double eta, double theta, double alpha = 1.0);

    // Draws the branch first (allocate-to-min with probability theta), then the
    // agent. probability_used is the full mixture probability of the realized
    // agent: (1-theta)*P_exp3[agent] + theta*[agent == argmin].
    PolicyDecision select(std::mt19937_64& rng) override;

    // Both sub-states absorb every observation: the EXP3 estimate uses the
    // mixture probability (the true sampling probability, so the estimator
    // stays unbiased), the accumulated valuations take payment/alpha.
    void observe(const PolicyDecision& decision, double payment) override;

    std::string_view name() const noexcept override { return "frm_exp3"; }

    double theta() const { return theta_; }
    const Exp3Policy& exp3() const { return exp3_; }
    const AllocateToMinPolicy& allocate_to_min() const { return atm_; }

private:
    Exp3Policy exp3_;
    AllocateToMinPolicy atm_;
    double theta_;
};

class UniformRandomPolicy final : public Policy {
public:
    explicit UniformRandomPolicy(int num_agents);

    PolicyDecision select(std::mt19937_64& rng) override;
    void observe(const PolicyDecision&, double) override {}

    std::string_view name() const noexcept override { return "uniform"; }

private:
    int num_agents_;
};

}  // namespace cakebandit
