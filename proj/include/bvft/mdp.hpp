#pragma once

#include <cstdint>
#include <vector>

#include "bvft/types.hpp"

namespace bvft {

/// Explicit tabular MDP. transition[a] is an n_states x n_states matrix
/// whose row s is P(.|s,a); rewards live in [0, r_max]; terminal states
/// are zero-reward self-loops so the operators stay stationary.
struct TabularMdp {
    Index n_states = 0;
    Index n_actions = 0;
    std::vector<Matrix> transition;
    Matrix reward;
    double gamma = 0.0;
    double r_max = 0.0;
    Vector initial_dist;
    std::vector<std::uint8_t> terminal_mask;

    /// Constant added to every per-step reward relative to the source
    /// environment (0 when rewards are native).
    double reward_shift = 0.0;

    double v_max() const { return r_max / (1.0 - gamma); }

    /// Throws std::invalid_argument if any structural invariant is violated.
    void validate() const;
};

struct Policy {
    enum class Kind { deterministic, stochastic };

    Kind kind = Kind::deterministic;
    IntVector actions;  // deterministic: action index per state
    Matrix probs;       // stochastic: n_states x n_actions

    static Policy make_deterministic(IntVector actions);
    static Policy make_stochastic(Matrix probs);
    static Policy uniform_random(Index n_states, Index n_actions);

    Index n_states() const {
        return kind == Kind::deterministic ? actions.size() : probs.rows();
    }
    double action_prob(Index s, Index a) const;

    /// E_{a ~ pi(.|s)}[q(s,a)] for every state.
    Vector state_values(const QTable& q) const;

    void validate(Index n_states, Index n_actions) const;
};

/// (T q)(s,a) = R(s,a) + gamma * sum_s' P(s'|s,a) max_a' q(s',a').
QTable bellman_optimality_backup(const TabularMdp& mdp, const QTable& q);

/// (T^pi q)(s,a) = R(s,a) + gamma * sum_s' P(s'|s,a) E_{a'~pi(.|s')}[q(s',a')].
QTable bellman_policy_backup(const TabularMdp& mdp, const Policy& policy, const QTable& q);

/// Value iteration from the zero table until ||Q_{t+1}-Q_t||_inf <= tol.
QTable solve_q_star(const TabularMdp& mdp, double tol = 1e-8, long max_iters = 100000);
QTable solve_q_pi(const TabularMdp& mdp, const Policy& policy, double tol = 1e-8,
                  long max_iters = 100000);

/// J(pi) = sum_s d0(s) E_{a~pi(.|s)}[Q^pi(s,a)].
double evaluate_policy_exact(const TabularMdp& mdp, const Policy& policy, double tol = 1e-8);

/// Deterministic argmax policy; ties broken toward the lowest action index.
Policy greedy_policy(const QTable& q);

}  // namespace bvft
