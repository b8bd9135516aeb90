#include "bvft/mdp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace bvft {

namespace {

constexpr double kSimplexTol = 1e-12;

void check_shape(const TabularMdp& mdp, const QTable& q) {
    if (q.rows() != mdp.n_states || q.cols() != mdp.n_actions) {
        throw std::invalid_argument("Q table shape (" + std::to_string(q.rows()) + "x" +
                                    std::to_string(q.cols()) + ") does not match MDP (" +
                                    std::to_string(mdp.n_states) + "x" +
                                    std::to_string(mdp.n_actions) + ")");
    }
}

void backup_from_state_values(const TabularMdp& mdp, const Vector& next_values, QTable& out) {
    out.resize(mdp.n_states, mdp.n_actions);
    for (Index a = 0; a < mdp.n_actions; ++a) {
        out.col(a) = mdp.reward.col(a) + mdp.gamma * (mdp.transition[a] * next_values);
    }
}

template <typename NextValues>
QTable solve_fixed_point(const TabularMdp& mdp, double tol, long max_iters,
                         NextValues&& next_values, const char* name) {
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    QTable q = QTable::Zero(mdp.n_states, mdp.n_actions);
    QTable next(mdp.n_states, mdp.n_actions);
    double residual = std::numeric_limits<double>::infinity();
    for (long iter = 0; iter < max_iters; ++iter) {
        backup_from_state_values(mdp, next_values(q), next);
        residual = (next - q).cwiseAbs().maxCoeff();
        q.swap(next);
        if (residual <= tol) return q;
    }
    throw ConvergenceError(std::string(name) + " did not converge within " +
                               std::to_string(max_iters) + " iterations (residual " +
                               std::to_string(residual) + ")",
                           residual);
}

}  // namespace

void TabularMdp::validate() const {
    if (n_states <= 0 || n_actions <= 0) {
        throw std::invalid_argument("MDP must have positive state and action counts");
    }
    if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("gamma must lie in [0,1)");
    if (static_cast<Index>(transition.size()) != n_actions) {
        throw std::invalid_argument("transition tensor must have one matrix per action");
    }
    if (reward.rows() != n_states || reward.cols() != n_actions) {
        throw std::invalid_argument("reward matrix shape mismatch");
    }
    if (initial_dist.size() != n_states) {
        throw std::invalid_argument("initial distribution length mismatch");
    }
    if (static_cast<Index>(terminal_mask.size()) != n_states) {
        throw std::invalid_argument("terminal mask length mismatch");
    }
    for (Index a = 0; a < n_actions; ++a) {
        const Matrix& p = transition[a];
        if (p.rows() != n_states || p.cols() != n_states) {
            throw std::invalid_argument("transition matrix shape mismatch for action " +
                                        std::to_string(a));
        }
        if ((p.array() < 0.0).any()) {
            throw std::invalid_argument("negative transition probability for action " +
                                        std::to_string(a));
        }
        for (Index s = 0; s < n_states; ++s) {
            double row_sum = p.row(s).sum();
            if (std::abs(row_sum - 1.0) > kSimplexTol) {
                throw std::invalid_argument("transition row (" + std::to_string(s) + "," +
                                            std::to_string(a) + ") sums to " +
                                            std::to_string(row_sum));
            }
        }
    }
    if (!reward.allFinite() || (reward.array() < 0.0).any() || (reward.array() > r_max).any()) {
        throw std::invalid_argument("rewards must lie in [0, r_max]");
    }
    if (std::abs(initial_dist.sum() - 1.0) > kSimplexTol || (initial_dist.array() < 0.0).any()) {
        throw std::invalid_argument("initial distribution is not a probability vector");
    }
    for (Index s = 0; s < n_states; ++s) {
        if (!terminal_mask[s]) continue;
        for (Index a = 0; a < n_actions; ++a) {
            if (reward(s, a) != 0.0 || transition[a](s, s) != 1.0) {
                throw std::invalid_argument("terminal state " + std::to_string(s) +
                                            " must be a zero-reward self-loop");
            }
        }
    }
}

Policy Policy::make_deterministic(IntVector actions) {
    Policy p;
    p.kind = Kind::deterministic;
    p.actions = std::move(actions);
    return p;
}

Policy Policy::make_stochastic(Matrix probs) {
    Policy p;
    p.kind = Kind::stochastic;
    p.probs = std::move(probs);
    return p;
}

Policy Policy::uniform_random(Index n_states, Index n_actions) {
    return make_stochastic(
        Matrix::Constant(n_states, n_actions, 1.0 / static_cast<double>(n_actions)));
}

double Policy::action_prob(Index s, Index a) const {
    if (kind == Kind::deterministic) return actions[s] == a ? 1.0 : 0.0;
    return probs(s, a);
}

Vector Policy::state_values(const QTable& q) const {
    if (kind == Kind::deterministic) {
        if (actions.size() != q.rows()) throw std::invalid_argument("policy/Q shape mismatch");
        Vector values(q.rows());
        for (Index s = 0; s < q.rows(); ++s) values[s] = q(s, actions[s]);
        return values;
    }
    if (probs.rows() != q.rows() || probs.cols() != q.cols()) {
        throw std::invalid_argument("policy/Q shape mismatch");
    }
    return (probs.array() * q.array()).rowwise().sum();
}

void Policy::validate(Index n_states, Index n_actions) const {
    if (kind == Kind::deterministic) {
        if (actions.size() != n_states) throw std::invalid_argument("policy length mismatch");
        if ((actions.array() < 0).any() || (actions.array() >= n_actions).any()) {
            throw std::invalid_argument("policy action out of range");
        }
        return;
    }
    if (probs.rows() != n_states || probs.cols() != n_actions) {
        throw std::invalid_argument("policy matrix shape mismatch");
    }
    if ((probs.array() < 0.0).any()) throw std::invalid_argument("negative action probability");
    for (Index s = 0; s < n_states; ++s) {
        if (std::abs(probs.row(s).sum() - 1.0) > kSimplexTol) {
            throw std::invalid_argument("policy row " + std::to_string(s) +
                                        " is not a distribution");
        }
    }
}

QTable bellman_optimality_backup(const TabularMdp& mdp, const QTable& q) {
    check_shape(mdp, q);
    QTable out;
    Vector max_values = q.rowwise().maxCoeff();
    backup_from_state_values(mdp, max_values, out);
    return out;
}

QTable bellman_policy_backup(const TabularMdp& mdp, const Policy& policy, const QTable& q) {
    check_shape(mdp, q);
    policy.validate(mdp.n_states, mdp.n_actions);
    QTable out;
    backup_from_state_values(mdp, policy.state_values(q), out);
    return out;
}

QTable solve_q_star(const TabularMdp& mdp, double tol, long max_iters) {
    return solve_fixed_point(
        mdp, tol, max_iters, [](const QTable& q) { return q.rowwise().maxCoeff().eval(); },
        "solve_q_star");
}

QTable solve_q_pi(const TabularMdp& mdp, const Policy& policy, double tol, long max_iters) {
    policy.validate(mdp.n_states, mdp.n_actions);
    return solve_fixed_point(
        mdp, tol, max_iters, [&policy](const QTable& q) { return policy.state_values(q); },
        "solve_q_pi");
}

double evaluate_policy_exact(const TabularMdp& mdp, const Policy& policy, double tol) {
    QTable q_pi = solve_q_pi(mdp, policy, tol);
    return mdp.initial_dist.dot(policy.state_values(q_pi));
}

Policy greedy_policy(const QTable& q) {
    IntVector actions(q.rows());
    for (Index s = 0; s < q.rows(); ++s) {
        Index best = 0;
        for (Index a = 1; a < q.cols(); ++a) {
            if (q(s, a) > q(s, best)) best = a;
        }
        actions[s] = static_cast<int>(best);
    }
    return Policy::make_deterministic(std::move(actions));
}

}  // namespace bvft
