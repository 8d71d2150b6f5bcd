// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pcsimp {

void SolverConfig::validate() const {
    if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
    if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("SolverConfig: shrink must be in (0, 1)");
    if (!(sufficient_decrease > 0.0 && sufficient_decrease <= 0.5))
        throw std::invalid_argument("SolverConfig: sufficient_decrease must be in (0, 0.5]");
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& v, double budget) {
    const int n = static_cast<int>(v.size());
    if (budget < 0.0 || budget > static_cast<double>(n))
        throw std::invalid_argument("project_capped_simplex: budget " + std::to_string(budget) +
                                    " outside [0, " + std::to_string(n) + "]");
    if (n == 0) return v;
    // The boundary budgets admit exactly one feasible point.
    if (budget == 0.0) return Eigen::VectorXd::Zero(n);
    if (budget == static_cast<double>(n)) return Eigen::VectorXd::Ones(n);

    auto clamped = [&](double tau) { return (v.array() - tau).max(0.0).min(1.0); };
    auto sum_at = [&](double tau) { return clamped(tau).sum(); };

    // sum is continuous and non-increasing in tau; bracket the root.
    double lo = v.minCoeff() - 1.0;  // sum = n >= budget
    double hi = v.maxCoeff();        // sum = 0 <= budget
    const double tol = 1e-13 * std::max(1.0, static_cast<double>(n));
    double tau = 0.0;
    for (int it = 0; it < 200; ++it) {
        tau = 0.5 * (lo + hi);
        const double s = sum_at(tau);
        if (std::abs(s - budget) <= tol) break;
        if (s > budget)
            lo = tau;
        else
            hi = tau;
    }
    return clamped(tau).matrix();
}

std::vector<int> select_top(const Eigen::VectorXd& psi, int m, const Eigen::VectorXd& features) {
    const int n = static_cast<int>(psi.size());
    if (m < 0 || m > n) throw std::invalid_argument("select_top: m outside [0, N]");
    if (features.size() != 0 && features.size() != n)
        throw std::invalid_argument("select_top: feature vector length mismatch");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const bool has_f = features.size() == n;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (psi[a] != psi[b]) return psi[a] > psi[b];
        if (has_f && features[a] != features[b]) return features[a] > features[b];
        return a < b;
    });
    std::vector<int> kept(order.begin(), order.begin() + m);
    std::sort(kept.begin(), kept.end());
    return kept;
}

namespace {

// Hessian action of total_loss: H v = 2 f .* v + 2 lambda A^T (A v).
Eigen::VectorXd hessian_apply(const SimplificationProblem& p, const Eigen::VectorXd& v) {
    Eigen::VectorXd out = 2.0 * (p.f.array() * v.array()).matrix();
    if (p.lambda != 0.0) out += 2.0 * p.lambda * p.adjacency.apply_transpose(p.adjacency.apply(v));
    return out;
}

double estimate_lipschitz(const SimplificationProblem& p) {
    const int n = p.size();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double norm = 0.0;
    for (int it = 0; it < 20; ++it) {
        Eigen::VectorXd hv = hessian_apply(p, v);
        norm = hv.norm();
        if (norm == 0.0) break;
        v = hv / norm;
    }
    return norm;
}

}  // namespace

ResampleSolution solve_relaxed(const SimplificationProblem& problem, double budget,
                               const SolverConfig& config,
                               const std::optional<Eigen::VectorXd>& warm_start) {
    config.validate();
    const int n = problem.size();
    if (budget < 0.0 || budget > static_cast<double>(n))
        throw std::invalid_argument("solve_relaxed: budget outside [0, N]");

    const double lipschitz = estimate_lipschitz(problem);
    const double step0 =
        config.initial_step > 0.0 ? config.initial_step : 1.0 / std::max(lipschitz, 1e-12);
    const double kkt_tol =
        config.kkt_tol > 0.0 ? config.kkt_tol : 1e-6 * (1.0 + (n > 0 ? problem.f.maxCoeff() : 0.0));

    ResampleSolution sol;
    if (warm_start) {
        if (warm_start->size() != n) throw std::invalid_argument("solve_relaxed: warm start length mismatch");
        sol.psi = project_capped_simplex(*warm_start, budget);
    } else {
        sol.psi = Eigen::VectorXd::Constant(n, n > 0 ? budget / static_cast<double>(n) : 0.0);
    }

    double current = total_loss(problem, sol.psi);
    sol.objective_trace.push_back(current);

    for (int iter = 0; iter < config.max_iters; ++iter) {
        if (!std::isfinite(current))
            throw std::runtime_error("solve_relaxed: non-finite objective at iteration " +
                                     std::to_string(iter));
        const Eigen::VectorXd grad = gradient(problem, sol.psi);

        // Reference projected step doubles as the KKT residual certificate.
        Eigen::VectorXd candidate = project_capped_simplex(sol.psi - step0 * grad, budget);
        const double residual = (sol.psi - candidate).norm() / step0;
        if (residual <= kkt_tol) {
            sol.converged = true;
            break;
        }

        double step = step0;
        double next = total_loss(problem, candidate);
        bool stalled = false;
        // Armijo sufficient decrease along the projection arc.
        while (next > current + config.sufficient_decrease * grad.dot(candidate - sol.psi)) {
            step *= config.shrink;
            if (step < 1e-18 * step0) {
                stalled = true;  // no strictly better point within reach
                break;
            }
            candidate = project_capped_simplex(sol.psi - step * grad, budget);
            next = total_loss(problem, candidate);
        }
        if (stalled) break;

        sol.psi = std::move(candidate);
        current = next;
        sol.objective_trace.push_back(current);
        sol.iterations = iter + 1;
    }

    const int m = std::clamp(static_cast<int>(std::llround(budget)), 0, n);
    sol.kept = select_top(sol.psi, m, problem.f);
    return sol;
}

}  // namespace pcsimp
