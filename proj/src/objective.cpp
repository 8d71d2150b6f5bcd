// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/objective.hpp"

#include <stdexcept>

namespace pcsimp {

namespace {
void check_psi(const SimplificationProblem& problem, const Eigen::VectorXd& psi, const char* op) {
    if (psi.size() != problem.f.size())
        throw std::invalid_argument(std::string(op) + ": psi has length " + std::to_string(psi.size()) +
                                    ", problem has " + std::to_string(problem.f.size()));
}
}  // namespace

SimplificationProblem make_problem(const KnnGraph& g, const PointCloud& cloud, double alpha,
                                   double lambda) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("make_problem: alpha must be in (0, 1]");
    if (lambda < 0.0) throw std::invalid_argument("make_problem: lambda must be >= 0");
    SimplificationProblem p;
    p.f = feature_vector(g, cloud);
    p.adjacency = binary_adjacency(g);
    p.k = g.k;
    p.alpha = alpha;
    p.lambda = lambda;
    return p;
}

Eigen::VectorXd feature_vector(const KnnGraph& g, const PointCloud& cloud) {
    const auto filtered = laplacian_apply(g, cloud);
    return filtered.rowwise().squaredNorm();
}

double feature_loss(const SimplificationProblem& problem, const Eigen::VectorXd& psi) {
    check_psi(problem, psi, "feature_loss");
    double acc = 0.0;
    for (int i = 0; i < problem.size(); ++i) {
        const double r = psi[i] - 1.0;
        acc += r * r * problem.f[i];
    }
    return acc;
}

double uniformity_loss(const SimplificationProblem& problem, const Eigen::VectorXd& psi) {
    check_psi(problem, psi, "uniformity_loss");
    const double target = problem.alpha * static_cast<double>(problem.k);
    const Eigen::VectorXd survivors = problem.adjacency.apply(psi);
    return (survivors.array() - target).matrix().squaredNorm();
}

double total_loss(const SimplificationProblem& problem, const Eigen::VectorXd& psi) {
    return feature_loss(problem, psi) + problem.lambda * uniformity_loss(problem, psi);
}

Eigen::VectorXd gradient(const SimplificationProblem& problem, const Eigen::VectorXd& psi) {
    check_psi(problem, psi, "gradient");
    const double target = problem.alpha * static_cast<double>(problem.k);
    Eigen::VectorXd grad = 2.0 * (problem.f.array() * (psi.array() - 1.0)).matrix();
    if (problem.lambda != 0.0) {
        const Eigen::VectorXd residual = problem.adjacency.apply(psi).array() - target;
        grad += 2.0 * problem.lambda * problem.adjacency.apply_transpose(residual);
    }
    return grad;
}

}  // namespace pcsimp
