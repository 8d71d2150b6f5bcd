// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pcsimp/graph.hpp"

namespace pcsimp {

namespace {

void chunk_by_index(const std::vector<int>& indices, int max_size, std::vector<std::vector<int>>& out) {
    const int n = static_cast<int>(indices.size());
    const int pieces = (n + max_size - 1) / max_size;
    for (int p = 0; p < pieces; ++p) {
        const int begin = static_cast<int>(static_cast<long long>(n) * p / pieces);
        const int end = static_cast<int>(static_cast<long long>(n) * (p + 1) / pieces);
        out.emplace_back(indices.begin() + begin, indices.begin() + end);
    }
}

// Returns this subtree's cubes, each an ascending index list.
void split_recursive(const PointCloud& cloud, std::vector<int> indices, int min_size, int max_size,
                     int depth, std::vector<std::vector<int>>& out) {
    const int n = static_cast<int>(indices.size());
    if (n <= max_size) {
        out.push_back(std::move(indices));
        return;
    }

    Eigen::Vector3d lo = cloud[indices[0]];
    Eigen::Vector3d hi = lo;
    for (int idx : indices) {
        lo = lo.cwiseMin(cloud[idx]);
        hi = hi.cwiseMax(cloud[idx]);
    }
    // Coincident mass (or adversarial spacing past the depth cap): no
    // spatial split can make progress, chunk by index order instead.
    if ((hi - lo).norm() == 0.0 || depth > 200) {
        chunk_by_index(indices, max_size, out);
        return;
    }

    const Eigen::Vector3d center = 0.5 * (lo + hi);
    std::array<std::vector<int>, 8> octants;
    for (int idx : indices) {
        const auto& p = cloud[idx];
        const int code = (p.x() >= center.x() ? 1 : 0) | (p.y() >= center.y() ? 2 : 0) |
                         (p.z() >= center.z() ? 4 : 0);
        octants[static_cast<size_t>(code)].push_back(idx);
    }
    indices.clear();
    indices.shrink_to_fit();

    std::vector<std::vector<int>> leaves;
    for (auto& bucket : octants) {
        if (bucket.empty()) continue;
        split_recursive(cloud, std::move(bucket), min_size, max_size, depth + 1, leaves);
    }

    // Greedy residue cleanup: merge the smallest under-min_size leaf with
    // the smallest partner that keeps the pair within max_size.
    auto first_index = [&](const std::vector<int>& v) { return v.front(); };
    while (true) {
        int smallest = -1;
        for (int i = 0; i < static_cast<int>(leaves.size()); ++i) {
            if (smallest < 0 || leaves[i].size() < leaves[smallest].size() ||
                (leaves[i].size() == leaves[smallest].size() &&
                 first_index(leaves[i]) < first_index(leaves[smallest])))
                smallest = i;
        }
        if (smallest < 0 || static_cast<int>(leaves[smallest].size()) >= min_size) break;
        int partner = -1;
        for (int i = 0; i < static_cast<int>(leaves.size()); ++i) {
            if (i == smallest) continue;
            if (leaves[i].size() + leaves[smallest].size() > static_cast<size_t>(max_size)) continue;
            if (partner < 0 || leaves[i].size() < leaves[partner].size() ||
                (leaves[i].size() == leaves[partner].size() &&
                 first_index(leaves[i]) < first_index(leaves[partner])))
                partner = i;
        }
        if (partner < 0) break;  // documented residue case

        std::vector<int> merged;
        merged.reserve(leaves[smallest].size() + leaves[partner].size());
        std::merge(leaves[smallest].begin(), leaves[smallest].end(), leaves[partner].begin(),
                   leaves[partner].end(), std::back_inserter(merged));
        const int keep = std::min(smallest, partner);
        const int drop = std::max(smallest, partner);
        leaves[static_cast<size_t>(keep)] = std::move(merged);
        leaves.erase(leaves.begin() + drop);
    }

    for (auto& leaf : leaves) out.push_back(std::move(leaf));
}

}  // namespace

CubePartition build_partition(const PointCloud& cloud, int min_size, int max_size) {
    if (min_size < 1) throw std::invalid_argument("build_partition: min_size must be >= 1");
    if (max_size < min_size) throw std::invalid_argument("build_partition: max_size < min_size");
    if (cloud.empty()) throw std::invalid_argument("build_partition: empty cloud");

    CubePartition part;
    part.min_size = min_size;
    part.max_size = max_size;

    std::vector<int> all(static_cast<size_t>(cloud.size()));
    std::iota(all.begin(), all.end(), 0);
    split_recursive(cloud, std::move(all), min_size, max_size, 0, part.cubes);

    part.bounds.reserve(part.cubes.size());
    for (const auto& cube : part.cubes) {
        Eigen::Vector3d lo = cloud[cube.front()];
        Eigen::Vector3d hi = lo;
        for (int idx : cube) {
            lo = lo.cwiseMin(cloud[idx]);
            hi = hi.cwiseMax(cloud[idx]);
        }
        part.bounds.emplace_back(lo, hi);
    }
    return part;
}

std::vector<CubeProblem> build_cube_problems(const KnnGraph& graph, const Eigen::VectorXd& feature,
                                             const CubePartition& partition, double alpha,
                                             double lambda) {
    if (feature.size() != graph.n)
        throw std::invalid_argument("build_cube_problems: feature/graph size mismatch");
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("build_cube_problems: alpha in (0, 1]");
    if (lambda < 0.0) throw std::invalid_argument("build_cube_problems: lambda must be >= 0");

    const int n = graph.n;
    std::vector<int> cube_of(static_cast<size_t>(n), -1);
    std::vector<int> local_of(static_cast<size_t>(n), -1);
    for (int c = 0; c < partition.cube_count(); ++c) {
        const auto& cube = partition.cubes[static_cast<size_t>(c)];
        for (int l = 0; l < static_cast<int>(cube.size()); ++l) {
            const int g = cube[static_cast<size_t>(l)];
            if (g < 0 || g >= n || cube_of[static_cast<size_t>(g)] != -1)
                throw std::invalid_argument("build_cube_problems: partition is not a disjoint cover");
            cube_of[static_cast<size_t>(g)] = c;
            local_of[static_cast<size_t>(g)] = l;
        }
    }
    for (int i = 0; i < n; ++i)
        if (cube_of[static_cast<size_t>(i)] < 0)
            throw std::invalid_argument("build_cube_problems: partition misses index " + std::to_string(i));

    const std::vector<int> budgets = allocate_budgets(partition, alpha);

    std::vector<CubeProblem> out(static_cast<size_t>(partition.cube_count()));
    for (int c = 0; c < partition.cube_count(); ++c) {
        const auto& cube = partition.cubes[static_cast<size_t>(c)];
        const int nc = static_cast<int>(cube.size());
        CubeProblem& cp = out[static_cast<size_t>(c)];
        cp.interior = cube;
        cp.budget = budgets[static_cast<size_t>(c)];

        SimplificationProblem& prob = cp.problem;
        prob.k = graph.k;
        prob.alpha = alpha;
        prob.lambda = lambda;
        prob.f.resize(nc);
        prob.adjacency.n = nc;
        prob.adjacency.k = graph.k;
        prob.adjacency.offsets.assign(static_cast<size_t>(nc) + 1, 0);
        prob.adjacency.diag.assign(static_cast<size_t>(nc), 0.0);
        prob.adjacency.cols.reserve(static_cast<size_t>(nc) * graph.k);

        for (int l = 0; l < nc; ++l) {
            const int g = cube[static_cast<size_t>(l)];
            prob.f[l] = feature[g];  // restriction of the global feature: exact halo
            int in_cube = 0;
            for (int j = 0; j < graph.k; ++j) {
                const int nb = graph.neighbor(g, j);
                if (cube_of[static_cast<size_t>(nb)] == c) {
                    prob.adjacency.cols.push_back(local_of[static_cast<size_t>(nb)]);
                    ++in_cube;
                }
            }
            // Degree complement: a boundary row keeps summing to k.
            prob.adjacency.diag[static_cast<size_t>(l)] = static_cast<double>(graph.k - in_cube);
            prob.adjacency.offsets[static_cast<size_t>(l) + 1] =
                static_cast<int>(prob.adjacency.cols.size());
        }
    }
    return out;
}

std::vector<CubeProblem> build_cube_problems(const PointCloud& cloud, const CubePartition& partition,
                                             int k, std::optional<double> sigma, double alpha,
                                             double lambda) {
    const KnnGraph graph = build_knn_graph(cloud, k, sigma);
    const Eigen::VectorXd feature = feature_vector(graph, cloud);
    return build_cube_problems(graph, feature, partition, alpha, lambda);
}

std::vector<int> allocate_budgets(const CubePartition& partition, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("allocate_budgets: alpha in (0, 1]");
    long long n = 0;
    for (const auto& cube : partition.cubes) n += static_cast<long long>(cube.size());
    const int total = selection_budget(alpha, static_cast<int>(n));

    const int c = partition.cube_count();
    std::vector<int> budgets(static_cast<size_t>(c), 0);
    std::vector<double> remainders(static_cast<size_t>(c), 0.0);
    long long assigned = 0;
    for (int i = 0; i < c; ++i) {
        const double quota = static_cast<double>(total) *
                             static_cast<double>(partition.cubes[static_cast<size_t>(i)].size()) /
                             static_cast<double>(n);
        budgets[static_cast<size_t>(i)] = static_cast<int>(std::floor(quota));
        remainders[static_cast<size_t>(i)] = quota - std::floor(quota);
        assigned += budgets[static_cast<size_t>(i)];
    }

    // Hand out the leftover units by largest remainder; ties favor the
    // larger cube, then the lower cube index.
    std::vector<int> order(static_cast<size_t>(c));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (remainders[static_cast<size_t>(a)] != remainders[static_cast<size_t>(b)])
            return remainders[static_cast<size_t>(a)] > remainders[static_cast<size_t>(b)];
        return partition.cubes[static_cast<size_t>(a)].size() > partition.cubes[static_cast<size_t>(b)].size();
    });
    for (long long r = total - assigned, i = 0; r > 0; --r, ++i)
        budgets[static_cast<size_t>(order[static_cast<size_t>(i)])] += 1;

    for (int i = 0; i < c; ++i) {
        if (budgets[static_cast<size_t>(i)] > static_cast<int>(partition.cubes[static_cast<size_t>(i)].size()))
            throw std::logic_error("allocate_budgets: budget exceeds cube size");
    }
    return budgets;
}

SimplifyResult simplify_detailed(const PointCloud& cloud, const SimplifyParams& params) {
    if (params.k < 1) throw std::invalid_argument("simplify: k must be >= 1");
    if (cloud.size() <= params.k)
        throw std::invalid_argument("simplify: need more than k points");
    if (!(params.alpha > 0.0) || params.alpha > 1.0)
        throw std::invalid_argument("simplify: alpha must be in (0, 1]");
    if (params.lambda < 0.0) throw std::invalid_argument("simplify: lambda must be >= 0");

    SimplifyResult result;
    const KnnGraph graph = build_knn_graph(cloud, params.k, params.sigma);
    result.sigma = graph.sigma;
    result.feature = feature_vector(graph, cloud);

    const CubePartition partition = build_partition(cloud, params.cube_min, params.cube_max);
    result.cube_count = partition.cube_count();

    std::vector<CubeProblem> problems =
        build_cube_problems(graph, result.feature, partition, params.alpha, params.lambda);

    // Row-sum audit: every restricted row still sums to exactly k.
    for (const auto& cp : problems)
        for (int i = 0; i < cp.problem.size(); ++i)
            if (cp.problem.adjacency.row_sum(i) != static_cast<double>(params.k))
                throw std::logic_error("simplify: adjacency row sum != k after degree complement");

    const int ncubes = static_cast<int>(problems.size());
    std::vector<ResampleSolution> solutions(static_cast<size_t>(ncubes));
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < ncubes; ++c) {
        const CubeProblem& cp = problems[static_cast<size_t>(c)];
        solutions[static_cast<size_t>(c)] =
            solve_relaxed(cp.problem, static_cast<double>(cp.budget), params.solver);
    }

    // Deterministic ordered merge + loss aggregation.
    std::vector<int> kept;
    for (int c = 0; c < ncubes; ++c) {
        const CubeProblem& cp = problems[static_cast<size_t>(c)];
        const ResampleSolution& sol = solutions[static_cast<size_t>(c)];
        result.relaxed_feature_loss += feature_loss(cp.problem, sol.psi);
        result.relaxed_uniformity_loss += uniformity_loss(cp.problem, sol.psi);
        for (int local : sol.kept) kept.push_back(cp.interior[static_cast<size_t>(local)]);
    }
    std::sort(kept.begin(), kept.end());

    const int budget_total = selection_budget(params.alpha, cloud.size());
    if (static_cast<int>(kept.size()) != budget_total)
        throw std::logic_error("simplify: merged selection size != round(alpha*N)");

    result.mask.kept = std::move(kept);
    result.mask.rate = params.alpha;
    return result;
}

SelectionMask simplify(const PointCloud& cloud, const SimplifyParams& params) {
    return simplify_detailed(cloud, params).mask;
}

}  // namespace pcsimp
