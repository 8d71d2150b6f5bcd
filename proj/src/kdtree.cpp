// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pcsimp {

namespace {
constexpr int kLeafSize = 16;

// Closer = nearer, with the smaller index breaking distance ties.
inline bool closer(const Neighbor& a, const Neighbor& b) {
    if (a.sq_dist != b.sq_dist) return a.sq_dist < b.sq_dist;
    return a.index < b.index;
}
}  // namespace

struct KdTree::SearchState {
    // Max-heap under `closer`-as-less: the front is the worst keeper.
    std::vector<Neighbor> heap;
    int k = 0;
    int exclude = -1;

    bool full() const { return static_cast<int>(heap.size()) == k; }
    double worst_sq_dist() const { return heap.front().sq_dist; }

    void offer(const Neighbor& cand) {
        if (cand.index == exclude) return;
        if (!full()) {
            heap.push_back(cand);
            std::push_heap(heap.begin(), heap.end(), closer);
        } else if (closer(cand, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), closer);
            heap.back() = cand;
            std::push_heap(heap.begin(), heap.end(), closer);
        }
    }
};

KdTree::KdTree(const PointCloud& cloud) : cloud_(&cloud) {
    const int n = cloud.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    if (n > 0) {
        nodes_.reserve(static_cast<size_t>(2 * n / kLeafSize + 2));
        build(0, n);
    }
}

int KdTree::build(int begin, int end) {
    const int node_idx = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= kLeafSize) {
        nodes_[node_idx].first = begin;
        nodes_[node_idx].count = end - begin;
        return node_idx;
    }

    Eigen::Vector3d lo = (*cloud_)[order_[begin]];
    Eigen::Vector3d hi = lo;
    for (int i = begin + 1; i < end; ++i) {
        const auto& p = (*cloud_)[order_[i]];
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    int axis;
    (hi - lo).maxCoeff(&axis);
    if (hi[axis] == lo[axis]) {
        // All coordinates identical: keep as one (possibly large) leaf.
        nodes_[node_idx].first = begin;
        nodes_[node_idx].count = end - begin;
        return node_idx;
    }

    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return (*cloud_)[a][axis] < (*cloud_)[b][axis]; });
    nodes_[node_idx].axis = axis;
    nodes_[node_idx].split = (*cloud_)[order_[mid]][axis];

    // Internal nodes keep the left child in `child` and the right in `first`.
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[node_idx].child = left;
    nodes_[node_idx].first = right;
    nodes_[node_idx].count = 0;
    return node_idx;
}

void KdTree::search(int node_idx, const Eigen::Vector3d& query, SearchState& state) const {
    const Node& node = nodes_[static_cast<size_t>(node_idx)];
    if (node.count > 0) {
        for (int i = node.first; i < node.first + node.count; ++i) {
            const int idx = order_[i];
            state.offer({idx, (query - (*cloud_)[idx]).squaredNorm()});
        }
        return;
    }
    const double delta = query[node.axis] - node.split;
    const int near_child = delta < 0.0 ? node.child : node.first;
    const int far_child = delta < 0.0 ? node.first : node.child;
    search(near_child, query, state);
    // Visit the far side on equality too: an equidistant point with a smaller
    // index may still displace the current worst keeper.
    if (!state.full() || delta * delta <= state.worst_sq_dist()) search(far_child, query, state);
}

std::vector<Neighbor> KdTree::knn(const Eigen::Vector3d& query, int k, int exclude) const {
    if (k < 1) throw std::invalid_argument("KdTree::knn: k must be >= 1");
    const int available = cloud_->size() - (exclude >= 0 ? 1 : 0);
    if (k > available)
        throw std::invalid_argument("KdTree::knn: requested " + std::to_string(k) + " neighbors from " +
                                    std::to_string(available) + " candidates");
    SearchState state;
    state.k = k;
    state.exclude = exclude;
    state.heap.reserve(static_cast<size_t>(k) + 1);
    search(0, query, state);
    std::vector<Neighbor> out = std::move(state.heap);
    std::sort(out.begin(), out.end(), closer);
    return out;
}

Neighbor KdTree::nearest(const Eigen::Vector3d& query) const {
    return knn(query, 1).front();
}

}  // namespace pcsimp
