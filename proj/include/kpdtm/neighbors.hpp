#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kpdtm/point_cloud.hpp"

namespace kpdtm {

/// Result of a q-nearest-neighbor query. sq_dists is sorted nondecreasing;
/// ties at equal distance are ordered by ascending point index.
struct NeighborSet {
    std::vector<std::size_t> indices;
    std::vector<double> sq_dists;

    std::size_t q() const { return indices.size(); }
};

/// Exact q-NN index over a fixed cloud (kd-tree, bounded-box pruning).
///
/// Results are identical to a full sort of all points by (squared distance,
/// index): the candidate ordering is lexicographic on that pair, and a subtree
/// is pruned only when its bounding-box distance strictly exceeds the current
/// worst candidate, so equal-distance points with smaller index are never
/// lost. The index keeps a reference to the cloud; the cloud must outlive it.
/// Construction is single-owner; afterwards the index is immutable and safe
/// for concurrent queries.
class NeighborIndex {
public:
    explicit NeighborIndex(const PointCloud& cloud, std::size_t leaf_size = 16)
        : cloud_(&cloud), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
        if (cloud.size() == 0) throw std::invalid_argument("NeighborIndex: empty cloud");
        order_.resize(cloud.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        nodes_.reserve(2 * cloud.size() / leaf_size_ + 2);
        build(0, cloud.size());
    }

    const PointCloud& cloud() const { return *cloud_; }
    std::size_t size() const { return cloud_->size(); }
    std::size_t dim() const { return cloud_->dim(); }

    /// The q points nearest to x, ties at the cutoff broken by ascending index.
    NeighborSet knn(std::span<const double> x, std::size_t q) const {
        if (x.size() != dim()) throw std::invalid_argument("knn: dimension mismatch");
        if (q < 1 || q > size()) throw std::invalid_argument("knn: q out of range [1, n]");

        std::vector<Candidate> heap;
        heap.reserve(q);
        search(0, x, q, heap);

        NeighborSet out;
        out.indices.resize(q);
        out.sq_dists.resize(q);
        std::sort_heap(heap.begin(), heap.end());
        for (std::size_t j = 0; j < q; ++j) {
            out.indices[j] = heap[j].idx;
            out.sq_dists[j] = heap[j].sq;
        }
        return out;
    }

private:
    struct Candidate {
        double sq;
        std::size_t idx;
        bool operator<(const Candidate& o) const {
            return sq != o.sq ? sq < o.sq : idx < o.idx;
        }
    };

    struct Node {
        std::uint32_t left = 0, right = 0;   // children; 0 means leaf
        std::uint32_t begin = 0, end = 0;    // range into order_ (leaves only)
        std::uint32_t bbox = 0;              // offset into bounds_ (lo then hi)
    };

    std::uint32_t build(std::size_t begin, std::size_t end) {
        const std::size_t d = dim();
        const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
        Node& stub = nodes_.back();
        stub.bbox = static_cast<std::uint32_t>(bounds_.size());
        bounds_.resize(bounds_.size() + 2 * d);

        double* lo = bounds_.data() + nodes_[id].bbox;
        double* hi = lo + d;
        auto first = cloud_->point(order_[begin]);
        for (std::size_t a = 0; a < d; ++a) lo[a] = hi[a] = first[a];
        for (std::size_t i = begin + 1; i < end; ++i) {
            auto p = cloud_->point(order_[i]);
            for (std::size_t a = 0; a < d; ++a) {
                if (p[a] < lo[a]) lo[a] = p[a];
                if (p[a] > hi[a]) hi[a] = p[a];
            }
        }

        std::size_t axis = 0;
        double extent = hi[0] - lo[0];
        for (std::size_t a = 1; a < d; ++a) {
            if (hi[a] - lo[a] > extent) {
                extent = hi[a] - lo[a];
                axis = a;
            }
        }

        if (end - begin <= leaf_size_ || extent == 0.0) {
            nodes_[id].begin = static_cast<std::uint32_t>(begin);
            nodes_[id].end = static_cast<std::uint32_t>(end);
            return id;
        }

        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             const double ca = cloud_->point(a)[axis];
                             const double cb = cloud_->point(b)[axis];
                             return ca != cb ? ca < cb : a < b;
                         });
        const std::uint32_t left = build(begin, mid);
        const std::uint32_t right = build(mid, end);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    // Lower bound on the squared distance from x to any point in the node box.
    // Computed from per-axis excesses, so in floating point it never exceeds
    // the true distance of a contained point.
    double box_sq_dist(const Node& node, std::span<const double> x) const {
        const std::size_t d = dim();
        const double* lo = bounds_.data() + node.bbox;
        const double* hi = lo + d;
        double s = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            double e = 0.0;
            if (x[a] < lo[a]) e = lo[a] - x[a];
            else if (x[a] > hi[a]) e = x[a] - hi[a];
            s += e * e;
        }
        return s;
    }

    static void heap_admit(std::vector<Candidate>& heap, std::size_t q, Candidate c) {
        if (heap.size() < q) {
            heap.push_back(c);
            std::push_heap(heap.begin(), heap.end());
        } else if (c < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = c;
            std::push_heap(heap.begin(), heap.end());
        }
    }

    void search(std::uint32_t id, std::span<const double> x, std::size_t q,
                std::vector<Candidate>& heap) const {
        const Node& node = nodes_[id];
        if (node.left == 0) {  // leaf
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = order_[i];
                heap_admit(heap, q, {squared_distance(x, cloud_->point(idx)), idx});
            }
            return;
        }
        const double dl = box_sq_dist(nodes_[node.left], x);
        const double dr = box_sq_dist(nodes_[node.right], x);
        const std::uint32_t near = dl <= dr ? node.left : node.right;
        const std::uint32_t far = dl <= dr ? node.right : node.left;
        const double near_d = std::min(dl, dr);
        const double far_d = std::max(dl, dr);
        // <= not <: an equal-distance point with smaller index may still win.
        if (heap.size() < q || near_d <= heap.front().sq) search(near, x, q, heap);
        if (heap.size() < q || far_d <= heap.front().sq) search(far, x, q, heap);
    }

    const PointCloud* cloud_;
    std::size_t leaf_size_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    std::vector<double> bounds_;
};

}  // namespace kpdtm
