#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "kpdtm/dtm.hpp"
#include "kpdtm/neighbors.hpp"
#include "kpdtm/point_cloud.hpp"

namespace kpdtm {

/// A k-center power function: d^2(x) = min_i |x - c_i|^2 + w_i^2.
///
/// For fitted models each center c_i is the barycenter of the q nearest
/// neighbors of the anchor t_i and w_i^2 is their variance, so both are
/// recomputable from the anchors and the source cloud. Models produced by
/// the k-means baseline carry q = 0 and zero weights.
struct PowerModel {
    std::size_t q = 0;  // mass parameter (neighbor count); 0 for plain k-means
    std::size_t n = 0;  // source cloud size
    std::size_t d = 0;
    std::vector<double> anchors;     // k x d, row-major
    std::vector<double> centers;     // k x d, row-major
    std::vector<double> sq_weights;  // k, nonnegative

    std::size_t k() const { return sq_weights.size(); }

    std::span<const double> anchor(std::size_t i) const { return {anchors.data() + i * d, d}; }
    std::span<const double> center(std::size_t i) const { return {centers.data() + i * d, d}; }
};

/// min_i |x - c_i|^2 + w_i^2. The reported distance is its square root.
inline double eval_power_sq(const PowerModel& model, std::span<const double> x) {
    if (x.size() != model.d) throw std::invalid_argument("eval_power_sq: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < model.k(); ++i) {
        const double v = squared_distance(x, model.center(i)) + model.sq_weights[i];
        if (v < best) best = v;
    }
    return best;
}

inline double eval_power(const PowerModel& model, std::span<const double> x) {
    return std::sqrt(eval_power_sq(model, x));
}

/// Derives centers and weights from anchors: c_i, w_i^2 are the barycenter
/// and variance of the q nearest neighbors of anchor t_i.
inline PowerModel model_from_anchors(const NeighborIndex& index, std::vector<double> anchors,
                                     std::size_t q) {
    const std::size_t d = index.dim();
    if (anchors.empty() || anchors.size() % d != 0)
        throw std::invalid_argument("model_from_anchors: anchor count not a multiple of dimension");
    if (q < 1 || q > index.size())
        throw std::invalid_argument("model_from_anchors: q out of range [1, n]");

    PowerModel model;
    model.q = q;
    model.n = index.size();
    model.d = d;
    const std::size_t k = anchors.size() / d;
    model.anchors = std::move(anchors);
    model.centers.resize(k * d);
    model.sq_weights.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const LocalMoments mom = local_moments(index, model.anchor(i), q);
        for (std::size_t a = 0; a < d; ++a) model.centers[i * d + a] = mom.m[a];
        model.sq_weights[i] = mom.v;
    }
    return model;
}

}  // namespace kpdtm
