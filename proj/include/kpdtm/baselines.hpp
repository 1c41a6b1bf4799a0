#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kpdtm/fit.hpp"
#include "kpdtm/neighbors.hpp"
#include "kpdtm/point_cloud.hpp"
#include "kpdtm/power_model.hpp"
#include "kpdtm/rng.hpp"

namespace kpdtm {

/// The q-witnessed distance: the k = n power model whose anchor j is the
/// data point X_j, with center and weight taken from its q-NN moments.
/// Constructed directly, no optimization.
inline PowerModel witnessed_model(const PointCloud& cloud, std::size_t q) {
    const NeighborIndex index(cloud);
    return model_from_anchors(index, cloud.coords(), q);
}

inline PowerModel witnessed_model(const NeighborIndex& index, std::size_t q) {
    return model_from_anchors(index, index.cloud().coords(), q);
}

namespace detail {

inline FitReport run_kmeans_restart(const PointCloud& cloud, std::size_t k, std::size_t max_iter,
                                    std::uint64_t seed, std::size_t restart_id,
                                    PowerModel& model) {
    const std::size_t d = cloud.dim();
    FitReport report;
    report.restart_id = restart_id;
    report.seed = substream(seed, restart_id);

    model.q = 0;  // no local smoothing: plain squared-distance cost
    model.n = cloud.size();
    model.d = d;
    model.centers = init_anchors(cloud, k, InitStrategy::UniformDistinct, report.seed);
    model.anchors = model.centers;
    model.sq_weights.assign(k, 0.0);
    report.losses.push_back(empirical_loss(model, cloud));

    std::vector<std::size_t> cells = assign_cells(model, cloud);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        AnchorUpdate upd = update_anchors(model, cells, cloud);
        report.reseeds += upd.reseeds;
        const bool unchanged = upd.anchors == model.centers;
        model.centers = std::move(upd.anchors);
        model.anchors = model.centers;
        report.losses.push_back(empirical_loss(model, cloud));
        ++report.iterations;

        if (unchanged) {
            report.converged = true;
            break;
        }
        std::vector<std::size_t> next = assign_cells(model, cloud);
        if (next == cells && upd.reseeds == 0) {
            report.converged = true;
            break;
        }
        cells = std::move(next);
    }
    return report;
}

}  // namespace detail

/// Standard Lloyd k-means on squared Euclidean cost, wrapped as a PowerModel
/// with centers = cell means and all weights zero (the h -> 0 analogue of the
/// fitted model). Same restart, seeding and empty-cell policy as fit().
inline FitResult kmeans_model(const PointCloud& cloud, std::size_t k, std::size_t restarts,
                              std::size_t max_iter, std::uint64_t seed) {
    if (k < 1 || k > cloud.size())
        throw std::invalid_argument("kmeans_model: k out of range [1, n]");
    if (restarts < 1) throw std::invalid_argument("kmeans_model: restarts must be >= 1");

    std::vector<PowerModel> models(restarts);
    std::vector<FitReport> reports(restarts);
    parallel_chunks(restarts, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r)
            reports[r] = detail::run_kmeans_restart(cloud, k, max_iter, seed, r, models[r]);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (reports[r].losses.back() < reports[best].losses.back()) best = r;

    FitResult out;
    out.model = std::move(models[best]);
    out.report = std::move(reports[best]);
    out.restarts.resize(restarts);
    for (std::size_t r = 0; r < restarts; ++r) {
        const FitReport& rep = r == best ? out.report : reports[r];
        out.restarts[r] = {rep.restart_id, rep.losses.back(), rep.iterations, rep.reseeds,
                           rep.converged};
    }
    return out;
}

}  // namespace kpdtm
