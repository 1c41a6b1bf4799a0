#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kpdtm/neighbors.hpp"
#include "kpdtm/parallel.hpp"
#include "kpdtm/point_cloud.hpp"
#include "kpdtm/power_model.hpp"
#include "kpdtm/rng.hpp"

namespace kpdtm {

/// Trace of a single fit restart. losses holds the empirical loss after the
/// initial derivation and after every update round; it is nonincreasing up to
/// relative slack 1e-9.
struct FitReport {
    std::vector<double> losses;
    std::size_t iterations = 0;
    std::size_t reseeds = 0;
    std::size_t restart_id = 0;
    std::uint64_t seed = 0;
    bool converged = false;
};

struct RestartSummary {
    std::size_t restart_id = 0;
    double final_loss = 0.0;
    std::size_t iterations = 0;
    std::size_t reseeds = 0;
    bool converged = false;
};

enum class InitStrategy {
    UniformDistinct,  // k distinct data points, seeded
    WarmStart,        // a previous model's anchors padded with data points
    ExplicitList,     // caller-supplied anchors, used verbatim
};

struct FitOptions {
    std::size_t q = 1;
    std::size_t k = 1;
    std::size_t restarts = 10;
    std::size_t max_iter = 10;
    std::uint64_t seed = 0;
    InitStrategy init = InitStrategy::UniformDistinct;
    std::vector<double> init_anchors;  // warm base (k' x d, k' <= k) or explicit list (k x d)
};

struct FitResult {
    PowerModel model;
    FitReport report;                      // best restart
    std::vector<RestartSummary> restarts;  // all restarts, by id
};

/// cell[j] = argmin_i |X_j - c_i|^2 + w_i^2, ties broken by smallest i.
inline std::vector<std::size_t> assign_cells(const PowerModel& model, const PointCloud& cloud) {
    if (model.d != cloud.dim()) throw std::invalid_argument("assign_cells: dimension mismatch");
    const std::size_t k = model.k();
    std::vector<std::size_t> cells(cloud.size());
    for (std::size_t j = 0; j < cloud.size(); ++j) {
        auto x = cloud.point(j);
        std::size_t best = 0;
        double best_cost = squared_distance(x, model.center(0)) + model.sq_weights[0];
        for (std::size_t i = 1; i < k; ++i) {
            const double cost = squared_distance(x, model.center(i)) + model.sq_weights[i];
            if (cost < best_cost) {
                best_cost = cost;
                best = i;
            }
        }
        cells[j] = best;
    }
    return cells;
}

/// (1/n) sum_j min_i |X_j - c_i|^2 + w_i^2.
inline double empirical_loss(const PowerModel& model, const PointCloud& cloud) {
    double s = 0.0;
    for (std::size_t j = 0; j < cloud.size(); ++j) s += eval_power_sq(model, cloud.point(j));
    return s / static_cast<double>(cloud.size());
}

struct AnchorUpdate {
    std::vector<double> anchors;  // k x d
    std::size_t reseeds = 0;
};

/// New anchor t_i = mean of the points assigned to cell i. An empty cell is
/// repaired by reseeding its anchor to the data point with the largest power
/// value under the current model (the worst-covered point); the replacement
/// candidate can only lower the pointwise min, so the loss stays monotone.
inline AnchorUpdate update_anchors(const PowerModel& model, const std::vector<std::size_t>& cells,
                                   const PointCloud& cloud) {
    const std::size_t k = model.k();
    const std::size_t d = cloud.dim();
    AnchorUpdate out;
    out.anchors.assign(k * d, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t j = 0; j < cloud.size(); ++j) {
        const std::size_t i = cells[j];
        auto x = cloud.point(j);
        for (std::size_t a = 0; a < d; ++a) out.anchors[i * d + a] += x[a];
        ++counts[i];
    }

    std::vector<std::size_t> empties;
    for (std::size_t i = 0; i < k; ++i) {
        if (counts[i] == 0) {
            empties.push_back(i);
            continue;
        }
        for (std::size_t a = 0; a < d; ++a) out.anchors[i * d + a] /= static_cast<double>(counts[i]);
    }

    if (!empties.empty()) {
        // Rank data points by (power value desc, index asc) and hand the worst
        // ones to the dead anchors, one point per anchor.
        std::vector<std::size_t> order(cloud.size());
        std::vector<double> power(cloud.size());
        for (std::size_t j = 0; j < cloud.size(); ++j) {
            order[j] = j;
            power[j] = eval_power_sq(model, cloud.point(j));
        }
        const std::size_t take = std::min(empties.size(), cloud.size());
        std::partial_sort(order.begin(), order.begin() + take, order.end(),
                          [&](std::size_t a, std::size_t b) {
                              return power[a] != power[b] ? power[a] > power[b] : a < b;
                          });
        for (std::size_t e = 0; e < empties.size(); ++e) {
            auto p = cloud.point(order[e % take]);
            std::copy(p.begin(), p.end(), out.anchors.begin() + empties[e] * d);
            ++out.reseeds;
        }
    }
    return out;
}

/// Initial anchors for one restart. UniformDistinct draws k distinct data
/// points; WarmStart keeps the base anchors and pads with distinct data
/// points; ExplicitList returns the base verbatim.
inline std::vector<double> init_anchors(const PointCloud& cloud, std::size_t k,
                                        InitStrategy strategy, std::uint64_t seed,
                                        const std::vector<double>& base = {}) {
    const std::size_t d = cloud.dim();
    if (k < 1) throw std::invalid_argument("init_anchors: k must be >= 1");
    switch (strategy) {
        case InitStrategy::UniformDistinct: {
            if (k > cloud.size())
                throw std::invalid_argument("init_anchors: k > n for uniform-distinct init");
            SplitMix64 g(seed);
            std::vector<double> anchors(k * d);
            const std::vector<std::size_t> picks = pick_distinct(cloud.size(), k, g);
            for (std::size_t i = 0; i < k; ++i) {
                auto p = cloud.point(picks[i]);
                std::copy(p.begin(), p.end(), anchors.begin() + i * d);
            }
            return anchors;
        }
        case InitStrategy::WarmStart: {
            if (base.empty() || base.size() % d != 0)
                throw std::invalid_argument("init_anchors: warm base has wrong dimension");
            const std::size_t k0 = base.size() / d;
            if (k0 > k) throw std::invalid_argument("init_anchors: warm base larger than k");
            const std::size_t pad = k - k0;
            if (pad > cloud.size())
                throw std::invalid_argument("init_anchors: warm padding exceeds cloud size");
            std::vector<double> anchors = base;
            anchors.resize(k * d);
            SplitMix64 g(seed);
            const std::vector<std::size_t> picks = pick_distinct(cloud.size(), pad, g);
            for (std::size_t i = 0; i < pad; ++i) {
                auto p = cloud.point(picks[i]);
                std::copy(p.begin(), p.end(), anchors.begin() + (k0 + i) * d);
            }
            return anchors;
        }
        case InitStrategy::ExplicitList: {
            if (base.size() != k * d)
                throw std::invalid_argument("init_anchors: explicit list must have k anchors");
            return base;
        }
    }
    throw std::invalid_argument("init_anchors: unknown strategy");
}

namespace detail {

inline FitReport run_restart(const NeighborIndex& index, const PointCloud& cloud,
                             const FitOptions& opt, std::size_t restart_id, PowerModel& model) {
    FitReport report;
    report.restart_id = restart_id;
    report.seed = substream(opt.seed, restart_id);

    std::vector<double> anchors =
        init_anchors(cloud, opt.k, opt.init, report.seed, opt.init_anchors);
    model = model_from_anchors(index, std::move(anchors), opt.q);
    report.losses.push_back(empirical_loss(model, cloud));

    std::vector<std::size_t> cells = assign_cells(model, cloud);
    for (std::size_t iter = 0; iter < opt.max_iter; ++iter) {
        AnchorUpdate upd = update_anchors(model, cells, cloud);
        report.reseeds += upd.reseeds;
        const bool anchors_unchanged = upd.anchors == model.anchors;
        model = model_from_anchors(index, std::move(upd.anchors), opt.q);
        report.losses.push_back(empirical_loss(model, cloud));
        ++report.iterations;

        if (anchors_unchanged) {
            report.converged = true;
            break;
        }
        std::vector<std::size_t> next = assign_cells(model, cloud);
        // Unchanged assignment makes the next update reproduce the anchors
        // exactly, unless it had to reseed (reseed choices follow the model,
        // not just the cells), so a reseeding round never counts as converged.
        if (next == cells && upd.reseeds == 0) {
            report.converged = true;
            break;
        }
        cells = std::move(next);
    }
    return report;
}

}  // namespace detail

/// Lloyd-style alternating minimization, multi-restart. Each restart draws an
/// independent substream of `seed`, so restarts may run concurrently without
/// changing the result; the winner is the smallest (final loss, restart_id).
/// Stops a restart when the cell assignment repeats or after max_iter rounds.
inline FitResult fit(const PointCloud& cloud, const FitOptions& opt) {
    if (opt.q < 1 || opt.q > cloud.size()) throw std::invalid_argument("fit: q out of range [1, n]");
    if (opt.k < 1 || opt.k > cloud.size()) throw std::invalid_argument("fit: k out of range [1, n]");
    if (opt.restarts < 1) throw std::invalid_argument("fit: restarts must be >= 1");

    const NeighborIndex index(cloud);
    std::vector<PowerModel> models(opt.restarts);
    std::vector<FitReport> reports(opt.restarts);
    parallel_chunks(opt.restarts, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r)
            reports[r] = detail::run_restart(index, cloud, opt, r, models[r]);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < opt.restarts; ++r)
        if (reports[r].losses.back() < reports[best].losses.back()) best = r;

    FitResult out;
    out.model = std::move(models[best]);
    out.report = std::move(reports[best]);
    out.restarts.resize(opt.restarts);
    for (std::size_t r = 0; r < opt.restarts; ++r) {
        const FitReport& rep = r == best ? out.report : reports[r];
        out.restarts[r] = {rep.restart_id, rep.losses.back(), rep.iterations, rep.reseeds,
                           rep.converged};
    }
    return out;
}

}  // namespace kpdtm
