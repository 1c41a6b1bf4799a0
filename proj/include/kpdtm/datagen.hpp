#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kpdtm/point_cloud.hpp"
#include "kpdtm/rng.hpp"

namespace kpdtm {

/// Planar supports with closed-form distance functions.
enum class Shape {
    Circle,    // circle of given radius centered at the origin
    Sideways,  // two circles of radii r1, r2 tangent at the origin (figure eight)
    Square,    // filled axis-aligned square of given side centered at the origin
    Segment,   // segment of given length on the x-axis centered at the origin
};

/// Recipe for a reproducible synthetic cloud: support samples convolved with
/// per-coordinate Gaussian noise, optionally with a trailing fraction of the
/// points replaced by uniform draws from outlier_box.
struct ShapeSpec {
    Shape shape = Shape::Circle;
    double radius = 1.0;                       // Circle
    double r1 = std::sqrt(2.0);                // Sideways, left loop
    double r2 = std::sqrt(9.0 / 8.0);          // Sideways, right loop
    double side = 1.0;                         // Square
    double length = 1.0;                       // Segment
    std::size_t n = 100;
    double noise_sigma = 0.0;
    double outlier_fraction = 0.0;             // in [0, 1)
    std::array<double, 2> outlier_lo = {-3.0, -3.0};
    std::array<double, 2> outlier_hi = {3.0, 3.0};
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("ShapeSpec: n must be >= 1");
        if (noise_sigma < 0.0) throw std::invalid_argument("ShapeSpec: noise_sigma must be >= 0");
        if (outlier_fraction < 0.0 || outlier_fraction >= 1.0)
            throw std::invalid_argument("ShapeSpec: outlier_fraction must be in [0, 1)");
        for (int a = 0; a < 2; ++a)
            if (!(outlier_lo[a] < outlier_hi[a]))
                throw std::invalid_argument("ShapeSpec: outlier box is empty");
        shape_scale();  // validates the per-shape size parameter
    }

    double shape_scale() const {
        switch (shape) {
            case Shape::Circle:
                if (radius <= 0.0) throw std::invalid_argument("ShapeSpec: radius must be > 0");
                return radius;
            case Shape::Sideways:
                if (r1 <= 0.0 || r2 <= 0.0)
                    throw std::invalid_argument("ShapeSpec: radii must be > 0");
                return r1 + r2;
            case Shape::Square:
                if (side <= 0.0) throw std::invalid_argument("ShapeSpec: side must be > 0");
                return side;
            case Shape::Segment:
                if (length <= 0.0) throw std::invalid_argument("ShapeSpec: length must be > 0");
                return length;
        }
        throw std::invalid_argument("ShapeSpec: unknown shape");
    }

    // The sideways support is the union of the circle of radius r1 centered at
    // (-r1, 0) and the circle of radius r2 centered at (r2, 0); both pass
    // through the origin, where they are tangent, so the union is connected.
    std::array<double, 2> sideways_center_left() const { return {-r1, 0.0}; }
    std::array<double, 2> sideways_center_right() const { return {r2, 0.0}; }
};

namespace detail {

inline std::array<double, 2> support_point(const ShapeSpec& spec, SplitMix64& g) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    switch (spec.shape) {
        case Shape::Circle: {
            const double theta = two_pi * g.uniform01();
            return {spec.radius * std::cos(theta), spec.radius * std::sin(theta)};
        }
        case Shape::Sideways: {
            // Pick a loop proportionally to its perimeter, then an angle.
            const double split = spec.r1 / (spec.r1 + spec.r2);
            const bool left = g.uniform01() < split;
            const double r = left ? spec.r1 : spec.r2;
            const auto c = left ? spec.sideways_center_left() : spec.sideways_center_right();
            const double theta = two_pi * g.uniform01();
            return {c[0] + r * std::cos(theta), c[1] + r * std::sin(theta)};
        }
        case Shape::Square: {
            const double half = spec.side / 2.0;
            return {g.uniform(-half, half), g.uniform(-half, half)};
        }
        case Shape::Segment: {
            const double half = spec.length / 2.0;
            return {g.uniform(-half, half), 0.0};
        }
    }
    throw std::invalid_argument("support_point: unknown shape");
}

}  // namespace detail

/// Draws the cloud for a spec. Deterministic given the seed. Support draws,
/// noise and outlier replacements consume three separate sequential
/// substreams, so the same seed yields the same support realization whatever
/// the noise level; outliers replace the trailing
/// floor(outlier_fraction * n) points.
inline PointCloud sample(const ShapeSpec& spec) {
    spec.validate();
    SplitMix64 g_support(substream(spec.seed, 1));
    SplitMix64 g_noise(substream(spec.seed, 2));
    SplitMix64 g_outlier(substream(spec.seed, 3));
    std::vector<double> coords;
    coords.reserve(spec.n * 2);
    for (std::size_t i = 0; i < spec.n; ++i) {
        std::array<double, 2> p = detail::support_point(spec, g_support);
        if (spec.noise_sigma > 0.0) {
            p[0] += spec.noise_sigma * g_noise.normal();
            p[1] += spec.noise_sigma * g_noise.normal();
        }
        coords.push_back(p[0]);
        coords.push_back(p[1]);
    }
    const std::size_t outliers =
        static_cast<std::size_t>(spec.outlier_fraction * static_cast<double>(spec.n));
    for (std::size_t i = spec.n - outliers; i < spec.n; ++i) {
        coords[i * 2] = g_outlier.uniform(spec.outlier_lo[0], spec.outlier_hi[0]);
        coords[i * 2 + 1] = g_outlier.uniform(spec.outlier_lo[1], spec.outlier_hi[1]);
    }
    return PointCloud(2, std::move(coords));
}

/// Exact Euclidean distance from x to the support of the spec's shape.
inline double support_distance(const ShapeSpec& spec, std::span<const double> x) {
    if (x.size() != 2) throw std::invalid_argument("support_distance: expected a planar point");
    switch (spec.shape) {
        case Shape::Circle:
            return std::abs(std::hypot(x[0], x[1]) - spec.radius);
        case Shape::Sideways: {
            const auto cl = spec.sideways_center_left();
            const auto cr = spec.sideways_center_right();
            const double dl = std::abs(std::hypot(x[0] - cl[0], x[1] - cl[1]) - spec.r1);
            const double dr = std::abs(std::hypot(x[0] - cr[0], x[1] - cr[1]) - spec.r2);
            return std::min(dl, dr);
        }
        case Shape::Square: {
            const double half = spec.side / 2.0;
            const double dx = std::max(std::abs(x[0]) - half, 0.0);
            const double dy = std::max(std::abs(x[1]) - half, 0.0);
            return std::hypot(dx, dy);
        }
        case Shape::Segment: {
            const double half = spec.length / 2.0;
            const double t = std::clamp(x[0], -half, half);
            return std::hypot(x[0] - t, x[1]);
        }
    }
    throw std::invalid_argument("support_distance: unknown shape");
}

}  // namespace kpdtm
