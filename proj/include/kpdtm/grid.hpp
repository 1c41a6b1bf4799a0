#pragma once

#include <stdexcept>
#include <vector>

#include "kpdtm/parallel.hpp"

namespace kpdtm {

/// Axis-aligned box with a per-axis cell count. Fields are sampled at cell
/// centers; cells are laid out row-major (last axis fastest).
struct GridSpec {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::size_t> resolution;

    std::size_t dim() const { return lower.size(); }

    std::size_t cell_count() const {
        std::size_t n = 1;
        for (std::size_t r : resolution) n *= r;
        return n;
    }

    void validate() const {
        if (lower.empty() || upper.size() != lower.size() || resolution.size() != lower.size())
            throw std::invalid_argument("GridSpec: lower/upper/resolution sizes disagree");
        for (std::size_t a = 0; a < lower.size(); ++a) {
            if (!(lower[a] < upper[a]))
                throw std::invalid_argument("GridSpec: lower must be strictly below upper");
            if (resolution[a] < 1) throw std::invalid_argument("GridSpec: resolution must be >= 1");
        }
    }
};

/// Evaluated scalar field over a GridSpec. values holds the squared field
/// (power or DTM) so near-zero precision is kept; take square roots only at
/// report time.
struct Grid {
    GridSpec spec;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    std::vector<double> cell_center(std::size_t flat) const {
        const std::size_t d = spec.dim();
        std::vector<double> x(d);
        for (std::size_t a = d; a-- > 0;) {
            const std::size_t r = spec.resolution[a];
            const std::size_t i = flat % r;
            flat /= r;
            x[a] = spec.lower[a] +
                   (static_cast<double>(i) + 0.5) * (spec.upper[a] - spec.lower[a]) /
                       static_cast<double>(r);
        }
        return x;
    }
};

/// Evaluates field_sq (x -> squared value) at every cell center. Cells are
/// computed concurrently with deterministic placement.
template <class FieldSq>
Grid eval_grid(const GridSpec& spec, FieldSq&& field_sq) {
    spec.validate();
    Grid grid;
    grid.spec = spec;
    grid.values.resize(spec.cell_count());
    parallel_chunks(grid.values.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) grid.values[c] = field_sq(grid.cell_center(c));
    });
    return grid;
}

/// mask[cell] = (sqrt(values[cell]) <= r), evaluated as values[cell] <= r^2.
inline std::vector<char> sublevel_mask(const Grid& grid, double r) {
    if (r < 0.0) throw std::invalid_argument("sublevel_mask: radius must be nonnegative");
    std::vector<char> mask(grid.values.size());
    const double rr = r * r;
    for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = grid.values[c] <= rr ? 1 : 0;
    return mask;
}

}  // namespace kpdtm
