#include "mesb/boundary_grid.hpp"

#include <algorithm>
#include <cmath>

#include "mesb/error.hpp"

namespace mesb {

BoundaryGrid::BoundaryGrid(std::vector<std::vector<double>> boundaries, int resolution)
    : boundaries_(std::move(boundaries)), resolution_(resolution) {
    if (resolution_ < 2) {
        throw Error::validation("grid resolution must be at least 2");
    }
    for (const auto& dim : boundaries_) {
        if (dim.size() != static_cast<std::size_t>(resolution_ - 1)) {
            throw Error::validation("boundary list length must equal resolution - 1");
        }
        if (!std::is_sorted(dim.begin(), dim.end())) {
            throw Error::validation("boundary list must be sorted non-decreasing");
        }
    }
}

std::size_t BoundaryGrid::cell_count() const {
    std::size_t n = 1;
    for (int d = 0; d < dims(); ++d) n *= static_cast<std::size_t>(resolution_);
    return n;
}

CellCoord BoundaryGrid::locate(const BehaviorVector& behavior) const {
    if (static_cast<int>(behavior.size()) != dims()) {
        throw Error::validation("behavior dimension does not match grid");
    }
    if (!is_finite(behavior)) {
        throw Error::validation("behavior vector has a non-finite component");
    }
    CellCoord coord(behavior.size());
    for (std::size_t d = 0; d < behavior.size(); ++d) {
        const auto& bs = boundaries_[d];
        // Count of boundaries <= value; ties go to the upper cell.
        auto it = std::upper_bound(bs.begin(), bs.end(), behavior[d]);
        coord[d] = static_cast<std::int32_t>(it - bs.begin());
    }
    return coord;
}

BoundaryGrid compute_boundaries(std::span<const BehaviorVector> samples, int resolution, int dims) {
    if (samples.empty()) {
        throw Error::validation("no samples");
    }
    if (resolution < 2) {
        throw Error::validation("resolution must be at least 2");
    }
    for (const auto& s : samples) {
        if (static_cast<int>(s.size()) != dims) {
            throw Error::validation("invalid sample: dimension mismatch");
        }
        if (!is_finite(s)) {
            throw Error::validation("invalid sample");
        }
    }

    const std::size_t n = samples.size();
    std::vector<std::vector<double>> boundaries(dims);
    std::vector<double> column(n);
    for (int d = 0; d < dims; ++d) {
        for (std::size_t i = 0; i < n; ++i) column[i] = samples[i][d];
        std::sort(column.begin(), column.end());
        auto& bs = boundaries[d];
        bs.reserve(resolution - 1);
        for (int i = 1; i < resolution; ++i) {
            std::size_t rank = static_cast<std::size_t>(i) * n / static_cast<std::size_t>(resolution);
            rank = std::min(rank, n - 1);
            bs.push_back(column[rank]);
        }
    }
    return BoundaryGrid(std::move(boundaries), resolution);
}

BoundaryGrid zero_grid(int resolution, int dims) {
    std::vector<std::vector<double>> boundaries(
        dims, std::vector<double>(static_cast<std::size_t>(resolution - 1), 0.0));
    return BoundaryGrid(std::move(boundaries), resolution);
}

} // namespace mesb
