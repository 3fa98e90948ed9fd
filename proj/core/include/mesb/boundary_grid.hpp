#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mesb/behavior.hpp"

namespace mesb {

using CellCoord = std::vector<std::int32_t>;

/// Per-dimension sorted interior boundaries. A grid with resolution r holds
/// r-1 boundaries per dimension; the outermost cells are open-ended, so every
/// finite value maps to some cell.
///
/// Placement convention: value v falls in the cell indexed by the number of
/// boundaries b with b <= v. Values equal to a boundary go to the upper cell.
class BoundaryGrid {
public:
    BoundaryGrid() = default;
    BoundaryGrid(std::vector<std::vector<double>> boundaries, int resolution);

    int dims() const { return static_cast<int>(boundaries_.size()); }
    int resolution() const { return resolution_; }
    std::size_t cell_count() const;

    const std::vector<double>& boundaries(int dim) const { return boundaries_.at(dim); }
    const std::vector<std::vector<double>>& all_boundaries() const { return boundaries_; }

    /// Binary-search cell lookup, O(d log b). Throws on dimension mismatch
    /// or non-finite input.
    CellCoord locate(const BehaviorVector& behavior) const;

    bool operator==(const BoundaryGrid&) const = default;

private:
    std::vector<std::vector<double>> boundaries_;
    int resolution_ = 0;
};

/// Draws interior boundaries at nearest-rank percentile marks of the samples:
/// per dimension, after sorting, boundary i (i = 1..resolution-1) is the
/// sample at index floor(i*n/resolution), clamped to [0, n-1].
BoundaryGrid compute_boundaries(std::span<const BehaviorVector> samples, int resolution, int dims);

/// All-zero boundaries; the archive's grid before the first remap.
BoundaryGrid zero_grid(int resolution, int dims);

} // namespace mesb
