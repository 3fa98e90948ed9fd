#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mesb/boundary_grid.hpp"
#include "mesb/card.hpp"

namespace mesb {

using BigCount = boost::multiprecision::cpp_int;

/// Cell weights over the behavior grid, stored row-major (first dimension
/// outermost). Counts are exact; a 30-card deckspace runs to ~10^35 decks.
struct DensityGrid {
    BoundaryGrid grid;
    std::vector<BigCount> counts;
    std::uint64_t catalog_hash = 0;
    int deck_size = 0;

    std::size_t flat_index(const CellCoord& coord) const;
    BigCount total() const;
    /// Weights as ratios of the total; sums to 1 within 1e-9.
    std::vector<double> normalized() const;
};

/// Counts every valid deck (multiset respecting copy limits) by dynamic
/// programming over (copies chosen, cost sum, squared-cost sum), then bins
/// each attained (mean, variance) pair into the grid.
DensityGrid exact_behavior_distribution(const CardCatalog& catalog, int deck_size,
                                        const BoundaryGrid& grid);

/// Bins observed behavior samples; total weight equals the sample count.
DensityGrid observed_density(const std::vector<BehaviorVector>& behaviors,
                             const BoundaryGrid& grid);

} // namespace mesb
