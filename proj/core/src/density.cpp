#include "mesb/density.hpp"

#include <unordered_map>

#include "mesb/deck.hpp"
#include "mesb/error.hpp"

namespace mesb {

std::size_t DensityGrid::flat_index(const CellCoord& coord) const {
    if (coord.size() != static_cast<std::size_t>(grid.dims()))
        throw Error::internal("coordinate dimension mismatch");
    std::size_t index = 0;
    for (std::size_t d = 0; d < coord.size(); ++d) {
        if (coord[d] < 0 || coord[d] >= grid.resolution())
            throw Error::internal("cell coordinate out of range");
        index = index * static_cast<std::size_t>(grid.resolution())
              + static_cast<std::size_t>(coord[d]);
    }
    return index;
}

BigCount DensityGrid::total() const {
    BigCount sum = 0;
    for (const BigCount& count : counts) sum += count;
    return sum;
}

std::vector<double> DensityGrid::normalized() const {
    BigCount sum = total();
    if (sum == 0) throw Error::validation("cannot normalize an empty density grid");
    const double denominator = sum.convert_to<double>();
    std::vector<double> weights;
    weights.reserve(counts.size());
    for (const BigCount& count : counts)
        weights.push_back(count.convert_to<double>() / denominator);
    return weights;
}

DensityGrid exact_behavior_distribution(const CardCatalog& catalog, int deck_size,
                                        const BoundaryGrid& grid) {
    if (grid.dims() != 2)
        throw Error::validation("density grids are over (mean, variance); need 2 dimensions");
    if (deck_size < 1) throw Error::validation("deck size must be positive");
    if (catalog.capacity() < deck_size)
        throw Error::validation("catalog cannot fill a deck of size " + std::to_string(deck_size));

    const std::uint64_t tmax = static_cast<std::uint64_t>(deck_size) * kMaxManaCost * kMaxManaCost;
    auto pack = [tmax](std::uint64_t s, std::uint64_t t) { return s * (tmax + 1) + t; };

    const std::size_t n_cards = catalog.size();
    std::vector<int> suffix_capacity(n_cards + 1, 0);
    for (std::size_t i = n_cards; i > 0; --i)
        suffix_capacity[i - 1] =
            suffix_capacity[i] + catalog.copy_limit(static_cast<CardIndex>(i - 1));

    // dp[j][(cost sum, squared sum)] = number of partial decks with j copies
    // chosen among the cards considered so far. Each card is folded in place,
    // rows descending, so a row is read only before this card touches it.
    std::vector<std::unordered_map<std::uint64_t, BigCount>> dp(
        static_cast<std::size_t>(deck_size) + 1);
    dp[0].emplace(pack(0, 0), BigCount(1));

    for (std::size_t i = 0; i < n_cards; ++i) {
        const std::uint64_t cost = static_cast<std::uint64_t>(catalog.card(static_cast<CardIndex>(i)).mana_cost);
        const std::uint64_t step = pack(cost, cost * cost);
        const int limit = catalog.copy_limit(static_cast<CardIndex>(i));

        for (int j = deck_size - 1; j >= 0; --j) {
            if (dp[static_cast<std::size_t>(j)].empty()) continue;
            for (const auto& [key, count] : dp[static_cast<std::size_t>(j)]) {
                for (int q = 1; q <= limit && j + q <= deck_size; ++q)
                    dp[static_cast<std::size_t>(j + q)][key + static_cast<std::uint64_t>(q) * step] += count;
            }
        }
        for (int j = 0; j < deck_size; ++j)
            if (j + suffix_capacity[i + 1] < deck_size) dp[static_cast<std::size_t>(j)].clear();
    }

    DensityGrid out;
    out.grid = grid;
    out.counts.assign(grid.cell_count(), BigCount(0));
    out.catalog_hash = catalog.content_hash();
    out.deck_size = deck_size;
    for (const auto& [key, count] : dp[static_cast<std::size_t>(deck_size)]) {
        const long long s = static_cast<long long>(key / (tmax + 1));
        const long long t = static_cast<long long>(key % (tmax + 1));
        const CellCoord coord = grid.locate(behavior_from_sums(s, t, deck_size));
        out.counts[out.flat_index(coord)] += count;
    }
    return out;
}

DensityGrid observed_density(const std::vector<BehaviorVector>& behaviors,
                             const BoundaryGrid& grid) {
    if (grid.dims() != 2)
        throw Error::validation("density grids are over (mean, variance); need 2 dimensions");
    DensityGrid out;
    out.grid = grid;
    out.counts.assign(grid.cell_count(), BigCount(0));
    out.deck_size = kDeckSize;
    for (const BehaviorVector& behavior : behaviors)
        out.counts[out.flat_index(grid.locate(behavior))] += 1;
    return out;
}

} // namespace mesb
