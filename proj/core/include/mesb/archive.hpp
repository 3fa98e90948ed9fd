#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mesb/behavior.hpp"
#include "mesb/boundary_grid.hpp"
#include "mesb/error.hpp"
#include "mesb/rng.hpp"
#include "mesb/sample_buffer.hpp"

namespace mesb {

struct ArchiveConfig {
    /// Remap every delta offered individuals.
    std::uint64_t remap_frequency = 100;
    /// Sample queue capacity xi; nullopt = unbounded.
    std::optional<std::size_t> buffer_capacity = std::nullopt;
    int min_resolution = 2;
    int max_resolution = 20;
    std::uint64_t total_evaluations = 10000;

    void validate() const {
        if (remap_frequency < 1) throw Error::validation("remap_frequency must be >= 1");
        if (min_resolution < 2) throw Error::validation("min_resolution must be >= 2");
        if (max_resolution < min_resolution)
            throw Error::validation("max_resolution must be >= min_resolution");
        if (total_evaluations < 1) throw Error::validation("total_evaluations must be >= 1");
    }
};

/// Resolution schedule: grows linearly from min to max in L = max-min+1 equal
/// intervals of the evaluation budget, i.e. min + floor(i*L/B), clamped.
inline int resolution_for(std::uint64_t eval_index, const ArchiveConfig& cfg) {
    if (eval_index >= cfg.total_evaluations) {
        throw Error::validation("eval_index out of range for resolution schedule");
    }
    const std::uint64_t levels =
        static_cast<std::uint64_t>(cfg.max_resolution - cfg.min_resolution) + 1;
    const std::uint64_t step = eval_index * levels / cfg.total_evaluations;
    const std::uint64_t res = static_cast<std::uint64_t>(cfg.min_resolution) + step;
    return static_cast<int>(std::min<std::uint64_t>(res, cfg.max_resolution));
}

enum class InsertOutcome {
    PlacedNew,
    ReplacedIncumbent,
    Rejected,
};

struct EliteStats {
    double winrate = 0.0;
    std::uint32_t games = 0;

    bool operator==(const EliteStats&) const = default;
};

template <typename Genome>
struct Elite {
    Genome genome{};
    BehaviorVector behavior;
    double fitness = 0.0;
    EliteStats stats;
};

/// MAP-Elites archive with sliding percentile boundaries. Cells are keyed by
/// coordinate under the current grid; every offered individual lands in the
/// sample queue, and every remap_frequency offers (or whenever the scheduled
/// resolution changes) the boundaries are recomputed from the queue and the
/// elites re-placed.
///
/// Single-writer: mutating calls happen on one logical thread.
template <typename Genome>
class SlidingArchive {
public:
    using EliteT = Elite<Genome>;
    using CellMap = std::map<CellCoord, EliteT>;

    explicit SlidingArchive(ArchiveConfig cfg, int dims = 2)
        : cfg_(cfg),
          dims_(dims),
          grid_(zero_grid(cfg.min_resolution, dims)),
          buffer_(cfg.buffer_capacity) {
        cfg_.validate();
    }

    const ArchiveConfig& config() const { return cfg_; }
    const BoundaryGrid& grid() const { return grid_; }
    const CellMap& cells() const { return cells_; }
    const SampleBuffer& buffer() const { return buffer_; }
    std::uint64_t inserted_count() const { return inserted_; }
    int dims() const { return dims_; }
    std::size_t occupied() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    /// Offers a candidate. The behavior is always absorbed into the sample
    /// queue and the offer counter always advances; the candidate takes the
    /// cell iff it is empty or the candidate strictly beats the incumbent
    /// (ties keep the incumbent). Scheduled remaps run after the insertion.
    InsertOutcome try_insert(EliteT candidate) {
        if (static_cast<int>(candidate.behavior.size()) != dims_) {
            throw Error::validation("candidate behavior dimension mismatch");
        }
        if (!is_finite(candidate.behavior)) {
            throw Error::validation("candidate behavior must be finite");
        }
        buffer_.push(candidate.behavior);
        ++inserted_;

        const CellCoord coord = grid_.locate(candidate.behavior);
        const InsertOutcome outcome = place(coord, std::move(candidate));

        // Resolution changes force a remap even between delta marks; otherwise
        // remap on the delta schedule with the resolution unchanged.
        const std::uint64_t next_index = std::min(inserted_, cfg_.total_evaluations - 1);
        const int target_res = resolution_for(next_index, cfg_);
        if (target_res != grid_.resolution()) {
            remap(target_res);
        } else if (inserted_ % cfg_.remap_frequency == 0) {
            remap(grid_.resolution());
        }
        return outcome;
    }

    /// Recomputes boundaries from the full sample queue at the given
    /// resolution and re-places all elites (ascending old cell coordinate).
    /// Collisions keep the higher-fitness elite. The queue and the offer
    /// counter are untouched.
    void remap(int new_resolution) {
        if (buffer_.empty()) {
            throw Error::validation("cannot remap without samples");
        }
        std::vector<BehaviorVector> samples(buffer_.samples().begin(), buffer_.samples().end());
        grid_ = compute_boundaries(samples, new_resolution, dims_);

        CellMap old = std::move(cells_);
        cells_.clear();
        for (auto& [old_coord, elite] : old) {
            CellCoord coord = grid_.locate(elite.behavior);
            place(std::move(coord), std::move(elite));
        }
    }

    /// Uniform draw over occupied cells; the archive is unchanged.
    const EliteT& select_random(Rng& rng) const {
        if (cells_.empty()) {
            throw Error::validation("no elites");
        }
        auto it = cells_.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(rng.index(cells_.size())));
        return it->second;
    }

    /// Rebuilds an archive from persisted parts (snapshot loading). Elites
    /// are placed under the stored grid; behaviors must map to their cells.
    static SlidingArchive restore(ArchiveConfig cfg, BoundaryGrid grid,
                                  std::vector<EliteT> elites, std::uint64_t inserted_count) {
        SlidingArchive a(cfg, grid.dims());
        a.grid_ = std::move(grid);
        a.inserted_ = inserted_count;
        for (auto& e : elites) {
            const CellCoord coord = a.grid_.locate(e.behavior);
            auto [it, fresh] = a.cells_.try_emplace(coord, std::move(e));
            if (!fresh) {
                throw Error::validation("restore: two elites map to one cell");
            }
        }
        return a;
    }

private:
    InsertOutcome place(CellCoord coord, EliteT candidate) {
        auto it = cells_.find(coord);
        if (it == cells_.end()) {
            cells_.emplace(std::move(coord), std::move(candidate));
            return InsertOutcome::PlacedNew;
        }
        if (candidate.fitness > it->second.fitness) {
            it->second = std::move(candidate);
            return InsertOutcome::ReplacedIncumbent;
        }
        return InsertOutcome::Rejected;
    }

    ArchiveConfig cfg_;
    int dims_;
    BoundaryGrid grid_;
    CellMap cells_;
    SampleBuffer buffer_;
    std::uint64_t inserted_ = 0;
};

inline const char* to_string(InsertOutcome o) {
    switch (o) {
        case InsertOutcome::PlacedNew: return "placed-new";
        case InsertOutcome::ReplacedIncumbent: return "replaced-incumbent";
        case InsertOutcome::Rejected: return "rejected";
    }
    return "unknown";
}

} // namespace mesb
