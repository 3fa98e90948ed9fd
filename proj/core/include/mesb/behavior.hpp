#pragma once

#include <cmath>
#include <vector>

namespace mesb {

/// Ordered list of d real-valued behavior descriptors. For the deck domain
/// d = 2: (mean mana cost, mana cost variance).
using BehaviorVector = std::vector<double>;

inline bool is_finite(const BehaviorVector& b) {
    for (double v : b) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

} // namespace mesb
