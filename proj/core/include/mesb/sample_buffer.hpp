#pragma once

#include <cstddef>
#include <deque>
#include <optional>

#include "mesb/behavior.hpp"

namespace mesb {

/// Insertion-ordered queue of behavior samples used to draw percentile
/// boundaries. Unbounded by default; a finite capacity evicts oldest-first.
class SampleBuffer {
public:
    SampleBuffer() = default;
    explicit SampleBuffer(std::optional<std::size_t> capacity) : capacity_(capacity) {}

    void push(BehaviorVector b) {
        samples_.push_back(std::move(b));
        if (capacity_ && samples_.size() > *capacity_) {
            samples_.pop_front();
        }
    }

    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    std::optional<std::size_t> capacity() const { return capacity_; }

    const std::deque<BehaviorVector>& samples() const { return samples_; }

private:
    std::optional<std::size_t> capacity_;
    std::deque<BehaviorVector> samples_;
};

} // namespace mesb
