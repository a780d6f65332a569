#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "liftexp/vec.hpp"

namespace liftexp {

/// Deterministic set of nonzero directions used to discretise "for all u".
/// Regeneration from the same parameters is bit-identical; grid density is
/// the caller's precision knob.
class DirectionGrid {
public:
    /// d = 1: the two directions {+1, -1}.
    static DirectionGrid line();

    /// d = 2: count equally spaced angles 2 pi k / count.
    static DirectionGrid circle(std::size_t count);

    /// d >= 3: count reproducible pseudo-uniform unit sphere points.
    static DirectionGrid seeded(std::size_t dim, std::size_t count, std::uint64_t seed);

    /// Picks the variant appropriate for the dimension.
    static DirectionGrid for_dimension(std::size_t dim, std::size_t count, std::uint64_t seed);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }
    const Vec& operator[](std::size_t i) const { return vectors_[i]; }
    std::span<const Vec> vectors() const { return vectors_; }

private:
    DirectionGrid(std::size_t dim, std::vector<Vec> vectors)
        : dim_(dim), vectors_(std::move(vectors)) {}

    std::size_t dim_;
    std::vector<Vec> vectors_;
};

}  // namespace liftexp
