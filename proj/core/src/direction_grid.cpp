#include "liftexp/direction_grid.hpp"

#include <cmath>
#include <random>

#include "liftexp/error.hpp"

namespace liftexp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

DirectionGrid DirectionGrid::line() {
    return DirectionGrid(1, {Vec{1.0}, Vec{-1.0}});
}

DirectionGrid DirectionGrid::circle(std::size_t count) {
    if (count == 0) throw ValidationError("DirectionGrid::circle: count must be positive");
    std::vector<Vec> v;
    v.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(count);
        v.push_back(Vec{std::cos(theta), std::sin(theta)});
    }
    return DirectionGrid(2, std::move(v));
}

DirectionGrid DirectionGrid::seeded(std::size_t dim, std::size_t count, std::uint64_t seed) {
    if (dim < 3)
        throw ValidationError("DirectionGrid::seeded: requires d >= 3 (use circle/line)");
    if (count == 0) throw ValidationError("DirectionGrid::seeded: count must be positive");
    std::mt19937_64 eng(seed);
    // hand-rolled polar Gaussians: std::normal_distribution is not pinned
    // by the standard, this is
    const auto uniform = [&eng] {
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    double spare = 0.0;
    bool has_spare = false;
    const auto normal = [&]() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double a, b, s;
        do {
            a = 2.0 * uniform() - 1.0;
            b = 2.0 * uniform() - 1.0;
            s = a * a + b * b;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare = b * f;
        has_spare = true;
        return a * f;
    };
    std::vector<Vec> v;
    v.reserve(count);
    while (v.size() < count) {
        std::vector<double> c(dim);
        for (double& x : c) x = normal();
        double n2 = 0.0;
        for (double x : c) n2 += x * x;
        if (n2 < 1e-12) continue;
        const double n = std::sqrt(n2);
        for (double& x : c) x /= n;
        v.push_back(Vec(std::move(c)));
    }
    return DirectionGrid(dim, std::move(v));
}

DirectionGrid DirectionGrid::for_dimension(std::size_t dim, std::size_t count,
                                           std::uint64_t seed) {
    if (dim == 0) throw ValidationError("DirectionGrid: dimension must be >= 1");
    if (dim == 1) return line();
    if (dim == 2) return circle(count);
    return seeded(dim, count, seed);
}

}  // namespace liftexp
