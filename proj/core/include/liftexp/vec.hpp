#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "liftexp/error.hpp"

namespace liftexp {

/// Dense real vector, doubling as point and direction. Directions are never
/// required to be unit length; every consumer relies on positive homogeneity
/// instead of normalising.
class Vec {
public:
    Vec() = default;
    Vec(std::initializer_list<double> coords) : c_(coords) {}
    explicit Vec(std::vector<double> coords) : c_(std::move(coords)) {}

    static Vec zero(std::size_t dim) { return Vec(std::vector<double>(dim, 0.0)); }

    std::size_t dim() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }
    const std::vector<double>& coords() const { return c_; }

    bool finite() const {
        for (double v : c_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    friend bool operator==(const Vec&, const Vec&) = default;

private:
    std::vector<double> c_;
};

inline void require_same_dim(const Vec& a, const Vec& b, const char* what) {
    if (a.dim() != b.dim())
        throw ValidationError(std::string(what) + ": dimension mismatch (" +
                              std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

inline double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "operator+");
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
    return Vec(std::move(c));
}

inline Vec operator-(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "operator-");
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return Vec(std::move(c));
}

inline Vec operator*(double s, const Vec& a) {
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = s * a[i];
    return Vec(std::move(c));
}

inline bool lex_less(const Vec& a, const Vec& b) {
    return a.coords() < b.coords();
}

}  // namespace liftexp
