#pragma once

#include <cstdint>
#include <numeric>
#include <optional>

namespace liftexp {

/// Exact nonnegative rational, used to carry probabilities when the inputs
/// are known exactly (uniform samples, "p/q" weight strings, integer
/// counts). Arithmetic is overflow-checked; on overflow callers degrade to
/// plain doubles.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // den > 0, gcd(num, den) == 1

    static std::optional<Rational> make(std::int64_t num, std::int64_t den) {
        if (den == 0) return std::nullopt;
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return Rational{num, den};
    }

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    bool is_one() const { return num == 1 && den == 1; }

    friend bool operator==(const Rational&, const Rational&) = default;
};

namespace detail {
inline std::optional<std::int64_t> narrow128(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) return std::nullopt;
    return static_cast<std::int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 r = a % b;
        a = b;
        b = r;
    }
    return a == 0 ? 1 : a;
}
}  // namespace detail

inline std::optional<Rational> rational_add(const Rational& a, const Rational& b) {
    const __int128 num =
        static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    const __int128 den = static_cast<__int128>(a.den) * b.den;
    const __int128 g = detail::gcd128(num, den);
    const auto rn = detail::narrow128(num / g);
    const auto rd = detail::narrow128(den / g);
    if (!rn || !rd) return std::nullopt;
    return Rational::make(*rn, *rd);
}

inline std::optional<Rational> rational_add(const std::optional<Rational>& a,
                                            const std::optional<Rational>& b) {
    if (!a || !b) return std::nullopt;
    return rational_add(*a, *b);
}

/// Exact quotient a / b; nullopt on overflow or division by zero.
inline std::optional<Rational> rational_div(const Rational& a, const Rational& b) {
    if (b.num == 0) return std::nullopt;
    const __int128 num = static_cast<__int128>(a.num) * b.den;
    const __int128 den = static_cast<__int128>(a.den) * b.num;
    const auto rn = detail::narrow128(num);
    const auto rd = detail::narrow128(den);
    if (!rn || !rd) return std::nullopt;
    return Rational::make(*rn, *rd);
}

}  // namespace liftexp
