#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace atrid {

/// A real number kept as significand * 2^exponent with the significand
/// normalized into +-[1, 2). Used where geometric growth of a recursion
/// (the lambda sequence, its pivots, mu_n) exceeds the range of a plain
/// double long before the quantities that matter (solutions, ratios,
/// log-determinants) do.
///
/// Arithmetic here performs exactly one IEEE-754 double operation per
/// add/mul/div, so results are bit-identical to plain double arithmetic
/// whenever the plain computation stays in range.
struct Scaled {
    double frac = 0.0;   ///< 0, or magnitude in [1, 2)
    std::int64_t exp = 0;

    static Scaled from_double(double v) noexcept {
        if (v == 0.0 || !std::isfinite(v)) return Scaled{v, 0};
        int e = 0;
        double f = std::frexp(v, &e);  // f in +-[0.5, 1)
        return Scaled{2.0 * f, static_cast<std::int64_t>(e) - 1};
    }

    bool is_zero() const noexcept { return frac == 0.0; }

    /// Convert back to double; overflows to +-inf and underflows toward 0
    /// exactly as ldexp does.
    double to_double() const noexcept {
        if (frac == 0.0) return frac;
        if (exp > 1100) return frac > 0 ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
        if (exp < -1200) return frac > 0 ? 0.0 : -0.0;
        return std::ldexp(frac, static_cast<int>(exp));
    }

    /// True when to_double() round-trips without hitting inf or losing
    /// normalization.
    bool fits_double() const noexcept {
        return frac == 0.0 || (exp <= 1023 && exp >= -1021);
    }

    /// Natural log of |value|; -inf for zero.
    double log_abs() const noexcept {
        if (frac == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(std::fabs(frac)) + static_cast<double>(exp) * 0.6931471805599453;
    }

    int sign() const noexcept { return frac > 0 ? 1 : (frac < 0 ? -1 : 0); }

    Scaled operator-() const noexcept { return Scaled{-frac, exp}; }

    friend Scaled operator*(Scaled a, Scaled b) noexcept {
        if (a.frac == 0.0 || b.frac == 0.0) return Scaled{a.frac * b.frac, 0};
        return renorm(a.frac * b.frac, a.exp + b.exp);  // product in [1,4)
    }

    friend Scaled operator*(Scaled a, double b) noexcept { return a * from_double(b); }
    friend Scaled operator*(double a, Scaled b) noexcept { return from_double(a) * b; }

    friend Scaled operator/(Scaled a, Scaled b) noexcept {
        if (a.frac == 0.0) return a;
        return renorm(a.frac / b.frac, a.exp - b.exp);  // quotient in (0.5, 2)
    }

    friend Scaled operator+(Scaled a, Scaled b) noexcept {
        if (a.frac == 0.0) return b;
        if (b.frac == 0.0) return a;
        if (a.exp < b.exp) {
            Scaled t = a;
            a = b;
            b = t;
        }
        std::int64_t d = a.exp - b.exp;
        if (d > 1060) return a;  // addend below one ulp of a denormal tail
        return renorm(a.frac + std::ldexp(b.frac, static_cast<int>(-d)), a.exp);
    }

    friend Scaled operator-(Scaled a, Scaled b) noexcept { return a + (-b); }

private:
    static Scaled renorm(double f, std::int64_t e) noexcept {
        if (f == 0.0) return Scaled{f, 0};
        int k = 0;
        double m = std::frexp(f, &k);
        return Scaled{2.0 * m, e + static_cast<std::int64_t>(k) - 1};
    }
};

}  // namespace atrid
