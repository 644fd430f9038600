#pragma once

// Exact values in Q/Z: reduced fractions num/den with 0 <= num < den.
// Denominators stay bounded by the exponents of the groups in play, so
// long long arithmetic is ample.

#include <compare>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>

#include "finsymp/errors.hpp"

namespace finsymp {

inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

struct QZ {
    long long num = 0;
    long long den = 1;

    QZ() = default;

    QZ(long long n, long long d) {
        if (d == 0) throw InvalidInput("QZ: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        n %= d;
        if (n < 0) n += d;
        long long g = std::gcd(n, d);
        if (g == 0) g = 1;
        num = n / g;
        den = d / g;
        if (num == 0) den = 1;
    }

    static QZ zero() { return QZ(); }

    bool is_zero() const { return num == 0; }

    QZ operator+(const QZ& o) const { return QZ(num * o.den + o.num * den, den * o.den); }
    QZ operator-(const QZ& o) const { return QZ(num * o.den - o.num * den, den * o.den); }
    QZ operator-() const { return QZ(-num, den); }

    /// n-fold sum of *this.
    QZ times(long long n) const { return QZ(num * (n % den), den); }

    /// A value t with n*t == *this; the canonical choice num/(den*n).
    QZ divided_by(long long n) const {
        if (n == 0) throw InvalidInput("QZ: division by zero");
        return QZ(num, den * n);
    }

    /// this * m as an integer; requires den | m * num, i.e. den | m.
    long long scaled(long long m) const {
        if ((m * num) % den != 0) throw InvalidInput("QZ: value " + str() + " not integral after scaling by " + std::to_string(m));
        return (m * num) / den;
    }

    bool operator==(const QZ& o) const { return num == o.num && den == o.den; }
    auto operator<=>(const QZ& o) const {
        // compare as rationals in [0,1)
        return num * o.den <=> o.num * den;
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline QZ operator*(long long n, const QZ& v) { return v.times(n); }

} // namespace finsymp

template <>
struct std::hash<finsymp::QZ> {
    size_t operator()(const finsymp::QZ& v) const noexcept {
        return std::hash<long long>{}(v.num * 1000003LL + v.den);
    }
};
