#pragma once

// Exact integer arithmetic helpers shared by every module.  All group-level
// computation is done over arbitrary-precision integers; doubles appear only
// in regression fits and in the guarded floor of n^alpha below.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace snowflake {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Floored division: fdiv(n, d) = floor(n / d) for d > 0.
// cpp_int division truncates toward zero, which differs on negatives.
inline Int fdiv(const Int& n, const Int& d) {
    Int q = n / d;
    if ((n % d) != 0 && ((n < 0) != (d < 0))) --q;
    return q;
}

inline Int fmod_pos(const Int& n, const Int& d) { return n - d * fdiv(n, d); }

// Extended gcd: returns g = gcd(a, b) >= 0 and (x, y) with a*x + b*y = g.
struct ExtGcd {
    Int g, x, y;
};

inline ExtGcd ext_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;  // truncated is fine: invariants hold over Z
        Int r = a - q * b;
        a = b; b = r;
        Int nx = x0 - q * x1, ny = y0 - q * y1;
        x0 = x1; y0 = y1; x1 = nx; y1 = ny;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

inline Int ipow(Int base, unsigned long exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

namespace detail {

// Checks whether v is 2^j for some j >= 0; returns j or -1.
inline long exact_log2(const Int& v) {
    if (v <= 0) return -1;
    Int t = v;
    long j = 0;
    while ((t & 1) == 0) { t >>= 1; ++j; }
    return t == 1 ? j : -1;
}

template <unsigned Digits10>
Int floor_pow_float(const Int& n, const Int& two_p, const Int& q) {
    using F = boost::multiprecision::number<
        boost::multiprecision::cpp_bin_float<Digits10>>;
    // alpha = log2(2p/q); n^alpha = exp(alpha * log n)
    F alpha = (log(F(two_p)) - log(F(q))) / log(F(2));
    F val = exp(alpha * log(F(n)));
    Int fl = floor(val).template convert_to<Int>();
    // Guard against the value sitting a hair below an integer.
    F gap = F(fl + 1) - val;
    F tol = pow(F(10), -static_cast<int>(Digits10 / 2));
    if (gap < tol)
        throw std::runtime_error("floor_pow_alpha: value too close to integer");
    return fl;
}

}  // namespace detail

// Exact floor(n^alpha) where alpha = log2(2p/q) > 1.  Exact fast paths cover
// every case where n^alpha is rational (alpha integral, or n a power of two);
// otherwise n^alpha is irrational and two float precisions must agree.
inline Int floor_pow_alpha(const Int& p, const Int& q, const Int& n) {
    if (n < 0) throw std::invalid_argument("floor_pow_alpha: n must be >= 0");
    if (n == 0) return 0;
    if (n == 1) return 1;
    Int two_p = 2 * p, qq = q;
    Int g = gcd(two_p, qq);
    two_p /= g; qq /= g;
    // alpha integral: 2p/q == 2^j after reduction.
    if (qq == 1) {
        long j = detail::exact_log2(two_p);
        if (j >= 0) return ipow(n, static_cast<unsigned long>(j));
    }
    // n = 2^k: n^alpha = (2p/q)^k, floor is exact rational arithmetic.
    long k = detail::exact_log2(n);
    if (k >= 0) {
        Int num = ipow(two_p, static_cast<unsigned long>(k));
        Int den = ipow(qq, static_cast<unsigned long>(k));
        return num / den;  // both positive, truncation = floor
    }
    // Irrational case: evaluate at two precisions; both floors must agree and
    // each run independently checks distance to the next integer.
    try {
        Int lo = detail::floor_pow_float<100>(n, two_p, qq);
        Int hi = detail::floor_pow_float<200>(n, two_p, qq);
        if (lo == hi) return lo;
    } catch (const std::runtime_error&) {
        // fall through to higher precision
    }
    Int a = detail::floor_pow_float<200>(n, two_p, qq);
    Int b = detail::floor_pow_float<400>(n, two_p, qq);
    if (a == b) return a;
    throw std::runtime_error("floor_pow_alpha: precision escalation failed");
}

// alpha as a double, for fits and reporting only.
inline double alpha_value(const Int& p, const Int& q) {
    double tp = p.convert_to<double>() * 2.0;
    double qd = q.convert_to<double>();
    return std::log2(tp / qd);
}

}  // namespace snowflake
