#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace odolab {

using Rational = mpq_class;

enum class Backend { rational, floating };

std::string to_string(Backend b);
Backend parse_backend(const std::string& s);

/// Parses "p/q", an integer, or a finite decimal ("0.125", "1e-3") into an exact rational.
Rational parse_rational(const std::string& text);
/// "p/q" (or "p" when q = 1).
std::string rational_string(const Rational& q);
/// Decimal with 15 significant digits.
std::string decimal_string(double v);

Rational rational_pow(const Rational& base, unsigned long e);

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static constexpr Backend backend = Backend::rational;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from(const Rational& q) { return q; }
    static Rational from_ratio(long p, long q) {
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    static double to_double(const Rational& q) { return q.get_d(); }
    static Rational abs(const Rational& q) { return ::abs(q); }
    static bool is_zero(const Rational& q) { return sgn(q) == 0; }
    // exact comparisons
    static bool less(const Rational& a, const Rational& b) { return a < b; }
    static bool less_eq(const Rational& a, const Rational& b) { return a <= b; }
    static bool equal(const Rational& a, const Rational& b) { return a == b; }
    static Rational pow(const Rational& a, unsigned long e) { return rational_pow(a, e); }
    static std::string str(const Rational& q) { return rational_string(q); }
};

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static constexpr Backend backend = Backend::floating;
    static constexpr double tol = 1e-12;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from(const Rational& q) { return q.get_d(); }
    static double from_ratio(long p, long q) { return double(p) / double(q); }
    static double to_double(double v) { return v; }
    static double abs(double v) { return std::fabs(v); }
    static bool is_zero(double v) { return std::fabs(v) <= tol; }
    // tolerant comparisons: a < b means clearly below, a <= b allows tol slack
    static bool less(double a, double b) { return a < b - tol; }
    static bool less_eq(double a, double b) { return a <= b + tol; }
    static bool equal(double a, double b) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); }
    static double pow(double a, unsigned long e) { return std::pow(a, double(e)); }
    static std::string str(double v) { return decimal_string(v); }
};

template <class S>
double to_double(const S& v) { return ScalarOps<S>::to_double(v); }

template <class S>
std::string scalar_string(const S& v) { return ScalarOps<S>::str(v); }

template <class S>
S sum_of(const std::vector<S>& v) {
    S s = ScalarOps<S>::zero();
    for (const auto& x : v) s += x;
    return s;
}

}  // namespace odolab
