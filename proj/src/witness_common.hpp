#pragma once

#include "odolab/witness.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace odolab::detail {

template <class S>
Check make_check_impl(std::string inequality, std::string bound, const S& value, bool pass, CheckMethod method) {
    Check c;
    c.inequality = std::move(inequality);
    c.bound = std::move(bound);
    c.value = scalar_string(value);
    c.numeric = to_double(value);
    c.pass = pass;
    c.method = method;
    return c;
}
inline Check make_check(std::string inequality, std::string bound, const Rational& value, bool pass, CheckMethod method) {
    return make_check_impl<Rational>(std::move(inequality), std::move(bound), value, pass, method);
}
inline Check make_check(std::string inequality, std::string bound, double value, bool pass, CheckMethod method) {
    return make_check_impl<double>(std::move(inequality), std::move(bound), value, pass, method);
}

inline Check bool_check(std::string inequality, bool pass, CheckMethod method, std::string value = "") {
    Check c;
    c.inequality = std::move(inequality);
    c.bound = "holds";
    c.value = value.empty() ? (pass ? "holds" : "fails") : std::move(value);
    c.numeric = pass ? 1 : 0;
    c.pass = pass;
    c.method = method;
    return c;
}

template <class S>
S from_q(const Rational& q) {
    return ScalarOps<S>::from(q);
}

inline bool le(const Rational& a, const Rational& b) { return a <= b; }
inline bool lt(const Rational& a, const Rational& b) { return a < b; }
inline bool le(double a, double b) { return ScalarOps<double>::less_eq(a, b); }
inline bool lt(double a, double b) { return ScalarOps<double>::less(a, b); }

/// law of (sum X_s, sum Y_s) for independent pairs; law[s] = P(X,Y) at (0,0),(0,1),(1,0),(1,1)
template <class S>
struct SumLaw {
    S muX, muY, muXY;
    std::size_t aMin = 0;  // least integer a >= tX
    std::int64_t bMax = -1;  // largest integer b <= tY
};

template <class S>
SumLaw<S> sum_law(const std::vector<std::array<S, 4>>& law, const S& tX, const S& tY) {
    using O = ScalarOps<S>;
    const std::size_t n = law.size();
    std::vector<S> P((n + 1) * (n + 1), O::zero()), Q(P.size());
    auto at = [&](std::vector<S>& v, std::size_t a, std::size_t b) -> S& { return v[a * (n + 1) + b]; };
    at(P, 0, 0) = O::one();
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(Q.begin(), Q.end(), O::zero());
        for (std::size_t a = 0; a <= s; ++a)
            for (std::size_t b = 0; b <= s; ++b) {
                const S& p = at(P, a, b);
                if (p == O::zero()) continue;
                at(Q, a, b) += p * law[s][0];
                at(Q, a, b + 1) += p * law[s][1];
                at(Q, a + 1, b) += p * law[s][2];
                at(Q, a + 1, b + 1) += p * law[s][3];
            }
        std::swap(P, Q);
    }
    SumLaw<S> r{O::zero(), O::zero(), O::zero(), n + 1, -1};
    for (std::size_t a = 0; a <= n; ++a)
        if (le(tX, S(static_cast<long>(a)))) {
            r.aMin = a;
            break;
        }
    for (std::size_t b = 0; b <= n; ++b)
        if (le(S(static_cast<long>(b)), tY)) r.bMax = std::int64_t(b);
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; b <= n; ++b) {
            const S& p = at(P, a, b);
            bool inX = a >= r.aMin, inY = std::int64_t(b) <= r.bMax;
            if (inX) r.muX += p;
            if (inY) r.muY += p;
            if (inX && inY) r.muXY += p;
        }
    return r;
}

inline std::vector<std::uint8_t> mask_shift(const std::vector<std::uint8_t>& D, std::int64_t j) {
    // D + j mod m
    std::int64_t m = static_cast<std::int64_t>(D.size());
    std::vector<std::uint8_t> out(D.size(), 0);
    for (std::int64_t x = 0; x < m; ++x)
        if (D[x]) out[static_cast<std::size_t>((((x + j) % m) + m) % m)] = 1;
    return out;
}

inline json mask_json(const std::vector<std::uint8_t>& D) {
    json a = json::array();
    for (std::size_t x = 0; x < D.size(); ++x)
        if (D[x]) a.push_back(x);
    return a;
}

inline json digits_json(const Digits& d) {
    json a = json::array();
    for (auto v : d) a.push_back(v);
    return a;
}

/// generator for shard s of a run with the given base seed
inline std::mt19937_64 shard_rng(std::uint64_t seed, std::uint64_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(shard),
                      static_cast<std::uint32_t>(shard >> 32)};
    return std::mt19937_64(seq);
}

constexpr std::uint64_t kShardSize = std::uint64_t(1) << 16;

}  // namespace odolab::detail
