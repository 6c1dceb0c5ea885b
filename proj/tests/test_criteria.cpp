#include "helpers.hpp"

#include "odolab/criteria.hpp"
#include "odolab/errors.hpp"
#include "odolab/verdicts.hpp"

#include <doctest.h>

#include <random>

using namespace odolab;
using testing_util::random_measure;
using testing_util::spec_of;

namespace {

// brute force over all subsets, addition mod m
Rational brute_alpha(const std::vector<Rational>& w, std::int64_t n) {
    const int m = int(w.size());
    Rational best = 0;
    for (std::uint32_t D = 0; D < (1u << m); ++D) {
        bool ok = true;
        Rational s = 0;
        for (int j = 0; j < m && ok; ++j) {
            if (!(D >> j & 1)) continue;
            if (D >> ((j + n) % m) & 1) ok = false;
            s += w[j];
        }
        if (ok && s > best) best = s;
    }
    return best;
}

}  // namespace

TEST_CASE("eta, delta, theta on a hand vector") {
    std::vector<Rational> w{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
    CHECK(eta_of(w) == Rational(1, 2));
    CHECK(delta_of(w) == Rational(1, 6));
    // shift 1: (1/2-1/3) + (1/3-1/6) = 1/3; shift 2: (1/2-1/6) = 1/3
    CHECK(theta_fixed(w, 1).value == Rational(1, 3));
    CHECK(theta_fixed(w, 2).value == Rational(1, 3));
    CHECK(theta_max(w).value == Rational(1, 3));
}

TEST_CASE("cycle MWIS against brute force") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 40; ++t) {
        int m = 2 + int(rng() % 9);
        auto w = random_measure(rng, m);
        for (std::int64_t n = 1; n < m; ++n) CHECK(cycle_mwis(w, n).value == brute_alpha(w, n));
    }
}

TEST_CASE("gamma search meets brute force on small alphabets") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        int m = 2 + int(rng() % 8);
        auto w = random_measure(rng, m);
        auto b = gamma_brute(w);
        auto s = gamma_search(w, SearchLimits{1u << 20, 1u << 22});
        CHECK(s.exact);
        CHECK(s.value == b.value);
    }
}

TEST_CASE("omega interval tail") {
    std::vector<Rational> w{Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)};
    // m - 1 - kappa m m' = 3 - (1/4)(4)(2) = 1
    CHECK(omega(w, 2, Rational(1, 4)) == Rational(1, 2));
    CHECK(interval_tail(w, Rational(5, 2)) == Rational(1, 8));
    CHECK(interval_tail(w, Rational(-3)) == 1);
}

TEST_CASE("gamma tilde prefix scan") {
    std::vector<Rational> th{Rational(1, 10), Rational(1, 2), Rational(1, 2), Rational(1, 20)};
    auto g = gamma_tilde_scan(th);
    // best prefix is {1/2, 1/2}: 1^2 / 2
    CHECK(g.value == Rational(1, 2));
    CHECK(g.size == 2);
}

TEST_CASE("criteria table on the Ornstein odometer") {
    auto spec = spec_of<Rational>("ornstein");
    TableOptions opt;
    opt.horizon = 20;
    opt.gamma_horizon = 8;
    auto t = criteria_table(spec, opt);
    REQUIRE(t.rows.size() == 20);
    for (const auto& r : t.rows) {
        if (r.i < 2) continue;
        CHECK(r.eta == Rational(1, 2));
        CHECK(r.delta == Rational(1, 2 * r.i));
    }
    auto tsv = t.to_tsv();
    CHECK(tsv.substr(0, 1) == "i");
}

TEST_CASE("limsup rules") {
    std::vector<double> up, down, flat;
    for (int i = 1; i <= 200; ++i) {
        up.push_back(1.0 - 1.0 / i);
        down.push_back(1.0 / i);
        flat.push_back(0.5);
    }
    CHECK(rule_lim_one(up).status != Status::violated);
    CHECK(rule_limsup_positive(flat).status != Status::violated);
    CHECK(rule_limsup_positive(down).status != Status::satisfied_up_to_horizon);
    CHECK(rule_limsup_one(flat).status == Status::violated);
}

TEST_CASE("verdicts on the Ornstein odometer") {
    auto spec = spec_of<Rational>("ornstein");
    VerdictParams p;
    p.horizon = 200;
    auto v = evaluate(spec, "cor:hc", p);
    CHECK(v.numeric_status == Status::satisfied_up_to_horizon);
    CHECK_THROWS_AS(evaluate(spec, "no-such-theorem", p), UnknownTheorem);
}
