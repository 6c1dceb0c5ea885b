#include "helpers.hpp"

#include "odolab/function_space.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace odolab;
using testing_util::spec_of;

namespace {

SimpleFunction<Rational> random_function(const Digits& r, std::mt19937_64& rng, int levels) {
    SimpleFunction<Rational> f = SimpleFunction<Rational>::constant(r, Rational(0));
    for (auto& v : f.values) v = Rational(std::int64_t(rng() % levels) - levels / 2, 3);
    return f;
}

}  // namespace

TEST_CASE("composition follows the induced bijection") {
    Digits r{2, 3, 2};
    std::mt19937_64 rng(3);
    auto f = random_function(r, rng, 5);
    for (MapKind kind : {MapKind::odometer, MapKind::translation}) {
        InducedBijection b(kind, r);
        for (std::int64_t n : {-3, 1, 4}) {
            auto g = apply_composition(kind, f, n);
            for (std::uint64_t c = 0; c < b.size(); ++c) CHECK(g.values[c] == f.values[b.power(c, n)]);
        }
        // C^a C^b = C^{a+b}
        CHECK(apply_composition(kind, apply_composition(kind, f, 2), 5) == apply_composition(kind, f, 7));
    }
}

TEST_CASE("exact Lp norms") {
    auto spec = spec_of<Rational>("ornstein");
    auto T = build_truncation(spec, 3);
    auto C = DepthSet::cylinder(T.radices, {1, 0, 2});
    auto f = SimpleFunction<Rational>::indicator(C);
    Rational muC = set_measure(T, C);
    for (int p : {1, 2, 3}) {
        auto n = lp_norm(T, f, p);
        CHECK(n.pth_power == muC);
        double want = std::pow(muC.get_d(), 1.0 / p);
        CHECK(n.lower <= want + 1e-15);
        CHECK(n.upper >= want - 1e-15);
    }
    auto one = SimpleFunction<Rational>::constant(T.radices, Rational(1));
    CHECK(lp_distance(T, one, f, 1).pth_power == 1 - muC);
    CHECK(lp_norm(T, one, 2).pth_power == 1);
}

TEST_CASE("period of a simple function matches brute force") {
    std::mt19937_64 rng(11);
    Digits r{2, 3, 2};
    for (int t = 0; t < 20; ++t) {
        auto f = random_function(r, rng, 2);
        for (MapKind kind : {MapKind::odometer, MapKind::translation}) {
            std::uint64_t brute = 1;
            while (!(apply_composition(kind, f, std::int64_t(brute)) == f)) ++brute;
            CHECK(period_of(kind, f) == brute);
        }
    }
}

TEST_CASE("orbit trace visits and densities") {
    auto spec = spec_of<Rational>("fhc-binary");
    auto T = build_truncation(spec, 3);
    auto f = SimpleFunction<Rational>::indicator(DepthSet::cylinder(T.radices, {0, 0, 0}));
    auto tr = orbit_trace(MapKind::odometer, T, f, f, Rational(1, 100), 1, 40);
    CHECK(tr.period == 8);
    auto v = tr.visit_set();
    // C^n f = f exactly when 8 | n
    for (std::int64_t n = 1; n <= 40; ++n) CHECK((std::find(v.begin(), v.end(), n) != v.end()) == (n % 8 == 0));
    CHECK(tr.running_density.back() == doctest::Approx(5.0 / 40));
    CHECK(tr.to_tsv().find('\t') != std::string::npos);
}

TEST_CASE("Orlicz indicator norm") {
    auto p2 = power_young(2.0);
    CHECK(orlicz_indicator_norm(p2, 0.25) == doctest::Approx(0.5));
    auto e = exp_young();
    // 1 / log(1 + 1/mu)
    CHECK(orlicz_indicator_norm(e, 0.5) == doctest::Approx(1.0 / std::log(3.0)));
}
