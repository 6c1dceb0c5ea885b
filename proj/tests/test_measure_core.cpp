#include "helpers.hpp"

#include "odolab/errors.hpp"
#include "odolab/measure_core.hpp"

#include <doctest.h>

#include <algorithm>

using namespace odolab;
using testing_util::spec_of;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(rational_string(ScalarOps<Rational>::from_ratio(6, 4)) == "3/2");
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("ornstein weights and prefix products") {
    auto spec = spec_of<Rational>("ornstein");
    CHECK(spec.m(1) == 2);
    CHECK(spec.m(5) == 6);
    auto w = spec.mu(4);
    REQUIRE(w->size() == 5);
    CHECK((*w)[0] == Rational(1, 2));
    CHECK((*w)[3] == Rational(1, 8));
    CHECK(sum_of(*w) == 1);
    CHECK(spec.M(1) == 1);
    CHECK(spec.M(4) == 2 * 3 * 4);
}

TEST_CASE("truncation cells sum to one and follow little-endian order") {
    for (const char* id : {"ornstein", "fhc-binary", "same-measure", "trans-hufhc"}) {
        auto spec = spec_of<Rational>(id);
        auto T = build_truncation(spec, 4);
        CHECK(sum_of(T.cell_measure) == 1);
        for (std::uint64_t c = 0; c < T.size(); ++c) {
            auto x = T.digits(c);
            CHECK(T.index(x) == c);
            Rational p = 1;
            for (int k = 0; k < 4; ++k) p *= spec.weight(k + 1, x[k]);
            CHECK(T.cell_measure[c] == p);
        }
    }
}

TEST_CASE("product sets agree with their cell expansion") {
    auto spec = spec_of<Rational>("ornstein");
    Digits r = spec.radices(3);
    auto B = DepthSet::product(r, {{1, 0}, {0, 1, 1}, {1, 0, 0, 1}});
    auto cells = DepthSet::cell_set(r, B.expand());
    CHECK(set_measure(spec, B) == set_measure(spec, cells));
    // mu_1{0} * mu_2{1,2} * mu_3{0,3}
    CHECK(set_measure(spec, B) == Rational(1, 2) * Rational(1, 2) * (Rational(1, 2) + Rational(1, 6)));
    CHECK(set_measure(spec, DepthSet::full(r)) == 1);
    CHECK(B.cell_count() == 24);
    auto e = B.expand();
    CHECK(std::count(e.begin(), e.end(), 1) == 1 * 2 * 2);
    CHECK(B.contains({0, 2, 3}));
    CHECK_FALSE(B.contains({1, 2, 3}));
}

TEST_CASE("cylinder measure is the product of the coordinate weights") {
    auto spec = spec_of<Rational>("fhc-binary");
    Digits r = spec.radices(5);
    auto C = DepthSet::cylinder(r, {1, 0, 1, 1, 0});
    Rational want = 1;
    Digits x{1, 0, 1, 1, 0};
    for (int k = 0; k < 5; ++k) want *= spec.weight(k + 1, x[k]);
    CHECK(set_measure(spec, C) == want);
}

TEST_CASE("float backend tracks the rational one") {
    auto q = spec_of<Rational>("ornstein");
    auto d = spec_of<double>("ornstein");
    auto B = DepthSet::product(q.radices(3), {{1, 1}, {0, 1, 0}, {1, 1, 0, 0}});
    CHECK(set_measure(d, B) == doctest::Approx(set_measure(q, B).get_d()).epsilon(1e-13));
}

TEST_CASE("atomless monitor is the running product of eta") {
    auto spec = spec_of<Rational>("fhc-binary");
    auto p = atomless_monitor(spec, 6);
    REQUIRE(p.size() == 6);
    Rational run = 1;
    for (int i = 1; i <= 6; ++i) {
        auto w = spec.mu(i);
        run *= std::max((*w)[0], (*w)[1]);
        CHECK(p[i - 1] == run);
    }
}

TEST_CASE("caps and malformed specs raise") {
    auto spec = spec_of<Rational>("ornstein");
    CHECK_THROWS_AS(build_truncation(spec, 12, 1000), CapExceeded);
    CHECK_THROWS_AS(validate_weights(std::vector<Rational>{Rational(1, 2), Rational(1, 3)}, 1), SpecError);
    CHECK_THROWS_AS(validate_weights(std::vector<Rational>{Rational(1), Rational(0)}, 1), SpecError);
    json bad = {{"kind", "odometer"}, {"alphabet", {{"family", "nope"}}}, {"measure", {{"family", "uniform"}}}};
    CHECK_THROWS_AS(SystemSpec<Rational>::from_json(bad), SpecError);
}

TEST_CASE("float-only families refuse the rational backend") {
    auto c = gallery_entry("geometric-mixing").config;
    CHECK_THROWS_AS(SystemSpec<Rational>::from_json(c), BackendUnsupported);
    auto f = SystemSpec<double>::from_json(c);
    auto w = f.mu(5);
    CHECK(sum_of(*w) == doctest::Approx(1.0));
}

TEST_CASE("config round trip") {
    for (const auto& e : gallery()) {
        if (e.is_shift()) continue;
        auto spec = SystemSpec<double>::from_json(e.config);
        CHECK(spec.to_json() == e.config);
    }
}

TEST_CASE("periodic families declare their period") {
    auto spec = spec_of<Rational>("same-measure");
    auto p = spec.periodicity();
    REQUIRE(p.has_value());
    CHECK(p->period == 1);
    CHECK_FALSE(spec_of<Rational>("ornstein").periodicity().has_value());
}
