#include "helpers.hpp"

#include "odolab/errors.hpp"
#include "odolab/shift.hpp"
#include "odolab/symbol_maps.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

using namespace odolab;
using testing_util::spec_of;

namespace {

// naive odometer: add one k times
Digits add_slow(const Digits& r, Digits x, std::uint64_t k) {
    while (k--) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (++x[i] < r[i]) break;
            x[i] = 0;
        }
    }
    return x;
}

}  // namespace

TEST_CASE("mixed radix round trip") {
    Digits r{2, 3, 4, 5};
    for (std::uint64_t k = 0; k < 120; ++k) {
        auto d = to_mixed_radix(r, k);
        CHECK_FALSE(d.exceeds);
        CHECK(from_mixed_radix(r, d.digits) == k);
        auto neg = negate_mixed_radix(r, d.digits);
        CHECK(from_mixed_radix(r, neg) == (120 - k) % 120);
    }
    CHECK(to_mixed_radix(r, 121).exceeds);
    CHECK(to_mixed_radix(r, 121).digits == Digits{1, 0, 0, 0});
}

TEST_CASE("odometer addition matches repeated steps") {
    Digits r{3, 2, 4};
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Digits x{std::int64_t(rng() % 3), std::int64_t(rng() % 2), std::int64_t(rng() % 4)};
        std::uint64_t k = rng() % 60;
        auto fast = odometer_add(r, x, k);
        CHECK(fast.digits == add_slow(r, x, k));
        CHECK(fast.carry_out == (from_mixed_radix(r, x) + k >= 24));
        CHECK(odometer_add(r, x, to_mixed_radix(r, k % 24).digits).digits == fast.digits);
    }
    CHECK_THROWS_AS(odometer_add_strict(r, {2, 1, 3}, 1), CarryOverflow);
    CHECK(odometer_step(r, {2, 1, 3}).carry_out);
    CHECK(odometer_step(r, {2, 1, 3}).digits == Digits{0, 0, 0});
}

TEST_CASE("preimage cylinder steps back by one") {
    Digits r{2, 3, 4};
    for (std::uint64_t k = 0; k < 24; ++k) {
        auto x = to_mixed_radix(r, k).digits;
        auto y = preimage_cylinder(r, x);
        CHECK(odometer_step(r, y).digits == x);
    }
}

TEST_CASE("induced bijection: group laws") {
    for (MapKind kind : {MapKind::odometer, MapKind::translation}) {
        InducedBijection f(kind, {2, 3, 4});
        CHECK(f.size() == 24);
        auto p = f.permutation(1);
        CHECK(std::set<std::uint64_t>(p.begin(), p.end()).size() == 24);
        for (std::uint64_t c = 0; c < 24; ++c) {
            CHECK(f.inverse(f.forward(c)) == c);
            CHECK(f.power(c, 5) == f.forward(f.power(c, 4)));
            CHECK(f.power(c, -7) == f.power(c, std::int64_t(f.order()) - 7));
            CHECK(f.power(c, std::int64_t(f.order())) == c);
        }
    }
    CHECK(InducedBijection(MapKind::odometer, {2, 3, 4}).order() == 24);
    CHECK(InducedBijection(MapKind::translation, {2, 3, 4}).order() == 12);
}

TEST_CASE("Radon-Nikodym derivative on resolved cells") {
    auto spec = spec_of<Rational>("ornstein");
    const int N = 4;
    Digits r = spec.radices(N);
    auto T = build_truncation(spec, N);
    for (std::uint64_t c = 1; c < T.size(); ++c) {
        auto x = T.digits(c);
        auto C = DepthSet::cylinder(r, x);
        // mu(o^{-1} C) = h mu(C) whenever the prefix is not all zero
        CHECK(preimage_measure(spec, C, 1) == rn_derivative(spec, x) * T.cell_measure[c]);
    }
    CHECK_THROWS_AS(rn_derivative(spec, Digits{0, 0, 0}), UnresolvedTail);
}

TEST_CASE("transport of product sets") {
    auto spec = spec_of<Rational>("fhc-binary");
    Digits r = spec.radices(4);
    auto B = DepthSet::product(r, {{1, 0}, {0, 1}, {1, 1}, {1, 0}});
    auto T = build_truncation(spec, 4);
    InducedBijection f(MapKind::odometer, r);
    auto mask = B.expand();
    for (std::int64_t n : {1, 3, 7, 15}) {
        Rational direct = 0;
        for (std::uint64_t c = 0; c < T.size(); ++c)
            if (mask[f.power(c, n)]) direct += T.cell_measure[c];
        CHECK(preimage_measure(spec, B, n) == direct);
        CHECK(set_measure(spec, preimage_set(MapKind::odometer, B, n)) == direct);
    }
}

TEST_CASE("joint preimage of one term is the plain preimage") {
    auto spec = spec_of<Rational>("ornstein");
    Digits r = spec.radices(3);
    auto B = DepthSet::product(r, {{1, 1}, {1, 0, 1}, {0, 1, 1, 0}});
    for (std::int64_t n : {0, 1, 5, 11, 23}) {
        auto k = shift_digits(r, n);
        CHECK(joint_preimage_measure(spec, {{&B, k}}) == preimage_measure(spec, B, n));
    }
}

TEST_CASE("boundedness identity on the harmonic binary odometer") {
    auto spec = spec_of<Rational>("fhc-binary");
    auto rep = boundedness(spec, 12);
    REQUIRE(rep.values.size() == 12);
    Rational fact = 1;
    for (int l = 2; l <= 12; ++l) {
        fact *= (l - 1);
        CHECK(rep.values[l - 1] == Rational(l) / fact);
    }
    CHECK(rep.verdict != BoundVerdict::unbounded_witness);
}

TEST_CASE("boundedness flags nu(0) < nu(N-1)") {
    auto spec = spec_of<Rational>("same-measure-unbounded");
    CHECK(boundedness(spec, 60).verdict == BoundVerdict::unbounded_witness);
    auto ok = spec_of<Rational>("same-measure");
    CHECK(boundedness(ok, 60).verdict != BoundVerdict::unbounded_witness);
}

TEST_CASE("norm probe at n = 1 meets the bracketed supremum") {
    auto spec = spec_of<Rational>("ornstein");
    auto rep = boundedness(spec, 5);
    auto probes = norm_probes(spec, 5, 3);
    REQUIRE(!probes.empty());
    CHECK(probes[0].n == 1);
    double sup = rep.running_sup.back().get_d();
    CHECK(probes[0].resolved_bound == doctest::Approx(sup));
    CHECK(probes[0].resolved_fraction < 1.0);
}

TEST_CASE("kakutani product on a translation") {
    auto spec = spec_of<double>("trans-hc");
    auto k = kakutani_check(spec, 40);
    CHECK(k.factors.size() == 40);
    for (double f : k.factors) CHECK(f <= 1.0 + 1e-12);
}

TEST_CASE("weighted shift on Z") {
    auto sys = ShiftSystem::from_json(gallery_entry("shift-z").config);
    CHECK(sys.nu(0) == 1);
    CHECK(sys.nu(-3) == Rational(1, 8));
    CHECK(sys.iterate(2, -5).value() == -3);
    CHECK(sys.total_mass() == 3);
    auto s = salas_check(sys, 0, 0, 30);
    for (int n = 1; n <= 30; ++n) CHECK(s.products[n - 1] == rational_pow(Rational(1, 4), n));
    CHECK(s.monotone);
    CHECK(s.tends_to_zero);
    auto b = shift_bound(sys, 50);
    CHECK(b.window_sup == b.closed_form);
}

TEST_CASE("weighted shift on Z+ loses points under backward iteration") {
    auto sys = ShiftSystem::from_json(gallery_entry("shift-zplus").config);
    CHECK_FALSE(sys.iterate(1, -2).has_value());
    CHECK(sys.orbit_mass(1, -2) == 0);
    CHECK(sys.orbit_mass(1, 2) == Rational(1, 8));
}
