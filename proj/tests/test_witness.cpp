#include "helpers.hpp"

#include "odolab/witness.hpp"

#include <doctest.h>

using namespace odolab;
using testing_util::spec_of;

TEST_CASE("report finalization") {
    WitnessReport r;
    r.finalize();
    CHECK_FALSE(r.pass);  // no checks
    Check c;
    c.inequality = "a <= b";
    c.pass = true;
    r.checks.push_back(c);
    r.finalize();
    CHECK(r.pass);
    c.pass = false;
    c.inequality = "c <= d";
    r.checks.push_back(c);
    r.finalize();
    CHECK_FALSE(r.pass);
    CHECK(r.find("c <=") != nullptr);
    CHECK(r.find("zzz") == nullptr);
    CHECK(r.to_json()["checks"].size() == 2);
}

TEST_CASE("fhc witness on the harmonic binary odometer") {
    auto spec = spec_of<Rational>("fhc-binary");
    WitnessOptions opt;
    opt.transport_samples = 50;
    opt.exhaustive_cap = 1 << 12;  // sample instead of sweeping all k
    auto r = fhc_witness(spec, Rational(1, 10), Rational(1, 8), opt);
    CHECK(r.pass);
}

TEST_CASE("shift fhc witness on Z") {
    auto sys = ShiftSystem::from_json(gallery_entry("shift-z").config);
    auto r = shift_fhc_witness(sys);
    CHECK(r.pass);
    ShiftFhcParams tight;
    tight.window = 10;  // smaller than the construction needs
    CHECK_THROWS_AS(shift_fhc_witness(sys, tight), WindowTooSmall);
}

TEST_CASE("translation fhc and ufhc constructions") {
    auto fhc = fhcsum_witness(spec_of<Rational>("trans-fhc"), Rational(1, 10), Rational(1, 5));
    CHECK(fhc.pass);
    auto u = ufhcsum_witness(spec_of<Rational>("trans-hufhc"), Rational(1, 10), Rational(1, 2));
    CHECK(u.pass);
}

TEST_CASE("translation witnesses refuse odometers") {
    CHECK_THROWS_AS(hcsum_witness(spec_of<Rational>("ornstein"), Rational(1, 4)), KindMismatch);
}

TEST_CASE("rigidity probe along m_{i-1}") {
    auto spec = spec_of<Rational>("trans-rigid");
    auto r = rigidity_probe(spec, 6, 5, 1.0 / 64);
    CHECK(r.pass);
}

TEST_CASE("runaway search on the Ornstein odometer") {
    auto spec = spec_of<Rational>("ornstein");
    auto r = src_search(spec, Rational(1, 2), 3, 30);
    CHECK(r.pass);
}
