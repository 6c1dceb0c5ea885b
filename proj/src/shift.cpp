#include "odolab/shift.hpp"

#include "odolab/errors.hpp"

#include <cstdlib>

namespace odolab {

ShiftSystem::ShiftSystem(IndexSet index, Rational base, std::string family, std::int64_t offset, std::string name)
    : index_(index), base_(std::move(base)), family_(std::move(family)), offset_(offset), name_(std::move(name)) {
    if (base_ <= 0) throw SpecError("shift weight base must be positive");
    if (offset_ < 1) throw SpecError("shift offset must be >= 1 (injective, no periodic points)");
    if (family_ != "two-sided-geometric" && family_ != "geometric") throw SpecError("unknown shift weight family '" + family_ + "'");
}

ShiftSystem ShiftSystem::from_json(const json& c) {
    if (c.value("kind", std::string()) != "weighted-shift") throw KindMismatch("config kind is not 'weighted-shift'");
    std::string idx = c.value("index", std::string("Z"));
    IndexSet index;
    if (idx == "Z") index = IndexSet::integers;
    else if (idx == "Z+") index = IndexSet::naturals;
    else throw SpecError("shift index must be 'Z' or 'Z+'");
    const json& w = c.at("weights");
    json p = w.value("params", json::object());
    Rational base = p.contains("base") ? parse_rational(p.at("base").is_string() ? p.at("base").get<std::string>() : p.at("base").dump())
                                       : Rational(2);
    return ShiftSystem(index, base, w.at("family").get<std::string>(), c.value("offset", std::int64_t(1)), c.value("name", std::string()));
}

json ShiftSystem::to_json() const {
    json j{{"kind", "weighted-shift"},
           {"index", index_ == IndexSet::integers ? "Z" : "Z+"},
           {"weights", {{"family", family_}, {"params", {{"base", rational_string(base_)}}}}},
           {"offset", offset_}};
    if (!name_.empty()) j["name"] = name_;
    return j;
}

Rational ShiftSystem::nu(std::int64_t i) const {
    if (!contains(i)) throw DomainError("index " + std::to_string(i) + " outside Z+");
    std::int64_t e = family_ == "two-sided-geometric" ? std::llabs(i) : i;
    if (e >= 0) return 1 / rational_pow(base_, static_cast<unsigned long>(e));
    return rational_pow(base_, static_cast<unsigned long>(-e));
}

std::optional<std::int64_t> ShiftSystem::iterate(std::int64_t i, std::int64_t n) const {
    std::int64_t v = i + n * offset_;
    if (!contains(v)) return std::nullopt;
    return v;
}

Rational ShiftSystem::orbit_mass(std::int64_t i, std::int64_t n) const {
    auto v = iterate(i, n);
    return v ? nu(*v) : Rational(0);
}

Rational ShiftSystem::total_mass() const {
    if (base_ <= 1) throw DomainError("infinite total mass for base <= 1");
    Rational r = 1 / base_;
    Rational tail = r / (1 - r);  // sum_{i>=1} b^-i
    if (family_ == "two-sided-geometric") return index_ == IndexSet::integers ? Rational(1 + 2 * tail) : Rational(1 + tail);
    if (index_ == IndexSet::integers) throw DomainError("one-sided geometric weights on Z have infinite mass");
    return Rational(1 + tail);
}

ShiftBound shift_bound(const ShiftSystem& sys, std::int64_t window) {
    ShiftBound b;
    b.window = window;
    b.window_sup = 0;
    for (std::int64_t i = -window; i <= window; ++i) {
        if (!sys.contains(i)) continue;
        auto v = sys.iterate(i, 1);
        Rational r = sys.nu(i) / sys.nu(*v);
        if (r > b.window_sup) b.window_sup = r;
    }
    // geometric weights: the ratio is constant on each side of 0, so the window sup is the global sup
    b.closed_form = b.window_sup;
    return b;
}

SalasReport salas_check(const ShiftSystem& sys, std::int64_t i, std::int64_t j, std::int64_t N) {
    SalasReport r;
    r.i = i;
    r.j = j;
    r.monotone = true;
    for (std::int64_t n = 1; n <= N; ++n) {
        Rational p = sys.orbit_mass(i, n) * sys.orbit_mass(j, -n);
        if (!r.products.empty() && p > r.products.back()) r.monotone = false;
        r.products.push_back(p);
    }
    if (!r.products.empty()) r.tends_to_zero = r.products.back() == 0 || r.products.back() < Rational(1, 1ul << 40);
    return r;
}

}  // namespace odolab
