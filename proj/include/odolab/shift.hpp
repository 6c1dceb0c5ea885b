#pragma once

#include "odolab/families.hpp"
#include "odolab/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace odolab {

enum class IndexSet { integers, naturals };

/// Weighted counting measure nu on Z or Z+ with the injective map i -> i + offset.
class ShiftSystem {
public:
    /// weights: {"family": "two-sided-geometric" | "geometric", "params": {"base": b}}
    ShiftSystem(IndexSet index, Rational base, std::string family, std::int64_t offset = 1, std::string name = "");

    static ShiftSystem from_json(const json& config);
    json to_json() const;

    IndexSet index_set() const { return index_; }
    std::int64_t offset() const { return offset_; }
    const std::string& name() const { return name_; }
    bool contains(std::int64_t i) const { return index_ == IndexSet::integers || i >= 0; }

    Rational nu(std::int64_t i) const;
    /// phi^n(i) for n in Z; nullopt when the point leaves the index set
    std::optional<std::int64_t> iterate(std::int64_t i, std::int64_t n) const;
    /// nu of phi^n({i}); zero when phi^n({i}) is empty
    Rational orbit_mass(std::int64_t i, std::int64_t n) const;
    Rational total_mass() const;

private:
    IndexSet index_;
    Rational base_;
    std::string family_;
    std::int64_t offset_;
    std::string name_;
};

/// sup_i nu(i)/nu(phi(i)) over the window [-W, W], with the closed form for the geometric families.
struct ShiftBound {
    Rational window_sup;
    Rational closed_form;
    std::int64_t window = 0;
};
ShiftBound shift_bound(const ShiftSystem& sys, std::int64_t window);

/// nu(phi^n(i)) * nu(phi^{-n}(j)) for n = 1..N.
struct SalasReport {
    std::int64_t i = 0, j = 0;
    std::vector<Rational> products;
    bool monotone = false;      // non-increasing
    bool tends_to_zero = false; // last term below 2^-40 or the tail is identically zero
};
SalasReport salas_check(const ShiftSystem& sys, std::int64_t i, std::int64_t j, std::int64_t N);

}  // namespace odolab
