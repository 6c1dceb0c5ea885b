#pragma once

#include "odolab/measure_core.hpp"
#include "odolab/symbol_maps.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace odolab {

/// (C^n f)(cell) = f(phi_N^n(cell)); n may be negative
template <class S>
SimpleFunction<S> apply_composition(MapKind kind, const SimpleFunction<S>& f, std::int64_t n, std::uint64_t cap = kDefaultCap);

/// ||.||_p^p exactly, plus a decimal enclosure of ||.||_p
template <class S>
struct NormValue {
    S pth_power;
    double lower = 0, upper = 0;
    double value() const { return 0.5 * (lower + upper); }
};

/// integer p >= 1
template <class S>
NormValue<S> lp_norm(const TruncatedSpace<S>& space, const SimpleFunction<S>& f, int p);
template <class S>
NormValue<S> lp_distance(const TruncatedSpace<S>& space, const SimpleFunction<S>& f, const SimpleFunction<S>& g, int p);

/// least d >= 1 with C^d f = f; lcm over bijection cycles of the rotation period of f along the cycle
template <class S>
std::uint64_t period_of(MapKind kind, const SimpleFunction<S>& f, std::uint64_t cap = kDefaultCap);

template <class S>
struct OrbitTrace {
    std::int64_t horizon = 0;
    int p = 1;
    S epsilon;
    std::uint64_t period = 0;       // period_of(f)
    std::vector<double> distance;   // index n-1 holds ||C^n f - g||_p
    std::vector<std::uint8_t> visited;
    std::vector<double> running_density;  // #(visits in [1,m]) / m
    double lower_tail_density = 0;  // inf of running density over m in [H/2, H]
    double upper_tail_density = 0;

    std::vector<std::int64_t> visit_set() const;
    std::string to_tsv() const;
};

/// visits use the strict inequality ||C^n f - g||_p < eps, compared on p-th powers
template <class S>
OrbitTrace<S> orbit_trace(MapKind kind, const TruncatedSpace<S>& space, const SimpleFunction<S>& f, const SimpleFunction<S>& g,
                          const S& epsilon, int p, std::int64_t horizon);

struct YoungFunction {
    std::string name;
    std::function<double(double)> psi;
    std::function<double(double)> inverse;
};
YoungFunction power_young(double p);
/// psi(t) = e^t - 1
YoungFunction exp_young();

/// ||1_E|| = 1 / psi^{-1}(1 / mu(E)) in the Luxemburg norm
double orlicz_indicator_norm(const YoungFunction& psi, double muE);

}  // namespace odolab
