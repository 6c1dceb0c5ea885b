#pragma once

#include "odolab/gallery.hpp"
#include "odolab/measure_core.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testing_util {

using odolab::Rational;

template <class S>
odolab::SystemSpec<S> spec_of(const std::string& id) {
    return odolab::SystemSpec<S>::from_json(odolab::gallery_entry(id).config);
}

/// strictly positive rational probability vector with small denominators
inline std::vector<Rational> random_measure(std::mt19937_64& rng, int m, int max_weight = 9) {
    std::uniform_int_distribution<int> d(1, max_weight);
    std::vector<Rational> w(m);
    Rational total = 0;
    for (auto& x : w) {
        x = d(rng);
        total += x;
    }
    for (auto& x : w) {
        x /= total;
        x.canonicalize();
    }
    return w;
}

inline std::vector<double> as_double(const std::vector<Rational>& w) {
    std::vector<double> out;
    for (const auto& x : w) out.push_back(x.get_d());
    return out;
}

}  // namespace testing_util
