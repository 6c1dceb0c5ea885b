#pragma once

#include "odolab/criteria.hpp"
#include "odolab/errors.hpp"
#include "odolab/measure_core.hpp"
#include "odolab/shift.hpp"
#include "odolab/symbol_maps.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace odolab {

enum class CheckMethod { exact, independence_product, proof_bound, sampled };
std::string to_string(CheckMethod m);

struct Check {
    std::string inequality;
    std::string bound;   // required bound, as text
    std::string value;   // computed value, as text
    double numeric = 0;  // computed value as a double
    CheckMethod method = CheckMethod::exact;
    bool pass = false;
    // sampled checks
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    json violating_point;  // null when none
    json to_json() const;
};

struct WitnessReport {
    std::string construction;
    json parameters = json::object();
    std::vector<Check> checks;
    std::vector<std::string> flags;
    bool pass = false;

    /// pass = at least one check and every check passes
    void finalize();
    const Check* find(const std::string& inequality_prefix) const;
    json to_json() const;
};

struct WitnessOptions {
    std::uint64_t seed = 20240611;
    std::uint64_t trials = 1000000;
    std::uint64_t cap = kDefaultCap;
    std::uint64_t exhaustive_cap = std::uint64_t(1) << 22;
    std::uint64_t transport_samples = 1000;
    int horizon = 400;
};

// ---- odometer ----------------------------------------------------------

/// i_s = floor(s^beta) for s in [s0, s0 + n - 1], or an explicit list
struct IndexStrategy {
    double beta = 1.5;
    std::int64_t s0_max = 200;
    std::int64_t n_max = 400;
    std::vector<std::int64_t> explicit_indices;
};

/// Hoeffding construction: B = (B_X cap B_Y) minus the gap bands, k = sum k_s M_{i_s}
template <class S>
WitnessReport transitivity_witness(const SystemSpec<S>& spec, const Rational& epsilon, const IndexStrategy& strategy,
                                   const WitnessOptions& opt = {});

/// B = [Omega.., D_l, D_{l+1}] with o^k(B) cap B empty
template <class S>
WitnessReport mixing_witness(const SystemSpec<S>& spec, const Rational& epsilon, std::uint64_t k, const WitnessOptions& opt = {});

/// B = [Omega.., D_N + j_N], n = j_N M_N, d = M_{N+1}; f is the cylinder used for the function-level check
template <class S>
WitnessReport fhc_witness(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& kappa, const WitnessOptions& opt = {},
                          const Digits& f_cylinder = {0, 0, 0});

/// #{k in [1, m] : mu(phi^{-k} B) >= 1 - eps} for a given set
template <class S>
WitnessReport ufhc_count_set(const SystemSpec<S>& spec, const DepthSet& B, const Rational& epsilon, std::uint64_t m,
                             const Rational& predicted_alpha, const WitnessOptions& opt = {});
/// B from the interval form of the ufhc hypothesis, m = n + floor(kappa n)
template <class S>
WitnessReport ufhc_count(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& kappa, const WitnessOptions& opt = {});

/// mu(phi^n(B)) * mu(phi^{-n}(B))
template <class S>
S src_evaluate(const SystemSpec<S>& spec, const DepthSet& B, std::int64_t n, std::uint64_t cap = kDefaultCap);
/// first product cylinder B (depth <= depth_max) and n <= n_max meeting both runaway forms
template <class S>
WitnessReport src_search(const SystemSpec<S>& spec, const Rational& epsilon, int depth_max, std::int64_t n_max,
                         const WitnessOptions& opt = {});

// ---- translation -------------------------------------------------------

/// B = (D + n) at one coordinate, mu(B) <= eps and mu(B - n) >= 1 - eps
template <class S>
WitnessReport hcsum_witness(const SystemSpec<S>& spec, const Rational& epsilon, const WitnessOptions& opt = {});
/// B = B_X cap B_Y over coordinates i_s with a common shift n
template <class S>
WitnessReport hoeffbis_witness(const SystemSpec<S>& spec, const Rational& epsilon, const WitnessOptions& opt = {},
                               std::int64_t max_m = 1 << 15);
/// flipped form: D = top 2n_i, mu_i(D - k) >= 1 - eps and mu_i(D - (2n_i + k)) <= eps for k <= kappa m_i
template <class S>
WitnessReport fhcsum_witness(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& kappa = Rational(1, 6),
                             const WitnessOptions& opt = {});
/// flipped form: D = top third, count k in [1, 2n_i] (and in A when given) with mu_i(D - k) <= eps
template <class S>
WitnessReport ufhcsum_witness(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& alpha_required,
                              const std::vector<std::int64_t>* A = nullptr, const WitnessOptions& opt = {});

/// F = [f_lo, f_hi], n = 3 kappa d rounded up, E = union of F + n + k, B = E + dZ, checked on [-window, window]
struct ShiftFhcParams {
    std::int64_t f_lo = -3, f_hi = 3;
    Rational kappa = Rational(3, 20);
    std::int64_t d = 200;
    std::int64_t n = 0;  // 0: smallest n with 3 kappa d <= n
    std::int64_t window = 400;
};
WitnessReport shift_fhc_witness(const ShiftSystem& sys, const ShiftFhcParams& params = {});

/// phi^{-m_{i-1}}(B) = B for cylinders of depth <= i-1, and mu(phi^{-m_{i-1}} B) <= K mu(B) on depth <= depth cylinders.
/// registered_tail bounds sum_{j > depth + 1} (rho_j - 1) m_{j-1} when the family supplies it.
template <class S>
WitnessReport rigidity_probe(const SystemSpec<S>& spec, int i_max = 8, int depth = 6, double registered_tail = 0,
                             const WitnessOptions& opt = {});

}  // namespace odolab
