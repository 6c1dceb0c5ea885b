#pragma once

#include "odolab/measure_core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace odolab {

enum class Optimizer { closed_form, dp, brute_force, search };
std::string to_string(Optimizer o);

/// An optimal subset D of Omega_i together with the shift realizing the value.
template <class S>
struct SubsetOpt {
    S value;
    S upper;                         // equals value unless a search was cut short
    Optimizer optimizer = Optimizer::dp;
    std::int64_t shift = 0;
    std::vector<std::uint8_t> set;   // mask over Omega_i
    bool exact = true;
    std::uint64_t nodes = 0;
};

template <class S>
S eta_of(const std::vector<S>& w);
template <class S>
S delta_of(const std::vector<S>& w);

/// sup mu(D) - mu(D+k), addition mod m: sum_j max(w_j - w_{j+k}, 0)
template <class S>
SubsetOpt<S> theta_fixed(const std::vector<S>& w, std::int64_t k);
/// max over k in [1, m-1]
template <class S>
SubsetOpt<S> theta_max(const std::vector<S>& w);

/// max mu(D) with (D+j) cap D empty, addition in Z+ (no wrap): MWIS on the paths x, x+j, x+2j, ...
template <class S>
SubsetOpt<S> path_mwis(const std::vector<S>& w, std::int64_t j);
/// min over j in [1, m-1] of path_mwis
template <class S>
SubsetOpt<S> kappa_of(const std::vector<S>& w);

/// alpha: max mu(D) with (D+n) cap D empty mod m; MWIS on gcd(n,m) cycles
template <class S>
SubsetOpt<S> cycle_mwis(const std::vector<S>& w, std::int64_t n);
/// max over n in [1, m-1]
template <class S>
SubsetOpt<S> beta_of(const std::vector<S>& w);

struct SearchLimits {
    std::uint64_t per_shift = 20000;
    std::uint64_t total = 200000;
};

/// max over D of min(mu(D), 1 - mu(D+j)), addition mod m, branch and bound on ratio-sorted items
template <class S>
SubsetOpt<S> gamma_shift_search(const std::vector<S>& w, std::int64_t j, std::uint64_t node_limit = 20000);
template <class S>
SubsetOpt<S> gamma_search(const std::vector<S>& w, const SearchLimits& limits = {});
/// exhaustive, m <= 16
template <class S>
SubsetOpt<S> gamma_brute(const std::vector<S>& w);
template <class S>
std::vector<S> gamma_brute_per_shift(const std::vector<S>& w);
/// brute force up to m = 16, search beyond
template <class S>
SubsetOpt<S> gamma_odometer(const std::vector<S>& w, const SearchLimits& limits = {});

/// mu(⟦ceil(lower), m-1⟧) with the interval clipped to Omega
template <class S>
S interval_tail(const std::vector<S>& w, const Rational& lower);
/// omega_i(kappa) = mu_i(⟦m_i - 1 - kappa m_i m_{i+1}, m_i - 1⟧)
template <class S>
S omega(const std::vector<S>& w, std::int64_t m_next, const Rational& kappa);

/// prefix scan over theta values sorted descending: max_t (S_t)^2 / t
template <class S>
struct GammaTilde {
    S value;
    std::size_t size = 0;              // optimal #I
    std::vector<std::size_t> members;  // positions into the input
};
template <class S>
GammaTilde<S> gamma_tilde_scan(const std::vector<S>& thetas);

// ---- table -------------------------------------------------------------

struct TableOptions {
    int horizon = 50;
    Rational kappa = Rational(1, 5);
    bool with_gamma = true;
    int gamma_horizon = 1 << 30;  // gamma is computed only for i <= gamma_horizon
    SearchLimits limits;
    int n_max = 0;                // translation: n range for gamma_n, gamma~_n; 0 means horizon
};

template <class S>
struct CriteriaRow {
    std::int64_t i = 0;
    std::int64_t m = 0;
    S eta, delta, theta;
    std::int64_t theta_shift = 0;
    // odometer
    S kappa, gamma, omega;
    bool has_gamma = false;
    bool gamma_exact = true;
    Optimizer gamma_optimizer = Optimizer::brute_force;
    // translation (row index doubles as n for the n-indexed columns)
    S beta, gamma_n, gamma_tilde;
};

template <class S>
struct CriteriaTable {
    MapKind kind = MapKind::odometer;
    Rational kappa;
    std::vector<CriteriaRow<S>> rows;
    std::string to_tsv() const;
};

template <class S>
CriteriaTable<S> criteria_table(const SystemSpec<S>& spec, const TableOptions& opt);

}  // namespace odolab
