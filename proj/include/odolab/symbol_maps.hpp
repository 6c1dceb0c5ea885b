#pragma once

#include "odolab/measure_core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace odolab {

// ---- mixed radix -------------------------------------------------------

struct MixedRadix {
    Digits digits;        // k mod M_{N+1}, little-endian
    bool exceeds = false; // k >= M_{N+1}: higher digits dropped
};

MixedRadix to_mixed_radix(const Digits& radices, std::uint64_t k);
/// value of a digit vector; throws CapExceeded past 64 bits
std::uint64_t from_mixed_radix(const Digits& radices, const Digits& digits);
/// (M_{N+1} - k) mod M_{N+1} as digits
Digits negate_mixed_radix(const Digits& radices, const Digits& k);

// ---- odometer arithmetic ----------------------------------------------

struct AddResult {
    Digits digits;
    bool carry_out = false;
};

/// x + k with carries to the right; k given as a digit vector of the same length
AddResult odometer_add(const Digits& radices, const Digits& x, const Digits& k);
/// x + k for an integer k; digits of k beyond the prefix leave the prefix unchanged and set carry_out
AddResult odometer_add(const Digits& radices, const Digits& x, std::uint64_t k);
/// as odometer_add but throws CarryOverflow when a carry leaves the prefix
Digits odometer_add_strict(const Digits& radices, const Digits& x, std::uint64_t k);
/// single odometer step
AddResult odometer_step(const Digits& radices, const Digits& x);

/// o^{-1}[x_1..x_n] as a basic cylinder
Digits preimage_cylinder(const Digits& radices, const Digits& x);

/// h(x) = prod_{i<l} mu_i(m_i-1)/mu_i(x_i) * mu_l(x_l-1)/mu_l(x_l); UnresolvedTail for an all-zero prefix
template <class S>
S rn_derivative(const SystemSpec<S>& spec, const Digits& x);

// ---- induced bijection -------------------------------------------------

class InducedBijection {
public:
    InducedBijection(MapKind kind, Digits radices, std::uint64_t cap = kDefaultCap);

    MapKind kind() const { return kind_; }
    int depth() const { return static_cast<int>(radices_.size()); }
    std::uint64_t size() const { return size_; }
    const Digits& radices() const { return radices_; }

    std::uint64_t forward(std::uint64_t cell) const { return power(cell, 1); }
    std::uint64_t inverse(std::uint64_t cell) const { return power(cell, -1); }
    /// phi_N^n(cell), n may be negative
    std::uint64_t power(std::uint64_t cell, std::int64_t n) const;
    std::vector<std::uint64_t> permutation(std::int64_t n = 1) const;
    /// M_{N+1} for the odometer, lcm(m_1..m_N) for the translation
    std::uint64_t order() const;

private:
    MapKind kind_;
    Digits radices_;
    std::uint64_t size_;
};

// ---- transport ---------------------------------------------------------

/// mu(phi^{-k}(S)) with k given by digits at the set's depth (odometer) or an integer residue (translation)
template <class S>
S preimage_measure_digits(const SystemSpec<S>& spec, const DepthSet& set, const Digits& k, std::uint64_t cap = kDefaultCap);
template <class S>
S preimage_measure(const SystemSpec<S>& spec, const DepthSet& set, std::int64_t n, std::uint64_t cap = kDefaultCap);
template <class S>
S forward_image_measure(const SystemSpec<S>& spec, const DepthSet& set, std::int64_t n, std::uint64_t cap = kDefaultCap);

/// mu(x : o^{k_r}(x)_{|N} in S_r for every r) for product-form S_r; one carry per term.
/// Exact, no enumeration. All sets share the same depth.
struct ShiftedSet {
    const DepthSet* set;
    Digits k;  // shift digits at the set depth
};
template <class S>
S joint_preimage_measure(const SystemSpec<S>& spec, const std::vector<ShiftedSet>& terms);

/// digits of n mod M_{N+1} (n may be negative)
Digits shift_digits(const Digits& radices, std::int64_t n);

/// phi^{-n}(S) as a set at the same depth (product form kept for translations, cell form otherwise)
DepthSet preimage_set(MapKind kind, const DepthSet& set, std::int64_t n, std::uint64_t cap = kDefaultCap);

/// mu_{|N-1}(val(x_{|N-1}) >= t): probability of a carry into coordinate N when adding M_N - t
template <class S>
S tail_at_least(const SystemSpec<S>& spec, int depth, std::uint64_t t);

// ---- boundedness -------------------------------------------------------

enum class BoundVerdict { bounded_closed_form, bounded_up_to_horizon, unbounded_witness };
std::string to_string(BoundVerdict v);

template <class S>
struct BoundReport {
    int horizon = 0;
    std::vector<S> values;       // bracketed quantity at l = 1..L
    std::vector<S> running_sup;
    BoundVerdict verdict = BoundVerdict::bounded_up_to_horizon;
    int witness_level = 0;       // for unbounded_witness
    std::string note;
    double norm_estimate(double p) const;
};

struct BoundOptions {
    /// registered closed form: true = bounded, false = unbounded
    std::optional<bool> closed_form;
    /// numeric mode flags unbounded growth once the value exceeds this
    double blowup = 1e12;
};

template <class S>
BoundReport<S> boundedness(const SystemSpec<S>& spec, int horizon, const BoundOptions& opt = {});

/// sup_j mu(j-1)/mu(j), j-1 taken mod m
template <class S>
S max_left_ratio(const std::vector<S>& w);

struct KakutaniReport {
    std::vector<double> factors;
    std::vector<double> partial;
    std::string verdict;  // nonsingular-closed-form | nonsingular-up-to-horizon | singular-closed-form | inconclusive
};

template <class S>
KakutaniReport kakutani_check(const SystemSpec<S>& spec, int horizon);

/// Certified lower bounds for ||C^n||^p from cylinder ratios mu(phi^{-n}C)/mu(C).
struct NormProbe {
    std::int64_t n = 0;
    double lower_bound = 0;       // max over all cells
    double resolved_bound = 0;    // max over cells where the density is constant
    double resolved_fraction = 0; // measure of those cells
};

template <class S>
std::vector<NormProbe> norm_probes(const SystemSpec<S>& spec, int depth, std::int64_t max_n, std::uint64_t cap = kDefaultCap);

}  // namespace odolab
