#pragma once

#include "odolab/families.hpp"
#include "odolab/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace odolab {

enum class MapKind { odometer, translation, weighted_shift };

std::string to_string(MapKind k);
MapKind parse_kind(const std::string& s);

constexpr std::uint64_t kDefaultCap = std::uint64_t(1) << 24;

using Digits = std::vector<std::int64_t>;

template <class S>
using WeightsPtr = std::shared_ptr<const std::vector<S>>;

/// Product system: alphabet sizes m_i, weights mu_i, and the symbol map kind.
/// Indices are 1-based throughout. Weight vectors are evaluated lazily and cached.
template <class S>
class SystemSpec {
public:
    SystemSpec(MapKind kind, std::shared_ptr<const AlphabetRule> alphabet, std::shared_ptr<const MeasureRule> measure,
               std::string name = "");

    /// { "kind", "alphabet", "measure" } as in the config schema
    static SystemSpec from_json(const json& config);
    json to_json() const;

    MapKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const AlphabetRule& alphabet() const { return *alphabet_; }
    const MeasureRule& measure() const { return *measure_; }

    std::int64_t m(std::int64_t i) const;
    WeightsPtr<S> mu(std::int64_t i) const;
    S weight(std::int64_t i, std::int64_t j) const { return (*mu(i))[static_cast<std::size_t>(j)]; }

    /// M_i = m_1 ... m_{i-1}; M_1 = 1. Throws CapExceeded past 2^63.
    std::uint64_t M(std::int64_t i) const;
    Digits radices(int depth) const;

    /// eventual periodicity of i -> (m_i, mu_i) when the rules declare it
    std::optional<Periodicity> periodicity() const { return combine(alphabet_->periodicity(), measure_->periodicity()); }

private:
    MapKind kind_;
    std::shared_ptr<const AlphabetRule> alphabet_;
    std::shared_ptr<const MeasureRule> measure_;
    std::string name_;

    struct Cache {
        std::mutex mu;
        std::map<std::int64_t, WeightsPtr<S>> weights;
        std::size_t entries = 0;
    };
    std::shared_ptr<Cache> cache_;
};

/// Checks positivity and normalisation of a weight vector; throws SpecError.
template <class S>
void validate_weights(const std::vector<S>& w, std::int64_t i);

template <class S>
struct TruncatedSpace {
    int depth = 0;
    Digits radices;                   // m_1..m_N
    std::vector<std::uint64_t> M;     // M[0] = 1, M[k] = m_1...m_k
    std::vector<S> cell_measure;      // little-endian mixed radix order

    std::uint64_t size() const { return M.back(); }
    Digits digits(std::uint64_t cell) const;
    std::uint64_t index(const Digits& x) const;
};

template <class S>
TruncatedSpace<S> build_truncation(const SystemSpec<S>& spec, int depth, std::uint64_t cap = kDefaultCap);

/// A set determined by the first N coordinates: product form [B_1..B_N] or an explicit cell mask.
struct DepthSet {
    int depth = 0;
    Digits radices;
    std::optional<std::vector<std::vector<std::uint8_t>>> factors;
    std::optional<std::vector<std::uint8_t>> cells;

    static DepthSet full(const Digits& radices);
    static DepthSet product(const Digits& radices, std::vector<std::vector<std::uint8_t>> factors);
    static DepthSet cylinder(const Digits& radices, const Digits& x);
    static DepthSet cell_set(const Digits& radices, std::vector<std::uint8_t> mask);

    bool is_product() const { return factors.has_value(); }
    bool contains(const Digits& x) const;
    std::vector<std::uint8_t> expand(std::uint64_t cap = kDefaultCap) const;
    std::uint64_t cell_count() const;
};

template <class S>
S set_measure(const SystemSpec<S>& spec, const DepthSet& set, std::uint64_t cap = kDefaultCap);
template <class S>
S set_measure(const TruncatedSpace<S>& space, const DepthSet& set);

/// mu_i(A) for a subset mask A of Omega_i
template <class S>
S subset_measure(const std::vector<S>& w, const std::vector<std::uint8_t>& mask);

template <class S>
struct SimpleFunction {
    int depth = 0;
    Digits radices;
    std::vector<S> values;

    static SimpleFunction constant(const Digits& radices, const S& c);
    static SimpleFunction indicator(const DepthSet& set, std::uint64_t cap = kDefaultCap);
    bool operator==(const SimpleFunction& o) const;
};

/// partial products prod_{i<=n} eta_i for n = 1..N
template <class S>
std::vector<S> atomless_monitor(const SystemSpec<S>& spec, int N);

Digits radices_of(const AlphabetRule& a, int depth);
std::uint64_t checked_product(const Digits& radices, std::uint64_t cap);

}  // namespace odolab
