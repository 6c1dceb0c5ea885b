#include "odolab/measure_core.hpp"

#include "odolab/errors.hpp"
#include "odolab/kernels.hpp"

#include <limits>

namespace odolab {

std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::odometer: return "odometer";
        case MapKind::translation: return "diagonal-translation";
        case MapKind::weighted_shift: return "weighted-shift";
    }
    return "?";
}

MapKind parse_kind(const std::string& s) {
    if (s == "odometer") return MapKind::odometer;
    if (s == "diagonal-translation" || s == "translation") return MapKind::translation;
    if (s == "weighted-shift" || s == "shift") return MapKind::weighted_shift;
    throw SpecError("unknown map kind '" + s + "'");
}

namespace {
constexpr std::size_t kCacheBudget = std::size_t(1) << 22;

template <class S>
std::vector<S> evaluate_weights(const MeasureRule& rule, std::int64_t i, const AlphabetRule& a);
template <>
std::vector<Rational> evaluate_weights<Rational>(const MeasureRule& rule, std::int64_t i, const AlphabetRule& a) {
    return rule.rational(i, a);
}
template <>
std::vector<double> evaluate_weights<double>(const MeasureRule& rule, std::int64_t i, const AlphabetRule& a) {
    return rule.floating(i, a);
}
}  // namespace

template <class S>
SystemSpec<S>::SystemSpec(MapKind kind, std::shared_ptr<const AlphabetRule> alphabet, std::shared_ptr<const MeasureRule> measure,
                          std::string name)
    : kind_(kind), alphabet_(std::move(alphabet)), measure_(std::move(measure)), name_(std::move(name)), cache_(std::make_shared<Cache>()) {
    if (kind_ == MapKind::weighted_shift) throw KindMismatch("weighted shifts are described by ShiftSystem, not a product SystemSpec");
    if (ScalarOps<S>::exact && !measure_->exact())
        throw BackendUnsupported("measure family '" + measure_->to_json().value("family", std::string("?")) +
                                 "' needs the float backend");
}

template <class S>
SystemSpec<S> SystemSpec<S>::from_json(const json& c) {
    if (!c.is_object()) throw SpecError("system config must be an object");
    for (const char* key : {"kind", "alphabet", "measure"})
        if (!c.contains(key)) throw SpecError(std::string("system config is missing '") + key + "'");
    return SystemSpec(parse_kind(c.at("kind").get<std::string>()), make_alphabet(c.at("alphabet")), make_measure(c.at("measure")),
                      c.value("name", std::string()));
}

template <class S>
json SystemSpec<S>::to_json() const {
    json j{{"kind", to_string(kind_)}, {"alphabet", alphabet_->to_json()}, {"measure", measure_->to_json()}};
    if (!name_.empty()) j["name"] = name_;
    return j;
}

template <class S>
std::int64_t SystemSpec<S>::m(std::int64_t i) const {
    if (i < 1) throw SpecError("coordinate index must be >= 1");
    std::int64_t v = alphabet_->size(i);
    if (v < 2) throw SpecError("m_" + std::to_string(i) + " < 2");
    return v;
}

template <class S>
void validate_weights(const std::vector<S>& w, std::int64_t i) {
    using Ops = ScalarOps<S>;
    S total = Ops::zero();
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!(w[j] > Ops::zero()))
            throw SpecError("mu_" + std::to_string(i) + "(" + std::to_string(j) + ") = " + Ops::str(w[j]) + " is not positive");
        total += w[j];
    }
    if constexpr (Ops::exact) {
        if (total != 1) throw SpecError("mu_" + std::to_string(i) + " sums to " + Ops::str(total) + ", not 1");
    } else {
        if (std::fabs(total - 1.0) > 1e-12) throw SpecError("mu_" + std::to_string(i) + " sums to " + Ops::str(total));
    }
}

template <class S>
WeightsPtr<S> SystemSpec<S>::mu(std::int64_t i) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->weights.find(i);
        if (it != cache_->weights.end()) return it->second;
    }
    std::int64_t mi = m(i);
    auto w = std::make_shared<std::vector<S>>(evaluate_weights<S>(*measure_, i, *alphabet_));
    if (std::int64_t(w->size()) != mi)
        throw SpecError("measure rule gave " + std::to_string(w->size()) + " weights for m_" + std::to_string(i) + " = " + std::to_string(mi));
    validate_weights(*w, i);
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->entries + w->size() <= kCacheBudget) {
        cache_->entries += w->size();
        cache_->weights.emplace(i, w);
    }
    return w;
}

template <class S>
std::uint64_t SystemSpec<S>::M(std::int64_t i) const {
    std::uint64_t r = 1;
    for (std::int64_t k = 1; k < i; ++k) {
        std::uint64_t mk = static_cast<std::uint64_t>(m(k));
        if (r > std::numeric_limits<std::uint64_t>::max() / 2 / mk) throw CapExceeded("M_" + std::to_string(i) + " exceeds 64 bits");
        r *= mk;
    }
    return r;
}

template <class S>
Digits SystemSpec<S>::radices(int depth) const {
    return radices_of(*alphabet_, depth);
}

Digits radices_of(const AlphabetRule& a, int depth) {
    Digits r(static_cast<std::size_t>(depth));
    for (int k = 0; k < depth; ++k) r[k] = a.size(k + 1);
    return r;
}

std::uint64_t checked_product(const Digits& radices, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (auto m : radices) {
        if (n > cap / static_cast<std::uint64_t>(m))
            throw CapExceeded("truncation of depth " + std::to_string(radices.size()) + " exceeds the enumeration cap " + std::to_string(cap));
        n *= static_cast<std::uint64_t>(m);
    }
    return n;
}

template <class S>
Digits TruncatedSpace<S>::digits(std::uint64_t cell) const {
    Digits x(static_cast<std::size_t>(depth));
    for (int k = 0; k < depth; ++k) {
        x[k] = static_cast<std::int64_t>(cell % static_cast<std::uint64_t>(radices[k]));
        cell /= static_cast<std::uint64_t>(radices[k]);
    }
    return x;
}

template <class S>
std::uint64_t TruncatedSpace<S>::index(const Digits& x) const {
    std::uint64_t c = 0;
    for (int k = depth - 1; k >= 0; --k) c = c * static_cast<std::uint64_t>(radices[k]) + static_cast<std::uint64_t>(x[k]);
    return c;
}

template <class S>
TruncatedSpace<S> build_truncation(const SystemSpec<S>& spec, int depth, std::uint64_t cap) {
    if (depth < 1) throw SpecError("truncation depth must be >= 1");
    TruncatedSpace<S> t;
    t.depth = depth;
    t.radices = spec.radices(depth);
    checked_product(t.radices, cap);
    t.M.assign(1, 1);
    for (auto m : t.radices) t.M.push_back(t.M.back() * static_cast<std::uint64_t>(m));
    t.cell_measure.assign(1, ScalarOps<S>::one());
    for (int k = 0; k < depth; ++k) {
        auto w = spec.mu(k + 1);
        std::size_t P = t.cell_measure.size();
        std::vector<S> next(P * w->size());
        for (std::size_t j = 0; j < w->size(); ++j) {
            if constexpr (std::is_same_v<S, double>) {
                kernels::active().scale_into(t.cell_measure.data(), P, (*w)[j], next.data() + j * P);
            } else {
                for (std::size_t c = 0; c < P; ++c) next[j * P + c] = t.cell_measure[c] * (*w)[j];
            }
        }
        t.cell_measure.swap(next);
    }
    return t;
}

DepthSet DepthSet::full(const Digits& radices) {
    std::vector<std::vector<std::uint8_t>> f;
    for (auto m : radices) f.emplace_back(static_cast<std::size_t>(m), 1);
    return product(radices, std::move(f));
}

DepthSet DepthSet::product(const Digits& radices, std::vector<std::vector<std::uint8_t>> factors) {
    if (factors.size() != radices.size()) throw SpecError("product set needs one factor per coordinate");
    for (std::size_t k = 0; k < radices.size(); ++k)
        if (std::int64_t(factors[k].size()) != radices[k]) throw SpecError("product factor " + std::to_string(k + 1) + " has the wrong size");
    DepthSet s;
    s.depth = static_cast<int>(radices.size());
    s.radices = radices;
    s.factors = std::move(factors);
    return s;
}

DepthSet DepthSet::cylinder(const Digits& radices, const Digits& x) {
    if (x.size() > radices.size()) throw SpecError("cylinder longer than the depth");
    std::vector<std::vector<std::uint8_t>> f;
    for (std::size_t k = 0; k < radices.size(); ++k) {
        if (k < x.size()) {
            if (x[k] < 0 || x[k] >= radices[k]) throw SpecError("cylinder symbol out of range");
            std::vector<std::uint8_t> v(static_cast<std::size_t>(radices[k]), 0);
            v[static_cast<std::size_t>(x[k])] = 1;
            f.push_back(std::move(v));
        } else {
            f.emplace_back(static_cast<std::size_t>(radices[k]), 1);
        }
    }
    return product(radices, std::move(f));
}

DepthSet DepthSet::cell_set(const Digits& radices, std::vector<std::uint8_t> mask) {
    std::uint64_t n = checked_product(radices, std::numeric_limits<std::uint64_t>::max());
    if (mask.size() != n) throw SpecError("cell mask has the wrong size");
    DepthSet s;
    s.depth = static_cast<int>(radices.size());
    s.radices = radices;
    s.cells = std::move(mask);
    return s;
}

std::uint64_t DepthSet::cell_count() const { return checked_product(radices, std::numeric_limits<std::uint64_t>::max()); }

bool DepthSet::contains(const Digits& x) const {
    if (factors) {
        for (int k = 0; k < depth; ++k)
            if (!(*factors)[k][static_cast<std::size_t>(x[k])]) return false;
        return true;
    }
    std::uint64_t c = 0;
    for (int k = depth - 1; k >= 0; --k) c = c * static_cast<std::uint64_t>(radices[k]) + static_cast<std::uint64_t>(x[k]);
    return (*cells)[c] != 0;
}

std::vector<std::uint8_t> DepthSet::expand(std::uint64_t cap) const {
    if (cells) return *cells;
    std::uint64_t n = checked_product(radices, cap);
    std::vector<std::uint8_t> out(n, 1);
    std::uint64_t stride = 1;
    for (int k = 0; k < depth; ++k) {
        const auto& f = (*factors)[k];
        std::uint64_t m = static_cast<std::uint64_t>(radices[k]);
        for (std::uint64_t c = 0; c < n; ++c)
            if (!f[(c / stride) % m]) out[c] = 0;
        stride *= m;
    }
    return out;
}

template <class S>
S subset_measure(const std::vector<S>& w, const std::vector<std::uint8_t>& mask) {
    S s = ScalarOps<S>::zero();
    for (std::size_t j = 0; j < w.size(); ++j)
        if (mask[j]) s += w[j];
    return s;
}

template <class S>
S set_measure(const TruncatedSpace<S>& space, const DepthSet& set) {
    if (set.depth != space.depth) throw SpecError("set depth differs from truncation depth");
    auto mask = set.expand(space.size());
    if constexpr (std::is_same_v<S, double>) {
        return kernels::active().masked_sum(mask.data(), space.cell_measure.data(), mask.size());
    } else {
        S s = 0;
        for (std::size_t c = 0; c < mask.size(); ++c)
            if (mask[c]) s += space.cell_measure[c];
        return s;
    }
}

template <class S>
S set_measure(const SystemSpec<S>& spec, const DepthSet& set, std::uint64_t cap) {
    if (set.is_product()) {
        S p = ScalarOps<S>::one();
        for (int k = 0; k < set.depth; ++k) p *= subset_measure(*spec.mu(k + 1), (*set.factors)[k]);
        return p;
    }
    return set_measure(build_truncation(spec, set.depth, cap), set);
}

template <class S>
SimpleFunction<S> SimpleFunction<S>::constant(const Digits& radices, const S& c) {
    SimpleFunction f;
    f.depth = static_cast<int>(radices.size());
    f.radices = radices;
    f.values.assign(checked_product(radices, kDefaultCap), c);
    return f;
}

template <class S>
SimpleFunction<S> SimpleFunction<S>::indicator(const DepthSet& set, std::uint64_t cap) {
    SimpleFunction f;
    f.depth = set.depth;
    f.radices = set.radices;
    auto mask = set.expand(cap);
    f.values.resize(mask.size());
    for (std::size_t c = 0; c < mask.size(); ++c) f.values[c] = mask[c] ? ScalarOps<S>::one() : ScalarOps<S>::zero();
    return f;
}

template <class S>
bool SimpleFunction<S>::operator==(const SimpleFunction& o) const {
    return depth == o.depth && radices == o.radices && values == o.values;
}

template <class S>
std::vector<S> atomless_monitor(const SystemSpec<S>& spec, int N) {
    std::vector<S> out;
    S p = ScalarOps<S>::one();
    for (int i = 1; i <= N; ++i) {
        auto w = spec.mu(i);
        S eta = (*w)[0];
        for (const auto& v : *w)
            if (v > eta) eta = v;
        p *= eta;
        out.push_back(p);
    }
    return out;
}

#define ODOLAB_INSTANTIATE(S)                                                                        \
    template class SystemSpec<S>;                                                                    \
    template void validate_weights<S>(const std::vector<S>&, std::int64_t);                          \
    template struct TruncatedSpace<S>;                                                               \
    template TruncatedSpace<S> build_truncation<S>(const SystemSpec<S>&, int, std::uint64_t);        \
    template S subset_measure<S>(const std::vector<S>&, const std::vector<std::uint8_t>&);           \
    template S set_measure<S>(const TruncatedSpace<S>&, const DepthSet&);                            \
    template S set_measure<S>(const SystemSpec<S>&, const DepthSet&, std::uint64_t);                 \
    template struct SimpleFunction<S>;                                                               \
    template std::vector<S> atomless_monitor<S>(const SystemSpec<S>&, int);

ODOLAB_INSTANTIATE(Rational)
ODOLAB_INSTANTIATE(double)

}  // namespace odolab
