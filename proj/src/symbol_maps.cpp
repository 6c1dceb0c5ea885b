#include "odolab/symbol_maps.hpp"

#include "odolab/errors.hpp"

#include <cmath>
#include <numeric>

namespace odolab {

MixedRadix to_mixed_radix(const Digits& radices, std::uint64_t k) {
    MixedRadix r;
    r.digits.resize(radices.size());
    for (std::size_t i = 0; i < radices.size(); ++i) {
        std::uint64_t m = static_cast<std::uint64_t>(radices[i]);
        r.digits[i] = static_cast<std::int64_t>(k % m);
        k /= m;
    }
    r.exceeds = k != 0;
    return r;
}

std::uint64_t from_mixed_radix(const Digits& radices, const Digits& digits) {
    unsigned __int128 v = 0;
    for (std::size_t i = radices.size(); i-- > 0;) {
        v = v * static_cast<std::uint64_t>(radices[i]) + static_cast<std::uint64_t>(digits[i]);
        if (v >> 64) throw CapExceeded("mixed-radix value exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(v);
}

Digits negate_mixed_radix(const Digits& radices, const Digits& k) {
    // complement digitwise then add one
    Digits c(radices.size());
    for (std::size_t i = 0; i < radices.size(); ++i) c[i] = radices[i] - 1 - k[i];
    Digits one(radices.size(), 0);
    if (!one.empty()) one[0] = 1;
    return odometer_add(radices, c, one).digits;
}

AddResult odometer_add(const Digits& radices, const Digits& x, const Digits& k) {
    if (x.size() > radices.size() || k.size() < x.size()) throw SpecError("odometer_add: prefix/digit length mismatch");
    AddResult r;
    r.digits.resize(x.size());
    std::int64_t carry = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t m = radices[i];
        std::int64_t s = x[i] + k[i] + carry;
        carry = s >= m;
        r.digits[i] = s - carry * m;
    }
    r.carry_out = carry != 0;
    return r;
}

AddResult odometer_add(const Digits& radices, const Digits& x, std::uint64_t k) {
    Digits rad(radices.begin(), radices.begin() + static_cast<std::ptrdiff_t>(x.size()));
    MixedRadix kd = to_mixed_radix(rad, k);
    AddResult r = odometer_add(rad, x, kd.digits);
    r.carry_out = r.carry_out || kd.exceeds;
    return r;
}

Digits odometer_add_strict(const Digits& radices, const Digits& x, std::uint64_t k) {
    AddResult r = odometer_add(radices, x, k);
    if (r.carry_out) throw CarryOverflow("adding " + std::to_string(k) + " carries past depth " + std::to_string(x.size()));
    return r.digits;
}

AddResult odometer_step(const Digits& radices, const Digits& x) { return odometer_add(radices, x, std::uint64_t(1)); }

Digits preimage_cylinder(const Digits& radices, const Digits& x) {
    Digits y(x.size());
    std::size_t l = 0;
    while (l < x.size() && x[l] == 0) ++l;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i < l) y[i] = radices[i] - 1;
        else if (i == l) y[i] = x[i] - 1;
        else y[i] = x[i];
    }
    return y;
}

template <class S>
S rn_derivative(const SystemSpec<S>& spec, const Digits& x) {
    std::size_t l = 0;
    while (l < x.size() && x[l] == 0) ++l;
    if (l == x.size()) throw UnresolvedTail("all-zero prefix: h depends on deeper coordinates");
    S h = ScalarOps<S>::one();
    for (std::size_t i = 0; i < l; ++i) {
        auto w = spec.mu(std::int64_t(i) + 1);
        h *= w->back() / (*w)[0];
    }
    auto w = spec.mu(std::int64_t(l) + 1);
    h *= (*w)[x[l] - 1] / (*w)[x[l]];
    return h;
}

// ---- induced bijection ----

InducedBijection::InducedBijection(MapKind kind, Digits radices, std::uint64_t cap) : kind_(kind), radices_(std::move(radices)) {
    if (kind_ == MapKind::weighted_shift) throw KindMismatch("weighted shifts have no finite induced bijection");
    size_ = checked_product(radices_, cap);
}

std::uint64_t InducedBijection::power(std::uint64_t cell, std::int64_t n) const {
    if (kind_ == MapKind::odometer) {
        std::int64_t r = n % static_cast<std::int64_t>(size_);
        if (r < 0) r += static_cast<std::int64_t>(size_);
        return (cell + static_cast<std::uint64_t>(r)) % size_;
    }
    std::uint64_t out = 0, stride = 1, c = cell;
    for (auto m : radices_) {
        std::int64_t d = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(m));
        c /= static_cast<std::uint64_t>(m);
        std::int64_t s = ((d + n) % m + m) % m;
        out += static_cast<std::uint64_t>(s) * stride;
        stride *= static_cast<std::uint64_t>(m);
    }
    return out;
}

std::vector<std::uint64_t> InducedBijection::permutation(std::int64_t n) const {
    std::vector<std::uint64_t> p(size_);
    for (std::uint64_t c = 0; c < size_; ++c) p[c] = power(c, n);
    return p;
}

std::uint64_t InducedBijection::order() const {
    if (kind_ == MapKind::odometer) return size_;
    std::uint64_t l = 1;
    for (auto m : radices_) l = std::lcm(l, static_cast<std::uint64_t>(m));
    return l;
}

// ---- transport ----

namespace {

template <class S>
S odometer_product_transport(const SystemSpec<S>& spec, const DepthSet& set, const Digits& k) {
    // carry DP: p[c] = mass of prefixes whose image so far lies in the set, with carry c
    S p0 = ScalarOps<S>::one(), p1 = ScalarOps<S>::zero();
    for (int i = 0; i < set.depth; ++i) {
        auto w = spec.mu(i + 1);
        const auto& f = (*set.factors)[i];
        std::int64_t m = set.radices[i];
        S q0 = ScalarOps<S>::zero(), q1 = ScalarOps<S>::zero();
        for (int c = 0; c < 2; ++c) {
            const S& pc = c ? p1 : p0;
            S stay = ScalarOps<S>::zero(), wrap = ScalarOps<S>::zero();
            for (std::int64_t x = 0; x < m; ++x) {
                std::int64_t s = x + k[i] + c;
                if (s < m) {
                    if (f[s]) stay += (*w)[x];
                } else if (f[s - m]) {
                    wrap += (*w)[x];
                }
            }
            q0 += pc * stay;
            q1 += pc * wrap;
        }
        p0 = q0;
        p1 = q1;
    }
    return p0 + p1;
}

template <class S>
S translation_product_transport(const SystemSpec<S>& spec, const DepthSet& set, std::int64_t n) {
    S p = ScalarOps<S>::one();
    for (int i = 0; i < set.depth; ++i) {
        auto w = spec.mu(i + 1);
        const auto& f = (*set.factors)[i];
        std::int64_t m = set.radices[i];
        std::int64_t r = ((n % m) + m) % m;
        S s = ScalarOps<S>::zero();
        for (std::int64_t x = 0; x < m; ++x)
            if (f[(x + r) % m]) s += (*w)[x];
        p *= s;
    }
    return p;
}

}  // namespace

Digits shift_digits(const Digits& radices, std::int64_t n) {
    if (n >= 0) return to_mixed_radix(radices, static_cast<std::uint64_t>(n)).digits;
    Digits d = to_mixed_radix(radices, static_cast<std::uint64_t>(-(n + 1)) + 1).digits;
    return negate_mixed_radix(radices, d);
}

template <class S>
S joint_preimage_measure(const SystemSpec<S>& spec, const std::vector<ShiftedSet>& terms) {
    if (spec.kind() != MapKind::odometer) throw KindMismatch("joint carry transport applies to the odometer");
    if (terms.empty()) return ScalarOps<S>::one();
    const std::size_t R = terms.size();
    if (R > 8) throw SpecError("joint transport supports at most 8 terms");
    const int depth = terms[0].set->depth;
    for (const auto& t : terms) {
        if (!t.set->is_product()) throw SpecError("joint transport needs product-form sets");
        if (t.set->depth != depth || std::int64_t(t.k.size()) < depth) throw SpecError("joint transport: depth mismatch");
    }
    const std::size_t states = std::size_t(1) << R;
    std::vector<S> p(states, ScalarOps<S>::zero()), q(states);
    p[0] = ScalarOps<S>::one();
    for (int i = 0; i < depth; ++i) {
        auto w = spec.mu(i + 1);
        std::int64_t m = terms[0].set->radices[i];
        std::fill(q.begin(), q.end(), ScalarOps<S>::zero());
        for (std::size_t c = 0; c < states; ++c) {
            if (p[c] == ScalarOps<S>::zero()) continue;
            // group x by the carry vector it produces, keeping only x that land in every set
            std::vector<S> out(states, ScalarOps<S>::zero());
            for (std::int64_t x = 0; x < m; ++x) {
                std::size_t nc = 0;
                bool ok = true;
                for (std::size_t r = 0; r < R && ok; ++r) {
                    std::int64_t s = x + terms[r].k[i] + std::int64_t((c >> r) & 1);
                    bool carry = s >= m;
                    if (carry) s -= m;
                    ok = (*terms[r].set->factors)[i][s] != 0;
                    if (carry) nc |= std::size_t(1) << r;
                }
                if (ok) out[nc] += (*w)[x];
            }
            for (std::size_t nc = 0; nc < states; ++nc)
                if (!(out[nc] == ScalarOps<S>::zero())) q[nc] += p[c] * out[nc];
        }
        std::swap(p, q);
    }
    return sum_of(p);
}

DepthSet preimage_set(MapKind kind, const DepthSet& set, std::int64_t n, std::uint64_t cap) {
    if (kind == MapKind::translation && set.is_product()) {
        std::vector<std::vector<std::uint8_t>> f;
        for (int i = 0; i < set.depth; ++i) {
            std::int64_t m = set.radices[i], r = ((n % m) + m) % m;
            std::vector<std::uint8_t> g(static_cast<std::size_t>(m));
            for (std::int64_t x = 0; x < m; ++x) g[x] = (*set.factors)[i][(x + r) % m];
            f.push_back(std::move(g));
        }
        return DepthSet::product(set.radices, std::move(f));
    }
    InducedBijection b(kind, set.radices, cap);
    auto mask = set.expand(cap);
    std::vector<std::uint8_t> out(mask.size());
    for (std::uint64_t c = 0; c < mask.size(); ++c) out[c] = mask[b.power(c, n)];
    return DepthSet::cell_set(set.radices, std::move(out));
}

template <class S>
S preimage_measure_digits(const SystemSpec<S>& spec, const DepthSet& set, const Digits& k, std::uint64_t cap) {
    if (spec.kind() != MapKind::odometer) throw KindMismatch("digit shifts apply to the odometer");
    if (std::int64_t(k.size()) < set.depth) throw SpecError("shift digits shorter than the set depth");
    if (set.is_product()) return odometer_product_transport(spec, set, k);
    Digits kd(k.begin(), k.begin() + set.depth);
    std::uint64_t n = from_mixed_radix(set.radices, kd);
    return set_measure(spec, preimage_set(MapKind::odometer, set, static_cast<std::int64_t>(n), cap), cap);
}

template <class S>
S preimage_measure(const SystemSpec<S>& spec, const DepthSet& set, std::int64_t n, std::uint64_t cap) {
    if (n == 0) return set_measure(spec, set, cap);
    if (spec.kind() == MapKind::odometer) {
        if (set.is_product()) return odometer_product_transport(spec, set, shift_digits(set.radices, n));
        return set_measure(spec, preimage_set(MapKind::odometer, set, n, cap), cap);
    }
    if (set.is_product()) return translation_product_transport(spec, set, n);
    return set_measure(spec, preimage_set(MapKind::translation, set, n, cap), cap);
}

template <class S>
S forward_image_measure(const SystemSpec<S>& spec, const DepthSet& set, std::int64_t n, std::uint64_t cap) {
    return preimage_measure(spec, set, -n, cap);
}

template <class S>
S tail_at_least(const SystemSpec<S>& spec, int depth, std::uint64_t t) {
    // distribution of val(x_1..x_{N-1}) compared against t
    Digits rad = spec.radices(depth - 1);
    std::uint64_t MN = 1;
    for (auto m : rad) MN *= static_cast<std::uint64_t>(m);
    if (t == 0) return ScalarOps<S>::one();
    if (t >= MN) return ScalarOps<S>::zero();
    Digits td = to_mixed_radix(rad, t).digits;
    S result = ScalarOps<S>::zero(), eq = ScalarOps<S>::one();
    for (int i = depth - 2; i >= 0; --i) {
        auto w = spec.mu(i + 1);
        S above = ScalarOps<S>::zero();
        for (std::int64_t x = td[i] + 1; x < rad[i]; ++x) above += (*w)[x];
        result += eq * above;
        eq *= (*w)[td[i]];
    }
    return result + eq;
}

// ---- boundedness ----

std::string to_string(BoundVerdict v) {
    switch (v) {
        case BoundVerdict::bounded_closed_form: return "bounded-closed-form";
        case BoundVerdict::bounded_up_to_horizon: return "bounded-up-to-horizon";
        case BoundVerdict::unbounded_witness: return "unbounded-witness";
    }
    return "?";
}

template <class S>
double BoundReport<S>::norm_estimate(double p) const {
    if (running_sup.empty()) return 0;
    return std::pow(to_double(running_sup.back()), 1.0 / p);
}

template <class S>
S max_left_ratio(const std::vector<S>& w) {
    std::size_t m = w.size();
    S best = w[m - 1] / w[0];
    for (std::size_t j = 1; j < m; ++j) {
        S r = w[j - 1] / w[j];
        if (r > best) best = r;
    }
    return best;
}

template <class S>
BoundReport<S> boundedness(const SystemSpec<S>& spec, int horizon, const BoundOptions& opt) {
    if (horizon < 1) throw SpecError("boundedness horizon must be >= 1");
    BoundReport<S> rep;
    rep.horizon = horizon;
    const bool odo = spec.kind() == MapKind::odometer;
    auto per = spec.periodicity();
    // closed-form evaluation from periodicity may need a few levels past the horizon
    int limit = horizon;
    if (per) limit = std::max<int>(horizon, static_cast<int>(per->start + 2 * per->period));

    std::vector<S> values, sups;
    S prefix = ScalarOps<S>::one();  // prod_{i<l} mu_i(m_i-1)/mu_i(0), or running product for translation
    auto level_value = [&](int l) {
        auto w = spec.mu(l);
        S r = max_left_ratio(*w);
        S v;
        if (odo) {
            v = prefix * r;
            prefix *= w->back() / (*w)[0];
        } else {
            prefix *= r;
            v = prefix;
        }
        return v;
    };
    int first_blowup = 0;
    for (int l = 1; l <= limit; ++l) {
        S v = level_value(l);
        if (!first_blowup && to_double(v) > opt.blowup) first_blowup = l;
        if (l <= horizon) {
            values.push_back(v);
            sups.push_back(sups.empty() || v > sups.back() ? v : sups.back());
        }
    }
    rep.values = values;
    rep.running_sup = sups;

    if (opt.closed_form) {
        rep.verdict = *opt.closed_form ? BoundVerdict::bounded_closed_form : BoundVerdict::unbounded_witness;
        rep.note = "registered closed form";
        if (!*opt.closed_form) rep.witness_level = first_blowup ? first_blowup : horizon;
        return rep;
    }
    if (per) {
        // growth factor over one period, the same for every period start >= per->start
        S growth = ScalarOps<S>::one();
        for (std::int64_t i = per->start; i < per->start + per->period; ++i) {
            auto w = spec.mu(i);
            growth *= odo ? S(w->back() / (*w)[0]) : max_left_ratio(*w);
        }
        if (growth <= ScalarOps<S>::one()) {
            rep.verdict = BoundVerdict::bounded_closed_form;
            rep.note = "eventually periodic; per-period growth factor " + scalar_string(growth);
            return rep;
        }
        rep.verdict = BoundVerdict::unbounded_witness;
        rep.note = "eventually periodic; per-period growth factor " + scalar_string(growth) + " > 1";
        // first level whose value exceeds everything seen in the first period
        S ceiling = ScalarOps<S>::zero();
        prefix = ScalarOps<S>::one();
        int l = 1;
        const int stop = static_cast<int>(per->start + per->period);
        for (; l < stop; ++l) {
            S v = level_value(l);
            if (v > ceiling) ceiling = v;
        }
        for (;; ++l) {
            S v = level_value(l);
            if (v > ceiling) break;
        }
        rep.witness_level = l;
        return rep;
    }
    if (first_blowup && first_blowup <= horizon) {
        rep.verdict = BoundVerdict::unbounded_witness;
        rep.witness_level = first_blowup;
        rep.note = "value exceeded " + decimal_string(opt.blowup);
        return rep;
    }
    rep.verdict = BoundVerdict::bounded_up_to_horizon;
    rep.note = "running sup " + decimal_string(to_double(sups.back())) + " at level " + std::to_string(horizon);
    return rep;
}

template <class S>
KakutaniReport kakutani_check(const SystemSpec<S>& spec, int horizon) {
    if (spec.kind() != MapKind::translation) throw KindMismatch("Kakutani check applies to diagonal translations");
    KakutaniReport r;
    double p = 1;
    for (int i = 1; i <= horizon; ++i) {
        auto w = spec.mu(i);
        std::size_t m = w->size();
        double f = 0;
        for (std::size_t j = 0; j < m; ++j) f += std::sqrt(to_double((*w)[j]) * to_double((*w)[(j + m - 1) % m]));
        f = std::min(f, 1.0);
        r.factors.push_back(f);
        p *= f;
        r.partial.push_back(p);
    }
    if (auto per = spec.periodicity()) {
        double q = 1;
        for (std::int64_t i = per->start; i < per->start + per->period; ++i) {
            auto w = spec.mu(i);
            std::size_t m = w->size();
            double f = 0;
            for (std::size_t j = 0; j < m; ++j) f += std::sqrt(to_double((*w)[j]) * to_double((*w)[(j + m - 1) % m]));
            q *= std::min(f, 1.0);
        }
        r.verdict = q >= 1.0 - 1e-15 ? "nonsingular-closed-form" : "singular-closed-form";
        return r;
    }
    r.verdict = p > 1e-6 ? "nonsingular-up-to-horizon" : "inconclusive";
    return r;
}

template <class S>
std::vector<NormProbe> norm_probes(const SystemSpec<S>& spec, int depth, std::int64_t max_n, std::uint64_t cap) {
    TruncatedSpace<S> t = build_truncation(spec, depth, cap);
    InducedBijection b(spec.kind(), t.radices, cap);
    std::vector<double> cm(t.cell_measure.size());
    for (std::size_t c = 0; c < cm.size(); ++c) cm[c] = to_double(t.cell_measure[c]);
    std::vector<NormProbe> out;
    for (std::int64_t n = 1; n <= max_n; ++n) {
        NormProbe p;
        p.n = n;
        for (std::uint64_t c = 0; c < t.size(); ++c) {
            double ratio = cm[b.power(c, -n)] / cm[c];
            p.lower_bound = std::max(p.lower_bound, ratio);
            bool resolved = spec.kind() == MapKind::odometer && static_cast<std::uint64_t>(n) < t.size() && c >= static_cast<std::uint64_t>(n);
            if (resolved) {
                p.resolved_bound = std::max(p.resolved_bound, ratio);
                p.resolved_fraction += cm[c];
            }
        }
        out.push_back(p);
    }
    return out;
}

#define ODOLAB_INSTANTIATE(S)                                                                                 \
    template S rn_derivative<S>(const SystemSpec<S>&, const Digits&);                                         \
    template S preimage_measure_digits<S>(const SystemSpec<S>&, const DepthSet&, const Digits&, std::uint64_t); \
    template S preimage_measure<S>(const SystemSpec<S>&, const DepthSet&, std::int64_t, std::uint64_t);       \
    template S forward_image_measure<S>(const SystemSpec<S>&, const DepthSet&, std::int64_t, std::uint64_t);  \
    template S joint_preimage_measure<S>(const SystemSpec<S>&, const std::vector<ShiftedSet>&);             \
    template S tail_at_least<S>(const SystemSpec<S>&, int, std::uint64_t);                                    \
    template struct BoundReport<S>;                                                                           \
    template S max_left_ratio<S>(const std::vector<S>&);                                                      \
    template BoundReport<S> boundedness<S>(const SystemSpec<S>&, int, const BoundOptions&);                   \
    template KakutaniReport kakutani_check<S>(const SystemSpec<S>&, int);                                     \
    template std::vector<NormProbe> norm_probes<S>(const SystemSpec<S>&, int, std::int64_t, std::uint64_t);

ODOLAB_INSTANTIATE(Rational)
ODOLAB_INSTANTIATE(double)

}  // namespace odolab
