#include "odolab/function_space.hpp"

#include "odolab/errors.hpp"
#include "odolab/kernels.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace odolab {

template <class S>
SimpleFunction<S> apply_composition(MapKind kind, const SimpleFunction<S>& f, std::int64_t n, std::uint64_t cap) {
    if (n == 0) return f;
    InducedBijection bij(kind, f.radices, cap);
    SimpleFunction<S> g = f;
    for (std::uint64_t c = 0; c < bij.size(); ++c) g.values[c] = f.values[bij.power(c, n)];
    return g;
}

namespace {

void check_shape(const Digits& a, const Digits& b) {
    if (a != b) throw SpecError("function depth or radices differ from the truncation");
}

template <class S>
S int_pow(const S& v, int p) {
    S r = ScalarOps<S>::one();
    for (int k = 0; k < p; ++k) r *= v;
    return r;
}

template <class S>
NormValue<S> finish(const S& pth, int p) {
    NormValue<S> out{pth};
    long double x = ScalarOps<S>::to_double(pth);
    double v = static_cast<double>(std::pow(x, 1.0L / p));
    // a few ulps either side covers the conversion and the root
    double lo = v, hi = v;
    for (int k = 0; k < 4; ++k) {
        lo = std::nextafter(lo, 0.0);
        hi = std::nextafter(hi, HUGE_VAL);
    }
    out.lower = std::max(0.0, lo);
    out.upper = hi;
    if (ScalarOps<S>::is_zero(pth) && ScalarOps<S>::exact) out.lower = out.upper = 0;
    return out;
}

}  // namespace

template <class S>
NormValue<S> lp_norm(const TruncatedSpace<S>& space, const SimpleFunction<S>& f, int p) {
    if (p < 1) throw DomainError("p must be >= 1");
    check_shape(space.radices, f.radices);
    S acc = ScalarOps<S>::zero();
    if constexpr (std::is_same_v<S, double>) {
        acc = kernels::active().abs_pow_sum(f.values.data(), space.cell_measure.data(), f.values.size(), p);
    } else {
        for (std::size_t c = 0; c < f.values.size(); ++c)
            if (!ScalarOps<S>::is_zero(f.values[c])) acc += int_pow(ScalarOps<S>::abs(f.values[c]), p) * space.cell_measure[c];
    }
    return finish(acc, p);
}

template <class S>
NormValue<S> lp_distance(const TruncatedSpace<S>& space, const SimpleFunction<S>& f, const SimpleFunction<S>& g, int p) {
    if (p < 1) throw DomainError("p must be >= 1");
    check_shape(space.radices, f.radices);
    check_shape(space.radices, g.radices);
    S acc = ScalarOps<S>::zero();
    if constexpr (std::is_same_v<S, double>) {
        acc = kernels::active().abs_diff_pow_sum(f.values.data(), g.values.data(), space.cell_measure.data(), f.values.size(), p);
    } else {
        for (std::size_t c = 0; c < f.values.size(); ++c) {
            S d = f.values[c] - g.values[c];
            if (!ScalarOps<S>::is_zero(d)) acc += int_pow(ScalarOps<S>::abs(d), p) * space.cell_measure[c];
        }
    }
    return finish(acc, p);
}

template <class S>
std::uint64_t period_of(MapKind kind, const SimpleFunction<S>& f, std::uint64_t cap) {
    InducedBijection bij(kind, f.radices, cap);
    std::vector<std::uint8_t> seen(bij.size(), 0);
    std::uint64_t period = 1;
    std::vector<std::uint64_t> cyc;
    for (std::uint64_t s = 0; s < bij.size(); ++s) {
        if (seen[s]) continue;
        cyc.clear();
        for (std::uint64_t c = s; !seen[c]; c = bij.forward(c)) {
            seen[c] = 1;
            cyc.push_back(c);
        }
        std::uint64_t L = cyc.size(), best = L;
        for (std::uint64_t d = 1; d < L; ++d) {
            if (L % d != 0) continue;
            bool ok = true;
            for (std::uint64_t t = 0; t < L && ok; ++t) ok = f.values[cyc[t]] == f.values[cyc[(t + d) % L]];
            if (ok) {
                best = d;
                break;
            }
        }
        period = std::lcm(period, best);
    }
    return period;
}

template <class S>
std::vector<std::int64_t> OrbitTrace<S>::visit_set() const {
    std::vector<std::int64_t> v;
    for (std::size_t k = 0; k < visited.size(); ++k)
        if (visited[k]) v.push_back(std::int64_t(k) + 1);
    return v;
}

template <class S>
std::string OrbitTrace<S>::to_tsv() const {
    std::ostringstream os;
    os << "n\tdistance\tvisited\trunning_density\n";
    for (std::size_t k = 0; k < visited.size(); ++k)
        os << (k + 1) << '\t' << decimal_string(distance[k]) << '\t' << int(visited[k]) << '\t' << decimal_string(running_density[k])
           << '\n';
    return os.str();
}

template <class S>
OrbitTrace<S> orbit_trace(MapKind kind, const TruncatedSpace<S>& space, const SimpleFunction<S>& f, const SimpleFunction<S>& g,
                          const S& epsilon, int p, std::int64_t horizon) {
    if (horizon < 1) throw DomainError("orbit horizon must be >= 1");
    check_shape(space.radices, f.radices);
    check_shape(space.radices, g.radices);
    OrbitTrace<S> t;
    t.horizon = horizon;
    t.p = p;
    t.epsilon = epsilon;
    t.period = period_of(kind, f, space.size());
    InducedBijection bij(kind, space.radices, space.size());
    auto perm = bij.permutation(1);
    S eps_p = int_pow(epsilon, p);
    SimpleFunction<S> cur = f, next = f;
    std::int64_t visits = 0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
        for (std::uint64_t c = 0; c < space.size(); ++c) next.values[c] = cur.values[perm[c]];
        std::swap(cur, next);
        auto d = lp_distance(space, cur, g, p);
        bool v = ScalarOps<S>::exact ? d.pth_power < eps_p : ScalarOps<S>::less(d.pth_power, eps_p);
        t.distance.push_back(d.value());
        t.visited.push_back(v ? 1 : 0);
        visits += v;
        t.running_density.push_back(double(visits) / double(n));
    }
    std::size_t from = static_cast<std::size_t>(horizon / 2);
    if (from > 0) --from;
    t.lower_tail_density = 1;
    t.upper_tail_density = 0;
    for (std::size_t k = from; k < t.running_density.size(); ++k) {
        t.lower_tail_density = std::min(t.lower_tail_density, t.running_density[k]);
        t.upper_tail_density = std::max(t.upper_tail_density, t.running_density[k]);
    }
    return t;
}

YoungFunction power_young(double p) {
    if (!(p >= 1)) throw DomainError("power Young function needs p >= 1");
    return {"power", [p](double t) { return std::pow(t, p); }, [p](double s) { return std::pow(s, 1.0 / p); }};
}

YoungFunction exp_young() {
    return {"exp-minus-one", [](double t) { return std::expm1(t); }, [](double s) { return std::log1p(s); }};
}

double orlicz_indicator_norm(const YoungFunction& psi, double muE) {
    if (!(muE > 0 && muE <= 1)) throw DomainError("mu(E) must lie in (0, 1]");
    double inv = psi.inverse(1.0 / muE);
    if (!std::isfinite(inv) || inv <= 0) throw DomainError("psi inverse undefined at 1/mu(E) for " + psi.name);
    return 1.0 / inv;
}

#define ODOLAB_INSTANTIATE(S)                                                                                                  \
    template SimpleFunction<S> apply_composition<S>(MapKind, const SimpleFunction<S>&, std::int64_t, std::uint64_t);           \
    template NormValue<S> lp_norm<S>(const TruncatedSpace<S>&, const SimpleFunction<S>&, int);                                 \
    template NormValue<S> lp_distance<S>(const TruncatedSpace<S>&, const SimpleFunction<S>&, const SimpleFunction<S>&, int);   \
    template std::uint64_t period_of<S>(MapKind, const SimpleFunction<S>&, std::uint64_t);                                     \
    template struct OrbitTrace<S>;                                                                                             \
    template OrbitTrace<S> orbit_trace<S>(MapKind, const TruncatedSpace<S>&, const SimpleFunction<S>&, const SimpleFunction<S>&, \
                                          const S&, int, std::int64_t);

ODOLAB_INSTANTIATE(Rational)
ODOLAB_INSTANTIATE(double)

}  // namespace odolab
