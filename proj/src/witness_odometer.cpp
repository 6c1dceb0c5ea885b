#include "odolab/function_space.hpp"
#include "odolab/witness.hpp"
#include "witness_common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace odolab {

using namespace detail;

std::string to_string(CheckMethod m) {
    switch (m) {
        case CheckMethod::exact: return "exact";
        case CheckMethod::independence_product: return "independence-product";
        case CheckMethod::proof_bound: return "proof-bound";
        case CheckMethod::sampled: return "sampled";
    }
    return "?";
}

json Check::to_json() const {
    json j{{"inequality", inequality}, {"bound", bound}, {"value", value}, {"method", odolab::to_string(method)}, {"pass", pass}};
    if (method == CheckMethod::sampled) {
        j["seed"] = seed;
        j["trials"] = trials;
        j["violations"] = violations;
        j["violating_point"] = violating_point;
    }
    return j;
}

void WitnessReport::finalize() {
    pass = !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* WitnessReport::find(const std::string& prefix) const {
    for (const auto& c : checks)
        if (c.inequality.compare(0, prefix.size(), prefix) == 0) return &c;
    return nullptr;
}

json WitnessReport::to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back(c.to_json());
    return json{{"construction", construction}, {"parameters", parameters}, {"checks", cs}, {"flags", flags}, {"pass", pass}};
}

namespace {

template <class S>
void require_odometer(const SystemSpec<S>& spec, const char* what) {
    if (spec.kind() != MapKind::odometer) throw KindMismatch(std::string(what) + " needs an odometer spec");
}

std::vector<std::vector<std::uint8_t>> full_factors(const Digits& radices) {
    std::vector<std::vector<std::uint8_t>> f;
    for (auto m : radices) f.emplace_back(static_cast<std::size_t>(m), 1);
    return f;
}

std::uint64_t floor_times(const Rational& q, std::uint64_t d) {
    Rational v = q * Rational(mpz_class(static_cast<unsigned long>(d)));
    mpz_class f = v.get_num() / v.get_den();
    return f.get_ui();
}

/// 0, K and `samples` seeded values in [0, K]; every value when K + 1 <= limit
std::vector<std::uint64_t> shift_sample(std::uint64_t K, std::uint64_t limit, std::uint64_t samples, std::uint64_t seed, bool& all) {
    std::vector<std::uint64_t> ks;
    all = K < limit;
    if (all) {
        for (std::uint64_t k = 0; k <= K; ++k) ks.push_back(k);
        return ks;
    }
    std::set<std::uint64_t> s{0, K};
    auto rng = shard_rng(seed, 0);
    std::uniform_int_distribution<std::uint64_t> U(0, K);
    while (s.size() < samples + 2) s.insert(U(rng));
    return {s.begin(), s.end()};
}

// ---- Hoeffding construction ----

struct Coordinate {
    std::int64_t i = 0;
    std::int64_t k = 0;
    std::vector<std::uint8_t> D, Dk;
};

}  // namespace

template <class S>
WitnessReport transitivity_witness(const SystemSpec<S>& spec, const Rational& epsilon, const IndexStrategy& st, const WitnessOptions& opt) {
    require_odometer(spec, "transitivity_witness");
    using O = ScalarOps<S>;
    const double eps = epsilon.get_d();
    const std::int64_t H = opt.horizon;

    std::vector<double> theta(H + 1, -1.0), last(H + 1, -1.0);
    auto load = [&](std::int64_t i) {
        if (theta[i] < 0) {
            auto w = spec.mu(i);
            theta[i] = to_double(theta_max(*w).value);
            last[i] = to_double(w->back());
        }
    };
    auto gap = [&](std::int64_t a, std::int64_t b) {
        double p = 1;
        for (std::int64_t t = a + 1; t < b; ++t) {
            load(t);
            p *= last[t];
        }
        return p;
    };

    // strategy search: least final index meeting both smallness conditions
    std::vector<std::int64_t> best;
    auto conditions = [&](const std::vector<std::int64_t>& idx, double& gsum, double& hoeff) {
        double sum = 0;
        gsum = 0;
        for (std::size_t s = 0; s < idx.size(); ++s) {
            load(idx[s]);
            sum += theta[idx[s]];
            if (s > 0) gsum += gap(idx[s - 1], idx[s]);
        }
        double n = double(idx.size());
        hoeff = std::exp(-2.0 / (9.0 * n) * sum * sum);
        return gsum < eps && hoeff < eps;
    };
    if (!st.explicit_indices.empty()) {
        for (auto i : st.explicit_indices)
            if (i < 1 || i > H) throw SpecError("strategy index outside [1, horizon]");
        double g, h;
        if (conditions(st.explicit_indices, g, h)) best = st.explicit_indices;
    } else {
        for (std::int64_t s0 = 1; s0 <= st.s0_max; ++s0) {
            std::vector<std::int64_t> idx;
            double sum = 0, gsum = 0;
            for (std::int64_t s = s0; std::int64_t(idx.size()) < st.n_max; ++s) {
                auto i = static_cast<std::int64_t>(std::floor(std::pow(double(s), st.beta) + 1e-9));
                if (i > H) break;
                if (!idx.empty() && i <= idx.back()) continue;
                if (!best.empty() && i >= best.back()) break;
                if (!idx.empty()) gsum += gap(idx.back(), i);
                if (gsum >= eps) break;
                load(i);
                idx.push_back(i);
                sum += theta[i];
                if (std::exp(-2.0 / (9.0 * double(idx.size())) * sum * sum) < eps) {
                    best = idx;
                    break;
                }
            }
        }
    }
    if (best.empty()) throw StrategyInfeasible("no index sequence within the horizon meets both smallness conditions");

    WitnessReport rep;
    rep.construction = "transitivity (Hoeffding)";
    const std::size_t n = best.size();
    std::vector<Coordinate> co(n);
    std::vector<S> thetas(n), muD(n), muDk(n);
    std::vector<std::array<S, 4>> law(n);  // P(X,Y) = (0,0),(0,1),(1,0),(1,1)
    for (std::size_t s = 0; s < n; ++s) {
        auto w = spec.mu(best[s]);
        auto t = theta_max(*w);
        co[s].i = best[s];
        co[s].k = t.shift;
        co[s].D = t.set;
        co[s].Dk = mask_shift(t.set, t.shift);
        thetas[s] = t.value;
        muD[s] = subset_measure(*w, co[s].D);
        muDk[s] = subset_measure(*w, co[s].Dk);
        std::array<S, 4> L{O::zero(), O::zero(), O::zero(), O::zero()};
        for (std::size_t x = 0; x < w->size(); ++x) L[(co[s].D[x] ? 2 : 0) + (co[s].Dk[x] ? 1 : 0)] += (*w)[x];
        law[s] = L;
    }
    S tX = O::zero(), tY = O::zero(), sumTheta = O::zero();
    for (std::size_t s = 0; s < n; ++s) {
        tX += muD[s] - thetas[s] / S(3);
        tY += muDk[s] + thetas[s] / S(3);
        sumTheta += thetas[s];
    }

    auto sl = sum_law(law, tX, tY);
    const std::size_t aMin = sl.aMin;
    const std::int64_t bMax = sl.bMax;
    const S muX = sl.muX, muY = sl.muY, muXY = sl.muXY;

    // gap bands
    std::vector<S> muE;
    S keep = O::one();
    for (std::size_t s = 0; s + 1 < n; ++s) {
        S e = O::one();
        for (std::int64_t t = best[s] + 1; t < best[s + 1]; ++t) e *= spec.mu(t)->back();
        muE.push_back(e);
        keep *= O::one() - e;
    }
    S muB = muXY * keep;

    double gsum = 0, hoeff = 0;
    conditions(best, gsum, hoeff);
    rep.checks.push_back(make_check("sum of gap products < eps", rational_string(epsilon), gsum, gsum < eps, CheckMethod::proof_bound));
    rep.checks.push_back(
        make_check("exp(-2/(9n) (sum theta)^2) < eps", rational_string(epsilon), hoeff, hoeff < eps, CheckMethod::proof_bound));
    const S one = O::one();
    S eps_s = from_q<S>(epsilon);
    rep.checks.push_back(make_check("mu(B_X) >= 1 - exp(-2/(9n) (sum theta)^2)", decimal_string(1 - hoeff), muX,
                                    to_double(muX) >= 1 - hoeff - 1e-12, CheckMethod::independence_product));
    rep.checks.push_back(make_check("mu(B_Y) >= 1 - exp(-2/(9n) (sum theta)^2)", decimal_string(1 - hoeff), muY,
                                    to_double(muY) >= 1 - hoeff - 1e-12, CheckMethod::independence_product));
    rep.checks.push_back(make_check("mu(B) > 1 - 3 eps", scalar_string<S>(one - S(3) * eps_s), muB, lt(one - S(3) * eps_s, muB),
                                    CheckMethod::independence_product));

    // disjointness of B and o^k(B) on the truncation at depth i_n
    const int N = static_cast<int>(best.back());
    Digits rad = spec.radices(N);
    Digits kd(static_cast<std::size_t>(N), 0);
    for (const auto& c : co) kd[static_cast<std::size_t>(c.i - 1)] = c.k;
    auto in_B = [&](const Digits& x) {
        std::size_t X = 0, Y = 0;
        for (const auto& c : co) {
            auto v = x[static_cast<std::size_t>(c.i - 1)];
            X += c.D[v];
            Y += c.Dk[v];
        }
        if (X < aMin || std::int64_t(Y) > bMax) return false;
        for (std::size_t s = 0; s + 1 < n; ++s) {
            bool band = true;
            for (std::int64_t t = best[s] + 1; t < best[s + 1] && band; ++t) band = x[t - 1] == rad[t - 1] - 1;
            if (band) return false;
        }
        return true;
    };
    std::uint64_t cells = 0;
    bool exhaustive = true;
    try {
        cells = checked_product(rad, opt.exhaustive_cap);
    } catch (const CapExceeded&) {
        exhaustive = false;
    }
    Check dis;
    dis.inequality = "B cap o^k(B) empty";
    dis.bound = "0 violations";
    dis.violating_point = nullptr;
    std::uint64_t tested = 0, violations = 0;
    if (exhaustive) {
        Digits x(static_cast<std::size_t>(N), 0);
        for (std::uint64_t c = 0; c < cells; ++c) {
            if (in_B(x)) {
                ++tested;
                auto y = odometer_add(rad, x, kd).digits;
                if (in_B(y)) {
                    if (violations++ == 0) dis.violating_point = digits_json(x);
                }
            }
            x = odometer_step(rad, x).digits;
        }
        dis.method = CheckMethod::exact;
    } else {
        std::vector<std::discrete_distribution<std::int64_t>> dist;
        for (int i = 1; i <= N; ++i) {
            std::vector<double> w;
            for (const auto& v : *spec.mu(i)) w.push_back(to_double(v));
            dist.emplace_back(w.begin(), w.end());
        }
        Digits x(static_cast<std::size_t>(N));
        std::uint64_t attempts = 0, shard = 0;
        const std::uint64_t max_attempts = opt.trials * 20;
        while (tested < opt.trials && attempts < max_attempts) {
            auto rng = shard_rng(opt.seed, shard++);
            for (std::uint64_t r = 0; r < kShardSize && tested < opt.trials && attempts < max_attempts; ++r, ++attempts) {
                for (int i = 0; i < N; ++i) x[i] = dist[i](rng);
                if (!in_B(x)) continue;
                ++tested;
                auto y = odometer_add(rad, x, kd).digits;
                if (in_B(y) && violations++ == 0) dis.violating_point = digits_json(x);
            }
        }
        dis.method = CheckMethod::sampled;
        dis.seed = opt.seed;
    }
    dis.trials = tested;
    dis.violations = violations;
    dis.value = std::to_string(violations) + " of " + std::to_string(tested);
    dis.numeric = double(violations);
    dis.pass = violations == 0 && tested > 0;
    rep.checks.push_back(dis);

    json idx = json::array(), ks = json::array();
    for (const auto& c : co) {
        idx.push_back(c.i);
        ks.push_back(c.k);
    }
    rep.parameters = {{"epsilon", rational_string(epsilon)},
                      {"indices", idx},
                      {"n", n},
                      {"k_digits", ks},
                      {"depth", N},
                      {"threshold_X", scalar_string<S>(tX)},
                      {"threshold_Y", scalar_string<S>(tY)},
                      {"sum_theta", scalar_string<S>(sumTheta)},
                      {"mu_BX_cap_BY", scalar_string<S>(muXY)},
                      {"truncation_cells", exhaustive ? json(cells) : json("above exhaustive cap")}};
    try {
        std::uint64_t k = 0;
        for (const auto& c : co) k += static_cast<std::uint64_t>(c.k) * spec.M(c.i);
        rep.parameters["k"] = k;
    } catch (const CapExceeded&) {
        rep.parameters["k"] = "exceeds 64 bits (see k_digits)";
    }
    if (n <= 64) {
        json Ds = json::array();
        for (const auto& c : co) Ds.push_back(mask_json(c.D));
        rep.parameters["D"] = Ds;
    }
    rep.finalize();
    return rep;
}

template <class S>
WitnessReport mixing_witness(const SystemSpec<S>& spec, const Rational& epsilon, std::uint64_t k, const WitnessOptions& opt) {
    require_odometer(spec, "mixing_witness");
    using O = ScalarOps<S>;
    const S eps = from_q<S>(epsilon);
    const S need = O::one() - eps / S(3);
    const std::int64_t H = opt.horizon;

    // i_0: least index with kappa_i >= 1 - eps/3 on all of [i_0, H]
    std::int64_t i0 = H + 1;
    for (std::int64_t i = H; i >= 1; --i) {
        if (!le(need, kappa_of(*spec.mu(i)).value)) break;
        i0 = i;
    }
    if (i0 > H) throw HypothesisUnavailable("kappa_i < 1 - eps/3 at the horizon");

    // k_0 = M_1 + ... + M_{i_0}
    std::uint64_t k0 = 0;
    bool k0_overflow = false;
    for (std::int64_t i = 1; i <= i0 && !k0_overflow; ++i) {
        try {
            std::uint64_t Mi = spec.M(i);
            if (k0 > std::numeric_limits<std::uint64_t>::max() - Mi) k0_overflow = true;
            else k0 += Mi;
        } catch (const CapExceeded&) {
            k0_overflow = true;
        }
    }
    if (k0_overflow || k < k0)
        throw HypothesisUnavailable("k = " + std::to_string(k) + " is below k_0 = " + (k0_overflow ? std::string("(> 2^64)") : std::to_string(k0)) +
                                    " (i_0 = " + std::to_string(i0) + ")");

    // mixed radix digits of k; l = top nonzero digit
    Digits kd;
    std::uint64_t rest = k;
    for (std::int64_t i = 1; rest > 0; ++i) {
        auto m = static_cast<std::uint64_t>(spec.m(i));
        kd.push_back(static_cast<std::int64_t>(rest % m));
        rest /= m;
    }
    const int l = static_cast<int>(kd.size());
    if (l + 1 > H) throw HypothesisUnavailable("top digit of k lies beyond the horizon");
    kd.push_back(0);
    Digits rad = spec.radices(l + 1);

    auto wl = spec.mu(l), wl1 = spec.mu(l + 1);
    const std::int64_t kl = kd[static_cast<std::size_t>(l - 1)], ml = rad[static_cast<std::size_t>(l - 1)];
    auto Dp = path_mwis(*wl, kl);
    std::vector<std::uint8_t> Dpp(static_cast<std::size_t>(ml), 1);
    S muDpp = O::one();
    if (kl != ml - 1) {
        auto t = path_mwis(*wl, kl + 1);
        Dpp = t.set;
        muDpp = t.value;
    }
    std::vector<std::uint8_t> Dl(static_cast<std::size_t>(ml));
    for (std::int64_t x = 0; x < ml; ++x) Dl[x] = Dp.set[x] && Dpp[x];
    auto Dl1 = path_mwis(*wl1, 1);

    auto factors = full_factors(rad);
    factors[static_cast<std::size_t>(l - 1)] = Dl;
    factors[static_cast<std::size_t>(l)] = Dl1.set;
    DepthSet B = DepthSet::product(rad, factors);

    WitnessReport rep;
    rep.construction = "mixing";
    rep.checks.push_back(make_check("mu_l(D'_l) >= 1 - eps/3", scalar_string<S>(need), Dp.value, le(need, Dp.value), CheckMethod::exact));
    rep.checks.push_back(make_check("mu_l(D''_l) >= 1 - eps/3", scalar_string<S>(need), muDpp, le(need, muDpp), CheckMethod::exact));
    rep.checks.push_back(make_check("mu_{l+1}(D_{l+1}) >= 1 - eps/3", scalar_string<S>(need), Dl1.value, le(need, Dl1.value), CheckMethod::exact));
    S muB = set_measure(spec, B, opt.cap);
    rep.checks.push_back(make_check("mu(B) >= 1 - eps", scalar_string<S>(O::one() - eps), muB, le(O::one() - eps, muB), CheckMethod::exact));
    Digits zero(rad.size(), 0);
    S inter = joint_preimage_measure(spec, std::vector<ShiftedSet>{{&B, zero}, {&B, kd}});
    rep.checks.push_back(make_check("mu(B cap o^{-k}(B)) = 0", "0", inter, inter == O::zero(), CheckMethod::exact));

    // exhaustive recount when the truncation is small
    try {
        std::uint64_t cells = checked_product(rad, opt.exhaustive_cap);
        std::uint64_t violations = 0;
        Digits x(rad.size(), 0);
        for (std::uint64_t c = 0; c < cells; ++c) {
            if (B.contains(x) && B.contains(odometer_add(rad, x, kd).digits)) ++violations;
            x = odometer_step(rad, x).digits;
        }
        Check ch = bool_check("B cap o^k(B) empty (exhaustive)", violations == 0, CheckMethod::exact, std::to_string(violations) + " violations");
        ch.trials = cells;
        ch.violations = violations;
        rep.checks.push_back(ch);
    } catch (const CapExceeded&) {
        rep.flags.push_back("truncation above the exhaustive cap; disjointness from the joint carry DP only");
    }

    rep.parameters = {{"epsilon", rational_string(epsilon)}, {"k", k},          {"k0", k0},
                      {"i0", i0},                             {"l", l},          {"k_digits", digits_json(kd)},
                      {"D_l", mask_json(Dl)},                 {"D_l+1", mask_json(Dl1.set)}};
    rep.finalize();
    return rep;
}

template <class S>
WitnessReport fhc_witness(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& kappa, const WitnessOptions& opt,
                          const Digits& f_cylinder) {
    require_odometer(spec, "fhc_witness");
    using O = ScalarOps<S>;
    const S eps = from_q<S>(epsilon), delta = eps / S(2);

    int N = 0;
    S om = O::zero();
    SubsetOpt<S> g;
    for (int i = 2; i <= opt.horizon; ++i) {
        S o = omega(*spec.mu(i - 1), spec.m(i), kappa);
        if (!lt(o, delta)) continue;
        auto gi = gamma_odometer(*spec.mu(i));
        if (!lt(O::one() - gi.value, delta)) continue;
        try {
            spec.M(i + 1);
        } catch (const CapExceeded&) {
            throw HypothesisUnavailable("first admissible N = " + std::to_string(i) + " has M_{N+1} beyond 64 bits");
        }
        N = i;
        om = o;
        g = gi;
        break;
    }
    if (N == 0) throw HypothesisUnavailable("no N <= " + std::to_string(opt.horizon) + " with max(omega_{N-1}, 1 - gamma_N) < eps/2");
    if (int(f_cylinder.size()) > N) throw SpecError("cylinder f deeper than N");

    Digits rad = spec.radices(N);
    const std::int64_t j = g.shift;
    auto wN = spec.mu(N);
    auto Dj = mask_shift(g.set, j);
    auto fB = full_factors(rad), fBp = full_factors(rad);
    fB[N - 1] = Dj;
    fBp[N - 1] = g.set;
    DepthSet B = DepthSet::product(rad, fB), Bp = DepthSet::product(rad, fBp);
    const std::uint64_t MN = spec.M(N), d = spec.M(N + 1);
    const std::uint64_t n = static_cast<std::uint64_t>(j) * MN;
    const std::uint64_t K = floor_times(kappa, d);
    auto dig = [&](std::uint64_t v) { return to_mixed_radix(rad, v % d).digits; };

    WitnessReport rep;
    rep.construction = "frequent hypercyclicity";
    S muDj = subset_measure(*wN, Dj), muD = subset_measure(*wN, g.set);
    S up = muDj + om, lo = muD - om;
    rep.checks.push_back(make_check("mu_N(D_N + j_N) + omega_{N-1} <= eps", scalar_string<S>(eps), up, le(up, eps), CheckMethod::proof_bound));
    rep.checks.push_back(
        make_check("mu_N(D_N) - omega_{N-1} >= 1 - eps", scalar_string<S>(O::one() - eps), lo, le(O::one() - eps, lo), CheckMethod::proof_bound));

    // o^{-n}(B) = B' and o^{-d}(B) = B
    auto symdiff = [&](const DepthSet& X, std::uint64_t sx, const DepthSet& Y, std::uint64_t sy) -> S {
        S a = preimage_measure_digits(spec, X, dig(sx)), b = preimage_measure_digits(spec, Y, dig(sy));
        S c = joint_preimage_measure(spec, std::vector<ShiftedSet>{{&X, dig(sx)}, {&Y, dig(sy)}});
        return a + b - S(2) * c;
    };
    S sd = symdiff(B, n, Bp, 0);
    rep.checks.push_back(make_check("mu(o^{-n}(B) symdiff B') = 0", "0", sd, O::is_zero(sd), CheckMethod::exact));
    S sdd = symdiff(B, d % d, B, 0);
    rep.checks.push_back(make_check("mu(o^{-d}(B) symdiff B) = 0", "0", sdd, O::is_zero(sdd), CheckMethod::exact));

    // exact transport on all k or on a seeded sample
    bool all = false;
    auto ks = shift_sample(K, opt.exhaustive_cap, opt.transport_samples, opt.seed, all);
    S worst_a = O::zero(), worst_b = O::one();
    std::uint64_t va = 0, vb = 0, disagree = 0;
    json pa = nullptr, pb = nullptr;
    for (auto k : ks) {
        S a = preimage_measure_digits(spec, B, dig(k));
        S b = preimage_measure_digits(spec, B, dig((n % d) + k));
        if (lt(worst_a, a)) worst_a = a;
        if (lt(b, worst_b)) worst_b = b;
        if (!le(a, eps) && va++ == 0) pa = k;
        if (!le(O::one() - eps, b) && vb++ == 0) pb = k;
        if (!le(a, up) || !le(lo, b)) ++disagree;
    }
    auto transport_check = [&](std::string ineq, std::string bound, const S& v, std::uint64_t viol, json point) {
        Check c = make_check(std::move(ineq), std::move(bound), v, viol == 0, all ? CheckMethod::exact : CheckMethod::sampled);
        c.trials = ks.size();
        c.violations = viol;
        c.seed = all ? 0 : opt.seed;
        c.violating_point = std::move(point);
        return c;
    };
    rep.checks.push_back(transport_check("max_k mu(o^{-k}(B)) <= eps", scalar_string<S>(eps), worst_a, va, pa));
    rep.checks.push_back(transport_check("min_k mu(o^{-(n+k)}(B)) >= 1 - eps", scalar_string<S>(O::one() - eps), worst_b, vb, pb));
    rep.checks.push_back(transport_check("exact transport within the proof bounds", "0 disagreements", S(static_cast<long>(disagree)), disagree,
                                         nullptr));

    // function level, p = 1: g = 1_B f with f the indicator of a cylinder
    Digits rad_f(rad.begin(), rad.begin() + static_cast<std::ptrdiff_t>(f_cylinder.size()));
    auto f_ind = SimpleFunction<S>::indicator(DepthSet::cylinder(rad_f, f_cylinder), opt.cap);
    const std::uint64_t per = period_of(MapKind::odometer, f_ind, opt.cap);
    const Rational kappa2 = kappa / 2;
    const std::uint64_t n2 = ((n + per - 1) / per) * per;
    const std::uint64_t K2 = floor_times(kappa2, d);
    auto fC = full_factors(rad);
    for (std::size_t t = 0; t < f_cylinder.size(); ++t) {
        std::fill(fC[t].begin(), fC[t].end(), 0);
        fC[t][static_cast<std::size_t>(f_cylinder[t])] = 1;
    }
    auto fBC = fC;
    for (std::size_t t = 0; t < fBC.size(); ++t)
        for (std::size_t x = 0; x < fBC[t].size(); ++x) fBC[t][x] = fBC[t][x] && fB[t][x];
    DepthSet C = DepthSet::product(rad, fC), BC = DepthSet::product(rad, fBC);
    auto ks2 = shift_sample(K2, opt.exhaustive_cap, opt.transport_samples, opt.seed + 1, all);
    S worst_g = O::zero(), worst_h = O::zero();
    std::uint64_t vg = 0, vh = 0;
    json pg = nullptr, ph = nullptr;
    for (auto k : ks2) {
        S gk = preimage_measure_digits(spec, BC, dig(k));
        std::uint64_t s2 = (n2 % d) + k;
        S h = preimage_measure_digits(spec, C, dig(k)) + preimage_measure_digits(spec, BC, dig(s2)) -
              S(2) * joint_preimage_measure(spec, std::vector<ShiftedSet>{{&C, dig(k)}, {&BC, dig(s2)}});
        if (lt(worst_g, gk)) worst_g = gk;
        if (lt(worst_h, h)) worst_h = h;
        if (!le(gk, eps) && vg++ == 0) pg = k;
        if (!le(h, eps) && vh++ == 0) ph = k;
    }
    ks = ks2;
    rep.checks.push_back(transport_check("max_k ||C^k g||_1 <= eps", scalar_string<S>(eps), worst_g, vg, pg));
    rep.checks.push_back(transport_check("max_k ||C^{n'+k} g - C^k f||_1 <= eps", scalar_string<S>(eps), worst_h, vh, ph));
    // the same two inequalities for every k <= kappa' d from the set-level bounds
    rep.checks.push_back(make_check("||C^k g||_1 <= mu(o^{-k}(B)) <= eps for all k", scalar_string<S>(eps), up, le(up, eps), CheckMethod::proof_bound));
    S comp = O::one() - lo;
    rep.checks.push_back(
        make_check("||C^{n'+k} g - C^k f||_1 <= 1 - mu(o^{-(n'+k)}(B)) <= eps for all k", scalar_string<S>(eps), comp, le(comp, eps), CheckMethod::proof_bound));

    rep.parameters = {{"epsilon", rational_string(epsilon)},
                      {"kappa", rational_string(kappa)},
                      {"N", N},
                      {"j_N", j},
                      {"D_N", mask_json(g.set)},
                      {"n", n},
                      {"d", d},
                      {"kappa_d", K},
                      {"omega_N-1", scalar_string<S>(om)},
                      {"gamma_N", scalar_string<S>(g.value)},
                      {"f_cylinder", digits_json(f_cylinder)},
                      {"period_f", per},
                      {"kappa_prime", rational_string(kappa2)},
                      {"n_prime", n2},
                      {"kappa_prime_d", K2},
                      {"p", 1}};
    rep.finalize();
    return rep;
}

template <class S>
WitnessReport ufhc_count_set(const SystemSpec<S>& spec, const DepthSet& B, const Rational& epsilon, std::uint64_t m,
                             const Rational& predicted_alpha, const WitnessOptions& opt) {
    using O = ScalarOps<S>;
    if (m == 0) throw SpecError("ufhc_count needs m >= 1");
    if (m > opt.cap) throw CapExceeded("ufhc count range " + std::to_string(m) + " above the cap");
    const S target = O::one() - from_q<S>(epsilon);
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k <= m; ++k)
        if (le(target, preimage_measure(spec, B, static_cast<std::int64_t>(k), opt.cap))) ++count;
    Rational alpha(mpz_class(static_cast<unsigned long>(count)), mpz_class(static_cast<unsigned long>(m)));
    alpha.canonicalize();
    Rational slack(1, static_cast<long>(std::min<std::uint64_t>(m, std::uint64_t(1) << 62)));
    WitnessReport rep;
    rep.construction = "ufhc count";
    rep.checks.push_back(make_check("achieved alpha <= 1", "1", alpha, alpha <= 1, CheckMethod::exact));
    rep.checks.push_back(make_check("achieved alpha >= predicted alpha - 1/m", rational_string(predicted_alpha - slack), alpha,
                                    alpha >= predicted_alpha - slack, CheckMethod::exact));
    rep.parameters = {{"epsilon", rational_string(epsilon)},
                      {"m", m},
                      {"count", count},
                      {"alpha", rational_string(alpha)},
                      {"predicted_alpha", rational_string(predicted_alpha)}};
    rep.finalize();
    return rep;
}

template <class S>
WitnessReport ufhc_count(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& kappa, const WitnessOptions& opt) {
    require_odometer(spec, "ufhc_count");
    using O = ScalarOps<S>;
    const S delta = from_q<S>(epsilon) / S(2);
    for (int N = 2; N <= opt.horizon; ++N) {
        auto g = gamma_odometer(*spec.mu(N));
        if (!lt(O::one() - g.value, delta)) continue;
        auto prev = spec.mu(N - 1);
        std::int64_t mp = std::int64_t(prev->size());
        S tail = interval_tail(*prev, Rational(mp - 1) - kappa * g.shift * mp);
        if (!lt(tail, delta)) continue;
        Digits rad = spec.radices(N);
        auto f = full_factors(rad);
        f[N - 1] = mask_shift(g.set, g.shift);
        DepthSet B = DepthSet::product(rad, f);
        std::uint64_t n = static_cast<std::uint64_t>(g.shift) * spec.M(N);
        std::uint64_t m = n + floor_times(kappa, n);
        auto rep = ufhc_count_set(spec, B, epsilon, m, kappa / (1 + kappa), opt);
        rep.construction = "ufhc count (interval form)";
        rep.parameters["N"] = N;
        rep.parameters["j_N"] = g.shift;
        rep.parameters["n"] = n;
        rep.parameters["kappa"] = rational_string(kappa);
        rep.parameters["tail"] = scalar_string<S>(tail);
        return rep;
    }
    throw HypothesisUnavailable("no N within the horizon meets the ufhc inequalities");
}

template <class S>
S src_evaluate(const SystemSpec<S>& spec, const DepthSet& B, std::int64_t n, std::uint64_t cap) {
    return forward_image_measure(spec, B, n, cap) * preimage_measure(spec, B, n, cap);
}

namespace {

template <class S>
std::vector<std::vector<std::uint8_t>> candidate_factors(const std::vector<S>& w, const S& floor_measure) {
    std::int64_t m = std::int64_t(w.size());
    std::vector<std::vector<std::uint8_t>> out;
    auto push = [&](std::vector<std::uint8_t> f) {
        if (!le(floor_measure, subset_measure(w, f))) return;
        for (const auto& g : out)
            if (g == f) return;
        out.push_back(std::move(f));
    };
    for (std::int64_t a = 1; a <= m; ++a) {
        std::vector<std::uint8_t> f(static_cast<std::size_t>(m), 0);
        std::fill(f.begin(), f.begin() + a, 1);
        push(f);
    }
    for (std::int64_t a = 1; a < m; ++a) {
        std::vector<std::uint8_t> f(static_cast<std::size_t>(m), 0);
        std::fill(f.begin() + a, f.end(), 1);
        push(f);
    }
    for (std::int64_t k = 1; k < m; ++k) push(theta_fixed(w, k).set);
    return out;
}

/// mu(B cap phi^{-n}(B)) for a product set
template <class S>
S self_overlap(const SystemSpec<S>& spec, const DepthSet& B, std::int64_t n, std::uint64_t cap) {
    if (spec.kind() == MapKind::odometer) {
        Digits zero(B.radices.size(), 0);
        return joint_preimage_measure(spec, std::vector<ShiftedSet>{{&B, zero}, {&B, shift_digits(B.radices, n)}});
    }
    DepthSet P = preimage_set(spec.kind(), B, n, cap);
    auto f = *B.factors;
    for (std::size_t t = 0; t < f.size(); ++t)
        for (std::size_t x = 0; x < f[t].size(); ++x) f[t][x] = f[t][x] && (*P.factors)[t][x];
    return set_measure(spec, DepthSet::product(B.radices, f), cap);
}

}  // namespace

template <class S>
WitnessReport src_search(const SystemSpec<S>& spec, const Rational& epsilon, int depth_max, std::int64_t n_max, const WitnessOptions& opt) {
    using O = ScalarOps<S>;
    if (spec.kind() == MapKind::weighted_shift) throw KindMismatch("src_search needs an invertible product spec");
    const S eps = from_q<S>(epsilon), floor_measure = O::one() - eps;
    for (int N = 1; N <= depth_max; ++N) {
        Digits rad = spec.radices(N);
        std::vector<std::vector<std::vector<std::uint8_t>>> layouts;
        auto last = candidate_factors(*spec.mu(N), floor_measure);
        for (const auto& f : last) {
            auto fs = full_factors(rad);
            fs[N - 1] = f;
            layouts.push_back(fs);
        }
        if (N >= 2) {
            auto prev = candidate_factors(*spec.mu(N - 1), floor_measure);
            for (const auto& a : prev)
                for (const auto& b : last) {
                    auto fs = full_factors(rad);
                    fs[N - 2] = a;
                    fs[N - 1] = b;
                    layouts.push_back(fs);
                }
        }
        for (auto& fs : layouts) {
            DepthSet B = DepthSet::product(rad, fs);
            S muB = set_measure(spec, B, opt.cap);
            S comp = O::one() - muB;
            if (!lt(comp, eps)) continue;
            for (std::int64_t n = 1; n <= n_max; ++n) {
                S prod = src_evaluate(spec, B, n, opt.cap);
                if (!lt(prod, eps)) continue;
                S overlap = self_overlap(spec, B, n, opt.cap);
                if (!(overlap == O::zero())) continue;
                WitnessReport rep;
                rep.construction = "SRC search";
                rep.checks.push_back(make_check("mu(Omega \\ B) < eps", scalar_string<S>(eps), comp, true, CheckMethod::exact));
                rep.checks.push_back(make_check("mu(phi^n(B)) mu(phi^{-n}(B)) < eps", scalar_string<S>(eps), prod, true, CheckMethod::exact));
                rep.checks.push_back(make_check("mu(B cap phi^{-n}(B)) = 0", "0", overlap, true, CheckMethod::exact));
                json fj = json::array();
                for (const auto& f : fs) fj.push_back(mask_json(f));
                rep.parameters = {{"epsilon", rational_string(epsilon)}, {"depth", N}, {"n", n}, {"B", fj}};
                rep.finalize();
                return rep;
            }
        }
    }
    throw NotFoundWithinHorizon("no product cylinder of depth <= " + std::to_string(depth_max) + " and n <= " + std::to_string(n_max) +
                                " meets both runaway forms");
}

#define ODOLAB_INSTANTIATE(S)                                                                                                        \
    template WitnessReport transitivity_witness<S>(const SystemSpec<S>&, const Rational&, const IndexStrategy&, const WitnessOptions&); \
    template WitnessReport mixing_witness<S>(const SystemSpec<S>&, const Rational&, std::uint64_t, const WitnessOptions&);              \
    template WitnessReport fhc_witness<S>(const SystemSpec<S>&, const Rational&, const Rational&, const WitnessOptions&, const Digits&); \
    template WitnessReport ufhc_count_set<S>(const SystemSpec<S>&, const DepthSet&, const Rational&, std::uint64_t, const Rational&,    \
                                             const WitnessOptions&);                                                                   \
    template WitnessReport ufhc_count<S>(const SystemSpec<S>&, const Rational&, const Rational&, const WitnessOptions&);                \
    template S src_evaluate<S>(const SystemSpec<S>&, const DepthSet&, std::int64_t, std::uint64_t);                                    \
    template WitnessReport src_search<S>(const SystemSpec<S>&, const Rational&, int, std::int64_t, const WitnessOptions&);

ODOLAB_INSTANTIATE(Rational)
ODOLAB_INSTANTIATE(double)

}  // namespace odolab
