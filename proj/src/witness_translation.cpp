#include "odolab/witness.hpp"
#include "witness_common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace odolab {

using namespace detail;

namespace {

template <class S>
void require_translation(const SystemSpec<S>& spec, const char* what) {
    if (spec.kind() != MapKind::translation) throw KindMismatch(std::string(what) + " needs a translation spec");
}

// nullptr once the backend cannot represent mu_i
template <class S>
WeightsPtr<S> try_mu(const SystemSpec<S>& spec, std::int64_t i) {
    try {
        return spec.mu(i);
    } catch (const BackendUnsupported&) {
        return nullptr;
    }
}

/// bounded alphabets give a translation of finite order: no witness can exist
template <class S>
bool degenerate(const SystemSpec<S>& spec, WitnessReport& rep) {
    auto b = spec.alphabet().bound();
    if (!b) return false;
    unsigned __int128 L = 1;
    bool overflow = false;
    for (std::int64_t i = 1; i <= 256 && !overflow; ++i) {
        auto m = static_cast<unsigned __int128>(spec.m(i));
        unsigned __int128 g = std::gcd(static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(m));
        L = L / g * m;
        overflow = L > std::numeric_limits<std::uint64_t>::max();
    }
    std::string Ls = overflow ? "exceeds 2^64" : std::to_string(static_cast<std::uint64_t>(L));
    rep.parameters["bound"] = *b;
    rep.parameters["order"] = Ls;
    rep.flags.push_back("degenerate: t^L = Id with L = " + Ls);
    rep.checks.push_back(bool_check("t has infinite order", false, CheckMethod::exact, "t^L = Id, L = " + Ls));
    rep.finalize();
    return true;
}

template <class S>
std::vector<std::vector<std::uint8_t>> full_factors(const Digits& radices) {
    std::vector<std::vector<std::uint8_t>> f;
    for (auto m : radices) f.emplace_back(static_cast<std::size_t>(m), 1);
    return f;
}

/// cyclic prefix sums: sum of w over [a, a + len) mod m
template <class S>
struct CyclicSums {
    std::vector<S> pre;
    explicit CyclicSums(const std::vector<S>& w) : pre(w.size() + 1, ScalarOps<S>::zero()) {
        for (std::size_t x = 0; x < w.size(); ++x) pre[x + 1] = pre[x] + w[x];
    }
    S interval(std::int64_t a, std::int64_t len) const {
        const std::int64_t m = static_cast<std::int64_t>(pre.size()) - 1;
        if (len <= 0) return ScalarOps<S>::zero();
        if (len >= m) return pre[m];
        a = ((a % m) + m) % m;
        if (a + len <= m) return S(pre[a + len] - pre[a]);
        return S(pre[m] - pre[a] + pre[a + len - m]);
    }
};

std::vector<std::uint8_t> top_mask(std::int64_t m, std::int64_t len) {
    std::vector<std::uint8_t> D(static_cast<std::size_t>(m), 0);
    for (std::int64_t x = m - len; x < m; ++x) D[x] = 1;
    return D;
}

}  // namespace

// ---- hcsum ---------------------------------------------------------------

template <class S>
WitnessReport hcsum_witness(const SystemSpec<S>& spec, const Rational& epsilon, const WitnessOptions& opt) {
    using O = ScalarOps<S>;
    require_translation(spec, "hcsum");
    WitnessReport rep;
    rep.construction = "hcsum";
    rep.parameters["epsilon"] = rational_string(epsilon);
    if (degenerate(spec, rep)) return rep;
    const S e = from_q<S>(epsilon);
    for (std::int64_t i = 1; i <= opt.horizon; ++i) {
        auto w = try_mu(spec, i);
        if (!w) break;
        if (spec.m(i) < 2) continue;
        // D cap (D + n) empty forces |D| <= m/2: the heaviest half bounds beta_i
        std::vector<S> sorted(*w);
        std::sort(sorted.begin(), sorted.end(), [](const S& a, const S& b) { return b < a; });
        S top = O::zero();
        for (std::size_t x = 0; x < sorted.size() / 2; ++x) top += sorted[x];
        if (lt(top, S(O::one() - e))) continue;
        auto b = beta_of(*w);
        if (!le(S(O::one() - e), b.value)) continue;

        const std::int64_t n = b.shift;
        const auto& D = b.set;
        auto Dn = mask_shift(D, n);
        Digits rad = spec.radices(static_cast<int>(i));
        auto factors = full_factors<S>(rad);
        factors[i - 1] = Dn;
        DepthSet B = DepthSet::product(rad, factors);
        S muB = set_measure(spec, B, opt.cap);
        S pre = preimage_measure(spec, B, n, opt.cap);
        std::int64_t overlap = 0;
        for (std::size_t x = 0; x < D.size(); ++x) overlap += (D[x] && Dn[x]) ? 1 : 0;

        rep.parameters["i"] = i;
        rep.parameters["m_i"] = spec.m(i);
        rep.parameters["n"] = n;
        rep.parameters["D"] = mask_json(D);
        rep.parameters["beta_i"] = scalar_string<S>(b.value);
        rep.checks.push_back(make_check("mu(B) <= eps", rational_string(epsilon), muB, le(muB, e), CheckMethod::exact));
        rep.checks.push_back(make_check("mu(t^{-n}B) >= 1 - eps", rational_string(1 - epsilon), pre, le(S(O::one() - e), pre),
                                        CheckMethod::exact));
        rep.checks.push_back(bool_check("(D + n) cap D = empty", overlap == 0, CheckMethod::exact,
                                        std::to_string(overlap) + " common points"));
        rep.finalize();
        return rep;
    }
    throw NotFoundWithinHorizon("no coordinate with beta_i >= 1 - eps up to i = " + std::to_string(opt.horizon));
}

// ---- hoeffbis ------------------------------------------------------------

template <class S>
WitnessReport hoeffbis_witness(const SystemSpec<S>& spec, const Rational& epsilon, const WitnessOptions& opt, std::int64_t max_m) {
    using O = ScalarOps<S>;
    require_translation(spec, "hoeffbis");
    WitnessReport rep;
    rep.construction = "hoeffbis";
    rep.parameters["epsilon"] = rational_string(epsilon);
    if (degenerate(spec, rep)) return rep;
    const double eps_d = epsilon.get_d();

    // coordinates in range, weights loaded once
    std::vector<std::int64_t> idx;
    std::vector<WeightsPtr<S>> ws;
    for (std::int64_t i = 1; i <= opt.horizon; ++i) {
        if (spec.m(i) > max_m) continue;
        auto w = try_mu(spec, i);
        if (!w) continue;
        idx.push_back(i);
        ws.push_back(w);
    }

    for (int l = 0; l <= 20; ++l) {
        const std::int64_t n = std::int64_t(1) << l;
        std::vector<S> thetas;
        std::vector<std::size_t> pos;
        for (std::size_t p = 0; p < idx.size(); ++p) {
            std::int64_t m = spec.m(idx[p]);
            if (n % m == 0) continue;
            thetas.push_back(theta_fixed(*ws[p], n % m).value);
            pos.push_back(p);
        }
        if (thetas.empty()) continue;
        auto gt = gamma_tilde_scan(thetas);
        const double hoeff = std::exp(-(2.0 / 9.0) * to_double(gt.value));

        std::vector<std::size_t> members = gt.members;
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) { return idx[pos[a]] < idx[pos[b]]; });

        std::vector<std::array<S, 4>> law;
        std::vector<std::int64_t> I;
        S EX = O::zero(), EY = O::zero(), sumTheta = O::zero();
        bool per_coord = true;
        json sets = json::array();
        for (auto q : members) {
            const std::size_t p = pos[q];
            const std::int64_t i = idx[p];
            const std::int64_t m = spec.m(i);
            const auto& w = *ws[p];
            auto th = theta_fixed(w, n % m);
            const auto& D = th.set;
            auto Dn = mask_shift(D, n % m);
            std::array<S, 4> a{O::zero(), O::zero(), O::zero(), O::zero()};
            for (std::int64_t x = 0; x < m; ++x) a[2 * D[x] + Dn[x]] += w[x];
            // Y_s(t^n x) = X_s(x)
            for (std::int64_t x = 0; x < m && per_coord; ++x)
                per_coord = Dn[static_cast<std::size_t>((x + n) % m)] == D[x];
            EX += a[2] + a[3];
            EY += a[1] + a[3];
            sumTheta += th.value;
            law.push_back(a);
            I.push_back(i);
            sets.push_back(json{{"i", i}, {"D", mask_json(D)}});
        }
        const S third = sumTheta / S(3L);
        const S tX = EX - third, tY = EY + third;
        auto sl = sum_law(law, tX, tY);
        // exact tails decide; the Hoeffding bound is reported alongside
        const S hi = O::one() - from_q<S>(epsilon);
        if (!(le(hi, sl.muX) && le(hi, sl.muY))) continue;

        rep.parameters["n"] = n;
        rep.parameters["I"] = I;
        rep.parameters["gamma_tilde"] = scalar_string<S>(gt.value);
        rep.parameters["hoeffding_bound"] = hoeff;
        rep.parameters["tX"] = scalar_string<S>(tX);
        rep.parameters["tY"] = scalar_string<S>(tY);
        rep.parameters["sets"] = sets;
        if (!(hoeff < eps_d)) rep.flags.push_back("Hoeffding bound " + decimal_string(hoeff) + " does not certify eps; exact tails used");
        rep.checks.push_back(make_check("mu(B_X) >= 1 - eps", rational_string(1 - epsilon), sl.muX,
                                        le(S(O::one() - from_q<S>(epsilon)), sl.muX), CheckMethod::independence_product));
        rep.checks.push_back(make_check("mu(B_Y) >= 1 - eps", rational_string(1 - epsilon), sl.muY,
                                        le(S(O::one() - from_q<S>(epsilon)), sl.muY), CheckMethod::independence_product));
        rep.checks.push_back(make_check("mu(B) >= 1 - 2 eps", rational_string(1 - 2 * epsilon), sl.muXY,
                                        le(S(O::one() - S(2L) * from_q<S>(epsilon)), sl.muXY), CheckMethod::independence_product));
        rep.checks.push_back(bool_check("Y_s(t^n x) = X_s(x) on every coordinate", per_coord, CheckMethod::exact));
        rep.checks.push_back(make_check("tX > tY", "> 0", S(tX - tY), lt(tY, tX), CheckMethod::exact));
        rep.checks.push_back(bool_check("t^n B cap B = empty", per_coord && lt(tY, tX), CheckMethod::exact,
                                        per_coord && lt(tY, tX) ? "sum Y(t^n x) = sum X(x) >= tX > tY" : "fails"));
        rep.finalize();
        return rep;
    }
    throw NotFoundWithinHorizon("no n = 2^l (l <= 20) with mu(B_X), mu(B_Y) >= 1 - eps");
}

// ---- fhcsum (flipped) ------------------------------------------------------

template <class S>
WitnessReport fhcsum_witness(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& kappa, const WitnessOptions& opt) {
    using O = ScalarOps<S>;
    require_translation(spec, "fhcsum");
    WitnessReport rep;
    rep.construction = "fhcsum";
    rep.parameters["epsilon"] = rational_string(epsilon);
    rep.parameters["kappa"] = rational_string(kappa);
    if (degenerate(spec, rep)) return rep;
    const S e = from_q<S>(epsilon), hi = O::one() - e;
    for (std::int64_t i = 1; i <= opt.horizon; ++i) {
        const std::int64_t m = spec.m(i);
        if (m > (std::int64_t(1) << 22)) break;
        const std::int64_t n = m / 5;
        if (n < 1) continue;
        auto w = try_mu(spec, i);
        if (!w) break;
        Rational km = kappa * Rational(mpz_class(static_cast<long>(m)));
        const std::int64_t K = mpz_class(km.get_num() / km.get_den()).get_si();
        CyclicSums<S> cs(*w);
        S minA = O::one(), maxB = O::zero();
        std::int64_t kA = 0, kB = 0;
        for (std::int64_t k = 0; k <= K; ++k) {
            S a = cs.interval(m - 2 * n - k, 2 * n);  // D - k
            S b = cs.interval(m - 4 * n - k, 2 * n);  // D - (2n + k)
            if (lt(a, minA)) minA = a, kA = k;
            if (lt(maxB, b)) maxB = b, kB = k;
        }
        if (!(le(hi, minA) && le(maxB, e))) continue;

        bool divides = true;
        for (std::int64_t j = 1; j <= i; ++j) divides = divides && m % spec.m(j) == 0;
        rep.parameters["i"] = i;
        rep.parameters["m_i"] = m;
        rep.parameters["n_i"] = n;
        rep.parameters["K"] = K;
        rep.parameters["d"] = m;
        rep.parameters["D"] = json::array({m - 2 * n, m - 1});
        rep.checks.push_back(make_check("min_k mu_i(D - k) >= 1 - eps", rational_string(1 - epsilon), minA, true, CheckMethod::exact));
        rep.checks.back().value += " at k = " + std::to_string(kA);
        rep.checks.push_back(make_check("max_k mu_i(D - (2n + k)) <= eps", rational_string(epsilon), maxB, true, CheckMethod::exact));
        rep.checks.back().value += " at k = " + std::to_string(kB);
        rep.checks.push_back(bool_check("m_j | d for j <= i", divides, CheckMethod::exact));
        // transport through the full product set, one shift
        try {
            Digits rad = spec.radices(static_cast<int>(i));
            auto f = full_factors<S>(rad);
            f[i - 1] = top_mask(m, 2 * n);
            DepthSet B = DepthSet::product(rad, f);
            S pre = preimage_measure(spec, B, K, opt.cap);
            S direct = cs.interval(m - 2 * n - K, 2 * n);
            rep.checks.push_back(make_check("mu(t^{-K}B) = mu_i(D - K)", scalar_string<S>(direct), pre, O::equal(pre, direct),
                                            CheckMethod::exact));
        } catch (const CapExceeded&) {
            rep.flags.push_back("transport cross-check skipped: cap exceeded");
        }
        rep.finalize();
        return rep;
    }
    throw NotFoundWithinHorizon("no coordinate meets the flipped fhc bounds up to i = " + std::to_string(opt.horizon));
}

// ---- ufhcsum (flipped) -----------------------------------------------------

template <class S>
WitnessReport ufhcsum_witness(const SystemSpec<S>& spec, const Rational& epsilon, const Rational& alpha_required,
                              const std::vector<std::int64_t>* A, const WitnessOptions& opt) {
    using O = ScalarOps<S>;
    require_translation(spec, "ufhcsum");
    WitnessReport rep;
    rep.construction = "ufhcsum";
    rep.parameters["epsilon"] = rational_string(epsilon);
    rep.parameters["alpha_required"] = rational_string(alpha_required);
    if (degenerate(spec, rep)) return rep;
    std::vector<std::int64_t> sortedA;
    if (A) {
        sortedA = *A;
        std::sort(sortedA.begin(), sortedA.end());
    }
    auto inA = [&](std::int64_t k) { return !A || std::binary_search(sortedA.begin(), sortedA.end(), k); };
    const S e = from_q<S>(epsilon);
    for (std::int64_t i = 1; i <= opt.horizon; ++i) {
        const std::int64_t m = spec.m(i);
        if (m > (std::int64_t(1) << 22)) break;
        const std::int64_t n = m / 3;
        if (n < 1) continue;
        auto w = try_mu(spec, i);
        if (!w) break;
        CyclicSums<S> cs(*w);
        S outside = O::one() - cs.interval(m - n, n);
        if (!le(outside, e)) continue;
        if (A && (sortedA.empty() || sortedA.back() < 2 * n))
            throw DomainError("A must be listed up to 2 n_i = " + std::to_string(2 * n));
        std::int64_t count = 0;
        for (std::int64_t k = 1; k <= 2 * n; ++k)
            if (inA(k) && le(cs.interval(m - n - k, n), e)) ++count;
        Rational alpha(count, 2 * n);
        alpha.canonicalize();
        if (alpha < alpha_required) continue;

        rep.parameters["i"] = i;
        rep.parameters["m_i"] = m;
        rep.parameters["n_i"] = n;
        rep.parameters["D"] = json::array({m - n, m - 1});
        rep.parameters["count"] = count;
        rep.checks.push_back(make_check("mu_i(Omega \\ D) <= eps", rational_string(epsilon), outside, true, CheckMethod::exact));
        rep.checks.push_back(make_check("#{k <= 2n in A : mu_i(D - k) <= eps} / 2n >= alpha", rational_string(alpha_required),
                                        alpha, true, CheckMethod::exact));
        rep.finalize();
        return rep;
    }
    throw NotFoundWithinHorizon("no coordinate meets the flipped ufhc count up to i = " + std::to_string(opt.horizon));
}

// ---- shift ---------------------------------------------------------------

WitnessReport shift_fhc_witness(const ShiftSystem& sys, const ShiftFhcParams& p) {
    WitnessReport rep;
    rep.construction = "shift-fhc";
    const Rational threeKd = 3 * p.kappa * Rational(mpz_class(static_cast<long>(p.d)));
    const Rational fourKd = 4 * p.kappa * Rational(mpz_class(static_cast<long>(p.d)));
    std::int64_t n = p.n;
    if (n == 0) {
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), threeKd.get_num_mpz_t(), threeKd.get_den_mpz_t());
        n = c.get_si();
    }
    if (!(p.kappa < Rational(1, 6)) || Rational(n) < threeKd || Rational(n) > fourKd)
        throw HypothesisUnavailable("need kappa < 1/6 and 3 kappa d <= n <= 4 kappa d");
    Rational kd = p.kappa * Rational(mpz_class(static_cast<long>(p.d)));
    const std::int64_t K = mpz_class(kd.get_num() / kd.get_den()).get_si();
    const std::int64_t need = std::max(std::abs(p.f_lo), p.f_hi + n + K);
    if (p.window < need) throw WindowTooSmall("window " + std::to_string(p.window) + " < " + std::to_string(need));

    const std::int64_t e_lo = p.f_lo + n, width = p.f_hi - p.f_lo + K;
    auto inB = [&](std::int64_t i) {
        std::int64_t r = ((i - e_lo) % p.d + p.d) % p.d;
        return sys.contains(i) && r <= width;
    };

    Rational massF(0);
    std::vector<std::int64_t> F;
    for (std::int64_t i = p.f_lo; i <= p.f_hi; ++i)
        if (sys.contains(i)) {
            F.push_back(i);
            massF += sys.nu(i);
        }
    std::uint64_t hitsNear = 0, missesFar = 0;
    json badNear, badFar;
    for (std::int64_t k = 0; k <= K; ++k)
        for (auto i : F) {
            auto a = sys.iterate(i, k);
            if (a && inB(*a) && hitsNear++ == 0) badNear = json{{"i", i}, {"k", k}};
            auto b = sys.iterate(i, n + k);
            if (!(b && inB(*b)) && missesFar++ == 0) badFar = json{{"i", i}, {"k", k}};
        }
    std::uint64_t periodic = 0;
    for (std::int64_t i = -p.window; i <= p.window; ++i) {
        if (!sys.contains(i)) continue;
        auto j = sys.iterate(i, p.d);
        if (j && *j <= p.window && inB(*j) != inB(i)) ++periodic;
    }

    rep.parameters["kappa"] = rational_string(p.kappa);
    rep.parameters["d"] = p.d;
    rep.parameters["n"] = n;
    rep.parameters["K"] = K;
    rep.parameters["F"] = json::array({p.f_lo, p.f_hi});
    rep.parameters["E"] = json::array({e_lo, e_lo + width});
    rep.parameters["window"] = p.window;
    rep.parameters["nu(Omega \\ F)"] = rational_string(sys.total_mass() - massF);
    Check c1 = bool_check("phi^k(F) cap B = empty for k <= K", hitsNear == 0, CheckMethod::exact,
                          std::to_string(hitsNear) + " hits");
    c1.violating_point = badNear;
    Check c2 = bool_check("phi^{n+k}(F) subset B for k <= K", missesFar == 0, CheckMethod::exact,
                          std::to_string(missesFar) + " misses");
    c2.violating_point = badFar;
    rep.checks.push_back(c1);
    rep.checks.push_back(c2);
    rep.checks.push_back(bool_check("phi^{-d}(B) = B on the window", periodic == 0, CheckMethod::exact,
                                    std::to_string(periodic) + " mismatches"));
    rep.finalize();
    return rep;
}

// ---- rigidity --------------------------------------------------------------

template <class S>
WitnessReport rigidity_probe(const SystemSpec<S>& spec, int i_max, int depth, double registered_tail, const WitnessOptions& opt) {
    using O = ScalarOps<S>;
    require_translation(spec, "rigidity");
    WitnessReport rep;
    rep.construction = "rigidity";
    rep.parameters["depth"] = depth;
    rep.parameters["i_max"] = i_max;

    // rho_j for j <= depth + 1
    std::vector<WeightsPtr<S>> ws(static_cast<std::size_t>(depth + 2));
    std::vector<S> rho(static_cast<std::size_t>(depth + 2), O::one());
    for (int j = 1; j <= depth + 1; ++j) {
        ws[j] = try_mu(spec, j);
        if (!ws[j]) throw BackendUnsupported("rigidity probe needs mu_j for j <= " + std::to_string(depth + 1));
        rho[j] = max_left_ratio(*ws[j]);
    }
    double partial = 0;
    for (int j = 2; j <= depth + 1; ++j) partial += (to_double(rho[j]) - 1) * double(spec.m(j - 1));
    const double logK = partial + registered_tail;
    const double Kc = std::exp(logK);
    rep.parameters["K"] = Kc;
    rep.parameters["K_partial_exponent"] = partial;
    rep.parameters["registered_tail"] = registered_tail;
    if (registered_tail == 0) rep.flags.push_back("series tail not registered: K covers j <= " + std::to_string(depth + 1));

    json rows = json::array();
    for (int i = 2; i <= i_max; ++i) {
        const std::int64_t s = spec.m(i - 1);
        bool divides = true;
        for (int j = 1; j <= i - 1; ++j) divides = divides && s % spec.m(j) == 0;
        rep.checks.push_back(bool_check("m_j | m_{i-1} for j < i, i = " + std::to_string(i), divides, CheckMethod::exact));

        const int pd = std::min(i - 1, 5);
        InducedBijection bij(MapKind::translation, spec.radices(pd), opt.cap);
        std::uint64_t moved = 0;
        for (std::uint64_t c = 0; c < bij.size(); ++c) moved += bij.power(c, -s) != c ? 1 : 0;
        rep.checks.push_back(bool_check("t^{-m_{i-1}} fixes depth " + std::to_string(pd) + " cylinders, i = " + std::to_string(i),
                                        moved == 0, CheckMethod::exact, std::to_string(moved) + " cells moved"));

        // per-coordinate factors mu_j(x - s)/mu_j(x), grouped by value
        std::vector<std::map<S, std::uint64_t, bool (*)(const S&, const S&)>> groups;
        for (int j = 1; j <= depth; ++j) {
            const auto& w = *ws[j];
            const std::int64_t m = static_cast<std::int64_t>(w.size());
            std::map<S, std::uint64_t, bool (*)(const S&, const S&)> g([](const S& a, const S& b) { return a < b; });
            for (std::int64_t x = 0; x < m; ++x) {
                S f = w[static_cast<std::size_t>(((x - s) % m + m) % m)] / w[x];
                ++g[f];
            }
            groups.push_back(std::move(g));
        }
        // R_{i,n} = prod_{j=i}^{n} rho_j^s
        std::vector<S> R(static_cast<std::size_t>(depth + 1), O::one());
        for (int n = 1; n <= depth; ++n) R[n] = n >= i ? S(R[n - 1] * O::pow(rho[n], static_cast<unsigned long>(s))) : R[n - 1];

        std::uint64_t cylinders = 0, violations = 0;
        S worst = O::zero();
        int worstDepth = 0;
        auto dfs = [&](auto&& self, int n, const S& r, std::uint64_t mult) -> void {
            if (n > 0) {
                cylinders += mult;
                if (!le(r, R[n])) violations += mult;
                if (lt(worst, r)) worst = r, worstDepth = n;
            }
            if (n == depth) return;
            for (const auto& [f, cnt] : groups[n]) self(self, n + 1, S(r * f), mult * cnt);
        };
        dfs(dfs, 0, O::one(), 1);

        double logR = 0;
        for (int j = i; j <= depth; ++j) logR += double(s) * std::log(to_double(rho[j]));
        Check c = make_check("mu(t^{-m_{i-1}}C)/mu(C) <= R_i on depth <= " + std::to_string(depth) + " cylinders, i = " + std::to_string(i),
                             scalar_string<S>(R[depth]), worst, violations == 0, CheckMethod::exact);
        c.trials = cylinders;
        c.violations = violations;
        rep.checks.push_back(c);
        rep.checks.push_back(make_check("R_i <= K, i = " + std::to_string(i), decimal_string(Kc), std::exp(logR), logR <= logK + 1e-12,
                                        CheckMethod::proof_bound));
        rows.push_back(json{{"i", i}, {"shift", s}, {"R_i", scalar_string<S>(R[depth])}, {"max_ratio", scalar_string<S>(worst)},
                            {"max_ratio_depth", worstDepth}, {"cylinders", cylinders}});
    }
    rep.parameters["rows"] = rows;
    rep.finalize();
    return rep;
}

#define ODOLAB_INSTANTIATE(S)                                                                                                     \
    template WitnessReport hcsum_witness<S>(const SystemSpec<S>&, const Rational&, const WitnessOptions&);                       \
    template WitnessReport hoeffbis_witness<S>(const SystemSpec<S>&, const Rational&, const WitnessOptions&, std::int64_t);       \
    template WitnessReport fhcsum_witness<S>(const SystemSpec<S>&, const Rational&, const Rational&, const WitnessOptions&);      \
    template WitnessReport ufhcsum_witness<S>(const SystemSpec<S>&, const Rational&, const Rational&,                             \
                                              const std::vector<std::int64_t>*, const WitnessOptions&);                          \
    template WitnessReport rigidity_probe<S>(const SystemSpec<S>&, int, int, double, const WitnessOptions&);

ODOLAB_INSTANTIATE(Rational)
ODOLAB_INSTANTIATE(double)

}  // namespace odolab
