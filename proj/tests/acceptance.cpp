// Acceptance suite: one PASS/FAIL line per criterion.
// Every quantity is recomputed here by a direct method that does not go through the optimizer under test.

#include "helpers.hpp"

#include "odolab/criteria.hpp"
#include "odolab/errors.hpp"
#include "odolab/function_space.hpp"
#include "odolab/gallery.hpp"
#include "odolab/shift.hpp"
#include "odolab/symbol_maps.hpp"
#include "odolab/verdicts.hpp"
#include "odolab/witness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace odolab;
using testing_util::spec_of;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        if (failures.size() < 8) failures.push_back(what);
    }
};

std::string q(const Rational& r) { return rational_string(r); }

Rational factorial(int n) {
    Rational f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// ---- brute-force oracles on integer numerators (common denominator T) -------

using Num = std::int64_t;

std::uint32_t rotate(std::uint32_t D, int k, int m) {
    const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
    k %= m;
    return ((D << k) | (D >> (m - k))) & full;
}

std::vector<Num> subset_sums(const std::vector<Num>& a) {
    const int m = int(a.size());
    std::vector<Num> s(std::size_t(1) << m, 0);
    for (std::uint32_t D = 1; D < s.size(); ++D) {
        int low = __builtin_ctz(D);
        s[D] = s[D & (D - 1)] + a[low];
    }
    return s;
}

// sup mu(D) - mu(D+k) mod m
Num brute_theta(const std::vector<Num>& S, int m, int k) {
    Num best = 0;
    for (std::uint32_t D = 0; D < S.size(); ++D) best = std::max(best, S[D] - S[rotate(D, k, m)]);
    return best;
}

// max mu(D) with D cap (D+j) empty, no wrap
Num brute_path(const std::vector<Num>& S, int m, int j) {
    Num best = 0;
    for (std::uint32_t D = 0; D < S.size(); ++D)
        if (((D << j) & D & ((1u << m) - 1)) == 0) best = std::max(best, S[D]);
    return best;
}

// max mu(D) with D cap (D+n) empty mod m
Num brute_cycle(const std::vector<Num>& S, int m, int n) {
    Num best = 0;
    for (std::uint32_t D = 0; D < S.size(); ++D)
        if ((rotate(D, n, m) & D) == 0) best = std::max(best, S[D]);
    return best;
}

// max over j in [1, m-1] and D of min(mu(D), 1 - mu(D+j))
Num brute_gamma(const std::vector<Num>& S, int m, Num T) {
    Num best = 0;
    for (int j = 1; j < m; ++j)
        for (std::uint32_t D = 0; D < S.size(); ++D) best = std::max(best, std::min(S[D], T - S[rotate(D, j, m)]));
    return best;
}

// max over nonempty I of (sum_I t)^2 / |I|, returned as a rational in units of the common denominator squared
Rational brute_gamma_tilde(const std::vector<Num>& t) {
    const int N = int(t.size());
    Rational best = 0;
    std::vector<Num> s(std::size_t(1) << N, 0);
    for (std::uint32_t I = 1; I < s.size(); ++I) {
        s[I] = s[I & (I - 1)] + t[__builtin_ctz(I)];
        Rational v(mpz_class(s[I]) * s[I], __builtin_popcount(I));
        v.canonicalize();
        if (v > best) best = v;
    }
    return best;
}

std::vector<Rational> to_measure(const std::vector<Num>& a, Num T) {
    std::vector<Rational> w;
    for (Num x : a) {
        Rational r(x, T);
        r.canonicalize();
        w.push_back(r);
    }
    return w;
}

// P(val(x_1..x_n) >= t), digits independent, little-endian
Rational tail_probability(const SystemSpec<Rational>& spec, int n, std::uint64_t t) {
    // scan from the most significant digit
    Rational p = 0, along = 1;
    std::uint64_t rest = t;
    for (int k = n; k >= 1; --k) {
        const std::uint64_t Mk = spec.M(k);
        const std::int64_t digit = std::int64_t(rest / Mk);
        rest %= Mk;
        auto w = spec.mu(k);
        for (std::int64_t d = digit + 1; d < spec.m(k); ++d) p += along * (*w)[d];
        along *= (*w)[digit];
    }
    return p + along;  // equality all the way down counts as >= t
}

// ---- criteria -----------------------------------------------------------

Outcome criterion1() {
    Outcome o;
    auto spec = spec_of<Rational>("fhc-binary");
    auto rep = boundedness(spec, 20);
    o.require(rep.values.size() == 20, "20 levels");
    Rational prefix = 1;
    for (int l = 1; l <= 20 && l <= int(rep.values.size()); ++l) {
        const Rational closed = Rational(l) / factorial(l - 1);
        // direct: prod_{i<l} mu_i(m_i-1)/mu_i(0) * max_j mu_l(j-1)/mu_l(j)
        auto w = spec.mu(l);
        Rational mx = 0;
        for (std::int64_t j = 1; j < spec.m(l); ++j) mx = std::max(mx, Rational((*w)[j - 1] / (*w)[j]));
        const Rational direct = prefix * mx;
        prefix *= w->back() / w->front();
        o.require(rep.values[l - 1] == closed, "l = " + std::to_string(l) + ": " + q(rep.values[l - 1]) + " != " + q(closed));
        o.require(direct == closed, "direct bracket at l = " + std::to_string(l));
    }
    o.detail << "bracketed value = l/(l-1)! for l <= 20, e.g. l = 20 gives " << q(Rational(20) / factorial(19));
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto spec = spec_of<Rational>("ornstein");
    int checked = 0;
    for (std::int64_t i = 2; i <= 10000; ++i) {
        // uncached: the rule evaluated directly
        auto w = spec.measure().rational(i, spec.alphabet());
        Rational mx = w[0], mn = w[0];
        for (const auto& x : w) {
            if (x > mx) mx = x;
            if (x < mn) mn = x;
        }
        o.require(eta_of(w) == Rational(1, 2) && mx == Rational(1, 2), "eta_" + std::to_string(i));
        o.require(delta_of(w) == Rational(1, 2 * i) && mn == Rational(1, 2 * i), "delta_" + std::to_string(i));
        ++checked;
    }
    VerdictParams p;  // no closed form: the numeric rule alone
    p.horizon = 200;
    auto v = evaluate(spec, "cor:hc", p);
    double margin = v.evidence.value("margin", -1.0);
    o.require(v.status == Status::satisfied_up_to_horizon, "cor:hc status " + to_string(v.status));
    o.require(margin >= 0.25, "margin " + std::to_string(margin));
    o.detail << "eta_i = 1/2, delta_i = 1/(2i) for " << checked << " indices; cor:hc " << to_string(v.status) << " with margin "
             << decimal_string(margin);
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto spec = spec_of<Rational>("binary-alpha-2");
    const int I = 2000;
    std::vector<Rational> P(I + 1);
    P[0] = 1;
    for (int i = 1; i <= I; ++i) {
        auto w = spec.mu(i);
        P[i] = P[i - 1] * eta_of(*w) / delta_of(*w);
    }
    double worst = 0;
    int worst_i = 0;
    for (int i = 1000; i < I; ++i) {
        double inc = std::fabs(Rational(P[i + 1] - P[i]).get_d());
        if (inc > worst) {
            worst = inc;
            worst_i = i;
        }
    }
    // limit estimate: log(eta/delta) ~ 4/i^2, tail sum ~ 4/I
    const double limit = P[I].get_d() * std::exp(4.0 / I);
    o.require(worst < 1e-6, "increment " + decimal_string(worst) + " at i = " + std::to_string(worst_i) + " (>= 1e-6)");
    auto probes = norm_probes(spec, 12, 100);
    double top = 0;
    for (const auto& pr : probes) {
        top = std::max(top, pr.lower_bound);
        o.require(pr.lower_bound <= limit + 1e-9, "probe n = " + std::to_string(pr.n) + " exceeds the limit");
    }
    o.detail << "max increment beyond 10^3: " << decimal_string(worst) << " at i = " << worst_i << "; product limit ~ "
             << decimal_string(limit) << "; max norm probe " << decimal_string(top) << " over n <= 100";
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto spec = spec_of<Rational>("hc-not-mixing");
    Rational minC = 1, minGap = 1, maxKappa = 0;
    for (std::int64_t i = 1; i <= 200; ++i) {
        const auto& w = *spec.mu(i);
        const int m = int(w.size());
        Rational c = *std::max_element(w.begin(), w.end());
        Rational gap = eta_of(w) - delta_of(w);
        Rational k = kappa_of(w).value;
        // two neighbouring heavy symbols a, a+1 cap any D with D cap (D+1) empty: direct O(m) path DP
        Rational take = 0, skip = 0;
        for (int x = 0; x < m; ++x) {
            Rational t = skip + w[x];
            skip = std::max(skip, take);
            take = t;
        }
        Rational path1 = std::max(take, skip);
        o.require(c >= Rational(1, 4), "c_" + std::to_string(i));
        o.require(gap >= Rational(1, 8), "eta - delta at " + std::to_string(i));
        o.require(k <= Rational(7, 8), "kappa_" + std::to_string(i) + " = " + q(k));
        o.require(k <= path1, "kappa above its j = 1 path value at " + std::to_string(i));
        if (m <= 16) {
            // exhaustive cross-check on small alphabets
            Rational best = 2;
            for (int j = 1; j < m; ++j) {
                Rational bj = 0;
                for (std::uint32_t D = 0; D < (1u << m); ++D) {
                    if (((D << j) & D & ((1u << m) - 1)) != 0) continue;
                    Rational s = 0;
                    for (int x = 0; x < m; ++x)
                        if (D >> x & 1) s += w[x];
                    bj = std::max(bj, s);
                }
                best = std::min(best, bj);
            }
            o.require(best == k, "kappa brute mismatch at " + std::to_string(i));
        }
        minC = std::min(minC, c);
        minGap = std::min(minGap, gap);
        maxKappa = std::max(maxKappa, k);
    }
    o.detail << "i <= 200: min c_i = " << decimal_string(minC.get_d()) << ", min(eta - delta) = " << q(minGap) << ", max kappa_i = " << decimal_string(maxKappa.get_d());
    return o;
}

Outcome criterion5() {
    Outcome o;
    const auto& entry = gallery_entry("geometric-mixing");
    auto spec = SystemSpec<double>::from_json(entry.config);
    double minMargin = 1e9, k100 = 0;
    for (std::int64_t i = 2; i <= entry.horizon; ++i) {
        const std::int64_t m = spec.m(i);
        double c = solve_geometric_c(i, m);
        o.require(c > 1.0 / double(i + 1) - 1e-12 && c <= 1.0 / double(i) + 1e-12, "c_" + std::to_string(i) + " outside (1/(i+1), 1/i]");
        long double s = 0, pw = 1;
        for (std::int64_t j = 0; j < m; ++j) {
            s += pw;
            pw *= c;
        }
        o.require(std::fabs(double(s) - double(i + 1) / double(i)) <= 1e-12, "sum c^j at " + std::to_string(i));
        const auto& w = *spec.mu(i);
        double eta = *std::max_element(w.begin(), w.end());
        o.require(std::fabs(eta - double(i) / double(i + 1)) <= 1e-12, "eta_" + std::to_string(i));
        double k = kappa_of(w).value;
        o.require(k >= eta - 1e-12, "kappa_" + std::to_string(i) + " < eta");
        minMargin = std::min(minMargin, k - eta);
        if (i == 100) k100 = k;
    }
    o.require(k100 >= 0.99, "kappa_100 = " + decimal_string(k100));
    o.detail << "2 <= i <= " << entry.horizon << ": c_i bracketed, eta_i = i/(i+1), min(kappa_i - eta_i) = " << decimal_string(minMargin)
             << ", kappa_100 = " << decimal_string(k100);
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto spec = spec_of<Rational>("fhc-not-mixing");
    const Rational kappa(1, 5);
    for (std::int64_t k = 1; k <= 100; ++k) {
        const std::int64_t ig = 3 * k + 2, io = 3 * k + 1, ie = 3 * k + 3;
        const auto& wg = *spec.mu(ig);
        auto g = gamma_odometer(wg);
        // exhaustive over D and j, directly on the weights
        Rational gb = 0;
        const int m = int(wg.size());
        for (int j = 1; j < m; ++j)
            for (std::uint32_t D = 0; D < (1u << m); ++D) {
                Rational a = 0, b = 0;
                for (int x = 0; x < m; ++x)
                    if (D >> x & 1) {
                        a += wg[x];
                        b += wg[(x + j) % m];
                    }
                gb = std::max(gb, std::min(a, Rational(1 - b)));
            }
        const Rational gwant = 1 - Rational(1, k + 1);
        o.require(g.value == gwant, "gamma_" + std::to_string(ig) + " = " + q(g.value));
        o.require(gb == g.value, "gamma brute mismatch at " + std::to_string(ig));
        const auto& wo = *spec.mu(io);
        Rational om = omega(wo, spec.m(io + 1), kappa);
        // interval [m - 1 - kappa m m', m - 1], clipped
        Rational lower = Rational(spec.m(io) - 1) - kappa * spec.m(io) * spec.m(io + 1);
        Rational direct = 0;
        for (std::int64_t x = 0; x < spec.m(io); ++x)
            if (Rational(x) >= lower) direct += wo[x];
        o.require(om == Rational(1, k + 1), "omega_" + std::to_string(io) + " = " + q(om));
        o.require(direct == om, "omega direct mismatch at " + std::to_string(io));
        o.require(eta_of(*spec.mu(ie)) == Rational(1, 2), "eta_" + std::to_string(ie));
    }
    o.detail << "gamma_{3k+2} = 1 - 1/(k+1), omega_{3k+1}(1/5) = 1/(k+1), eta_{3k+3} = 1/2 for 1 <= k <= 100 (exhaustive m = 2 check)";
    return o;
}

Outcome criterion7() {
    Outcome o;
    auto spec = spec_of<double>("binary-alpha-1/4");
    const Rational eps(1, 10);
    WitnessOptions opt;
    opt.trials = 1000000;
    auto r = transitivity_witness(spec, eps, IndexStrategy{});
    const auto* muB = r.find("mu(B) > 1 - 3 eps");
    const auto* dis = r.find("B cap o^k(B) empty");
    o.require(r.pass, "witness report fails");
    o.require(muB && muB->method == CheckMethod::independence_product && muB->numeric > 0.7, "mu(B) > 1 - 3 eps");
    o.require(dis && dis->pass, "disjointness");
    if (dis && dis->method == CheckMethod::sampled) o.require(dis->trials >= 1000000 && dis->violations == 0, "10^6 samples, no violation");

    // Poisson-binomial tails recomputed from the reported indices and sets
    const auto& P = r.parameters;
    std::vector<double> pX, pY;
    for (std::size_t s = 0; s < P.at("indices").size(); ++s) {
        const std::int64_t i = P["indices"][s];
        const std::int64_t k = P["k_digits"][s];
        const auto& w = *spec.mu(i);
        const std::int64_t m = std::int64_t(w.size());
        double a = 0, b = 0;
        for (std::int64_t x : P["D"][s]) {
            a += w[x];
            b += w[(x + k) % m];
        }
        pX.push_back(a);
        pY.push_back(b);
    }
    auto law = [](const std::vector<double>& p) {
        std::vector<double> d{1.0};
        for (double x : p) {
            std::vector<double> e(d.size() + 1, 0.0);
            for (std::size_t c = 0; c < d.size(); ++c) {
                e[c] += d[c] * (1 - x);
                e[c + 1] += d[c] * x;
            }
            d = e;
        }
        return d;
    };
    const double tX = std::stod(P.at("threshold_X").get<std::string>()), tY = std::stod(P.at("threshold_Y").get<std::string>());
    auto LX = law(pX), LY = law(pY);
    double muX = 0, muY = 0;
    for (std::size_t c = 0; c < LX.size(); ++c) {
        if (double(c) >= tX - 1e-12) muX += LX[c];
        if (double(c) <= tY + 1e-12) muY += LY[c];
    }
    const auto* cX = r.find("mu(B_X)");
    const auto* cY = r.find("mu(B_Y)");
    o.require(cX && std::fabs(cX->numeric - muX) <= 1e-9, "mu(B_X) oracle " + decimal_string(muX));
    o.require(cY && std::fabs(cY->numeric - muY) <= 1e-9, "mu(B_Y) oracle " + decimal_string(muY));
    o.detail << "n = " << P.value("n", 0) << " coordinates, mu(B) = " << (muB ? muB->value : "?") << " > 0.7; oracle mu(B_X) = "
             << decimal_string(muX) << ", mu(B_Y) = " << decimal_string(muY) << "; disjointness "
             << (dis ? to_string(dis->method) + " " + dis->value : "missing");
    return o;
}

Outcome criterion8() {
    Outcome o;
    auto spec = spec_of<Rational>("fhc-binary");
    const Rational eps(1, 20), kappa(1, 8);
    WitnessOptions opt;
    opt.transport_samples = 1000;
    auto r = fhc_witness(spec, eps, kappa, opt);
    o.require(r.pass, "witness report fails");
    int bounds = 0, fn = 0;
    for (const auto& c : r.checks) {
        if (c.method == CheckMethod::proof_bound) {
            ++bounds;
            o.require(c.pass, c.inequality);
        }
        if (c.inequality.find("||") != std::string::npos) {
            ++fn;
            o.require(c.pass, c.inequality);
        }
        if (c.method == CheckMethod::sampled) o.require(c.trials >= 1000 && c.violations == 0, c.inequality);
    }
    o.require(bounds >= 2 && fn >= 2, "proof-bound and function-level checks present");

    // spot checks: mu(o^{-k} B) through the carry into coordinate N
    const auto& P = r.parameters;
    const int N = P.at("N");
    const std::uint64_t n = P.at("n"), Kd = P.at("kappa_d");
    const std::int64_t j = P.at("j_N");
    std::vector<std::uint8_t> BN(spec.m(N), 0);
    for (std::int64_t x : P.at("D_N")) BN[(x + j) % spec.m(N)] = 1;
    const std::uint64_t MN = spec.M(N);
    auto transported = [&](std::uint64_t k) {
        const std::uint64_t r0 = k % MN;
        const std::int64_t kN = std::int64_t((k / MN) % std::uint64_t(spec.m(N)));
        Rational carry = r0 == 0 ? Rational(0) : tail_probability(spec, N - 1, MN - r0);
        const auto& w = *spec.mu(N);
        Rational out = 0;
        for (std::int64_t x = 0; x < spec.m(N); ++x) {
            if (BN[(x + kN) % spec.m(N)]) out += (1 - carry) * w[x];
            if (BN[(x + kN + 1) % spec.m(N)]) out += carry * w[x];
        }
        return out;
    };
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::uint64_t> pick(0, Kd);
    Rational worstNear = 0, worstFar = 1;
    for (int t = 0; t < 1000; ++t) {
        const std::uint64_t k = t == 0 ? 0 : (t == 1 ? Kd : pick(rng));
        Rational a = transported(k), b = transported(n + k);
        worstNear = std::max(worstNear, a);
        worstFar = std::min(worstFar, b);
    }
    o.require(worstNear <= eps, "mu(o^{-k} B) = " + q(worstNear));
    o.require(worstFar >= 1 - eps, "mu(o^{-(n+k)} B) = " + q(worstFar));
    o.detail << "N = " << N << ", d = " << P.at("d").get<std::uint64_t>() << "; " << bounds << " proof-bound checks pass; 1000 seeded k: max mu(o^-k B) = "
             << decimal_string(worstNear.get_d()) << ", min mu(o^-(n+k) B) = " << decimal_string(worstFar.get_d())
             << "; function-level checks on a depth-3 cylinder pass";
    return o;
}

Outcome criterion9() {
    Outcome o;
    auto spec = spec_of<double>("hoeffbis-blocks");
    double worstBeta = 0, minTheta = 1;
    for (std::int64_t i = 1; i < 100; ++i) {
        std::int64_t l = 0;
        while ((l + 1) * (l + 1) <= i) ++l;
        const auto& w = *spec.mu(i);
        const std::int64_t m = std::int64_t(w.size());
        if (m != (std::int64_t(1) << (l + 1))) {
            o.require(false, "block size at i = " + std::to_string(i));
            continue;
        }
        const double n = std::ldexp(1.0, int(l)), rn = std::pow(1.0 + 1.0 / n, n);
        if (l <= 7) {
            const double beta = beta_of(w).value, closed = (rn - 1) / rn;
            worstBeta = std::max(worstBeta, std::fabs(beta - closed));
            o.require(std::fabs(beta - closed) <= 1e-12, "beta_" + std::to_string(i) + " = " + decimal_string(beta) + " vs " + decimal_string(closed));
        }
        if (l >= 5) {
            // shift 2^l = m/2
            const double th = theta_fixed(w, std::int64_t(n) % m).value;
            minTheta = std::min(minTheta, th);
            o.require(th >= 0.2, "theta_{" + std::to_string(i) + ",2^l} = " + decimal_string(th));
            o.require(std::fabs(th - (rn - 2) / rn) <= 1e-12, "theta closed form at " + std::to_string(i));
        }
    }
    o.detail << "blocks l <= 7: max |beta_i - closed form| = " << decimal_string(worstBeta) << "; l = 5..9: min theta_{i,2^l} = " << decimal_string(minTheta)
             << " (limit " << decimal_string((std::exp(1.0) - 2) / std::exp(1.0)) << ")";
    return o;
}

Outcome criterion10() {
    Outcome o;
    auto spec = spec_of<Rational>("trans-rigid");
    const int depth = 6, imax = 8;
    // registered series: delta_j m_{j-1} = 2^-j from j = 5 on, so K = exp(1/16)
    const double Kseries = std::exp(1.0 / 16);
    auto r = rigidity_probe(spec, imax, depth, std::ldexp(1.0, -(depth + 1)));
    o.require(r.pass, "probe report fails");
    const double K = r.parameters.value("K", 1e9);
    o.require(K <= Kseries + 1e-12 && K <= std::exp(1.0), "K = " + decimal_string(K));
    double worst = 0;
    for (int i = 2; i <= imax; ++i) {
        const std::int64_t s = spec.m(i - 1);
        // period divisibility: every coordinate below i is fixed
        for (int jj = 1; jj < i; ++jj) o.require(s % spec.m(jj) == 0, "m_" + std::to_string(jj) + " does not divide m_" + std::to_string(i - 1));
        if (i <= 7) {
            InducedBijection b(MapKind::translation, spec.radices(i - 1));
            std::uint64_t moved = 0;
            for (std::uint64_t c = 0; c < b.size(); ++c) moved += b.power(c, -s) != c;
            o.require(moved == 0, std::to_string(moved) + " cells moved at i = " + std::to_string(i));
        }
        // worst cylinder ratio: the product of per-coordinate maxima, each >= 1
        Rational R = 1;
        for (int jj = 1; jj <= depth; ++jj) {
            const auto& w = *spec.mu(jj);
            const std::int64_t m = spec.m(jj);
            Rational mx = 0;
            for (std::int64_t x = 0; x < m; ++x) mx = std::max(mx, Rational(w[((x - s) % m + m) % m] / w[x]));
            R *= mx;
        }
        worst = std::max(worst, R.get_d());
        o.require(R.get_d() <= Kseries, "ratio at i = " + std::to_string(i));
        const auto& rows = r.parameters.at("rows");
        for (const auto& row : rows)
            if (row.at("i") == i) {
                const Rational realized = parse_rational(row.at("max_ratio").get<std::string>());
                o.require(realized == R, "reported max ratio at i = " + std::to_string(i) + " differs");
                o.require(realized <= parse_rational(row.at("R_i").get<std::string>()), "max ratio above R_" + std::to_string(i));
            }
    }
    o.detail << "i <= " << imax << ": t^{-m_{i-1}} fixes depth <= i-1 cylinders; max ratio on depth <= 6 cylinders " << decimal_string(worst)
             << " <= K = " << decimal_string(K) << " <= exp(1/16)";
    return o;
}

Outcome criterion11() {
    Outcome o;
    auto sys = ShiftSystem::from_json(gallery_entry("shift-z").config);
    auto s = salas_check(sys, 0, 0, 60);
    for (int n = 1; n <= 60; ++n) {
        Rational want = 1;
        for (int t = 0; t < n; ++t) want /= 4;
        o.require(s.products[n - 1] == want, "product at n = " + std::to_string(n));
    }
    o.require(s.monotone && s.tends_to_zero, "monotone decay");
    auto v = evaluate_shift(sys, "salas");
    o.require(v.status == Status::satisfied || v.status == Status::satisfied_up_to_horizon, "salas verdict " + to_string(v.status));

    ShiftFhcParams p;
    p.kappa = Rational(3, 20);
    auto r = shift_fhc_witness(sys, p);
    o.require(r.pass, "window checks fail");
    // recheck the windows from the reported parameters
    const auto& P = r.parameters;
    const std::int64_t n = P.at("n"), K = P.at("K"), d = P.at("d");
    const std::int64_t e0 = P.at("E")[0], e1 = P.at("E")[1];
    const std::int64_t f0 = P.at("F")[0], f1 = P.at("F")[1];
    auto inB = [&](std::int64_t i) { return (((i - e0) % d) + d) % d <= e1 - e0; };
    std::int64_t bad = 0;
    for (std::int64_t k = 0; k <= K; ++k)
        for (std::int64_t i = f0; i <= f1; ++i) {
            bad += inB(i + k);
            bad += !inB(i + n + k);
        }
    o.require(bad == 0, std::to_string(bad) + " window violations");
    o.require(Rational(3) * p.kappa * d <= n, "n >= 3 kappa d");
    o.detail << "nu_n nu_-n = 4^-n for n <= 60, salas " << to_string(v.status) << "; shift fhc with kappa = 3/20: n = " << n << ", K = " << K
             << ", E = [" << e0 << ", " << e1 << "], windows rechecked";
    return o;
}

Outcome criterion12() {
    Outcome o;
    std::mt19937_64 rng(12);
    int measures = 0;
    for (int t = 0; t < 200; ++t) {
        const int m = 2 + int(rng() % 15);
        std::vector<Num> a(m);
        Num T = 0;
        for (auto& x : a) {
            x = 1 + Num(rng() % 30);
            T += x;
        }
        auto w = to_measure(a, T);
        auto S = subset_sums(a);
        auto scaled = [&](const Rational& v) { return Rational(v * T); };
        for (int k = 1; k < m; ++k) {
            o.require(scaled(theta_fixed(w, k).value) == brute_theta(S, m, k), "theta m = " + std::to_string(m));
            o.require(scaled(path_mwis(w, k).value) == brute_path(S, m, k), "path MWIS m = " + std::to_string(m));
            o.require(scaled(cycle_mwis(w, k).value) == brute_cycle(S, m, k), "cycle MWIS m = " + std::to_string(m));
        }
        Num kb = T;
        for (int j = 1; j < m; ++j) kb = std::min(kb, brute_path(S, m, j));
        o.require(scaled(kappa_of(w).value) == kb, "kappa m = " + std::to_string(m));
        auto g = gamma_search(w, SearchLimits{std::uint64_t(1) << 24, std::uint64_t(1) << 26});
        o.require(g.exact, "gamma search cut short at m = " + std::to_string(m));
        o.require(scaled(g.value) == brute_gamma(S, m, T), "gamma m = " + std::to_string(m));

        // gamma~: N <= 18 theta values with denominator 64
        const int N = 1 + int(rng() % 18);
        std::vector<Num> th(N);
        std::vector<Rational> thq;
        for (auto& x : th) {
            x = Num(rng() % 65);
            Rational r(x, 64);
            r.canonicalize();
            thq.push_back(r);
        }
        auto gt = gamma_tilde_scan(thq);
        o.require(Rational(gt.value * 64 * 64) == brute_gamma_tilde(th), "gamma~ N = " + std::to_string(N));
        ++measures;
    }
    o.detail << measures << " random measures (m <= 16, N <= 18): theta, path/cycle MWIS, kappa, gamma search and gamma~ scan match exhaustive search";
    return o;
}

Outcome criterion13() {
    Outcome o;
    std::mt19937_64 rng(13);
    int specs = 0, cells_checked = 0, cylinders = 0;
    std::vector<std::string> floats;
    for (const auto& e : gallery()) {
        if (e.is_shift()) continue;
        ++specs;
        const MapKind kind = e.kind();
        std::optional<SystemSpec<Rational>> exact;
        try {
            exact.emplace(SystemSpec<Rational>::from_json(e.config));
        } catch (const BackendUnsupported&) {
        }
        SystemSpec<double> approx = SystemSpec<double>::from_json(e.config);
        // deepest truncation up to 6 within 2^16 cells
        int D = 0;
        std::uint64_t size = 1;
        while (D < 6 && size * std::uint64_t(approx.m(D + 1)) <= (1u << 16)) size *= std::uint64_t(approx.m(++D));
        if (D == 0) {
            o.require(false, e.id + ": m_1 too large");
            continue;
        }
        const Digits r = approx.radices(D);

        // bijection laws
        InducedBijection b(kind, r);
        auto p1 = b.permutation(1);
        std::vector<std::uint8_t> seen(b.size(), 0);
        for (auto c : p1) seen[c] = 1;
        o.require(std::all_of(seen.begin(), seen.end(), [](auto v) { return v; }), e.id + ": not a bijection");
        std::uint64_t lcm = 1;
        for (auto m : r) lcm = std::lcm(lcm, std::uint64_t(m));
        o.require(b.order() == (kind == MapKind::odometer ? size : lcm), e.id + ": order");
        for (int t = 0; t < 200; ++t) {
            std::uint64_t c = rng() % b.size();
            std::int64_t u = std::int64_t(rng() % 1000) - 500, v = std::int64_t(rng() % 1000) - 500;
            o.require(b.power(b.power(c, u), v) == b.power(c, u + v), e.id + ": power law");
            o.require(b.power(c, std::int64_t(b.order())) == c, e.id + ": order law");
        }

        auto check_cells = [&](auto& spec) {
            using S = std::decay_t<decltype(spec.weight(1, 0))>;
            using O = ScalarOps<S>;
            auto T = build_truncation(spec, D);
            S total = O::zero();
            for (const auto& x : T.cell_measure) total += x;
            o.require(O::equal(total, O::one()), e.id + ": cell measures sum to " + O::str(total));
            for (std::uint64_t c = 0; c < T.size(); ++c) {
                auto x = T.digits(c);
                // step back by one, directly on the digits
                Digits y = x;
                if (kind == MapKind::odometer) {
                    bool resolved = std::any_of(x.begin(), x.end(), [](auto d) { return d != 0; });
                    if (!resolved) continue;
                    for (std::size_t k = 0; k < y.size(); ++k) {
                        if (y[k] > 0) {
                            --y[k];
                            break;
                        }
                        y[k] = r[k] - 1;
                    }
                } else {
                    for (std::size_t k = 0; k < y.size(); ++k) y[k] = (y[k] + r[k] - 1) % r[k];
                }
                S direct = T.cell_measure[T.index(y)];
                S via = preimage_measure(spec, DepthSet::cylinder(r, x), 1);
                o.require(O::equal(via, direct), e.id + ": preimage measure at cell " + std::to_string(c));
                if (kind == MapKind::odometer)
                    o.require(O::equal(S(rn_derivative(spec, x) * T.cell_measure[c]), direct), e.id + ": h mu at cell " + std::to_string(c));
                ++cells_checked;
            }
        };
        if (exact) {
            check_cells(*exact);
        } else {
            floats.push_back(e.id);
            check_cells(approx);
        }

        // periods of random cylinder indicators
        for (int t = 0; t < 100; ++t) {
            const int d = 1 + int(rng() % D);
            Digits rd(r.begin(), r.begin() + d), x(d);
            for (int k = 0; k < d; ++k) x[k] = std::int64_t(rng() % std::uint64_t(rd[k]));
            auto f = SimpleFunction<Rational>::indicator(DepthSet::cylinder(rd, x));
            std::uint64_t want = 1;
            for (auto m : rd) want = kind == MapKind::odometer ? want * std::uint64_t(m) : std::lcm(want, std::uint64_t(m));
            std::uint64_t per = period_of(kind, f);
            o.require(per == want, e.id + ": period " + std::to_string(per) + " != " + std::to_string(want));
            o.require(b.order() % per == 0, e.id + ": period does not divide the order");
            o.require(apply_composition(kind, f, std::int64_t(per)) == f, e.id + ": C^period f != f");
            ++cylinders;
        }
    }
    o.detail << specs << " specs, " << cells_checked << " cells, " << cylinders << " cylinder periods";
    if (!floats.empty()) {
        o.detail << "; float-only (tolerance 1e-12):";
        for (const auto& id : floats) o.detail << " " << id;
    }
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
        {"boundedness identity on the harmonic binary odometer", criterion1},
        {"Ornstein classification", criterion2},
        {"binary alpha = 2: power boundedness", criterion3},
        {"hypercyclic, not mixing", criterion4},
        {"geometric mixing", criterion5},
        {"frequently hypercyclic, not mixing", criterion6},
        {"Hoeffding transitivity witness", criterion7},
        {"FHC witness", criterion8},
        {"translation blocks: beta and theta", criterion9},
        {"rigidity probe", criterion10},
        {"weighted shifts", criterion11},
        {"oracle equivalence", criterion12},
        {"structural invariants", criterion13},
    };
    return list;
}

bool run(int c) {
    const auto& [title, fn] = criteria().at(std::size_t(c - 1));
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o.pass = false;
        o.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << c << " " << (o.pass ? "PASS" : "FAIL") << " " << title << ": " << o.detail.str();
    for (const auto& f : o.failures) std::cout << " | " << f;
    std::cout << " (" << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
    std::cout.unsetf(std::ios::fixed);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run one criterion (1-13)")->check(CLI::Range(1, 13));
    CLI11_PARSE(app, argc, argv);
    bool ok = true;
    if (only) {
        ok = run(only);
    } else {
        for (int c = 1; c <= int(criteria().size()); ++c) ok = run(c) && ok;
    }
    return ok ? 0 : 1;
}
