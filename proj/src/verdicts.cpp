#include "odolab/verdicts.hpp"

#include "odolab/errors.hpp"
#include "odolab/symbol_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace odolab {

std::string to_string(Status s) {
    switch (s) {
        case Status::satisfied: return "satisfied";
        case Status::satisfied_up_to_horizon: return "satisfied-up-to-horizon";
        case Status::violated: return "violated";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(Mode m) { return m == Mode::closed_form ? "closed-form" : "numeric-horizon"; }

json Verdict::to_json() const {
    json j{{"theorem", theorem}, {"status", to_string(status)}, {"numeric_status", to_string(numeric_status)}, {"mode", to_string(mode)},
           {"evidence", evidence}};
    if (!note.empty()) j["note"] = note;
    return j;
}

std::vector<std::string> theorem_ids(MapKind kind) {
    if (kind == MapKind::odometer)
        return {"bounded", "thm:hc", "cor:hc", "EmmaUdayan", "EmmaUdayan-mixing", "thm:mixing", "thm:fhc", "cor:fhc0",
                "cor:fhc1", "cor:fhc2", "cor:fhc3", "thm:ufhc", "cor:ufhc0", "power-bounded", "isometry"};
    if (kind == MapKind::translation)
        return {"bounded", "hcsum", "hcsum-mixing", "Hoeffbis", "coprime", "fhcsum", "ufhcsum", "periodic-degenerate"};
    return shift_theorem_ids();
}

std::vector<std::string> shift_theorem_ids() { return {"bounded", "salas", "fhcshift"}; }

// ---- numeric rules ---------------------------------------------------------

namespace {

double max_of(const std::vector<double>& v, std::size_t a, std::size_t b) {
    double m = -HUGE_VAL;
    for (std::size_t k = a; k < b; ++k) m = std::max(m, v[k]);
    return m;
}
double min_of(const std::vector<double>& v, std::size_t a, std::size_t b) {
    double m = HUGE_VAL;
    for (std::size_t k = a; k < b; ++k) m = std::min(m, v[k]);
    return m;
}

json tail_json(const std::vector<double>& v, std::size_t count = 8) {
    json a = json::array();
    for (std::size_t k = v.size() > count ? v.size() - count : 0; k < v.size(); ++k) a.push_back(v[k]);
    return a;
}

}  // namespace

RuleOutcome rule_limsup_one(const std::vector<double>& v) {
    RuleOutcome o;
    if (v.size() < 4) {
        o.evidence["reason"] = "horizon too short";
        return o;
    }
    std::size_t h = v.size() / 2;
    double a = max_of(v, 0, h), b = max_of(v, h, v.size());
    o.evidence = {{"max_first_half", a}, {"max_second_half", b}, {"gap_to_1", 1 - b}};
    if (b > a && b > 0.5) {
        o.status = Status::satisfied_up_to_horizon;
        // records decelerating geometrically towards a limit below 1 are not evidence for limsup = 1
        std::vector<double> rec;
        for (double x : v)
            if (rec.empty() || x > rec.back()) rec.push_back(x);
        if (rec.size() >= 3) {
            double d1 = rec[rec.size() - 2] - rec[rec.size() - 3], d2 = rec.back() - rec[rec.size() - 2];
            if (d2 < d1) {
                double lim = rec.back() + d2 * d2 / (d1 - d2);
                o.evidence["aitken_limit"] = lim;
                if (lim <= 0.9) o.status = Status::violated;
            }
        }
    } else if (b <= 0.9 && b <= a) {
        o.status = Status::violated;
    }
    return o;
}

RuleOutcome rule_lim_one(const std::vector<double>& v) {
    RuleOutcome o;
    if (v.size() < 8) {
        o.evidence["reason"] = "horizon too short";
        return o;
    }
    std::size_t n = v.size(), h = n / 2, q = 3 * n / 4;
    double m3 = min_of(v, h, q), m4 = min_of(v, q, n);
    o.evidence = {{"min_third_quarter", m3}, {"min_last_quarter", m4}, {"gap_to_1", 1 - m4}};
    if (m4 > m3 && m4 > 0.5) o.status = Status::satisfied_up_to_horizon;
    else if (std::min(m3, m4) <= 0.9 && m4 <= m3) o.status = Status::violated;
    return o;
}

RuleOutcome rule_limsup_positive(const std::vector<double>& v) {
    RuleOutcome o;
    if (v.size() < 4) {
        o.evidence["reason"] = "horizon too short";
        return o;
    }
    std::size_t h = v.size() / 2;
    double margin = min_of(v, h, v.size()), head = max_of(v, 0, h), tail = max_of(v, h, v.size());
    o.evidence = {{"margin", margin}, {"max_first_half", head}, {"max_second_half", tail}};
    if (margin > 0 && margin >= 0.5 * head) o.status = Status::satisfied_up_to_horizon;
    else if (tail <= 1e-12) o.status = Status::violated;
    return o;
}

RuleOutcome rule_unbounded(const std::vector<double>& v, std::size_t head) {
    RuleOutcome o;
    head = std::max<std::size_t>(1, head);
    if (v.size() < 8 || head >= v.size()) {
        o.evidence["reason"] = "horizon too short";
        return o;
    }
    double a = max_of(v, 0, head), b = max_of(v, v.size() / 2, v.size()), all = max_of(v, 0, v.size());
    o.evidence = {{"max_head", a}, {"max_second_half", b}, {"head", head}};
    if (b > 1.5 * a && b >= all) o.status = Status::satisfied_up_to_horizon;
    else if (all <= 1e-12) o.status = Status::violated;
    return o;
}

HcSubsequence hc_subsequence(const std::vector<double>& theta, const std::vector<double>& last_weight, double tau, double budget) {
    HcSubsequence h;
    h.tau = tau;
    double sum = 0;
    std::size_t cur = 0;
    bool started = false;
    double gap = 1;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        bool cand = theta[i] >= tau && theta[i] > 0;
        if (!started) {
            if (cand) {
                started = true;
                cur = i;
                h.indices.push_back(std::int64_t(i) + 1);
                sum += theta[i];
                h.statistic.push_back(sum * sum);
                gap = 1;
            }
            continue;
        }
        double s = double(h.indices.size());
        if (cand && gap <= budget / (s * s)) {
            h.gap_sum += gap;
            cur = i;
            h.indices.push_back(std::int64_t(i) + 1);
            sum += theta[i];
            h.statistic.push_back(sum * sum / double(h.indices.size()));
            gap = 1;
        } else {
            gap *= last_weight[i];
        }
    }
    (void)cur;
    return h;
}

// ---- odometer / translation ------------------------------------------------

namespace {

template <class S>
std::vector<double> as_double(const std::vector<S>& v) {
    std::vector<double> d;
    d.reserve(v.size());
    for (const auto& x : v) d.push_back(ScalarOps<S>::to_double(x));
    return d;
}

Verdict from_rule(const std::string& id, const RuleOutcome& o) {
    Verdict v;
    v.theorem = id;
    v.status = v.numeric_status = o.status;
    v.evidence = o.evidence;
    return v;
}

Verdict exact_verdict(const std::string& id, bool holds, const std::string& why) {
    Verdict v;
    v.theorem = id;
    v.status = v.numeric_status = holds ? Status::satisfied : Status::violated;
    v.mode = Mode::closed_form;
    v.note = why;
    return v;
}

template <class S>
struct Ctx {
    const SystemSpec<S>& spec;
    const VerdictParams& p;
    std::optional<Periodicity> per;

    // indices covering one full period once the rules are periodic; needs i-1 as well
    std::pair<std::int64_t, std::int64_t> period_window() const { return {per->start + 1, per->start + 1 + per->period}; }

    template <class F>
    std::vector<double> seq(std::int64_t from, std::int64_t to, F f) const {
        std::vector<double> out;
        for (std::int64_t i = from; i < to; ++i) out.push_back(f(i));
        return out;
    }
    const std::vector<S>& w(std::int64_t i) const { return *spec.mu(i); }
    double d(const S& x) const { return ScalarOps<S>::to_double(x); }
    // horizon heuristics run on double weights
    mutable std::map<std::int64_t, std::vector<double>> dw;
    const std::vector<double>& wd(std::int64_t i) const {
        auto it = dw.find(i);
        if (it == dw.end()) it = dw.emplace(i, as_double(w(i))).first;
        return it->second;
    }
};

template <class S>
Verdict evaluate_odometer(const SystemSpec<S>& spec, const std::string& id, const VerdictParams& p) {
    Ctx<S> c{spec, p, spec.periodicity()};
    const std::int64_t H = p.horizon;
    auto eta = [&](std::int64_t i) { return c.d(eta_of(c.w(i))); };
    auto delta = [&](std::int64_t i) { return c.d(delta_of(c.w(i))); };
    auto periodic_max = [&](auto f) {
        auto [a, b] = c.period_window();
        auto v = c.seq(a, b, f);
        return *std::max_element(v.begin(), v.end());
    };
    bool bounded_alphabet = spec.alphabet().bound().has_value();

    if (id == "bounded") {
        auto r = boundedness(spec, p.horizon);
        Verdict v;
        v.theorem = id;
        v.evidence = {{"verdict", to_string(r.verdict)}, {"running_sup", to_double(r.running_sup.back())}, {"horizon", r.horizon}};
        if (r.verdict == BoundVerdict::unbounded_witness) v.evidence["witness_level"] = r.witness_level;
        if (!r.note.empty()) v.note = r.note;
        if (r.verdict == BoundVerdict::bounded_closed_form) {
            v.status = Status::satisfied;
            v.mode = Mode::closed_form;
        } else if (r.verdict == BoundVerdict::bounded_up_to_horizon) {
            v.status = Status::satisfied_up_to_horizon;
        } else {
            v.status = Status::violated;
            v.mode = r.note.find("periodic") != std::string::npos ? Mode::closed_form : Mode::numeric_horizon;
        }
        v.numeric_status = v.status;
        return v;
    }
    if (id == "cor:hc") {
        auto f = [&](std::int64_t i) { return eta(i) - delta(i); };
        if (c.per) {
            double m = periodic_max(f);
            auto v = exact_verdict(id, m > 0, "periodic rules: limsup(eta - delta) is the max over one period");
            v.evidence = {{"period_max", m}};
            return v;
        }
        return from_rule(id, rule_limsup_positive(c.seq(2, H + 1, f)));
    }
    if (id == "thm:hc") {
        std::vector<double> theta, last;
        for (std::int64_t i = 1; i <= H; ++i) {
            const auto& w = c.w(i);
            theta.push_back(c.d(theta_max(w).value));
            last.push_back(c.d(w.back()));
        }
        if (c.per) {
            auto [a, b] = c.period_window();
            double m = 0;
            for (std::int64_t i = a; i < b; ++i) m = std::max(m, c.d(theta_max(c.w(i)).value));
            auto v = exact_verdict(id, m > 0, m > 0 ? "periodic rules: theta bounded below along a subsequence, gaps chosen as in cor:hc"
                                                     : "periodic rules: theta vanishes identically");
            v.evidence = {{"period_max_theta", m}};
            return v;
        }
        double tmax = *std::max_element(theta.begin(), theta.end());
        Verdict best;
        best.theorem = id;
        if (tmax <= 0) {
            best.evidence = {{"reason", "theta vanishes up to the horizon"}};
            return best;
        }
        bool have = false;
        for (int r = 0; r <= 6; ++r) {
            auto h = hc_subsequence(theta, last, tmax / std::ldexp(1.0, r), p.tail_budget);
            auto o = rule_unbounded(h.statistic, std::max<std::size_t>(1, h.statistic.size() / 4));
            json ev = o.evidence;
            ev["tau"] = h.tau;
            ev["subsequence_length"] = h.indices.size();
            json idx = json::array();
            for (std::size_t k = 0; k < std::min<std::size_t>(h.indices.size(), 40); ++k) idx.push_back(h.indices[k]);
            ev["subsequence_head"] = idx;
            ev["condition_a_sum"] = h.gap_sum;
            ev["condition_a_bound"] = p.tail_budget * M_PI * M_PI / 6;
            if (!h.statistic.empty()) ev["statistic_last"] = h.statistic.back();
            if (!have || o.status == Status::satisfied_up_to_horizon) {
                best.status = best.numeric_status = o.status;
                best.evidence = ev;
                have = true;
            }
            if (o.status == Status::satisfied_up_to_horizon) break;
        }
        return best;
    }
    if (id == "EmmaUdayan" || id == "EmmaUdayan-mixing" || id == "cor:fhc2") {
        bool lim = id != "EmmaUdayan";
        if (id == "cor:fhc2" && !bounded_alphabet) {
            Verdict v;
            v.theorem = id;
            v.note = "hypothesis unavailable: alphabet not bounded";
            return v;
        }
        if (c.per) return exact_verdict(id, false, "periodic rules: eta_i < 1 repeats, so the limit is below 1");
        auto v = c.seq(1, H + 1, eta);
        return from_rule(id, lim ? rule_lim_one(v) : rule_limsup_one(v));
    }
    if (id == "thm:mixing" || id == "cor:fhc3") {
        if (id == "cor:fhc3" && !bounded_alphabet) {
            Verdict v;
            v.theorem = id;
            v.note = "hypothesis unavailable: alphabet not bounded";
            return v;
        }
        if (c.per) return exact_verdict(id, false, "periodic rules: kappa_i < 1 repeats");
        auto kap = [&](std::int64_t i) { return c.d(kappa_of(c.w(i)).value); };
        return from_rule(id, rule_lim_one(c.seq(1, H + 1, kap)));
    }
    if (id == "thm:fhc" || id == "cor:fhc0" || id == "cor:fhc1" || id == "cor:ufhc0") {
        if (id == "cor:fhc1" && !bounded_alphabet) {
            Verdict v;
            v.theorem = id;
            v.note = "hypothesis unavailable: alphabet not bounded";
            return v;
        }
        if (c.per) return exact_verdict(id, false, "periodic rules: the statistic is a periodic sequence below 1");
        std::int64_t top = id == "thm:fhc" ? std::min<std::int64_t>(H, p.gamma_horizon) : H;
        bool exact = true;
        auto f = [&](std::int64_t i) {
            const auto& prev = c.w(i - 1);
            const auto& w = c.w(i);
            double tail;
            if (id == "cor:fhc1") tail = c.d(prev.back());
            else if (id == "cor:ufhc0") tail = c.d(interval_tail(prev, p.kappa * std::int64_t(prev.size())));
            else tail = c.d(omega(prev, std::int64_t(w.size()), p.kappa));
            double g;
            if (id == "thm:fhc") {
                auto r = gamma_odometer(w, p.limits);
                exact = exact && r.exact;
                g = c.d(r.value);
            } else {
                g = eta(i);
            }
            return std::min(1 - tail, g);
        };
        auto v = from_rule(id, rule_limsup_one(c.seq(2, top + 1, f)));
        v.evidence["kappa"] = rational_string(p.kappa);
        v.evidence["horizon"] = top;
        if (!exact) v.evidence["gamma"] = "lower bounds (search cut short on some indices)";
        return v;
    }
    if (id == "thm:ufhc") {
        if (c.per) return exact_verdict(id, false, "periodic rules: the statistic is a periodic sequence below 1");
        std::int64_t top = std::min<std::int64_t>(H, p.gamma_horizon);
        auto f = [&](std::int64_t i) {
            const auto& prev = c.w(i - 1);
            const auto& w = c.w(i);
            std::int64_t mp = std::int64_t(prev.size()), m = std::int64_t(w.size());
            std::vector<double> per_shift;
            if (m <= 16) {
                per_shift = as_double(gamma_brute_per_shift(w));
            } else {
                for (std::int64_t j = 1; j < m; ++j)
                    per_shift.push_back(c.d(gamma_shift_search(w, j, std::max<std::uint64_t>(64, p.limits.per_shift / std::uint64_t(m))).value));
            }
            double best = 0;
            for (std::int64_t j = 1; j < m; ++j) {
                double tail = c.d(interval_tail(prev, Rational(mp - 1) - p.kappa * j * mp));
                best = std::max(best, std::min(1 - tail, per_shift[std::size_t(j - 1)]));
            }
            return best;
        };
        auto v = from_rule(id, rule_limsup_one(c.seq(2, top + 1, f)));
        v.evidence["kappa"] = rational_string(p.kappa);
        v.evidence["horizon"] = top;
        return v;
    }
    if (id == "power-bounded" || id == "isometry") {
        auto lr = [&](std::int64_t i) { return std::log(eta(i) / delta(i)); };
        if (c.per) {
            double m = periodic_max(lr);
            auto v = exact_verdict(id, m == 0, m == 0 ? "periodic rules: every mu_i uniform" : "periodic rules: eta/delta > 1 recurs");
            v.evidence = {{"period_max_log_ratio", m}};
            return v;
        }
        auto d = c.seq(1, H + 1, lr);
        if (id == "isometry") {
            double m = *std::max_element(d.begin(), d.end());
            Verdict v;
            v.theorem = id;
            v.status = v.numeric_status = m == 0 ? Status::satisfied_up_to_horizon : Status::violated;
            v.evidence = {{"max_log_ratio", m}};
            return v;
        }
        Verdict v;
        v.theorem = id;
        double total = std::accumulate(d.begin(), d.end(), 0.0);
        std::size_t n = d.size();
        double s2 = 0, s3 = 0;
        for (std::size_t k = n / 4; k < n / 2; ++k) s2 += double(k + 1) * d[k];
        for (std::size_t k = n / 2; k < n; ++k) s3 += double(k + 1) * d[k];
        s2 /= double(n / 2 - n / 4);
        s3 /= double(n - n / 2);
        double ratio = s2 > 0 ? s3 / s2 : 0;
        v.evidence = {{"log_partial_product", total}, {"partial_product", std::exp(total)}, {"tail_decay_ratio", ratio},
                      {"last_increment", std::exp(total) - std::exp(total - d.back())}};
        if (total == 0 || ratio <= 0.75) v.status = Status::satisfied_up_to_horizon;
        else if (ratio >= 1) v.status = Status::violated;
        v.numeric_status = v.status;
        v.note = "partial products of prod eta_i/delta_i; convergence bounds ||C^n|| uniformly";
        return v;
    }
    throw UnknownTheorem("'" + id + "' is not registered for odometers");
}

// lcm of the alphabet over one period (or the horizon) when the alphabet is bounded
template <class S>
std::optional<std::uint64_t> degenerate_order(const SystemSpec<S>& spec, int horizon) {
    if (!spec.alphabet().bound()) return std::nullopt;
    std::uint64_t L = 1;
    auto per = spec.alphabet().periodicity();
    std::int64_t top = per ? per->start + per->period : horizon;
    for (std::int64_t i = 1; i <= top; ++i) L = std::lcm(L, std::uint64_t(spec.m(i)));
    return L;
}

template <class S>
Verdict evaluate_translation(const SystemSpec<S>& spec, const std::string& id, const VerdictParams& p) {
    Ctx<S> c{spec, p, spec.periodicity()};
    const std::int64_t H = p.horizon;
    auto L = degenerate_order(spec, p.horizon);
    if (id == "periodic-degenerate") {
        Verdict v;
        v.theorem = id;
        if (L) {
            v = exact_verdict(id, true, "bounded alphabet: t^L = Id with L the lcm of the alphabet sizes");
            v.evidence = {{"order", *L}};
        } else {
            v.status = v.numeric_status = Status::violated;
            v.mode = Mode::closed_form;
            v.note = "alphabet unbounded";
        }
        return v;
    }
    if (id == "bounded") return evaluate_odometer(spec, id, p);
    if (L) {
        auto v = exact_verdict(id, false, "degenerate: t^L = Id for L = " + std::to_string(*L) + ", so C_t is not hypercyclic");
        v.evidence = {{"order", *L}};
        return v;
    }
    std::int64_t Hd = H;
    for (std::int64_t i = 1; i <= H; ++i)
        if (spec.m(i) > p.max_dense_m) {
            Hd = i - 1;
            break;
        }
    auto note_h = [&](Verdict& v) {
        v.evidence["index_horizon"] = Hd;
        if (Hd < H) v.note = "indices beyond " + std::to_string(Hd) + " skipped (alphabet larger than the dense limit)";
    };
    if (id == "hcsum") {
        auto v = from_rule(id, rule_limsup_one(c.seq(1, Hd + 1, [&](std::int64_t i) { return beta_of(c.wd(i)).value; })));
        note_h(v);
        return v;
    }
    if (id == "hcsum-mixing" || id == "Hoeffbis") {
        std::vector<double> out;
        for (int n = 1; n <= p.n_max; ++n) {
            if (id == "hcsum-mixing") {
                double best = 0;
                for (std::int64_t i = 1; i <= Hd; ++i) best = std::max(best, cycle_mwis(c.wd(i), n).value);
                out.push_back(best);
            } else {
                std::vector<double> th;
                for (std::int64_t i = 1; i <= Hd; ++i) th.push_back(theta_fixed(c.wd(i), n).value);
                out.push_back(gamma_tilde_scan(th).value);
            }
        }
        auto v = from_rule(id, id == "hcsum-mixing" ? rule_lim_one(out)
                                                    : rule_unbounded(out, std::size_t(std::sqrt(double(out.size())))));
        v.evidence["n_max"] = p.n_max;
        if (id == "Hoeffbis") v.evidence["gamma_tilde_tail"] = tail_json(out);
        note_h(v);
        return v;
    }
    if (id == "coprime") {
        for (std::int64_t i = 1; i <= Hd; ++i)
            for (std::int64_t k = 1; k < i; ++k)
                if (std::gcd(spec.m(i), spec.m(k)) != 1) {
                    Verdict v;
                    v.theorem = id;
                    v.note = "hypothesis unavailable: m_" + std::to_string(k) + " and m_" + std::to_string(i) + " share a factor";
                    return v;
                }
        std::vector<S> th;
        std::vector<double> out;
        for (std::int64_t i = 1; i <= Hd; ++i) {
            th.push_back(theta_max(c.w(i)).value);
            out.push_back(c.d(gamma_tilde_scan(th).value));
        }
        auto v = from_rule(id, rule_unbounded(out, std::size_t(std::sqrt(double(out.size())))));
        note_h(v);
        return v;
    }
    if (id == "fhcsum" || id == "ufhcsum") {
        // interval constructions of the flipped criteria; D is the top 2n (resp. n) symbols
        auto f = [&](std::int64_t i) -> double {
            const auto& w = c.w(i);
            std::int64_t m = std::int64_t(w.size());
            std::vector<double> pre(std::size_t(m) + 1, 0.0);
            for (std::int64_t x = 0; x < m; ++x) pre[std::size_t(x + 1)] = pre[std::size_t(x)] + c.d(w[std::size_t(x)]);
            auto cyc = [&](std::int64_t lo, std::int64_t len) {  // mu([lo, lo+len) mod m)
                lo = ((lo % m) + m) % m;
                if (lo + len <= m) return pre[std::size_t(lo + len)] - pre[std::size_t(lo)];
                return (pre[std::size_t(m)] - pre[std::size_t(lo)]) + pre[std::size_t(lo + len - m)];
            };
            if (id == "fhcsum") {
                std::int64_t n = m / 5, K = m / 6;
                if (n < 1) return 0;
                double best = 1;
                for (std::int64_t k = 0; k <= K; ++k) {
                    best = std::min(best, cyc(m - 2 * n - k, 2 * n));
                    best = std::min(best, 1 - cyc(m - 2 * n - 2 * n - k, 2 * n));
                }
                return best;
            }
            std::int64_t n = m / 3;
            if (n < 1) return 0;
            double muD = cyc(m - n, n);
            std::vector<double> vals;
            for (std::int64_t k = 1; k <= 2 * n; ++k) vals.push_back(cyc(m - n - k, n));
            std::size_t need = std::size_t(std::ceil(0.25 * double(vals.size())));
            std::nth_element(vals.begin(), vals.begin() + std::ptrdiff_t(need - 1), vals.end());
            return 1 - std::max(vals[need - 1], 1 - muD);
        };
        auto v = from_rule(id, rule_limsup_one(c.seq(1, Hd + 1, f)));
        v.evidence["construction"] = id == "fhcsum" ? "D = top 2n, n = floor(m/5), k <= m/6, d_i = m_i" : "D = top n, n = floor(m/3), alpha = 1/4 over [1, 2n]";
        note_h(v);
        return v;
    }
    throw UnknownTheorem("'" + id + "' is not registered for diagonal translations");
}

}  // namespace

template <class S>
Verdict evaluate(const SystemSpec<S>& spec, const std::string& theorem, const VerdictParams& params) {
    Verdict v = spec.kind() == MapKind::odometer ? evaluate_odometer(spec, theorem, params) : evaluate_translation(spec, theorem, params);
    auto it = params.closed_forms.find(theorem);
    if (it != params.closed_forms.end() && v.mode != Mode::closed_form) {
        bool contradicts = it->second.holds ? v.numeric_status == Status::violated
                                            : (v.numeric_status == Status::satisfied_up_to_horizon || v.numeric_status == Status::satisfied);
        v.evidence["registered_closed_form"] = it->second.formula;
        if (contradicts) {
            v.note = "numeric evidence contradicts the registered closed form";
        } else {
            v.status = it->second.holds ? Status::satisfied : Status::violated;
            v.mode = Mode::closed_form;
        }
    }
    return v;
}

Verdict evaluate_shift(const ShiftSystem& sys, const std::string& theorem, const VerdictParams& params) {
    Verdict v;
    v.theorem = theorem;
    v.mode = Mode::closed_form;
    if (theorem == "bounded") {
        auto b = shift_bound(sys, 64);
        v.status = Status::satisfied;
        v.evidence = {{"sup_ratio", rational_string(b.closed_form)}};
        v.note = "geometric weights: nu(i)/nu(phi(i)) takes finitely many values";
    } else if (theorem == "salas") {
        auto r = salas_check(sys, 0, 0, std::max(48, params.horizon / 4));
        v.status = r.monotone && r.tends_to_zero ? Status::satisfied : Status::inconclusive;
        json prod = json::array();
        for (std::size_t k = 0; k < std::min<std::size_t>(r.products.size(), 8); ++k) prod.push_back(rational_string(r.products[k]));
        v.evidence = {{"i", 0}, {"products_head", prod}, {"monotone", r.monotone}, {"tends_to_zero", r.tends_to_zero}};
        v.note = "geometric weights: the products are exactly geometric in n";
    } else if (theorem == "fhcshift") {
        Rational mass = sys.total_mass();
        auto b = shift_bound(sys, 64);
        v.status = Status::satisfied;
        v.evidence = {{"total_mass", rational_string(mass)}, {"shift_bound", rational_string(b.closed_form)}, {"offset", sys.offset()}};
        v.note = "finite mass, bounded ratio, and i -> i + offset has no periodic point";
    } else {
        throw UnknownTheorem("'" + theorem + "' is not registered for weighted shifts");
    }
    v.numeric_status = v.status;
    return v;
}

template Verdict evaluate<Rational>(const SystemSpec<Rational>&, const std::string&, const VerdictParams&);
template Verdict evaluate<double>(const SystemSpec<double>&, const std::string&, const VerdictParams&);

}  // namespace odolab
