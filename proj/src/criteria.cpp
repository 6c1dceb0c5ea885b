#include "odolab/criteria.hpp"

#include "odolab/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace odolab {

std::string to_string(Optimizer o) {
    switch (o) {
        case Optimizer::closed_form: return "closed-form";
        case Optimizer::dp: return "DP";
        case Optimizer::brute_force: return "brute-force";
        case Optimizer::search: return "search";
    }
    return "?";
}

namespace {

std::size_t mod(std::int64_t a, std::size_t m) {
    std::int64_t r = a % std::int64_t(m);
    return static_cast<std::size_t>(r < 0 ? r + std::int64_t(m) : r);
}

// max-weight independent set on a path; marks chosen positions
template <class S>
S path_best(const std::vector<S>& v, std::vector<std::uint8_t>& take) {
    std::size_t L = v.size();
    take.assign(L, 0);
    if (L == 0) return ScalarOps<S>::zero();
    std::vector<S> best(L);
    best[0] = v[0];
    if (L > 1) best[1] = v[1] > v[0] ? v[1] : v[0];
    for (std::size_t k = 2; k < L; ++k) {
        S with = best[k - 2] + v[k];
        best[k] = with > best[k - 1] ? with : best[k - 1];
    }
    for (std::size_t k = L; k-- > 0;) {
        S prev = k >= 1 ? best[k - 1] : ScalarOps<S>::zero();
        if (best[k] != prev) {
            take[k] = 1;
            if (k < 1) break;
            --k;  // skip the neighbour
        }
    }
    return best[L - 1];
}

template <class S>
void check_weights(const std::vector<S>& w) {
    if (w.size() < 2) throw DomainError("alphabet needs m >= 2");
}

}  // namespace

template <class S>
S eta_of(const std::vector<S>& w) {
    return *std::max_element(w.begin(), w.end());
}

template <class S>
S delta_of(const std::vector<S>& w) {
    return *std::min_element(w.begin(), w.end());
}

template <class S>
SubsetOpt<S> theta_fixed(const std::vector<S>& w, std::int64_t k) {
    check_weights(w);
    std::size_t m = w.size();
    SubsetOpt<S> r;
    r.optimizer = Optimizer::closed_form;
    r.shift = static_cast<std::int64_t>(mod(k, m));
    r.set.assign(m, 0);
    r.value = ScalarOps<S>::zero();
    for (std::size_t j = 0; j < m; ++j) {
        const S& a = w[j];
        const S& b = w[(j + r.shift) % m];
        if (a > b) {
            r.value += a - b;
            r.set[j] = 1;
        }
    }
    r.upper = r.value;
    return r;
}

template <class S>
SubsetOpt<S> theta_max(const std::vector<S>& w) {
    check_weights(w);
    SubsetOpt<S> best = theta_fixed(w, 1);
    for (std::size_t k = 2; k < w.size(); ++k) {
        auto t = theta_fixed(w, std::int64_t(k));
        if (t.value > best.value) best = std::move(t);
    }
    return best;
}

template <class S>
SubsetOpt<S> path_mwis(const std::vector<S>& w, std::int64_t j) {
    check_weights(w);
    std::size_t m = w.size();
    if (j < 1 || std::size_t(j) >= m) throw DomainError("shift j must lie in [1, m-1]");
    SubsetOpt<S> r;
    r.shift = j;
    r.set.assign(m, 0);
    r.value = ScalarOps<S>::zero();
    std::vector<S> v;
    std::vector<std::uint8_t> take;
    for (std::size_t start = 0; start < std::size_t(j); ++start) {
        v.clear();
        for (std::size_t x = start; x < m; x += std::size_t(j)) v.push_back(w[x]);
        r.value += path_best(v, take);
        for (std::size_t t = 0; t < v.size(); ++t)
            if (take[t]) r.set[start + t * std::size_t(j)] = 1;
    }
    r.upper = r.value;
    return r;
}

template <class S>
SubsetOpt<S> kappa_of(const std::vector<S>& w) {
    check_weights(w);
    SubsetOpt<S> best = path_mwis(w, 1);
    for (std::size_t j = 2; j < w.size(); ++j) {
        auto t = path_mwis(w, std::int64_t(j));
        if (t.value < best.value) best = std::move(t);
    }
    return best;
}

template <class S>
SubsetOpt<S> cycle_mwis(const std::vector<S>& w, std::int64_t n) {
    check_weights(w);
    std::size_t m = w.size();
    SubsetOpt<S> r;
    r.shift = static_cast<std::int64_t>(mod(n, m));
    r.set.assign(m, 0);
    r.value = ScalarOps<S>::zero();
    if (r.shift == 0) {
        r.upper = r.value;
        return r;
    }
    std::size_t step = std::size_t(r.shift);
    std::size_t g = std::gcd(step, m), L = m / g;
    std::vector<S> v;
    std::vector<std::size_t> pos;
    std::vector<std::uint8_t> take, take2;
    for (std::size_t start = 0; start < g; ++start) {
        v.clear();
        pos.clear();
        for (std::size_t t = 0, x = start; t < L; ++t, x = (x + step) % m) {
            v.push_back(w[x]);
            pos.push_back(x);
        }
        if (L == 2) {
            std::size_t k = v[1] > v[0] ? 1 : 0;
            r.value += v[k];
            r.set[pos[k]] = 1;
            continue;
        }
        // first vertex excluded, or included with both neighbours excluded
        std::vector<S> a(v.begin() + 1, v.end());
        S without = path_best(a, take);
        std::vector<S> b(v.begin() + 2, v.end() - 1);
        S with = v[0] + path_best(b, take2);
        if (with > without) {
            r.value += with;
            r.set[pos[0]] = 1;
            for (std::size_t t = 0; t < b.size(); ++t)
                if (take2[t]) r.set[pos[t + 2]] = 1;
        } else {
            r.value += without;
            for (std::size_t t = 0; t < a.size(); ++t)
                if (take[t]) r.set[pos[t + 1]] = 1;
        }
    }
    r.upper = r.value;
    return r;
}

template <class S>
SubsetOpt<S> beta_of(const std::vector<S>& w) {
    check_weights(w);
    SubsetOpt<S> best = cycle_mwis(w, 1);
    for (std::size_t n = 2; n < w.size(); ++n) {
        auto t = cycle_mwis(w, std::int64_t(n));
        if (t.value > best.value) best = std::move(t);
    }
    return best;
}

// ---- gamma ---------------------------------------------------------------

namespace {

template <class S>
struct GammaBB {
    std::size_t m;
    std::vector<std::size_t> order;  // items by p/q descending
    std::vector<double> p, q;        // per item, in order
    std::vector<S> ps, qs;
    std::vector<std::uint8_t> chosen;
    S a, b, inc;
    double inc_d = -1;
    std::vector<std::uint8_t> best_set;
    std::uint64_t nodes = 0, limit = 0;
    bool truncated = false;
    double open_bound = 0;  // max bound among nodes left unexplored

    double lp_bound(std::size_t pos, double ad, double bd) const {
        if (ad >= 1 - bd) return 1 - bd;
        for (std::size_t t = pos; t < m; ++t) {
            double f = (1 - bd - ad) / (p[t] + q[t]);
            if (f >= 1) {
                ad += p[t];
                bd += q[t];
            } else {
                return ad + f * p[t];
            }
        }
        return ad;
    }

    void consider(double ad, double bd) {
        double cur = std::min(ad, 1 - bd);
        if (cur <= inc_d - 1e-9) return;
        S one_minus_b = ScalarOps<S>::one() - b;
        const S& val = a < one_minus_b ? a : one_minus_b;
        if (val > inc) {
            inc = val;
            inc_d = ScalarOps<S>::to_double(inc);
            best_set.assign(m, 0);
            for (std::size_t t = 0; t < m; ++t)
                if (chosen[t]) best_set[order[t]] = 1;
        }
    }

    void dfs(std::size_t pos, double ad, double bd) {
        consider(ad, bd);
        if (pos == m) return;
        double bound = lp_bound(pos, ad, bd);
        if (bound <= inc_d + 1e-9) return;
        if (++nodes > limit) {
            truncated = true;
            open_bound = std::max(open_bound, bound);
            return;
        }
        chosen[pos] = 1;
        a += ps[pos];
        b += qs[pos];
        dfs(pos + 1, ad + p[pos], bd + q[pos]);
        a -= ps[pos];
        b -= qs[pos];
        chosen[pos] = 0;
        dfs(pos + 1, ad, bd);
    }
};

}  // namespace

template <class S>
SubsetOpt<S> gamma_shift_search(const std::vector<S>& w, std::int64_t j, std::uint64_t node_limit) {
    check_weights(w);
    std::size_t m = w.size();
    if (j < 1 || std::size_t(j) >= m) throw DomainError("shift j must lie in [1, m-1]");
    GammaBB<S> bb;
    bb.m = m;
    bb.limit = node_limit;
    bb.order.resize(m);
    std::iota(bb.order.begin(), bb.order.end(), 0);
    std::vector<double> wd(m);
    for (std::size_t x = 0; x < m; ++x) wd[x] = ScalarOps<S>::to_double(w[x]);
    auto qi = [&](std::size_t x) { return (x + std::size_t(j)) % m; };
    std::stable_sort(bb.order.begin(), bb.order.end(), [&](std::size_t x, std::size_t y) {
        return wd[x] * wd[qi(y)] > wd[y] * wd[qi(x)];
    });
    for (std::size_t x : bb.order) {
        bb.p.push_back(wd[x]);
        bb.q.push_back(wd[qi(x)]);
        bb.ps.push_back(w[x]);
        bb.qs.push_back(w[qi(x)]);
    }
    bb.chosen.assign(m, 0);
    bb.a = bb.b = ScalarOps<S>::zero();
    // incumbent: the heaviest point, then the ratio-sorted prefixes
    std::size_t top = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    {
        S one_minus = ScalarOps<S>::one() - w[qi(top)];
        bb.inc = w[top] < one_minus ? w[top] : one_minus;
        bb.inc_d = ScalarOps<S>::to_double(bb.inc);
        bb.best_set.assign(m, 0);
        bb.best_set[top] = 1;
    }
    {
        double ad = 0, bd = 0;
        for (std::size_t t = 0; t < m; ++t) {
            bb.chosen[t] = 1;
            bb.a += bb.ps[t];
            bb.b += bb.qs[t];
            ad += bb.p[t];
            bd += bb.q[t];
            bb.consider(ad, bd);
        }
        bb.chosen.assign(m, 0);
        bb.a = bb.b = ScalarOps<S>::zero();
    }
    bb.dfs(0, 0.0, 0.0);
    SubsetOpt<S> r;
    r.optimizer = Optimizer::search;
    r.shift = j;
    r.value = bb.inc;
    r.set = bb.best_set;
    r.exact = !bb.truncated;
    r.nodes = bb.nodes;
    r.upper = r.exact ? r.value : ScalarOps<S>::from(Rational(std::min(1.0, bb.open_bound + 1e-9)));
    if (!r.exact && r.upper < r.value) r.upper = r.value;
    return r;
}

template <class S>
SubsetOpt<S> gamma_search(const std::vector<S>& w, const SearchLimits& limits) {
    check_weights(w);
    std::size_t m = w.size();
    std::vector<double> wd(m);
    for (std::size_t x = 0; x < m; ++x) wd[x] = ScalarOps<S>::to_double(w[x]);
    SubsetOpt<S> best;
    bool have = false;
    std::uint64_t used = 0;
    bool exact = true;
    double open_upper = 0;
    // order shifts by their root bound so good incumbents come first
    std::vector<std::pair<double, std::size_t>> roots;
    for (std::size_t j = 1; j < m; ++j) {
        std::vector<std::pair<double, double>> items(m);
        for (std::size_t x = 0; x < m; ++x) items[x] = {wd[x], wd[(x + j) % m]};
        std::sort(items.begin(), items.end(), [](auto& u, auto& v) { return u.first * v.second > v.first * u.second; });
        double ad = 0, bd = 0, bound = 0;
        bool done = false;
        for (auto& [p, q] : items) {
            double f = (1 - bd - ad) / (p + q);
            if (f >= 1) {
                ad += p;
                bd += q;
            } else {
                bound = ad + f * p;
                done = true;
                break;
            }
        }
        if (!done) bound = std::min(ad, 1 - bd);
        roots.push_back({bound, j});
    }
    std::stable_sort(roots.begin(), roots.end(), [](auto& u, auto& v) { return u.first > v.first; });
    for (auto [bound, j] : roots) {
        if (have && bound <= ScalarOps<S>::to_double(best.value) + 1e-9) continue;
        if (used >= limits.total) {
            exact = false;
            open_upper = std::max(open_upper, bound);
            continue;
        }
        auto r = gamma_shift_search(w, std::int64_t(j), std::min<std::uint64_t>(limits.per_shift, limits.total - used));
        used += r.nodes;
        if (!r.exact) {
            exact = false;
            open_upper = std::max(open_upper, ScalarOps<S>::to_double(r.upper));
        }
        if (!have || r.value > best.value) {
            best = std::move(r);
            have = true;
        }
    }
    best.exact = exact;
    best.nodes = used;
    best.optimizer = Optimizer::search;
    best.upper = best.value;
    if (!exact) {
        S u = ScalarOps<S>::from(Rational(std::min(1.0, open_upper + 1e-9)));
        if (u > best.upper) best.upper = u;
    }
    return best;
}

template <class S>
std::vector<S> gamma_brute_per_shift(const std::vector<S>& w) {
    check_weights(w);
    std::size_t m = w.size();
    if (m > 16) throw CapExceeded("brute-force gamma is limited to m <= 16");
    std::uint32_t full = (1u << m) - 1;
    std::vector<S> sum(std::size_t(full) + 1, ScalarOps<S>::zero());
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
        sum[mask] = sum[mask & (mask - 1)] + w[low];
    }
    std::vector<S> out;
    for (std::size_t j = 1; j < m; ++j) {
        S best = ScalarOps<S>::zero();
        S thr = ScalarOps<S>::one();  // need sum[rot] < 1 - best
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            if (!(sum[mask] > best)) continue;
            std::uint32_t rot = ((mask << j) | (mask >> (m - j))) & full;
            if (!(sum[rot] < thr)) continue;
            S one_minus = ScalarOps<S>::one() - sum[rot];
            best = sum[mask] < one_minus ? sum[mask] : one_minus;
            thr = ScalarOps<S>::one() - best;
        }
        out.push_back(best);
    }
    return out;
}

template <class S>
SubsetOpt<S> gamma_brute(const std::vector<S>& w) {
    auto per = gamma_brute_per_shift(w);
    SubsetOpt<S> r;
    r.optimizer = Optimizer::brute_force;
    std::size_t k = static_cast<std::size_t>(std::max_element(per.begin(), per.end()) - per.begin());
    r.value = r.upper = per[k];
    r.shift = std::int64_t(k) + 1;
    // recover a maximizing set for the winning shift
    std::size_t m = w.size();
    std::uint32_t full = (1u << m) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        S a = ScalarOps<S>::zero(), b = ScalarOps<S>::zero();
        for (std::size_t x = 0; x < m; ++x)
            if (mask >> x & 1) {
                a += w[x];
                b += w[(x + std::size_t(r.shift)) % m];
            }
        S one_minus = ScalarOps<S>::one() - b;
        if (ScalarOps<S>::equal(a < one_minus ? a : one_minus, r.value)) {
            r.set.assign(m, 0);
            for (std::size_t x = 0; x < m; ++x) r.set[x] = mask >> x & 1;
            break;
        }
    }
    return r;
}

template <class S>
SubsetOpt<S> gamma_odometer(const std::vector<S>& w, const SearchLimits& limits) {
    if (w.size() <= 16) return gamma_brute(w);
    return gamma_search(w, limits);
}

template <class S>
S interval_tail(const std::vector<S>& w, const Rational& lower) {
    std::int64_t m = std::int64_t(w.size());
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), lower.get_num_mpz_t(), lower.get_den_mpz_t());
    std::int64_t lo = 0;
    if (c > 0) lo = c > m ? m : c.get_si();
    S s = ScalarOps<S>::zero();
    for (std::int64_t x = lo; x < m; ++x) s += w[std::size_t(x)];
    return s;
}

template <class S>
S omega(const std::vector<S>& w, std::int64_t m_next, const Rational& kappa) {
    std::int64_t m = std::int64_t(w.size());
    return interval_tail(w, Rational(m - 1) - kappa * m * m_next);
}

template <class S>
GammaTilde<S> gamma_tilde_scan(const std::vector<S>& thetas) {
    GammaTilde<S> g;
    g.value = ScalarOps<S>::zero();
    std::vector<std::size_t> idx(thetas.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return thetas[a] > thetas[b]; });
    S run = ScalarOps<S>::zero();
    for (std::size_t t = 0; t < idx.size(); ++t) {
        run += thetas[idx[t]];
        S v = run * run / S(long(t + 1));
        if (v > g.value) {
            g.value = v;
            g.size = t + 1;
        }
    }
    g.members.assign(idx.begin(), idx.begin() + std::ptrdiff_t(g.size));
    return g;
}

// ---- table -----------------------------------------------------------------

template <class S>
CriteriaTable<S> criteria_table(const SystemSpec<S>& spec, const TableOptions& opt) {
    if (opt.horizon < 1) throw DomainError("table horizon must be >= 1");
    CriteriaTable<S> t;
    t.kind = spec.kind();
    t.kappa = opt.kappa;
    for (std::int64_t i = 1; i <= opt.horizon; ++i) {
        const auto& w = *spec.mu(i);
        CriteriaRow<S> r;
        r.i = i;
        r.m = std::int64_t(w.size());
        r.eta = eta_of(w);
        r.delta = delta_of(w);
        auto th = theta_max(w);
        r.theta = th.value;
        r.theta_shift = th.shift;
        if (spec.kind() == MapKind::odometer) {
            r.kappa = kappa_of(w).value;
            r.omega = omega(w, spec.m(i + 1), opt.kappa);
            if (opt.with_gamma && i <= opt.gamma_horizon) {
                auto g = gamma_odometer(w, opt.limits);
                r.gamma = g.value;
                r.has_gamma = true;
                r.gamma_exact = g.exact;
                r.gamma_optimizer = g.optimizer;
            }
        } else {
            r.beta = beta_of(w).value;
        }
        t.rows.push_back(std::move(r));
    }
    if (spec.kind() == MapKind::translation) {
        int nmax = opt.n_max > 0 ? opt.n_max : opt.horizon;
        std::vector<S> thetas(std::size_t(opt.horizon));
        for (int n = 1; n <= std::min(nmax, opt.horizon); ++n) {
            S best = ScalarOps<S>::zero();
            for (std::int64_t i = 1; i <= opt.horizon; ++i) {
                const auto& w = *spec.mu(i);
                S a = cycle_mwis(w, n).value;
                if (a > best) best = a;
                thetas[std::size_t(i - 1)] = theta_fixed(w, n).value;
            }
            t.rows[std::size_t(n - 1)].gamma_n = best;
            t.rows[std::size_t(n - 1)].gamma_tilde = gamma_tilde_scan(thetas).value;
        }
    }
    return t;
}

template <class S>
std::string CriteriaTable<S>::to_tsv() const {
    std::ostringstream os;
    if (kind == MapKind::odometer) {
        os << "i\tm_i\teta\tdelta\ttheta\ttheta_shift\tkappa\tgamma\tomega(" << rational_string(kappa) << ")\toptimizer\n";
        for (const auto& r : rows) {
            os << r.i << '\t' << r.m << '\t' << scalar_string(r.eta) << '\t' << scalar_string(r.delta) << '\t' << scalar_string(r.theta)
               << '\t' << r.theta_shift << '\t' << scalar_string(r.kappa) << '\t' << (r.has_gamma ? scalar_string(r.gamma) : "-") << '\t'
               << scalar_string(r.omega) << '\t' << "theta:closed-form,kappa:DP,gamma:"
               << (r.has_gamma ? to_string(r.gamma_optimizer) + (r.gamma_exact ? "" : "(lower-bound)") : "-") << '\n';
        }
    } else {
        os << "i\tm_i\teta\tdelta\ttheta\ttheta_shift\tbeta\tgamma_n\tgamma_tilde_n\toptimizer\n";
        for (const auto& r : rows) {
            os << r.i << '\t' << r.m << '\t' << scalar_string(r.eta) << '\t' << scalar_string(r.delta) << '\t' << scalar_string(r.theta)
               << '\t' << r.theta_shift << '\t' << scalar_string(r.beta) << '\t' << scalar_string(r.gamma_n) << '\t'
               << scalar_string(r.gamma_tilde) << '\t' << "theta:closed-form,beta:DP,gamma_n:DP(horizon),gamma_tilde:prefix-scan(lower-bound)\n";
        }
    }
    return os.str();
}

#define ODOLAB_INSTANTIATE(S)                                                                 \
    template S eta_of<S>(const std::vector<S>&);                                              \
    template S delta_of<S>(const std::vector<S>&);                                            \
    template SubsetOpt<S> theta_fixed<S>(const std::vector<S>&, std::int64_t);                \
    template SubsetOpt<S> theta_max<S>(const std::vector<S>&);                                \
    template SubsetOpt<S> path_mwis<S>(const std::vector<S>&, std::int64_t);                  \
    template SubsetOpt<S> kappa_of<S>(const std::vector<S>&);                                 \
    template SubsetOpt<S> cycle_mwis<S>(const std::vector<S>&, std::int64_t);                 \
    template SubsetOpt<S> beta_of<S>(const std::vector<S>&);                                  \
    template SubsetOpt<S> gamma_shift_search<S>(const std::vector<S>&, std::int64_t, std::uint64_t); \
    template SubsetOpt<S> gamma_search<S>(const std::vector<S>&, const SearchLimits&);        \
    template SubsetOpt<S> gamma_brute<S>(const std::vector<S>&);                              \
    template std::vector<S> gamma_brute_per_shift<S>(const std::vector<S>&);                  \
    template SubsetOpt<S> gamma_odometer<S>(const std::vector<S>&, const SearchLimits&);      \
    template S interval_tail<S>(const std::vector<S>&, const Rational&);                      \
    template S omega<S>(const std::vector<S>&, std::int64_t, const Rational&);                \
    template GammaTilde<S> gamma_tilde_scan<S>(const std::vector<S>&);                        \
    template struct CriteriaTable<S>;                                                         \
    template CriteriaTable<S> criteria_table<S>(const SystemSpec<S>&, const TableOptions&);

ODOLAB_INSTANTIATE(Rational)
ODOLAB_INSTANTIATE(double)

}  // namespace odolab
