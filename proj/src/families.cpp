#include "odolab/families.hpp"

#include "odolab/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace odolab {

std::optional<Periodicity> combine(const std::optional<Periodicity>& a, const std::optional<Periodicity>& b) {
    if (!a || !b) return std::nullopt;
    return Periodicity{std::max(a->start, b->start), std::lcm(a->period, b->period)};
}

std::vector<Rational> MeasureRule::rational(std::int64_t, const AlphabetRule&) const {
    throw BackendUnsupported("measure family '" + to_json().value("family", std::string("?")) +
                             "' has no exact rational weights; use the float backend");
}

std::vector<double> MeasureRule::floating(std::int64_t i, const AlphabetRule& alphabet) const {
    auto q = rational(i, alphabet);
    std::vector<double> out;
    out.reserve(q.size());
    for (const auto& v : q) out.push_back(v.get_d());
    return out;
}

namespace {

Rational param_rational(const json& params, const char* key, const std::string& fallback = "") {
    if (!params.contains(key)) {
        if (fallback.empty()) throw SpecError(std::string("missing parameter '") + key + "'");
        return parse_rational(fallback);
    }
    const json& v = params.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number()) return parse_rational(decimal_string(v.get<double>()));
    throw SpecError(std::string("parameter '") + key + "' must be a number or \"p/q\" string");
}

std::int64_t param_int(const json& params, const char* key, std::optional<std::int64_t> fallback = std::nullopt) {
    if (!params.contains(key)) {
        if (!fallback) throw SpecError(std::string("missing parameter '") + key + "'");
        return *fallback;
    }
    Rational q = param_rational(params, key);
    if (q.get_den() != 1) throw SpecError(std::string("parameter '") + key + "' must be an integer");
    return q.get_num().get_si();
}

std::string param_string(const json& params, const char* key, const std::string& fallback) {
    if (!params.contains(key)) return fallback;
    if (!params.at(key).is_string()) throw SpecError(std::string("parameter '") + key + "' must be a string");
    return params.at(key).get<std::string>();
}

json family_json(const std::string& family, json params = json::object()) {
    return json{{"family", family}, {"params", std::move(params)}};
}

std::int64_t checked_m(std::int64_t m, std::int64_t i) {
    if (m < 2) throw SpecError("alphabet rule produced m_" + std::to_string(i) + " = " + std::to_string(m) + " < 2");
    return m;
}

// ----- alphabets -----

class ConstantAlphabet final : public AlphabetRule {
public:
    explicit ConstantAlphabet(std::int64_t m) : m_(checked_m(m, 1)) {}
    std::int64_t size(std::int64_t) const override { return m_; }
    json to_json() const override { return family_json("constant", {{"m", m_}}); }
    std::optional<Periodicity> periodicity() const override { return Periodicity{1, 1}; }
    std::optional<std::int64_t> bound() const override { return m_; }

private:
    std::int64_t m_;
};

class AffineAlphabet final : public AlphabetRule {
public:
    AffineAlphabet(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
        if (a < 0 || a + b < 2) throw SpecError("affine alphabet needs a >= 0 and a + b >= 2");
    }
    std::int64_t size(std::int64_t i) const override { return a_ * i + b_; }
    json to_json() const override { return family_json("affine", {{"a", a_}, {"b", b_}}); }
    std::optional<Periodicity> periodicity() const override {
        if (a_ == 0) return Periodicity{1, 1};
        return std::nullopt;
    }
    std::optional<std::int64_t> bound() const override {
        if (a_ == 0) return b_;
        return std::nullopt;
    }

private:
    std::int64_t a_, b_;
};

class PowerAlphabet final : public AlphabetRule {
public:
    PowerAlphabet(std::int64_t e, std::int64_t shift) : e_(e), shift_(shift) {
        if (e < 1 || 1 + shift < 2) throw SpecError("power alphabet needs exponent >= 1 and shift >= 1");
    }
    std::int64_t size(std::int64_t i) const override {
        std::int64_t r = 1;
        for (std::int64_t k = 0; k < e_; ++k) r *= (i + shift_);
        return r;
    }
    json to_json() const override { return family_json("power", {{"exponent", e_}, {"shift", shift_}}); }

private:
    std::int64_t e_, shift_;
};

// m_i = 2^{l+1} for l^2 <= i < (l+1)^2
class BlocksPow2Alphabet final : public AlphabetRule {
public:
    std::int64_t size(std::int64_t i) const override {
        std::int64_t l = static_cast<std::int64_t>(std::sqrt(static_cast<double>(i)));
        while (l * l > i) --l;
        while ((l + 1) * (l + 1) <= i) ++l;
        if (l + 1 >= 62) throw SpecError("blocks-pow2 alphabet overflows at i = " + std::to_string(i));
        return std::int64_t(1) << (l + 1);
    }
    json to_json() const override { return family_json("blocks-pow2"); }
};

// m_i = scale * 2^(i + offset)
class ScaledPow2Alphabet final : public AlphabetRule {
public:
    ScaledPow2Alphabet(std::int64_t scale, std::int64_t offset) : scale_(scale), offset_(offset) {
        if (scale < 1 || scale * std::pow(2.0, 1 + offset) < 2) throw SpecError("scaled-pow2 alphabet gives m_1 < 2");
    }
    std::int64_t size(std::int64_t i) const override {
        std::int64_t e = i + offset_;
        if (e >= 60) throw SpecError("scaled-pow2 alphabet overflows at i = " + std::to_string(i));
        return scale_ * (std::int64_t(1) << e);
    }
    json to_json() const override { return family_json("scaled-pow2", {{"scale", scale_}, {"offset", offset_}}); }

private:
    std::int64_t scale_, offset_;
};

// m_1 = 2, m_i / m_{i-1} = k 2^i when i = 2^k with k >= 3, otherwise 2
class SparseJumpAlphabet final : public AlphabetRule {
public:
    static std::int64_t ratio(std::int64_t i) {
        if (i >= 8 && (i & (i - 1)) == 0) {
            std::int64_t k = 0;
            while ((std::int64_t(1) << k) < i) ++k;
            return k * (std::int64_t(1) << i);
        }
        return 2;
    }
    std::int64_t size(std::int64_t i) const override {
        long double m = 2;
        std::int64_t r = 2;
        for (std::int64_t j = 2; j <= i; ++j) {
            m *= ratio(j);
            if (m > 4.0e18L) throw SpecError("sparse-jump alphabet overflows at i = " + std::to_string(i));
            r *= ratio(j);
        }
        return r;
    }
    json to_json() const override { return family_json("sparse-jump"); }
};

class ListAlphabet final : public AlphabetRule {
public:
    ListAlphabet(std::vector<std::int64_t> list, std::string repeat) : list_(std::move(list)), repeat_(std::move(repeat)) {
        if (list_.empty()) throw SpecError("alphabet list is empty");
        if (repeat_ != "cycle" && repeat_ != "last") throw SpecError("alphabet repeat must be 'cycle' or 'last'");
        for (std::size_t k = 0; k < list_.size(); ++k) checked_m(list_[k], std::int64_t(k) + 1);
    }
    std::int64_t size(std::int64_t i) const override {
        std::size_t n = list_.size();
        std::size_t k = static_cast<std::size_t>(i - 1);
        if (k < n) return list_[k];
        return repeat_ == "cycle" ? list_[k % n] : list_.back();
    }
    json to_json() const override { return json{{"list", list_}, {"repeat", repeat_}}; }
    std::optional<Periodicity> periodicity() const override {
        if (repeat_ == "cycle") return Periodicity{1, std::int64_t(list_.size())};
        return Periodicity{std::int64_t(list_.size()), 1};
    }
    std::optional<std::int64_t> bound() const override { return *std::max_element(list_.begin(), list_.end()); }

private:
    std::vector<std::int64_t> list_;
    std::string repeat_;
};

// ----- measures -----

std::vector<Rational> uniform_rational(std::int64_t m) { return std::vector<Rational>(m, Rational(1, m)); }

class UniformMeasure final : public MeasureRule {
public:
    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override { return uniform_rational(a.size(i)); }
    std::vector<double> floating(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t m = a.size(i);
        return std::vector<double>(m, 1.0 / double(m));
    }
    json to_json() const override { return family_json("uniform"); }
    std::optional<Periodicity> periodicity() const override { return Periodicity{1, 1}; }
};

class ListMeasure final : public MeasureRule {
public:
    ListMeasure(std::vector<std::vector<Rational>> w, std::string repeat) : w_(std::move(w)), repeat_(std::move(repeat)) {
        if (w_.empty()) throw SpecError("measure list is empty");
        if (repeat_ != "cycle" && repeat_ != "last") throw SpecError("measure repeat must be 'cycle' or 'last'");
    }
    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        std::size_t n = w_.size(), k = static_cast<std::size_t>(i - 1);
        const auto& v = k < n ? w_[k] : (repeat_ == "cycle" ? w_[k % n] : w_.back());
        if (std::int64_t(v.size()) != a.size(i))
            throw SpecError("measure list entry for i = " + std::to_string(i) + " has " + std::to_string(v.size()) +
                            " weights but m_i = " + std::to_string(a.size(i)));
        return v;
    }
    json to_json() const override {
        json rows = json::array();
        for (const auto& r : w_) {
            json row = json::array();
            for (const auto& q : r) row.push_back(rational_string(q));
            rows.push_back(row);
        }
        return family_json("list", {{"weights", rows}, {"repeat", repeat_}});
    }
    std::optional<Periodicity> periodicity() const override {
        if (repeat_ == "cycle") return Periodicity{1, std::int64_t(w_.size())};
        return Periodicity{std::int64_t(w_.size()), 1};
    }

private:
    std::vector<std::vector<Rational>> w_;
    std::string repeat_;
};

std::int64_t require_binary(std::int64_t i, const AlphabetRule& a, const char* fam) {
    std::int64_t m = a.size(i);
    if (m != 2) throw SpecError(std::string(fam) + " measure needs m_i = 2 (got " + std::to_string(m) + " at i = " + std::to_string(i) + ")");
    return m;
}

std::vector<Rational> binary(const Rational& p0) { return {p0, Rational(1 - p0)}; }

// mu(0) = 1/2, mu(j) = 1/(2(m-1))
class OrnsteinMeasure final : public MeasureRule {
public:
    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t m = a.size(i);
        std::vector<Rational> w(m, Rational(1, 2 * (m - 1)));
        w[0] = Rational(1, 2);
        return w;
    }
    json to_json() const override { return family_json("ornstein"); }
    std::optional<Periodicity> periodicity() const override { return Periodicity{1, 1}; }
};

// mu_i(0) = 1/2 + i^-alpha where that is below 1, uniform otherwise
class BinaryAlphaMeasure final : public MeasureRule {
public:
    explicit BinaryAlphaMeasure(Rational alpha) : alpha_(std::move(alpha)) {
        if (sgn(alpha_) <= 0) throw SpecError("binary-alpha needs alpha > 0");
    }
    bool exact() const override { return alpha_.get_den() == 1; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        require_binary(i, a, "binary-alpha");
        if (!exact()) return MeasureRule::rational(i, a);
        Rational t = rational_pow(Rational(1, i), alpha_.get_num().get_ui());
        if (t >= Rational(1, 2)) return binary(Rational(1, 2));
        return binary(Rational(1, 2) + t);
    }
    std::vector<double> floating(std::int64_t i, const AlphabetRule& a) const override {
        require_binary(i, a, "binary-alpha");
        if (exact()) return MeasureRule::floating(i, a);
        double t = std::pow(double(i), -alpha_.get_d());
        if (t >= 0.5) return {0.5, 0.5};
        return {0.5 + t, 0.5 - t};
    }
    json to_json() const override { return family_json("binary-alpha", {{"alpha", rational_string(alpha_)}}); }

private:
    Rational alpha_;
};

// mu_i(0) = i/(i+1)
class BinaryHarmonicMeasure final : public MeasureRule {
public:
    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        require_binary(i, a, "binary-harmonic");
        return binary(Rational(i, i + 1));
    }
    json to_json() const override { return family_json("binary-harmonic"); }
};

// blocks of three: mu_{3k+1}(0) = mu_{3k+2}(0) = 1 - 1/(k+1), mu_{3k+3}(0) = 1/2; k = 0 block uniform
class FhcNotMixingMeasure final : public MeasureRule {
public:
    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        require_binary(i, a, "fhc-not-mixing");
        std::int64_t k = (i - 1) / 3, r = (i - 1) % 3;
        if (r == 2 || k == 0) return binary(Rational(1, 2));
        return binary(Rational(k, k + 1));
    }
    json to_json() const override { return family_json("fhc-not-mixing"); }
};

class BinaryConstantMeasure final : public MeasureRule {
public:
    explicit BinaryConstantMeasure(Rational p0) : p0_(std::move(p0)) {
        if (p0_ <= 0 || p0_ >= 1) throw SpecError("binary-constant needs 0 < p0 < 1");
    }
    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        require_binary(i, a, "binary-constant");
        return binary(p0_);
    }
    json to_json() const override { return family_json("binary-constant", {{"p0", rational_string(p0_)}}); }
    std::optional<Periodicity> periodicity() const override { return Periodicity{1, 1}; }

private:
    Rational p0_;
};

// peak at beta, halving away from it; m = 2 gives (2/3, 1/3)
class TwoPeakMeasure final : public MeasureRule {
public:
    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t m = a.size(i);
        if (m == 2) return binary(Rational(2, 3));
        std::vector<mpz_class> inv(m);  // mu(j) = c / inv[j]
        auto p2 = [](std::int64_t e) {
            mpz_class r;
            mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
            return r;
        };
        if (m % 2 == 0) {
            std::int64_t b = m / 2;
            for (std::int64_t j = 0; j < b; ++j) inv[j] = p2(b - 1 - j);
            for (std::int64_t j = b; j < m; ++j) inv[j] = p2(j - b);
        } else {
            std::int64_t b = (m - 1) / 2;
            for (std::int64_t j = 0; j <= b; ++j) inv[j] = p2(b - j);
            for (std::int64_t j = b + 1; j < m; ++j) inv[j] = p2(j - b);
        }
        Rational total = 0;
        for (const auto& d : inv) total += Rational(1, d);
        std::vector<Rational> w(m);
        for (std::int64_t j = 0; j < m; ++j) {
            w[j] = Rational(mpz_class(1), inv[j]) / total;
            w[j].canonicalize();
        }
        return w;
    }
    json to_json() const override { return family_json("two-peak"); }
    std::optional<Periodicity> periodicity() const override { return Periodicity{1, 1}; }
};

// mu_i(j) = i/(i+1) c_i^j with sum_j c_i^j = (i+1)/i; i = 1 uniform
class GeometricMixingMeasure final : public MeasureRule {
public:
    bool exact() const override { return false; }
    std::vector<double> floating(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t m = a.size(i);
        if (i == 1) return std::vector<double>(m, 1.0 / double(m));
        double c = solve_geometric_c(i, m);
        std::vector<double> w(m);
        double p = double(i) / double(i + 1), cj = 1.0;
        for (std::int64_t j = 0; j < m; ++j, cj *= c) w[j] = p * cj;
        return w;
    }
    json to_json() const override { return family_json("geometric-mixing"); }
};

constexpr std::int64_t kMaxRationalBlock = 4096;

// shared shape of the translation examples: flat lead, geometric block, flat trail
class BlockMeasure : public MeasureRule {
public:
    struct Shape {
        bool uniform = false;
        std::int64_t lead = 0, n = 0, trail = 0;
        Rational delta = 0;
    };
    virtual Shape shape(std::int64_t i, const AlphabetRule& a) const = 0;

    bool exact() const override { return true; }
    std::vector<Rational> rational(std::int64_t i, const AlphabetRule& a) const override {
        Shape s = shape(i, a);
        if (s.uniform) return uniform_rational(a.size(i));
        if (s.lead + s.n + s.trail > kMaxRationalBlock)
            throw BackendUnsupported("exact weights for m_" + std::to_string(i) + " = " +
                                     std::to_string(s.lead + s.n + s.trail) + " exceed the rational size limit; use the float backend");
        return geometric_block_rational(s.lead, s.n, s.trail, Rational(1 + s.delta));
    }
    std::vector<double> floating(std::int64_t i, const AlphabetRule& a) const override {
        Shape s = shape(i, a);
        std::int64_t m = a.size(i);
        if (s.uniform) return std::vector<double>(m, 1.0 / double(m));
        return geometric_block_double(s.lead, s.n, s.trail, 1.0 + s.delta.get_d());
    }
};

bool is_cube(std::int64_t i, std::int64_t& s) {
    s = static_cast<std::int64_t>(std::llround(std::cbrt(double(i))));
    for (std::int64_t t = std::max<std::int64_t>(1, s - 1); t <= s + 1; ++t)
        if (t * t * t == i) {
            s = t;
            return true;
        }
    return false;
}

// active indices i_s = s^3, n = floor(m/2) block at the top, delta_s = s^-2; other indices uniform
class TransHcMeasure final : public BlockMeasure {
public:
    Shape shape(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t s;
        if (!is_cube(i, s)) return {true};
        std::int64_t m = a.size(i), n = m / 2;
        return {false, m - n, n, 0, Rational(1, s * s)};
    }
    json to_json() const override { return family_json("trans-hc"); }
};

// n = floor(kappa m), block at the top, delta_i = i^-2
class TransMixingMeasure final : public BlockMeasure {
public:
    explicit TransMixingMeasure(Rational kappa) : kappa_(std::move(kappa)) {
        if (kappa_ <= 0 || kappa_ >= Rational(1, 2)) throw SpecError("trans-mixing needs 0 < kappa < 1/2");
    }
    Shape shape(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t m = a.size(i);
        Rational km = kappa_ * m;
        mpz_class f = km.get_num() / km.get_den();
        std::int64_t n = f.get_si();
        if (n < 1) return {true};
        return {false, m - n, n, 0, Rational(1, i * i)};
    }
    json to_json() const override { return family_json("trans-mixing", {{"kappa", rational_string(kappa_)}}); }

private:
    Rational kappa_;
};

// i < 5 uniform; three intervals with #J2 = #J3 = floor(m/5)
class TransFhcMeasure final : public BlockMeasure {
public:
    explicit TransFhcMeasure(std::string delta_rule) : rule_(std::move(delta_rule)) {
        if (rule_ != "inv-square" && rule_ != "pow2-over-prev") throw SpecError("trans-fhc delta must be 'inv-square' or 'pow2-over-prev'");
    }
    Rational delta(std::int64_t i, const AlphabetRule& a) const {
        if (rule_ == "inv-square") return Rational(1, i * i);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(i));
        den *= a.size(i - 1);
        return Rational(mpz_class(1), den);
    }
    Shape shape(std::int64_t i, const AlphabetRule& a) const override {
        if (i < 5) return {true};
        std::int64_t m = a.size(i), n = m / 5;
        if (n < 1) return {true};
        return {false, m - 2 * n, n, n, delta(i, a)};
    }
    json to_json() const override { return family_json("trans-fhc", {{"delta", rule_}}); }

private:
    std::string rule_;
};

// m = 3n: lead 2n, block n, delta_i = i^-2
class TransHufhcMeasure final : public BlockMeasure {
public:
    Shape shape(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t m = a.size(i);
        if (m % 3 != 0) throw SpecError("trans-hufhc needs m_i divisible by 3");
        std::int64_t n = m / 3;
        return {false, 2 * n, n, 0, Rational(1, i * i)};
    }
    json to_json() const override { return family_json("trans-hufhc"); }
};

// m = 2n: lead n, block n, delta = 1/n
class HoeffbisMeasure final : public BlockMeasure {
public:
    Shape shape(std::int64_t i, const AlphabetRule& a) const override {
        std::int64_t m = a.size(i);
        if (m % 2 != 0) throw SpecError("hoeffbis-blocks needs even m_i");
        std::int64_t n = m / 2;
        return {false, n, n, 0, Rational(1, n)};
    }
    json to_json() const override { return family_json("hoeffbis-blocks"); }
};

}  // namespace

std::shared_ptr<const AlphabetRule> make_alphabet(const json& c) {
    if (!c.is_object()) throw SpecError("alphabet must be an object");
    if (c.contains("list")) {
        std::vector<std::int64_t> list;
        for (const auto& v : c.at("list")) list.push_back(v.get<std::int64_t>());
        return std::make_shared<ListAlphabet>(std::move(list), c.value("repeat", std::string("cycle")));
    }
    if (!c.contains("family")) throw SpecError("alphabet needs 'family' or 'list'");
    std::string f = c.at("family").get<std::string>();
    json p = c.value("params", json::object());
    if (f == "constant") return std::make_shared<ConstantAlphabet>(param_int(p, "m"));
    if (f == "affine") return std::make_shared<AffineAlphabet>(param_int(p, "a"), param_int(p, "b"));
    if (f == "power") return std::make_shared<PowerAlphabet>(param_int(p, "exponent"), param_int(p, "shift", 1));
    if (f == "blocks-pow2") return std::make_shared<BlocksPow2Alphabet>();
    if (f == "scaled-pow2") return std::make_shared<ScaledPow2Alphabet>(param_int(p, "scale", 1), param_int(p, "offset", 0));
    if (f == "sparse-jump") return std::make_shared<SparseJumpAlphabet>();
    if (f == "list") {
        std::vector<std::int64_t> list;
        for (const auto& v : p.at("list")) list.push_back(v.get<std::int64_t>());
        return std::make_shared<ListAlphabet>(std::move(list), param_string(p, "repeat", "cycle"));
    }
    throw SpecError("unknown alphabet family '" + f + "'");
}

std::shared_ptr<const MeasureRule> make_measure(const json& c) {
    if (!c.is_object() || !c.contains("family")) throw SpecError("measure needs a 'family'");
    std::string f = c.at("family").get<std::string>();
    json p = c.value("params", json::object());
    if (f == "uniform") return std::make_shared<UniformMeasure>();
    if (f == "list") {
        std::vector<std::vector<Rational>> rows;
        for (const auto& row : p.at("weights")) {
            std::vector<Rational> r;
            for (const auto& v : row) r.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump()));
            rows.push_back(std::move(r));
        }
        return std::make_shared<ListMeasure>(std::move(rows), param_string(p, "repeat", "cycle"));
    }
    if (f == "ornstein") return std::make_shared<OrnsteinMeasure>();
    if (f == "binary-alpha") return std::make_shared<BinaryAlphaMeasure>(param_rational(p, "alpha"));
    if (f == "binary-harmonic") return std::make_shared<BinaryHarmonicMeasure>();
    if (f == "fhc-not-mixing") return std::make_shared<FhcNotMixingMeasure>();
    if (f == "binary-constant") return std::make_shared<BinaryConstantMeasure>(param_rational(p, "p0"));
    if (f == "two-peak") return std::make_shared<TwoPeakMeasure>();
    if (f == "geometric-mixing") return std::make_shared<GeometricMixingMeasure>();
    if (f == "trans-hc") return std::make_shared<TransHcMeasure>();
    if (f == "trans-mixing") return std::make_shared<TransMixingMeasure>(param_rational(p, "kappa", "1/5"));
    if (f == "trans-fhc") return std::make_shared<TransFhcMeasure>(param_string(p, "delta", "inv-square"));
    if (f == "trans-hufhc") return std::make_shared<TransHufhcMeasure>();
    if (f == "hoeffbis-blocks") return std::make_shared<HoeffbisMeasure>();
    throw SpecError("unknown measure family '" + f + "'");
}

double solve_geometric_c(std::int64_t i, std::int64_t m, double tol) {
    if (i < 2) throw BracketFailure("geometric-c needs i >= 2");
    const double target = double(i + 1) / double(i);
    auto f = [&](double c) {
        long double s = 0, cj = 1;
        for (std::int64_t j = 0; j < m; ++j, cj *= c) s += cj;
        return double(s - (long double)target);
    };
    double lo = 1.0 / double(i + 1), hi = 1.0 / double(i);
    double flo = f(lo), fhi = f(hi);
    // f(lo) = -(i+1)^{1-m}/i < 0 exactly; for large m it is below rounding
    if (flo > 8 * std::numeric_limits<double>::epsilon() * target || fhi < -1e-15) throw BracketFailure("geometric-c root not bracketed for i = " + std::to_string(i));
    if (m == 2) return hi;  // 1 + c = (i+1)/i
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return hi;
}

Rational sumhc_epsilon(std::int64_t lead, const Rational& rho, std::int64_t n) {
    if (rho <= 1 || n < 0 || lead < 0) throw BracketFailure("sumhc-epsilon needs rho > 1, n >= 0, lead >= 0");
    Rational geo = (rational_pow(rho, static_cast<unsigned long>(n)) - 1) / (rho - 1);
    Rational eps = 1 / (Rational(lead) + geo);
    eps.canonicalize();
    return eps;
}

SolverResult solve_parameter(const SolverSpec& spec, std::int64_t i) {
    if (spec.equation == "geometric-c") {
        SolverResult r;
        r.value = solve_geometric_c(i, spec.m, std::min(spec.tolerance, 1e-12) / 10);
        if (spec.m == 2) r.exact = Rational(1, i);
        return r;
    }
    if (spec.equation == "sumhc-epsilon") {
        Rational e = sumhc_epsilon(spec.lead, spec.rho, spec.n);
        return {e.get_d(), e};
    }
    throw SpecError("unknown solver equation '" + spec.equation + "'");
}

std::vector<Rational> geometric_block_rational(std::int64_t lead, std::int64_t n, std::int64_t trail, const Rational& rho) {
    Rational eps = sumhc_epsilon(lead + trail, rho, n);
    std::vector<Rational> w(lead + n + trail, eps);
    Rational g = eps;  // rho^0 eps at the end of the block
    for (std::int64_t k = n - 1; k >= 0; --k) {
        w[lead + k] = g;
        g *= rho;
    }
    return w;
}

std::vector<double> geometric_block_double(std::int64_t lead, std::int64_t n, std::int64_t trail, double rho) {
    double geo = (std::pow(rho, double(n)) - 1.0) / (rho - 1.0);
    double eps = 1.0 / (double(lead + trail) + geo);
    std::vector<double> w(lead + n + trail, eps);
    for (std::int64_t k = 0; k < n; ++k) w[lead + k] = eps * std::pow(rho, double(n - 1 - k));
    return w;
}

}  // namespace odolab
