#include "odolab/scalar.hpp"

#include "odolab/errors.hpp"

#include <cctype>
#include <cstdio>

namespace odolab {

std::string to_string(Backend b) { return b == Backend::rational ? "rational" : "float"; }

Backend parse_backend(const std::string& s) {
    if (s == "rational" || s == "exact") return Backend::rational;
    if (s == "float" || s == "double") return Backend::floating;
    throw SpecError("unknown backend '" + s + "'");
}

static Rational parse_decimal(const std::string& t) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) neg = t[pos++] == '-';
    std::string digits;
    long frac = 0;
    bool seen_point = false, any = false;
    for (; pos < t.size(); ++pos) {
        char c = t[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any = true;
            if (seen_point) ++frac;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any) throw SpecError("not a number: '" + t + "'");
    long exp10 = 0;
    if (pos < t.size() && (t[pos] == 'e' || t[pos] == 'E')) {
        ++pos;
        std::size_t used = 0;
        try {
            exp10 = std::stol(t.substr(pos), &used);
        } catch (const std::exception&) {
            throw SpecError("bad exponent in '" + t + "'");
        }
        pos += used;
    }
    if (pos != t.size()) throw SpecError("trailing characters in '" + t + "'");
    mpz_class num(digits, 10);
    long shift = exp10 - frac;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational r = shift >= 0 ? Rational(num * p10) : Rational(num, p10);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    auto slash = t.find('/');
    if (slash == std::string::npos) return parse_decimal(t);
    Rational p = parse_decimal(t.substr(0, slash));
    Rational q = parse_decimal(t.substr(slash + 1));
    if (sgn(q) == 0) throw SpecError("zero denominator in '" + text + "'");
    Rational r = p / q;
    r.canonicalize();
    return r;
}

std::string rational_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

Rational rational_pow(const Rational& base, unsigned long e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace odolab
