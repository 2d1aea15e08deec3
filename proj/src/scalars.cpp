#include "hypdef/scalars.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace hypdef {

Rational make_rational(long num, long den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- Angle

namespace {

// cos(k*pi/12) for the k that are multiples of pi/6 or pi/4.
std::optional<double> closed_cos_twelfths(long k)
{
    k = ((k % 24) + 24) % 24;
    const double h3 = std::sqrt(3.0) / 2.0;
    const double h2 = std::sqrt(2.0) / 2.0;
    switch (k) {
    case 0: return 1.0;
    case 2: return h3;
    case 3: return h2;
    case 4: return 0.5;
    case 6: return 0.0;
    case 8: return -0.5;
    case 9: return -h2;
    case 10: return -h3;
    case 12: return -1.0;
    case 14: return -h3;
    case 15: return -h2;
    case 16: return -0.5;
    case 18: return 0.0;
    case 20: return 0.5;
    case 21: return h2;
    case 22: return h3;
    default: return std::nullopt;
    }
}

// Exact angle num/den * pi expressed in twelfths of pi when possible.
std::optional<long> as_twelfths(long num, long den)
{
    if (12 % den != 0) {
        return std::nullopt;
    }
    return num * (12 / den);
}

}  // namespace

Angle Angle::pi_multiple(long num, long den)
{
    if (den == 0) {
        throw std::domain_error("angle with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long g = std::gcd(num < 0 ? -num : num, den);
    Angle a;
    a.exact_ = true;
    a.num_ = g == 0 ? 0 : num / g;
    a.den_ = g == 0 ? 1 : den / g;
    if (a.num_ == 0) {
        a.den_ = 1;
    }
    return a;
}

Angle Angle::radians(double value)
{
    if (!std::isfinite(value)) {
        throw std::domain_error("non-finite angle");
    }
    Angle a;
    a.exact_ = false;
    a.raw_ = value;
    a.irrational_ = false;
    return a;
}

Angle Angle::radians_irrational(double value)
{
    Angle a = radians(value);
    a.irrational_ = true;
    return a;
}

Angle Angle::parse(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    static const std::regex frac_pi(R"(^([+-]?)(\d*)(?:/(\d+))?\*?pi$)");
    static const std::regex pi_over(R"(^([+-]?)(\d*)\*?pi/(\d+)$)");
    std::smatch m;
    auto to_long = [](const std::string& v, long dflt) { return v.empty() ? dflt : std::stol(v); };
    if (std::regex_match(s, m, frac_pi)) {
        long num = to_long(m[2].str(), 1);
        const long den = to_long(m[3].str(), 1);
        if (m[1].str() == "-") {
            num = -num;
        }
        return pi_multiple(num, den);
    }
    if (std::regex_match(s, m, pi_over)) {
        long num = to_long(m[2].str(), 1);
        const long den = to_long(m[3].str(), 1);
        if (m[1].str() == "-") {
            num = -num;
        }
        return pi_multiple(num, den);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse angle '" + std::string(text) + "'");
    }
    if (used != s.size()) {
        throw std::invalid_argument("cannot parse angle '" + std::string(text) + "'");
    }
    if (v == 0.0) {
        return pi_multiple(0);
    }
    return radians_irrational(v);
}

double Angle::value() const
{
    if (exact_) {
        return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    }
    return raw_;
}

double Angle::cos() const
{
    if (exact_) {
        if (auto k = as_twelfths(num_, den_)) {
            if (auto c = closed_cos_twelfths(*k)) {
                return *c;
            }
        }
    }
    return std::cos(value());
}

double Angle::sin() const
{
    if (exact_) {
        if (auto k = as_twelfths(num_, den_)) {
            if (auto c = closed_cos_twelfths(*k - 6)) {
                return *c;
            }
        }
    }
    return std::sin(value());
}

CScalar Angle::unit_power(long k) const
{
    const Angle a = times(k);
    return {a.cos(), a.sin()};
}

std::optional<bool> Angle::in_pi_rationals() const
{
    if (exact_) {
        return true;
    }
    if (irrational_) {
        return false;
    }
    return std::nullopt;
}

bool Angle::is_zero_mod_2pi() const
{
    if (exact_) {
        return num_ % (2 * den_) == 0;
    }
    return false;
}

Angle Angle::operator-() const
{
    Angle a = *this;
    a.num_ = -num_;
    a.raw_ = -raw_;
    return a;
}

Angle Angle::times(long k) const
{
    if (exact_) {
        return pi_multiple(num_ * k, den_);
    }
    if (k == 0) {
        return pi_multiple(0);
    }
    Angle a = *this;
    a.raw_ = raw_ * static_cast<double>(k);
    return a;
}

std::string Angle::to_string() const
{
    if (exact_) {
        if (num_ == 0) {
            return "0";
        }
        std::string s = std::to_string(num_);
        if (den_ != 1) {
            s += "/" + std::to_string(den_);
        }
        return s + "pi";
    }
    std::ostringstream os;
    os.precision(17);
    os << raw_;
    return os.str();
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long c)
{
    add_term(0, Rational(c));
}

LaurentPoly::LaurentPoly(const Rational& c)
{
    add_term(0, c);
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int exponent)
{
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
}

void LaurentPoly::add_term(int e, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Rational LaurentPoly::coeff(int exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool LaurentPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

LaurentPoly LaurentPoly::star() const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
        r.terms_.emplace(-e, c);
    }
    return r;
}

bool LaurentPoly::is_integral() const
{
    for (const auto& [e, c] : terms_) {
        if (c.get_den() != 1) {
            return false;
        }
    }
    return true;
}

Rational LaurentPoly::denominator_lcm() const
{
    mpz_class l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_class den = c.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    return Rational(l);
}

LaurentPoly LaurentPoly::inverse() const
{
    if (!is_monomial()) {
        throw std::domain_error("Laurent polynomial " + to_string() + " is not a unit");
    }
    const auto& [e, c] = *terms_.begin();
    return monomial(Rational(1) / c, -e);
}

CScalar LaurentPoly::eval(const Angle& alpha) const
{
    CScalar s = 0.0;
    for (const auto& [e, c] : terms_) {
        s += c.get_d() * alpha.unit_power(e);
    }
    return s;
}

CScalar LaurentPoly::eval(CScalar u) const
{
    CScalar s = 0.0;
    for (const auto& [e, c] : terms_) {
        s += c.get_d() * std::pow(u, e);
    }
    return s;
}

std::string LaurentPoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    // constant first, then u, u^2, ..., then u^-1, u^-2, ...
    std::vector<std::pair<int, Rational>> order;
    if (auto it = terms_.find(0); it != terms_.end()) {
        order.emplace_back(*it);
    }
    for (auto it = terms_.upper_bound(0); it != terms_.end(); ++it) {
        order.emplace_back(*it);
    }
    for (auto it = terms_.lower_bound(0); it != terms_.begin();) {
        --it;
        if (it->first < 0) {
            order.emplace_back(*it);
        }
    }
    std::string out;
    bool first = true;
    for (const auto& [e, c] : order) {
        Rational mag = abs(c);
        std::string sign = c < 0 ? "-" : (first ? "" : "+");
        std::string coeff;
        if (e == 0 || mag != 1) {
            coeff = mag.get_str();
        }
        std::string var;
        if (e == 1) {
            var = "u";
        } else if (e != 0) {
            var = "u^" + std::to_string(e);
        }
        if (!coeff.empty() && !var.empty()) {
            if (mag.get_den() != 1) {
                coeff = "(" + coeff + ")";
            }
            coeff += "*";
        }
        out += sign + coeff + var;
        first = false;
    }
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o)
{
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) {
        c = -c;
    }
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            r.add_term(ea + eb, ca * cb);
        }
    }
    return r;
}

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b)
{
    return a * b;
}

// ---------------------------------------------------------------- ExtScalar

bool is_squarefree(long d)
{
    if (d < 1) {
        return false;
    }
    for (long p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) {
            return false;
        }
    }
    return true;
}

ExtScalar::ExtScalar(long d, std::array<LaurentPoly, 4> comps) : d_(d), c_(std::move(comps))
{
    if (d_ == 0) {
        if (!c_[1].is_zero() || !c_[2].is_zero() || !c_[3].is_zero()) {
            throw std::domain_error("untagged ExtScalar with irrational components");
        }
    } else if (!is_squarefree(d_)) {
        throw std::domain_error("ExtScalar tag d=" + std::to_string(d_) + " is not squarefree");
    }
    normalize();
}

ExtScalar ExtScalar::sqrt2(long d)
{
    return ExtScalar(d, {LaurentPoly(), LaurentPoly(1), LaurentPoly(), LaurentPoly()});
}

ExtScalar ExtScalar::sqrtd(long d)
{
    return ExtScalar(d, {LaurentPoly(), LaurentPoly(), LaurentPoly(1), LaurentPoly()});
}

ExtScalar ExtScalar::sqrt2d(long d)
{
    return ExtScalar(d, {LaurentPoly(), LaurentPoly(), LaurentPoly(), LaurentPoly(1)});
}

void ExtScalar::normalize()
{
    // d = 1: sqrtd = 1, sqrt(2d) = sqrt2; d = 2: sqrtd = sqrt2, sqrt(2d) = 2.
    if (d_ == 1) {
        c_[0] += c_[2];
        c_[1] += c_[3];
        c_[2] = LaurentPoly();
        c_[3] = LaurentPoly();
    } else if (d_ == 2) {
        c_[1] += c_[2];
        c_[0] += LaurentPoly(2) * c_[3];
        c_[2] = LaurentPoly();
        c_[3] = LaurentPoly();
    }
}

bool ExtScalar::is_zero() const
{
    return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

bool ExtScalar::is_pure() const
{
    return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

long ExtScalar::common_tag(const ExtScalar& a, const ExtScalar& b)
{
    if (a.d_ != 0 && b.d_ != 0 && a.d_ != b.d_) {
        throw std::domain_error("cannot combine ExtScalars with d=" + std::to_string(a.d_) + " and d=" +
                                std::to_string(b.d_));
    }
    return a.d_ != 0 ? a.d_ : b.d_;
}

ExtScalar ExtScalar::star() const
{
    ExtScalar r = *this;
    for (auto& c : r.c_) {
        c = c.star();
    }
    return r;
}

ExtScalar ExtScalar::inverse() const
{
    int nonzero = -1;
    for (int k = 0; k < 4; ++k) {
        if (!c_[static_cast<std::size_t>(k)].is_zero()) {
            if (nonzero >= 0) {
                throw std::domain_error("ExtScalar " + to_string() + " has no supported exact inverse");
            }
            nonzero = k;
        }
    }
    if (nonzero < 0) {
        throw std::domain_error("inverse of zero");
    }
    const LaurentPoly inv = c_[static_cast<std::size_t>(nonzero)].inverse();
    // 1/sqrt2 = sqrt2/2, 1/sqrtd = sqrtd/d, 1/sqrt(2d) = sqrt(2d)/(2d)
    static const std::array<long, 4> norms_base = {1, 2, 0, 0};
    const long norm = nonzero == 0 ? 1 : nonzero == 1 ? norms_base[1] : nonzero == 2 ? d_ : 2 * d_;
    std::array<LaurentPoly, 4> comps{};
    comps[static_cast<std::size_t>(nonzero)] = inv * LaurentPoly(make_rational(1, norm));
    return ExtScalar(d_, comps);
}

CScalar ExtScalar::eval(const Angle& alpha) const
{
    const double d = static_cast<double>(d_);
    return c_[0].eval(alpha) + std::sqrt(2.0) * c_[1].eval(alpha) + std::sqrt(d) * c_[2].eval(alpha) +
           std::sqrt(2.0 * d) * c_[3].eval(alpha);
}

CScalar ExtScalar::eval(CScalar u) const
{
    const double d = static_cast<double>(d_);
    return c_[0].eval(u) + std::sqrt(2.0) * c_[1].eval(u) + std::sqrt(d) * c_[2].eval(u) +
           std::sqrt(2.0 * d) * c_[3].eval(u);
}

std::string ExtScalar::to_string() const
{
    if (is_zero()) {
        return "0";
    }
    const std::array<std::string, 4> basis = {"", "sqrt(2)", "sqrt(" + std::to_string(d_) + ")",
                                              "sqrt(" + std::to_string(2 * d_) + ")"};
    std::string out;
    for (std::size_t k = 0; k < 4; ++k) {
        if (c_[k].is_zero()) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        if (k == 0) {
            out += c_[k].to_string();
        } else if (c_[k] == LaurentPoly(1)) {
            out += basis[k];
        } else {
            out += "(" + c_[k].to_string() + ")*" + basis[k];
        }
    }
    return out;
}

ExtScalar& ExtScalar::operator+=(const ExtScalar& o)
{
    d_ = common_tag(*this, o);
    for (std::size_t k = 0; k < 4; ++k) {
        c_[k] += o.c_[k];
    }
    normalize();
    return *this;
}

ExtScalar& ExtScalar::operator-=(const ExtScalar& o)
{
    d_ = common_tag(*this, o);
    for (std::size_t k = 0; k < 4; ++k) {
        c_[k] -= o.c_[k];
    }
    normalize();
    return *this;
}

ExtScalar ExtScalar::operator-() const
{
    ExtScalar r = *this;
    for (auto& c : r.c_) {
        c = -c;
    }
    return r;
}

ExtScalar operator*(const ExtScalar& a, const ExtScalar& b)
{
    const long d = ExtScalar::common_tag(a, b);
    if (a.is_pure() && b.is_pure()) {
        ExtScalar r(a.c_[0] * b.c_[0]);
        r.d_ = d;
        return r;
    }
    // basis (1, sqrt2, sqrtd, sqrt2d): e_i * e_j = factor * e_target
    struct Entry {
        std::size_t target;
        long factor;
    };
    const Entry table[4][4] = {
        {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
        {{1, 1}, {0, 2}, {3, 1}, {2, 2}},
        {{2, 1}, {3, 1}, {0, d}, {1, d}},
        {{3, 1}, {2, 2}, {1, d}, {0, 2 * d}},
    };
    std::array<LaurentPoly, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (a.c_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < 4; ++j) {
            if (b.c_[j].is_zero()) {
                continue;
            }
            const Entry e = table[i][j];
            out[e.target] += LaurentPoly(e.factor) * (a.c_[i] * b.c_[j]);
        }
    }
    return ExtScalar(d, out);
}

bool operator==(const ExtScalar& a, const ExtScalar& b)
{
    if (a.d_ != 0 && b.d_ != 0 && a.d_ != b.d_) {
        return false;
    }
    if ((a.d_ == 0 && !b.is_pure()) || (b.d_ == 0 && !a.is_pure())) {
        return false;
    }
    return a.c_ == b.c_;
}

ExtScalar ext_mul(const ExtScalar& x, const ExtScalar& y)
{
    return x * y;
}

// ---------------------------------------------------------------- GaussRational

GaussRational GaussRational::inverse() const
{
    const Rational n = re * re + im * im;
    if (n == 0) {
        throw std::domain_error("inverse of zero");
    }
    return {re / n, -im / n};
}

// ---------------------------------------------------------------- printing

std::string to_string(const LaurentPoly& a)
{
    return a.to_string();
}

std::string to_string(const ExtScalar& a)
{
    return a.to_string();
}

std::string to_string(const GaussRational& a)
{
    return a.re.get_str() + (a.im < 0 ? "-" : "+") + Rational(abs(a.im)).get_str() + "i";
}

std::string to_string(const CScalar& a)
{
    return format_real(a.real()) + (a.imag() < 0 ? "-" : "+") + format_real(std::abs(a.imag())) + "i";
}

std::string format_real(double v)
{
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace hypdef
