#pragma once

// Arithmetic backends: exact Laurent polynomials over Q, the quadratic
// extension Q(sqrt2, sqrtd) tensored with them, Gaussian rationals, and the
// complex double numeric backend. Angles carry exact rational multiples of pi
// when they are known.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace hypdef {

using Rational = mpq_class;
using CScalar = std::complex<double>;

Rational make_rational(long num, long den = 1);

/// An angle, either an exact rational multiple of pi or raw radians.
///
/// Raw angles may carry a marker saying that angle/pi is known to be
/// irrational (for instance a nonzero rational number of radians). Without
/// the marker the rationality of angle/pi is treated as unknown.
class Angle {
public:
    Angle() = default;

    static Angle pi_multiple(long num, long den = 1);
    static Angle radians(double value);
    static Angle radians_irrational(double value);

    /// Accepts "p/qpi", "p/q*pi", "pi/q", "-pi", "2pi" and plain decimal radians.
    /// A decimal literal is a rational number of radians, so a nonzero one is
    /// marked as an irrational multiple of pi.
    static Angle parse(std::string_view text);

    bool is_exact() const { return exact_; }
    long numerator() const { return num_; }
    long denominator() const { return den_; }

    double value() const;
    double cos() const;
    double sin() const;
    CScalar unit() const { return unit_power(1); }
    CScalar unit_power(long k) const;

    /// true: angle in pi*Q, false: known not to be, nullopt: undecidable.
    std::optional<bool> in_pi_rationals() const;

    bool is_zero_mod_2pi() const;
    Angle operator-() const;
    Angle times(long k) const;

    std::string to_string() const;

private:
    bool exact_ = true;
    long num_ = 0;
    long den_ = 1;
    double raw_ = 0.0;
    bool irrational_ = false;
};

/// Finitely supported map exponent -> rational coefficient; no zero is stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
    LaurentPoly(int c) : LaurentPoly(static_cast<long>(c)) {}  // NOLINT
    LaurentPoly(const Rational& c);  // NOLINT

    static LaurentPoly monomial(const Rational& c, int exponent);
    /// The deformation parameter u.
    static LaurentPoly u() { return monomial(1, 1); }
    static LaurentPoly u_inv() { return monomial(1, -1); }

    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coeff(int exponent) const;
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;

    /// Substitutes u^-1 for u. On |u| = 1 this is complex conjugation.
    LaurentPoly star() const;
    /// Membership in Z[u, u^-1].
    bool is_integral() const;
    /// lcm of the coefficient denominators.
    Rational denominator_lcm() const;
    /// Only monomials are units of Q[u, u^-1].
    LaurentPoly inverse() const;

    CScalar eval(const Angle& alpha) const;
    CScalar eval(CScalar u) const;

    std::string to_string() const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly operator-() const;

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

private:
    void add_term(int e, const Rational& c);
    std::map<int, Rational> terms_;
};

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b);
inline LaurentPoly laurent_star(const LaurentPoly& a) { return a.star(); }
inline CScalar eval_unit(const LaurentPoly& a, const Angle& alpha) { return a.eval(alpha); }

/// c0 + c1 sqrt2 + c2 sqrtd + c3 sqrt(2d) with Laurent coefficients.
///
/// d = 0 marks an untagged element (only c0 may be nonzero); it combines with
/// any tag. Two different nonzero tags cannot be combined.
class ExtScalar {
public:
    ExtScalar() = default;
    ExtScalar(long c) : c_{LaurentPoly(c), {}, {}, {}} {}  // NOLINT
    ExtScalar(int c) : ExtScalar(static_cast<long>(c)) {}  // NOLINT
    ExtScalar(const Rational& c) : c_{LaurentPoly(c), {}, {}, {}} {}  // NOLINT
    ExtScalar(const LaurentPoly& c) : c_{c, {}, {}, {}} {}  // NOLINT
    ExtScalar(long d, std::array<LaurentPoly, 4> comps);

    static ExtScalar sqrt2(long d);
    static ExtScalar sqrtd(long d);
    static ExtScalar sqrt2d(long d);

    long d() const { return d_; }
    const LaurentPoly& component(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    bool is_zero() const;
    /// True when only the rational/Laurent component is nonzero.
    bool is_pure() const;

    ExtScalar star() const;
    ExtScalar inverse() const;
    CScalar eval(const Angle& alpha) const;
    CScalar eval(CScalar u) const;

    std::string to_string() const;

    ExtScalar& operator+=(const ExtScalar& o);
    ExtScalar& operator-=(const ExtScalar& o);
    ExtScalar operator-() const;
    friend ExtScalar operator+(ExtScalar a, const ExtScalar& b) { return a += b; }
    friend ExtScalar operator-(ExtScalar a, const ExtScalar& b) { return a -= b; }
    friend ExtScalar operator*(const ExtScalar& a, const ExtScalar& b);
    friend bool operator==(const ExtScalar& a, const ExtScalar& b);

private:
    static long common_tag(const ExtScalar& a, const ExtScalar& b);
    void normalize();

    long d_ = 0;
    std::array<LaurentPoly, 4> c_;
};

ExtScalar ext_mul(const ExtScalar& x, const ExtScalar& y);

bool is_squarefree(long d);

/// Element of Q(i); used for exact Siegel stabilizer identities.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(long v) : re(v), im(0) {}  // NOLINT
    GaussRational(int v) : re(v), im(0) {}  // NOLINT
    GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

    static GaussRational i() { return {0, 1}; }
    GaussRational conj() const { return {re, -im}; }
    GaussRational inverse() const;
    bool is_zero() const { return re == 0 && im == 0; }
    CScalar to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussRational operator-() const { return {-re, -im}; }
    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
};

// Uniform scalar interface used by the matrix templates.

inline LaurentPoly conj(const LaurentPoly& a) { return a.star(); }
inline ExtScalar conj(const ExtScalar& a) { return a.star(); }
inline GaussRational conj(const GaussRational& a) { return a.conj(); }
inline CScalar conj(const CScalar& a) { return std::conj(a); }

inline bool is_zero(const LaurentPoly& a) { return a.is_zero(); }
inline bool is_zero(const ExtScalar& a) { return a.is_zero(); }
inline bool is_zero(const GaussRational& a) { return a.is_zero(); }
inline bool is_zero(const CScalar& a) { return a == CScalar(0.0); }

inline LaurentPoly inverse(const LaurentPoly& a) { return a.inverse(); }
inline ExtScalar inverse(const ExtScalar& a) { return a.inverse(); }
inline GaussRational inverse(const GaussRational& a) { return a.inverse(); }
inline CScalar inverse(const CScalar& a) { return 1.0 / a; }

inline CScalar to_complex(const LaurentPoly& a, const Angle& alpha) { return a.eval(alpha); }
inline CScalar to_complex(const ExtScalar& a, const Angle& alpha) { return a.eval(alpha); }
inline CScalar to_complex(const GaussRational& a, const Angle&) { return a.to_complex(); }
inline CScalar to_complex(const CScalar& a, const Angle&) { return a; }

std::string to_string(const LaurentPoly& a);
std::string to_string(const ExtScalar& a);
std::string to_string(const GaussRational& a);
std::string to_string(const CScalar& a);

/// Shortest round-trip decimal form of a double; negative zero prints as 0.
std::string format_real(double v);

}  // namespace hypdef
