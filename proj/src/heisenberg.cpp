#include "hypdef/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypdef {

// ---------------------------------------------------------------- group law

HeisPoint heis_mul(const HeisPoint& p, const HeisPoint& q)
{
    if (p.Z.size() != q.Z.size()) {
        throw std::domain_error("Heisenberg points of different dimension");
    }
    HeisPoint r;
    r.Z.resize(p.Z.size());
    CScalar cross = 0.0;
    for (std::size_t k = 0; k < p.Z.size(); ++k) {
        r.Z[k] = p.Z[k] + q.Z[k];
        cross += p.Z[k] * std::conj(q.Z[k]);
    }
    r.t = p.t + q.t + 2.0 * cross.imag();
    return r;
}

ExactHeisPoint heis_mul(const ExactHeisPoint& p, const ExactHeisPoint& q)
{
    if (p.Z.size() != q.Z.size()) {
        throw std::domain_error("Heisenberg points of different dimension");
    }
    ExactHeisPoint r;
    r.Z.resize(p.Z.size());
    GaussRational cross;
    for (std::size_t k = 0; k < p.Z.size(); ++k) {
        r.Z[k] = p.Z[k] + q.Z[k];
        cross = cross + p.Z[k] * q.Z[k].conj();
    }
    r.t = p.t + q.t + 2 * cross.im;
    return r;
}

HeisPoint heis_inverse(const HeisPoint& p)
{
    HeisPoint r = p;
    for (auto& z : r.Z) {
        z = -z;
    }
    r.t = -p.t;
    return r;
}

double heis_box_distance(const HeisPoint& p, const HeisPoint& q)
{
    double dz2 = 0.0;
    for (std::size_t k = 0; k < p.Z.size(); ++k) {
        dz2 += std::norm(p.Z[k] - q.Z[k]);
    }
    return std::max(std::sqrt(dz2), std::sqrt(std::abs(p.t - q.t)));
}

// ---------------------------------------------------------------- stabilizer

CMat stab_dilation(std::size_t n, double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::domain_error("dilation factor must be positive");
    }
    CMat m = CMat::identity(n);
    m(0, 0) = r;
    m(n - 1, n - 1) = 1.0 / r;
    return m;
}

Mat<GaussRational> stab_dilation_exact(std::size_t n, const Rational& r)
{
    if (r <= 0) {
        throw std::domain_error("dilation factor must be positive");
    }
    Mat<GaussRational> m = Mat<GaussRational>::identity(n);
    m(0, 0) = GaussRational(r);
    m(n - 1, n - 1) = GaussRational(Rational(1) / r);
    return m;
}

CVec standard_lift(const HeisPoint& p)
{
    CVec w(p.Z.size() + 2);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < p.Z.size(); ++k) {
        w[k + 1] = p.Z[k];
        norm2 += std::norm(p.Z[k]);
    }
    w.front() = CScalar(-norm2, p.t) / 2.0;
    w.back() = 1.0;
    return w;
}

HeisPoint boundary_action(const CMat& g, const HeisPoint& p)
{
    const std::size_t n = g.size();
    if (p.Z.size() + 2 != n) {
        throw std::invalid_argument("point dimension does not match matrix");
    }
    const double scale = max_abs(g);
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(g(i, 0)) > 1e-12 * scale) {
            throw std::domain_error("matrix does not fix the point at infinity");
        }
    }
    const CVec w = mat_vec(g, standard_lift(p));
    const CScalar last = w.back();
    if (std::abs(last) == 0.0) {
        throw std::domain_error("image of a boundary point is the point at infinity");
    }
    HeisPoint r;
    r.Z.resize(p.Z.size());
    for (std::size_t k = 0; k < p.Z.size(); ++k) {
        r.Z[k] = w[k + 1] / last;
    }
    r.t = 2.0 * (w.front() / last).imag();
    return r;
}

// ---------------------------------------------------------------- deformed cusp

void validate(const CuspParams& p)
{
    if (p.a == 0.0 || p.b2 == 0.0) {
        throw std::domain_error("cusp parameters need a != 0 and b2 != 0");
    }
}

CMat cusp_T(const CuspParams& p)
{
    return stab_translation<CScalar>({p.a, 0.0}, 0.0);
}

CMat cusp_U(const CuspParams& p)
{
    return stab_translation<CScalar>({p.b1, p.b2}, 0.0);
}

CMat centralizer_z3(const Angle& u)
{
    return CMat::diagonal({1.0, 1.0, u.unit(), 1.0});
}

CMat cusp_U_bent(const CuspParams& p)
{
    return centralizer_z3(p.u) * cusp_U(p);
}

CScalar cusp_center(const CuspParams& p)
{
    validate(p);
    const CScalar u = p.u.unit();
    if (p.u.is_zero_mod_2pi() || std::abs(1.0 - u) == 0.0) {
        throw std::domain_error("shifted coordinate undefined at u = 1");
    }
    return u * p.b2 / (1.0 - u);
}

HeisPoint shifted_to_raw(const CuspParams& p, const HeisPoint& q)
{
    HeisPoint r = q;
    r.Z.at(1) += cusp_center(p);
    return r;
}

HeisPoint raw_to_shifted(const CuspParams& p, const HeisPoint& q)
{
    HeisPoint r = q;
    r.Z.at(1) -= cusp_center(p);
    return r;
}

HeisPoint orbit_point(const CuspParams& params, long m, long n, const HeisPoint& p0)
{
    const CScalar c = cusp_center(params);
    if (p0.Z.size() != 2) {
        throw std::invalid_argument("cusp orbit points have two complex coordinates");
    }
    const CScalar z1 = p0.Z[0];
    const CScalar z2 = p0.Z[1];
    const double shift = static_cast<double>(m) * params.a + static_cast<double>(n) * params.b1;

    // S(n) = sum_{j=0}^{n-1} Im(u^j z2') for n >= 0, and -sum_{j=1}^{|n|} Im(u^-j z2') for n < 0.
    double s = 0.0;
    if (n >= 0) {
        for (long j = 0; j < n; ++j) {
            s += (params.u.unit_power(j) * z2).imag();
        }
    } else {
        for (long j = 1; j <= -n; ++j) {
            s -= (params.u.unit_power(-j) * z2).imag();
        }
    }

    HeisPoint r;
    r.Z = {z1 + shift, params.u.unit_power(n) * z2};
    r.t = p0.t - (2.0 * shift * z1.imag() + 2.0 * static_cast<double>(n) * params.b2 * c.imag() +
                  2.0 * params.b2 * s);
    return r;
}

HeisPoint orbit_point_matrix(const CuspParams& params, long m, long n, const HeisPoint& p0)
{
    const auto inv = [](const CMat& x) { return inverse(x); };
    const CMat g = power<CScalar>(cusp_T(params), m, inv) * power<CScalar>(cusp_U_bent(params), n, inv);
    return raw_to_shifted(params, boundary_action(g, shifted_to_raw(params, p0)));
}

std::vector<OrbitRow> orbit_cloud(const CMat& t, const CMat& u, const HeisPoint& p0, int radius)
{
    if (radius < 0 || radius > 50) {
        throw std::invalid_argument("orbit radius must lie in [0, 50]");
    }
    const auto inv = [](const CMat& x) { return inverse(x); };
    const long r = radius;
    std::vector<CMat> upow;
    upow.reserve(static_cast<std::size_t>(2 * r + 1));
    for (long n = -r; n <= r; ++n) {
        upow.push_back(power<CScalar>(u, n, inv));
    }
    std::vector<OrbitRow> rows;
    rows.reserve(upow.size() * upow.size());
    for (long m = -r; m <= r; ++m) {
        const CMat tm = power<CScalar>(t, m, inv);
        for (long n = -r; n <= r; ++n) {
            const CMat& un = upow[static_cast<std::size_t>(n + r)];
            rows.push_back({m, n, boundary_action(tm * un, p0)});
        }
    }
    return rows;
}

GapResult orbit_gap(const std::vector<OrbitRow>& rows)
{
    GapResult res;
    res.points = rows.size();
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const HeisPoint& p = rows[i].point;
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const HeisPoint& q = rows[j].point;
            double dz2 = 0.0;
            for (std::size_t k = 0; k < p.Z.size(); ++k) {
                dz2 += std::norm(p.Z[k] - q.Z[k]);
            }
            const double dt = std::abs(p.t - q.t);
            if (dz2 <= 1e-18 && dt <= 1e-9 * std::max(1.0, std::abs(p.t))) {
                ++res.coincidences;
                continue;
            }
            best2 = std::min(best2, std::max(dz2, dt));
        }
    }
    res.gap = std::sqrt(best2);
    return res;
}

GapResult orbit_gap_probe(const CMat& t, const CMat& u, const HeisPoint& p0, int radius)
{
    return orbit_gap(orbit_cloud(t, u, p0, radius));
}

void write_orbit_csv(std::ostream& os, const std::vector<OrbitRow>& rows, const GapResult& gap)
{
    os << "m,n,Re z1,Im z1,Re z2,Im z2,v\n";
    for (const auto& row : rows) {
        const CVec& z = row.point.Z;
        CScalar z1 = z.empty() ? 0.0 : z[0];
        CScalar z2 = 0.0;
        if (z.size() == 2) {
            z2 = z[1];
        } else if (z.size() == 3) {
            // Real boundary R^3 with coordinates (x, y, z): z1 = x, z2 = y + i z.
            z1 = z[0].real();
            z2 = CScalar(z[1].real(), z[2].real());
        }
        os << row.m << ',' << row.n << ',' << format_real(z1.real()) << ',' << format_real(z1.imag()) << ','
           << format_real(z2.real()) << ',' << format_real(z2.imag()) << ',' << format_real(row.point.t) << '\n';
    }
    os << "# gap=" << format_real(gap.gap) << " points=" << gap.points << " coincidences=" << gap.coincidences
       << '\n';
}

// ---------------------------------------------------------------- R x S^1

Surd Surd::make(const Rational& q, long r)
{
    if (r < 0) {
        throw std::domain_error("surd radicand must be nonnegative");
    }
    Surd s;
    s.q = q;
    s.r = r;
    if (r == 0 || q == 0) {
        s.q = 0;
        s.r = 1;
        return s;
    }
    for (long p = 2; p * p <= s.r; ++p) {
        while (s.r % (p * p) == 0) {
            s.r /= p * p;
            s.q *= p;
        }
    }
    return s;
}

double Surd::value() const
{
    return q.get_d() * std::sqrt(static_cast<double>(r));
}

std::string Surd::to_string() const
{
    if (r == 1) {
        return q.get_str();
    }
    return q.get_str() + "*sqrt(" + std::to_string(r) + ")";
}

double translation_value(const RS1Translation& x)
{
    return std::visit(
        [](const auto& v) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Surd>) {
                return v.value();
            } else {
                return v.value;
            }
        },
        x);
}

std::string to_string(RS1Case c)
{
    switch (c) {
    case RS1Case::NondiscreteZ2: return "nondiscrete-Z2";
    case RS1Case::DiscreteNonZ2: return "discrete-nonZ2";
    case RS1Case::NondiscreteZ2Rational: return "nondiscrete-Z2-rational";
    }
    return "?";
}

std::optional<bool> ratio_is_rational(const RS1Translation& x, const RS1Translation& y)
{
    const auto* sx = std::get_if<Surd>(&x);
    const auto* sy = std::get_if<Surd>(&y);
    if (sx && sy) {
        return sx->r == sy->r;
    }
    // A nonzero rational against a number marked irrational.
    const Surd* s = sx ? sx : sy;
    const auto* w = std::get_if<RawReal>(sx ? &y : &x);
    if (s && w && w->irrational && s->r == 1) {
        return false;
    }
    return std::nullopt;
}

RS1Case rs1_classify(const RS1Element& t, const RS1Element& u)
{
    if (!t.angle.is_zero_mod_2pi() && t.angle.value() != 0.0) {
        throw std::domain_error("T must be a pure translation (angle 0)");
    }
    if (translation_value(t.translation) == 0.0 || translation_value(u.translation) == 0.0) {
        throw std::domain_error("translations must be nonzero");
    }
    const auto rational = ratio_is_rational(t.translation, u.translation);
    if (!rational) {
        throw UndecidableError("rationality of a/b is undecidable from these inputs; use the sampling probe");
    }
    if (!*rational) {
        return RS1Case::NondiscreteZ2;
    }
    const auto theta_rational = u.angle.in_pi_rationals();
    if (!theta_rational) {
        throw UndecidableError("rationality of theta/pi is undecidable from these inputs; use the sampling probe");
    }
    return *theta_rational ? RS1Case::DiscreteNonZ2 : RS1Case::NondiscreteZ2Rational;
}

RS1ProbeResult rs1_probe(double a, double b, double theta, double eps, int elements)
{
    if (a == 0.0 || b == 0.0) {
        throw std::domain_error("translations must be nonzero");
    }
    constexpr double zero_tol = 1e-9;
    const double two_pi = 2.0 * std::numbers::pi;
    RS1ProbeResult res;
    res.min_translation = std::numeric_limits<double>::infinity();
    res.min_fibre_angle = std::numeric_limits<double>::infinity();
    const long half = elements / 2;
    for (long n = -half; n < elements - half; ++n) {
        if (n == 0) {
            continue;
        }
        const double m = std::nearbyint(-static_cast<double>(n) * b / a);
        const double x = std::abs((m * a + static_cast<double>(n) * b) / a);
        double turn = std::fmod(static_cast<double>(n) * theta, two_pi) / two_pi;
        if (turn < 0.0) {
            turn += 1.0;
        }
        const double phi = std::min(turn, 1.0 - turn);
        ++res.elements;
        if (x <= zero_tol) {
            if (phi <= zero_tol) {
                res.relation_found = true;
            } else {
                res.min_fibre_angle = std::min(res.min_fibre_angle, phi);
            }
        } else {
            res.min_translation = std::min(res.min_translation, x);
        }
    }
    res.translation_accumulates = res.min_translation < eps;
    res.fibre_accumulates = res.min_fibre_angle < eps;
    if (!res.relation_found && res.translation_accumulates) {
        res.verdict = RS1Case::NondiscreteZ2;
    } else if (!res.relation_found && res.fibre_accumulates) {
        res.verdict = RS1Case::NondiscreteZ2Rational;
    } else if (res.relation_found && !res.translation_accumulates && !res.fibre_accumulates) {
        res.verdict = RS1Case::DiscreteNonZ2;
    }
    return res;
}

}  // namespace hypdef
