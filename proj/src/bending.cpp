#include "hypdef/bending.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hypdef {

namespace {

using ES = ExtScalar;

bool is_trivial_angle(const Angle& a)
{
    if (a.is_exact()) {
        return a.is_zero_mod_2pi();
    }
    return std::abs(a.unit() - CScalar(1.0)) == 0.0;
}

ES half(const ES& x)
{
    return ES(make_rational(1, 2)) * x;
}

ES u_sym()
{
    return ES(LaurentPoly::u());
}

std::vector<CScalar> flatten(const CMat& m)
{
    return {m.data().begin(), m.data().end()};
}

double frobenius(const std::vector<CScalar>& v)
{
    double s = 0.0;
    for (const auto& x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

/// Removes the components along an orthonormal basis, twice for stability.
void orthogonalize(std::vector<CScalar>& v, const std::vector<std::vector<CScalar>>& basis)
{
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            CScalar c = 0.0;
            for (std::size_t k = 0; k < v.size(); ++k) {
                c += std::conj(q[k]) * v[k];
            }
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k] -= c * q[k];
            }
        }
    }
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

/// Form defect and commutation checks on a numeric family.
void numeric_checks(const BianchiNumeric& f, double tol, BianchiReport& r)
{
    r.form_ok = true;
    for (const auto* g : {&f.A, &f.T, &f.U}) {
        const double scale = std::max(1.0, max_abs(*g) * max_abs(*g));
        r.form_ok = r.form_ok && form_defect(*g, f.form) <= tol * scale;
    }
    r.centralizer_ok = commutes(f.centralizer, f.A, tol) && commutes(f.centralizer, f.T, tol);
}

void classify_u(const CMat& u, const HermForm& form, const VerifyOptions& opts, BianchiReport& r)
{
    ClassifyOptions copts;
    copts.tol = opts.tol;
    try {
        r.class_u = classify_detailed(u, form, copts);
    } catch (const IndeterminateError& e) {
        r.class_error = e.what();
    } catch (const std::domain_error& e) {
        r.class_error = e.what();
    }
    if (!r.class_u) {
        r.class_ok = false;
        return;
    }
    const IsoClass& c = r.class_u->iso;
    if (r.class_expected == "parabolic-unipotent") {
        r.class_ok = c.is_unipotent();
    } else if (r.class_expected == "elliptic") {
        r.class_ok = c.kind == IsoClass::Kind::Elliptic;
    } else {
        r.class_ok = c.tag() == r.class_expected;
    }
}

void probe_algebra(const std::vector<CMat>& gens, const VerifyOptions& opts, BianchiReport& r)
{
    if (!opts.algebra) {
        return;
    }
    try {
        r.algebra = algebra_dimension(gens, opts.tol);
    } catch (const IndeterminateError& e) {
        r.algebra_error = e.what();
    }
}

bool lattice_matches(long d)
{
    const BianchiCusp c = bianchi_cusp(d);
    const ES a = surd_to_ext(c.a, d);
    const ES b1 = surd_to_ext(c.b1, d);
    const ES b2 = surd_to_ext(c.b2, d);
    return cusp_translation_exact(a, ES(0)) == bianchi_T1(d) && cusp_translation_exact(b1, b2) == bianchi_U1(d);
}

Rep<ES> lattice_rep(const Mat<ES>& a, const Mat<ES>& t, const Mat<ES>& u)
{
    Rep<ES> rep;
    rep.set("a", a);
    rep.set("t", t);
    rep.set("u", u);
    return rep;
}

BendDataHNN<ES> hnn_data(const Mat<ES>& a, const Mat<ES>& t, const Mat<ES>& u)
{
    BendDataHNN<ES> data;
    data.base = lattice_rep(a, t, u);
    data.stable_letter = "u";
    data.edge_generators = {"a", "t"};
    return data;
}

bool has_presentation(long d)
{
    return d == 2 || d == 7 || d == 11;
}

}  // namespace

BendDataAmalgam<CScalar> toy_amalgam()
{
    const double ch = std::cosh(1.0);
    const double sh = std::sinh(1.0);
    const CMat x{{ch, sh}, {sh, ch}};
    BendDataAmalgam<CScalar> data;
    data.gamma1.set("x", x);
    data.gamma2.set("y", x);
    data.centralizer = [](const Angle& t) {
        return CMat::diagonal({std::polar(1.0, t.value() / 2.0), std::polar(1.0, -t.value() / 2.0)});
    };
    return data;
}

std::string to_string(Target t)
{
    return t == Target::SU31 ? "su31" : "so41";
}

CMat centralizer_su31(const Angle& u)
{
    return CMat::diagonal({1.0, 1.0, u.unit(), 1.0});
}

Mat<ExtScalar> centralizer_su31_exact()
{
    return Mat<ES>::diagonal({1, 1, u_sym(), 1});
}

CMat centralizer_so41(const Angle& theta)
{
    CMat r = CMat::identity(5);
    const double c = theta.cos();
    const double s = theta.sin();
    r(2, 2) = c;
    r(2, 3) = -s;
    r(3, 2) = s;
    r(3, 3) = c;
    return r;
}

Mat<ExtScalar> centralizer_so41_exact(const Rational& s)
{
    const Rational den = 1 + s * s;
    const ES c(Rational((1 - s * s) / den));
    const ES sn(Rational(2 * s / den));
    Mat<ES> r = Mat<ES>::identity(5);
    r(2, 2) = c;
    r(2, 3) = -sn;
    r(3, 2) = sn;
    r(3, 3) = c;
    return r;
}

Angle pythagorean_angle(const Rational& s)
{
    if (s == 0) {
        return Angle::pi_multiple(0);
    }
    if (s == 1) {
        return Angle::pi_multiple(1, 2);
    }
    if (s == -1) {
        return Angle::pi_multiple(-1, 2);
    }
    return Angle::radians_irrational(2.0 * std::atan(s.get_d()));
}

Mat<ExtScalar> siegel_form_exact(std::size_t n)
{
    Mat<ES> j(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        j(i, i) = 1;
    }
    j(0, n - 1) = 1;
    j(n - 1, 0) = 1;
    return j;
}

void validate_bianchi_d(long d)
{
    if (d == 1 || d == 3) {
        throw std::invalid_argument("d = 1 and d = 3 are not supported");
    }
    if (d < 2 || !is_squarefree(d)) {
        throw std::invalid_argument("d must be a squarefree integer >= 2 (got " + std::to_string(d) + ")");
    }
}

CuspParams BianchiCusp::numeric(const Angle& u) const
{
    return {a.value(), b1.value(), b2.value(), u};
}

BianchiCusp bianchi_cusp(long d)
{
    validate_bianchi_d(d);
    BianchiCusp c;
    c.a = Surd::make(1, 2);
    if (d % 4 == 3) {
        c.b1 = Surd::make(make_rational(1, 2), 2);
        c.b2 = Surd::make(make_rational(-1, 2), 2 * d);
    } else {
        c.b1 = Surd::make(0, 1);
        c.b2 = Surd::make(-1, 2 * d);
    }
    return c;
}

ExtScalar surd_to_ext(const Surd& s, long d)
{
    if (s.q == 0 || s.r == 1) {
        return ES(s.q);
    }
    const std::pair<long, ES> basis[] = {{2, ES::sqrt2(d)}, {d, ES::sqrtd(d)}, {2 * d, ES::sqrt2d(d)}};
    for (const auto& [radicand, root] : basis) {
        const Surd unit = Surd::make(1, radicand);
        if (unit.r == s.r) {
            return ES(Rational(s.q / unit.q)) * root;
        }
    }
    throw std::domain_error("surd " + s.to_string() + " is not in Q(sqrt2, sqrt" + std::to_string(d) + ")");
}

Mat<ExtScalar> cusp_translation_exact(const ExtScalar& z1, const ExtScalar& z2)
{
    return Mat<ES>{{1, -z1, -z2, -half(z1 * z1 + z2 * z2)}, {0, 1, 0, z1}, {0, 0, 1, z2}, {0, 0, 0, 1}};
}

Mat<ExtScalar> bianchi_A1(long d)
{
    validate_bianchi_d(d);
    return Mat<ES>{{0, 0, 0, -1}, {0, -1, 0, 0}, {0, 0, 1, 0}, {-1, 0, 0, 0}};
}

Mat<ExtScalar> bianchi_T1(long d)
{
    validate_bianchi_d(d);
    const ES r2 = ES::sqrt2(d);
    return Mat<ES>{{1, -r2, 0, -1}, {0, 1, 0, r2}, {0, 0, 1, 0}, {0, 0, 0, 1}};
}

Mat<ExtScalar> bianchi_U1(long d)
{
    validate_bianchi_d(d);
    const ES r2 = ES::sqrt2(d);
    const ES r2d = ES::sqrt2d(d);
    if (d % 4 == 3) {
        return Mat<ES>{{1, -half(r2), half(r2d), ES(make_rational(-(d + 1), 4))},
                       {0, 1, 0, half(r2)},
                       {0, 0, 1, -half(r2d)},
                       {0, 0, 0, 1}};
    }
    return Mat<ES>{{1, 0, r2d, -d}, {0, 1, 0, 0}, {0, 0, 1, -r2d}, {0, 0, 0, 1}};
}

Mat<ExtScalar> bianchi_Uu_printed(long d)
{
    validate_bianchi_d(d);
    const ES u = u_sym();
    const ES r2 = ES::sqrt2(d);
    const ES r2d = ES::sqrt2d(d);
    if (d % 4 == 3) {
        return Mat<ES>{{1, -half(r2), half(r2d), ES(make_rational(-(d + 1), 4))},
                       {0, 1, 0, half(r2)},
                       {0, 0, u, -u * half(r2d)},
                       {0, 0, 0, 1}};
    }
    return Mat<ES>{{1, 0, r2d, -d}, {0, 1, 0, 0}, {0, 0, u, -u * r2d}, {0, 0, 0, 1}};
}

BianchiExact bianchi_family_su31_exact(long d)
{
    BianchiExact f;
    f.d = d;
    f.target = Target::SU31;
    f.A = bianchi_A1(d);
    f.T = bianchi_T1(d);
    f.centralizer = centralizer_su31_exact();
    f.rep = bend_hnn(hnn_data(f.A, f.T, bianchi_U1(d)), f.centralizer);
    f.U = f.rep.image("u");
    f.form = siegel_form_exact(4);
    return f;
}

BianchiExact bianchi_family_so41_exact(long d, const Rational& s)
{
    BianchiExact f;
    f.d = d;
    f.target = Target::SO41;
    f.A = embed_so41(bianchi_A1(d));
    f.T = embed_so41(bianchi_T1(d));
    f.centralizer = centralizer_so41_exact(s);
    f.rep = bend_hnn(hnn_data(f.A, f.T, embed_so41(bianchi_U1(d))), f.centralizer);
    f.U = f.rep.image("u");
    f.form = siegel_form_exact(5);
    return f;
}

BianchiNumeric bianchi_family(long d, Target target, const Angle& param)
{
    BianchiNumeric f;
    f.d = d;
    f.target = target;
    f.param = param;
    Mat<ES> a = bianchi_A1(d);
    Mat<ES> t = bianchi_T1(d);
    Mat<ES> u = bianchi_U1(d);
    if (target == Target::SO41) {
        a = embed_so41(a);
        t = embed_so41(t);
        u = embed_so41(u);
        f.centralizer = centralizer_so41(param);
    } else {
        f.centralizer = centralizer_su31(param);
    }
    BendDataHNN<CScalar> data;
    data.base.set("a", evaluate(a, param));
    data.base.set("t", evaluate(t, param));
    data.base.set("u", evaluate(u, param));
    data.stable_letter = "u";
    data.edge_generators = {"a", "t"};
    f.rep = bend_hnn(data, f.centralizer);
    f.A = f.rep.image("a");
    f.T = f.rep.image("t");
    f.U = f.rep.image("u");
    f.form = HermForm(siegel_form(target == Target::SO41 ? 5 : 4));
    return f;
}

AlgebraDimension algebra_dimension(const std::vector<CMat>& gens, double tol)
{
    if (gens.empty() || gens.size() > 8) {
        throw std::invalid_argument("algebra_dimension takes 1 to 8 generators");
    }
    const std::size_t n = gens.front().size();
    if (n == 0 || n > 6) {
        throw std::invalid_argument("algebra_dimension supports dimensions 1 to 6");
    }
    const std::size_t full = n * n;
    std::vector<std::vector<CScalar>> basis;
    double min_accepted = std::numeric_limits<double>::infinity();
    double max_rejected = 0.0;
    AlgebraDimension out;

    auto offer = [&](const CMat& m) {
        ++out.words;
        std::vector<CScalar> v = flatten(m);
        const double norm = frobenius(v);
        if (norm == 0.0) {
            return false;
        }
        for (auto& x : v) {
            x /= norm;
        }
        orthogonalize(v, basis);
        const double r = frobenius(v);
        if (r > tol) {
            for (auto& x : v) {
                x /= r;
            }
            basis.push_back(std::move(v));
            min_accepted = std::min(min_accepted, r);
            return true;
        }
        max_rejected = std::max(max_rejected, r);
        return false;
    };

    std::vector<CMat> frontier{CMat::identity(n)};
    offer(frontier.front());
    for (std::size_t len = 1; len <= 2 * full && !frontier.empty() && basis.size() < full; ++len) {
        std::vector<CMat> next;
        for (const auto& b : frontier) {
            for (const auto& g : gens) {
                if (basis.size() == full) {
                    break;
                }
                CMat c = b * g;
                const double s = max_abs(c);
                if (s > 0.0) {
                    c = c.map([&](const CScalar& x) { return x / s; });
                }
                if (offer(c)) {
                    next.push_back(c);
                }
            }
        }
        frontier = std::move(next);
    }

    out.dimension = static_cast<int>(basis.size());
    const double acc = min_accepted / tol;
    const double rej = max_rejected > 0.0 ? tol / max_rejected : std::numeric_limits<double>::infinity();
    out.margin = std::min(acc, rej);
    if (out.margin < 10.0) {
        throw IndeterminateError("span rank decision within 10x of tol (margin " + fmt(out.margin) + ")", out.margin);
    }
    return out;
}

bool BianchiReport::passed() const
{
    return relations_ok && trace_ok && form_ok && centralizer_ok && lattice_reproduced && class_ok &&
           algebra_error.empty();
}

BianchiReport verify_bianchi_su31(long d, const std::optional<Angle>& u, const VerifyOptions& opts)
{
    validate_bianchi_d(d);
    BianchiReport r;
    r.d = d;
    r.target = Target::SU31;
    r.cusp = bianchi_cusp(d);
    r.lattice_reproduced = lattice_matches(d);
    r.relations_checked = has_presentation(d);

    const bool trivial = u && is_trivial_angle(*u);
    if (trivial) {
        r.cusp_verdict = "undeformed-lattice";
        r.strongly_parabolic_preserving = true;
    } else if (r.cusp.orthogonal()) {
        r.cusp_verdict = "discrete-faithful";
        r.strongly_parabolic_preserving = true;
    } else {
        r.cusp_verdict = "faithful";
    }
    r.parabolic_preserving = true;

    if (!u) {
        const BianchiExact f = bianchi_family_su31_exact(d);
        r.param = "u";
        r.exact = true;
        r.lattice_reproduced = r.lattice_reproduced && f.U == bianchi_Uu_printed(d);
        if (r.relations_checked) {
            r.relations = check_relations(f.rep, bianchi_presentation(d));
        }
        const ES tr = f.U.trace();
        r.trace_u = to_string(tr);
        r.trace_expected = to_string(ES(3 + LaurentPoly::u()));
        r.trace_ok = tr == ES(3 + LaurentPoly::u());
        r.form_ok = true;
        for (const auto* g : {&f.A, &f.T, &f.U}) {
            r.form_ok = r.form_ok && preserves_form_exact(*g, f.form, FormConvention::ConjTranspose);
        }
        r.centralizer_ok = commutes(f.centralizer, f.A, 0.0) && commutes(f.centralizer, f.T, 0.0);
    } else {
        const BianchiNumeric f = bianchi_family(d, Target::SU31, *u);
        r.param = u->to_string();
        if (r.relations_checked) {
            r.relations = check_relations(f.rep, bianchi_presentation(d), opts.tol);
        }
        const CScalar tr = f.U.trace();
        const CScalar expect = 3.0 + u->unit();
        r.trace_u = to_string(tr);
        r.trace_expected = to_string(expect);
        r.trace_ok = std::abs(tr - expect) <= opts.tol;
        numeric_checks(f, opts.tol, r);
        r.class_expected = trivial ? "parabolic-unipotent" : "parabolic-ellipto";
        classify_u(f.U, f.form, opts, r);
        probe_algebra({f.A, f.T, f.U}, opts, r);
    }
    for (const auto& rel : r.relations) {
        r.relations_ok = r.relations_ok && rel.projective_pass;
    }
    return r;
}

BianchiReport verify_bianchi_so41(long d, const Angle& theta_in, const std::optional<Rational>& pythagorean,
                                  const VerifyOptions& opts)
{
    validate_bianchi_d(d);
    const Angle theta = pythagorean ? pythagorean_angle(*pythagorean) : theta_in;
    BianchiReport r;
    r.d = d;
    r.target = Target::SO41;
    r.cusp = bianchi_cusp(d);
    r.lattice_reproduced = lattice_matches(d);
    r.relations_checked = has_presentation(d);
    r.param = pythagorean ? "2atan(" + pythagorean->get_str() + ")" : theta.to_string();

    const bool trivial = is_trivial_angle(theta);
    if (trivial) {
        r.cusp_verdict = "undeformed-lattice";
        r.parabolic_preserving = true;
        r.strongly_parabolic_preserving = true;
        r.class_expected = "parabolic-unipotent";
    } else if (r.cusp.orthogonal()) {
        r.cusp_verdict = "elliptic-U";
        r.class_expected = "elliptic";
    } else {
        r.class_expected = "parabolic-ellipto";
        r.parabolic_preserving = true;
        try {
            const RS1Case c = rs1_classify({r.cusp.a, Angle::pi_multiple(0)}, {r.cusp.b1, theta});
            r.cusp_verdict = to_string(c);
        } catch (const UndecidableError&) {
            r.cusp_verdict = "undecidable";
        }
        // With a/b1 = p/q in lowest terms, the cusp image is all-parabolic
        // iff p theta is in 2 pi Z and discrete iff theta is in pi Q.
        if (r.cusp.a.r == r.cusp.b1.r && theta.is_exact()) {
            const Rational ratio = r.cusp.a.q / r.cusp.b1.q;
            const mpz_class p = abs(ratio.get_num());
            const mpz_class num = p * theta.numerator();
            const mpz_class den = 2 * theta.denominator();
            r.strongly_parabolic_preserving = num % den == 0;
        }
    }

    CMat a_num;
    CMat t_num;
    CMat u_num;
    HermForm form(siegel_form(5));
    if (pythagorean) {
        const BianchiExact f = bianchi_family_so41_exact(d, *pythagorean);
        r.exact = true;
        if (r.relations_checked) {
            r.relations = check_relations(f.rep, bianchi_presentation(d));
        }
        const ES tr = f.U.trace();
        const ES expect = ES(3) + ES(2) * f.centralizer(2, 2);
        r.trace_u = to_string(tr);
        r.trace_expected = to_string(expect);
        r.trace_ok = tr == expect;
        r.form_ok = true;
        for (const auto* g : {&f.A, &f.T, &f.U}) {
            r.form_ok = r.form_ok && preserves_form_exact(*g, f.form, FormConvention::ConjTranspose);
        }
        r.centralizer_ok = commutes(f.centralizer, f.A, 0.0) && commutes(f.centralizer, f.T, 0.0);
        a_num = evaluate(f.A, theta);
        t_num = evaluate(f.T, theta);
        u_num = evaluate(f.U, theta);
    } else {
        const BianchiNumeric f = bianchi_family(d, Target::SO41, theta);
        if (r.relations_checked) {
            r.relations = check_relations(f.rep, bianchi_presentation(d), opts.tol);
        }
        const CScalar tr = f.U.trace();
        const CScalar expect = 3.0 + 2.0 * theta.cos();
        r.trace_u = to_string(tr);
        r.trace_expected = to_string(expect);
        r.trace_ok = std::abs(tr - expect) <= opts.tol;
        numeric_checks(f, opts.tol, r);
        a_num = f.A;
        t_num = f.T;
        u_num = f.U;
    }
    classify_u(u_num, form, opts, r);
    probe_algebra({a_num, t_num, u_num}, opts, r);
    for (const auto& rel : r.relations) {
        r.relations_ok = r.relations_ok && rel.projective_pass;
    }
    return r;
}

}  // namespace hypdef
