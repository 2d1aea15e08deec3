#include "hypdef/figure8.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hypdef {

namespace {

using LP = LaurentPoly;

/// Sum of c * u^e over the listed (e, c) pairs, with c = num/den.
LP poly(std::initializer_list<std::tuple<int, long, long>> terms)
{
    LP p;
    for (const auto& [e, num, den] : terms) {
        p += LP::monomial(make_rational(num, den), e);
    }
    return p;
}

}  // namespace

Mat<LaurentPoly> fig8_M()
{
    return Mat<LP>{{1, 0, 1, poly({{1, 1, 2}, {0, -1, 1}})},
                   {0, 1, 1, poly({{1, 1, 2}})},
                   {0, 0, 1, poly({{1, 1, 2}, {0, 1, 2}})},
                   {0, 0, 0, 1}};
}

Mat<LaurentPoly> fig8_N()
{
    return Mat<LP>{{1, 0, 0, 0},
                   {poly({{0, 2, 1}, {-1, 2, 1}}), 1, 0, 0},
                   {2, 1, 1, 0},
                   {1, 1, 0, 1}};
}

Mat<LaurentPoly> fig8_J()
{
    const LP u = LP::u();
    const LP ub = LP::u_inv();
    const LP s = u + ub;
    const LP half_s = poly({{1, 1, 2}, {-1, 1, 2}});
    const LP a = 1 + half_s;
    const LP c = 4 + 2 * s;
    return Mat<LP>{{a, -a, 1 + u, -3 - 2 * s - ub * ub},
                   {-a, a, -1 - u, 1 + u},
                   {1 + ub, -1 - ub, c, -c},
                   {-3 - 2 * s - u * u, 1 + ub, -c, c}};
}

Mat<LaurentPoly> fig8_L_printed()
{
    return Mat<LP>{{poly({{1, 1, 2}, {0, -1, 2}, {-1, -1, 2}, {-2, -1, 2}}),
                    poly({{1, 1, 2}, {0, 1, 2}, {-1, 1, 2}, {-2, 1, 2}}),
                    poly({{0, -1, 1}, {-2, -1, 1}}),
                    poly({{1, 5, 2}, {0, 3, 1}, {-1, 1, 1}, {-2, 3, 2}})},
                   {poly({{1, 1, 2}, {0, -1, 2}, {-1, -1, 2}, {-2, -1, 2}, {-3, -1, 1}}),
                    poly({{1, 1, 2}, {0, 1, 2}, {-1, 1, 2}, {-2, 1, 2}, {-3, 1, 1}}),
                    poly({{0, 1, 1}, {-1, -2, 1}, {-2, 1, 1}, {-3, -2, 1}}),
                    poly({{1, 7, 2}, {0, 2, 1}, {-1, 5, 1}, {-2, 1, 2}, {-3, 3, 1}})},
                   {0, 0, LP::u(), 0},
                   {0, 0, 0, LP::u()}};
}

Word fig8_l_word()
{
    return Word::parse("n.m^-1.n^-1.m^2.n^-1.m^-1.n");
}

Mat<LaurentPoly> at_u_one(const Mat<LaurentPoly>& m)
{
    return m.map([](const LP& p) {
        Rational sum = 0;
        for (const auto& [e, c] : p.terms()) {
            sum += c;
        }
        return LP(sum);
    });
}

const Fig8Exact& build_family_exact()
{
    static const Fig8Exact fam = [] {
        Fig8Exact f;
        f.M = fig8_M();
        f.N = fig8_N();
        f.J = fig8_J();
        f.rep.set("m", f.M);
        f.rep.set("n", f.N);
        f.presentation = figure8_presentation();
        if (!is_hermitian_exact(f.J)) {
            throw std::logic_error("figure-eight form is not Hermitian");
        }
        for (const auto& g : {f.M, f.N}) {
            if (!preserves_form_exact(g, f.J, FormConvention::TransposeConj)) {
                throw std::logic_error("figure-eight generator does not preserve the form");
            }
        }
        for (const auto& r : check_relations(f.rep, f.presentation)) {
            if (!r.linear_pass) {
                throw std::logic_error("figure-eight relation fails: " + r.relator);
            }
        }
        return f;
    }();
    return fam;
}

Fig8Numeric build_family(const Angle& alpha)
{
    const Fig8Exact& ex = build_family_exact();
    Fig8Numeric f;
    f.alpha = alpha;
    f.M = evaluate(ex.M, alpha);
    f.N = evaluate(ex.N, alpha);
    f.J = evaluate(ex.J, alpha);
    f.form = HermForm(f.J, FormConvention::TransposeConj, 1e-10);
    f.rep.set("m", f.M);
    f.rep.set("n", f.N);
    const double scale = std::max(1.0, max_abs(f.J));
    for (const auto& g : {f.M, f.N}) {
        if (form_defect(g, f.form) > 1e-10 * scale * max_abs(g) * max_abs(g)) {
            throw std::logic_error("figure-eight generator does not preserve the form at alpha=" +
                                   alpha.to_string());
        }
    }
    for (const auto& r : check_relations(f.rep, ex.presentation, 1e-10 * scale)) {
        if (!r.linear_pass) {
            throw std::logic_error("figure-eight relation fails at alpha=" + alpha.to_string());
        }
    }
    return f;
}

double det_J_closed(const Angle& alpha)
{
    const double c = alpha.cos();
    return -4.0 * std::pow(c + 1.0, 2) * std::pow(2.0 * c + 1.0, 3);
}

double det_J_direct(const Angle& alpha)
{
    const GaussRational u(Rational(alpha.cos()), Rational(alpha.sin()));
    const GaussRational ui = u.inverse();
    const Mat<GaussRational> j = fig8_J().map([&](const LP& p) {
        GaussRational sum;
        for (const auto& [e, c] : p.terms()) {
            GaussRational term(c);
            const GaussRational& base = e >= 0 ? u : ui;
            for (int k = 0; k < (e >= 0 ? e : -e); ++k) {
                term = term * base;
            }
            sum = sum + term;
        }
        return sum;
    });
    return det_exact(j).re.get_d();
}

double principal_angle(const Angle& alpha)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(alpha.value(), two_pi);
    if (a > std::numbers::pi) {
        a -= two_pi;
    } else if (a <= -std::numbers::pi) {
        a += two_pi;
    }
    return a;
}

std::optional<Signature> expected_signature(const Angle& alpha, double eps)
{
    const double a = std::abs(principal_angle(alpha));
    const double third = 2.0 * std::numbers::pi / 3.0;
    if (a < third - eps) {
        return Signature{3, 1, 0};
    }
    if (a > third + eps && a < std::numbers::pi - eps) {
        return Signature{2, 2, 0};
    }
    return std::nullopt;
}

std::vector<SignatureRow> signature_sweep(const std::vector<Angle>& grid, double eps, double tol)
{
    std::vector<SignatureRow> rows;
    for (const auto& alpha : grid) {
        const Fig8Numeric f = build_family(alpha);
        SignatureRow r;
        r.alpha = alpha;
        r.signature = herm_signature(f.form, tol);
        r.expected = expected_signature(alpha, eps);
        r.det = det_J_direct(alpha);
        r.det_lu = det(f.J).real();
        r.det_closed = det_J_closed(alpha);
        r.ok = !r.expected || r.signature == *r.expected;
        rows.push_back(r);
    }
    return rows;
}

ParabolicityReport parabolicity_report(const Angle& alpha, const ClassifyOptions& opts)
{
    if (!(std::abs(principal_angle(alpha)) < 2.0 * std::numbers::pi / 3.0)) {
        throw std::domain_error("parabolicity is stated only for |alpha| < 2pi/3");
    }
    const Fig8Numeric f = build_family(alpha);
    ParabolicityReport rep;
    rep.m = classify_detailed(f.M, f.form, opts);
    const CMat l = eval_word(f.rep, fig8_l_word());
    rep.l = classify_detailed(l, f.form, opts);

    const CScalar u = alpha.unit();
    const CScalar u3 = alpha.unit_power(-3);
    std::vector<std::pair<CScalar, int>> expected;
    if (std::abs(u - u3) <= opts.cluster_radius) {
        expected = {{u, 4}};
    } else {
        expected = {{u, 3}, {u3, 1}};
    }
    const auto& clusters = rep.l.spectrum.clusters;
    bool match = clusters.size() == expected.size();
    for (const auto& [value, mult] : expected) {
        bool found = false;
        for (const auto& c : clusters) {
            found = found || (std::abs(c.value - value) <= 1e-6 && c.algebraic == mult);
        }
        match = match && found;
    }
    rep.spectrum_matches = match;
    return rep;
}

std::vector<TraceWord> fig8_trace_words()
{
    const LP u = LP::u();
    const LP ub = LP::u_inv();
    return {
        {"m", Word::parse("m"), LP(4)},
        {"n", Word::parse("n"), LP(4)},
        {"mn", Word::parse("m.n"), 6 + u},
        {"mn^-1", Word::parse("m.n^-1"), LP(3)},
        {"mnm", Word::parse("m.n.m"), 9 + 3 * u},
        {"mn^-1m", Word::parse("m.n^-1.m"), 3 + ub},
        {"[m,n]", commutator(Word::gen("m"), Word::gen("n")), LP(3)},
        {"mnmn^-1", Word::parse("m.n.m.n^-1"), 6 + ub},
        {"mn^-1mn", Word::parse("m.n^-1.m.n"), 6 + ub},
    };
}

std::vector<TraceRow> trace_integrality_check(const std::vector<Word>& extra)
{
    const Fig8Exact& ex = build_family_exact();
    std::vector<TraceWord> words = fig8_trace_words();
    for (const auto& w : extra) {
        words.push_back({w.to_string(), w, std::nullopt});
    }
    std::vector<TraceRow> rows;
    for (const auto& tw : words) {
        TraceRow r;
        r.name = tw.name;
        r.word = tw.word.to_string();
        r.trace = trace_word(ex.rep, tw.word);
        r.integral = in_Z_laurent(r.trace);
        r.expected = tw.expected;
        r.matches = !tw.expected || r.trace == *tw.expected;
        rows.push_back(r);
    }
    return rows;
}

Rational fig8_entry_denominator_lcm()
{
    const Fig8Exact& ex = build_family_exact();
    mpz_class l = 1;
    for (const auto* m : {&ex.M, &ex.N, &ex.J}) {
        for (std::size_t i = 0; i < m->size(); ++i) {
            for (std::size_t j = 0; j < m->size(); ++j) {
                const Rational d = (*m)(i, j).denominator_lcm();
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_num().get_mpz_t());
            }
        }
    }
    return Rational(l);
}

std::vector<Angle> midpoint_grid(double start, double end, int count)
{
    if (count <= 0 || !(end > start)) {
        throw std::invalid_argument("grid needs a positive count and start < end");
    }
    std::vector<Angle> out;
    const double h = (end - start) / count;
    for (int k = 0; k < count; ++k) {
        out.push_back(Angle::radians(start + (k + 0.5) * h));
    }
    return out;
}

}  // namespace hypdef
