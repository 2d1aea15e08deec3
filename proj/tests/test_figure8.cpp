#include "oracles.hpp"

#include "hypdef/figure8.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hypdef;

namespace {

using LP = LaurentPoly;

LP lp_pow(const LP& p, int k)
{
    LP r(1);
    for (int i = 0; i < k; ++i) {
        r = r * p;
    }
    return r;
}

/// -4 (c + 1)^2 (2c + 1)^3 with c = (u + u^-1) / 2, built symbolically.
LP closed_det_poly()
{
    const LP c = LP::monomial(make_rational(1, 2), 1) + LP::monomial(make_rational(1, 2), -1);
    return LP(-4) * lp_pow(c + 1, 2) * lp_pow(LP(2) * c + 1, 3);
}

oracle::Dense dense_at(const Mat<LP>& m, double alpha)
{
    oracle::Dense d(m.size(), std::vector<oracle::C>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            d[i][j] = oracle::eval_terms(m(i, j), alpha);
        }
    }
    return d;
}

}  // namespace

TEST_SUITE("figure8")
{
    TEST_CASE("relation holds exactly at symbolic u")
    {
        const Fig8Exact& f = build_family_exact();
        for (const auto& r : check_relations(f.rep, f.presentation)) {
            CHECK(r.exact);
            CHECK(r.linear_pass);
        }
    }

    TEST_CASE("generators preserve the form exactly")
    {
        const Fig8Exact& f = build_family_exact();
        CHECK(is_hermitian_exact(f.J));
        CHECK(preserves_form_exact(f.M, f.J, FormConvention::TransposeConj));
        CHECK(preserves_form_exact(f.N, f.J, FormConvention::TransposeConj));
        CHECK(det_exact(f.M) == LP(1));
        CHECK(det_exact(f.N) == LP(1));
    }

    TEST_CASE("longitude matches its transcription and commutes with the meridian")
    {
        const Fig8Exact& f = build_family_exact();
        const Mat<LP> l = eval_word(f.rep, fig8_l_word());
        CHECK(l == fig8_L_printed());
        CHECK(l * f.M == f.M * l);
        CHECK(det_exact(l) == LP(1));
    }

    TEST_CASE("symbolic determinant equals the closed form")
    {
        CHECK(det_exact(fig8_J()) == closed_det_poly());
    }

    TEST_CASE("direct determinant agrees with Leibniz and the closed form")
    {
        for (int trial = 0; trial < 50; ++trial) {
            const double a = oracle::uniform_real(-std::numbers::pi, std::numbers::pi);
            const Angle alpha = Angle::radians(a);
            const auto want = oracle::leibniz_det(dense_at(fig8_J(), a));
            CHECK(std::abs(want.imag()) < 1e-9 * (1.0 + std::abs(want)));
            CHECK(det_J_direct(alpha) == doctest::Approx(want.real()).epsilon(1e-9));
            CHECK(det_J_closed(alpha) == doctest::Approx(want.real()).epsilon(1e-9));
        }
    }

    TEST_CASE("determinant vanishes at the degenerate parameters")
    {
        CHECK(det_J_closed(Angle::pi_multiple(2, 3)) == doctest::Approx(0.0));
        CHECK(det_J_closed(Angle::pi_multiple(1)) == doctest::Approx(0.0));
        CHECK(std::abs(det_J_direct(Angle::pi_multiple(2, 3))) < 1e-12);
    }

    TEST_CASE("signature agrees with the Jacobi oracle")
    {
        for (int trial = 0; trial < 40; ++trial) {
            const double a = oracle::uniform_real(-3.1, 3.1);
            if (std::abs(std::abs(a) - 2.0 * std::numbers::pi / 3.0) < 0.02) {
                continue;
            }
            const Fig8Numeric f = build_family(Angle::radians(a));
            const auto want = oracle::hermitian_signature(oracle::to_dense(f.form.gram()), 1e-9);
            const Signature s = herm_signature(f.form);
            CHECK(s == Signature{want[0], want[1], want[2]});
            const auto expected = expected_signature(Angle::radians(a), 0.01);
            REQUIRE(expected.has_value());
            CHECK(s == *expected);
        }
    }

    TEST_CASE("expected signature bands")
    {
        CHECK(expected_signature(Angle::radians(0.0), 0.01) == Signature{3, 1, 0});
        CHECK(expected_signature(Angle::radians(2.5), 0.01) == Signature{2, 2, 0});
        CHECK(expected_signature(Angle::radians(-2.5), 0.01) == Signature{2, 2, 0});
        CHECK_FALSE(expected_signature(Angle::pi_multiple(2, 3), 0.01).has_value());
        CHECK_FALSE(expected_signature(Angle::radians(3.14), 0.01).has_value());
        CHECK(principal_angle(Angle::radians(7.0)) == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
    }

    TEST_CASE("printed traces are exact")
    {
        const auto rows = trace_integrality_check();
        REQUIRE(rows.size() == 9);
        const LP u = LP::u();
        const LP ub = LP::u_inv();
        const LP want[] = {LP(4), LP(4), 6 + u, LP(3), 9 + 3 * u, 3 + ub, LP(3), 6 + ub, 6 + ub};
        for (std::size_t k = 0; k < 9; ++k) {
            CHECK(rows[k].trace == want[k]);
            CHECK(rows[k].matches);
            CHECK(rows[k].integral);
        }
    }

    TEST_CASE("printed traces agree numerically with direct products")
    {
        const Fig8Exact& f = build_family_exact();
        for (int trial = 0; trial < 10; ++trial) {
            const double a = oracle::uniform_real(-3, 3);
            const auto m = dense_at(f.M, a);
            const auto n = dense_at(f.N, a);
            const auto mn = oracle::matmul(m, n);
            auto tr = [](const oracle::Dense& x) { return x[0][0] + x[1][1] + x[2][2] + x[3][3]; };
            CHECK(std::abs(tr(mn) - (6.0 + std::polar(1.0, a))) < 1e-9);
            CHECK(std::abs(tr(oracle::matmul(mn, m)) - (9.0 + 3.0 * std::polar(1.0, a))) < 1e-9);
        }
    }

    TEST_CASE("trace of l m is integral")
    {
        const Fig8Exact& f = build_family_exact();
        const LP t = trace_word(f.rep, fig8_l_word() * Word::gen("m"));
        CHECK(t.is_integral());
        const auto rows = trace_integrality_check({Word::parse("m^3.n^-2"), fig8_l_word()});
        CHECK(rows.size() == 11);
        CHECK(rows.back().integral);
        CHECK_FALSE(rows.back().expected.has_value());
    }

    TEST_CASE("meridian is unipotent exactly")
    {
        const Fig8Exact& f = build_family_exact();
        const Mat<LP> d = f.M - Mat<LP>::identity(4);
        CHECK_FALSE((d * d).is_zero());
        CHECK((d * d * d).is_zero());
    }

    TEST_CASE("longitude spectrum {u x3, u^-3} and non-diagonalizability")
    {
        const Fig8Exact& f = build_family_exact();
        const Mat<LP> l = eval_word(f.rep, fig8_l_word());
        for (double a : {0.3, 1.0, -1.7, 2.0}) {
            const auto L = dense_at(l, a);
            const auto u = std::polar(1.0, a);
            const auto u3 = std::polar(1.0, -3.0 * a);
            const auto a1 = oracle::shift(L, u);
            const auto a3 = oracle::shift(L, u3);
            const oracle::Dense zero(4, std::vector<oracle::C>(4, 0.0));
            CHECK(oracle::max_diff(oracle::matmul(oracle::matmul(oracle::matmul(a1, a1), a1), a3), zero) < 1e-8);
            CHECK(oracle::max_diff(oracle::matmul(a1, a3), zero) > 1e-3);
        }
    }

    TEST_CASE("parabolicity report")
    {
        for (double a : {0.2, 1.0, -1.5, 2.0}) {
            const ParabolicityReport r = parabolicity_report(Angle::radians(a));
            CHECK(r.m.iso.tag() == "parabolic-unipotent-step3");
            CHECK(r.l.iso.tag() == "parabolic-ellipto");
            CHECK(r.spectrum_matches);
        }
        const ParabolicityReport r0 = parabolicity_report(Angle::pi_multiple(0));
        CHECK(r0.l.iso.is_unipotent());
        CHECK(r0.spectrum_matches);
        CHECK_THROWS_AS(parabolicity_report(Angle::radians(2.2)), std::domain_error);
    }

    TEST_CASE("at u = i the longitude is a vertical translation up to a unit")
    {
        const ParabolicityReport r = parabolicity_report(Angle::pi_multiple(1, 2));
        CHECK(r.l.iso.tag() == "parabolic-unipotent-step2");
        const Fig8Exact& f = build_family_exact();
        const auto L = dense_at(eval_word(f.rep, fig8_l_word()), std::numbers::pi / 2);
        const auto d = oracle::shift(L, oracle::C(0, 1));
        const oracle::Dense zero(4, std::vector<oracle::C>(4, 0.0));
        CHECK(oracle::max_diff(oracle::matmul(d, d), zero) < 1e-9);
    }

    TEST_CASE("undeformed generators are integral unipotents")
    {
        const Mat<LP> m1 = at_u_one(fig8_M());
        for (const auto& x : m1.data()) {
            CHECK(x.is_constant());
        }
        const Mat<LP> d = m1 - Mat<LP>::identity(4);
        CHECK((d * d * d).is_zero());
    }

    TEST_CASE("annotations")
    {
        CHECK(fig8_entry_denominator_lcm() == 2);
    }

    TEST_CASE("signature sweep rows")
    {
        const auto rows = signature_sweep(midpoint_grid(-std::numbers::pi, std::numbers::pi, 36), 0.01);
        REQUIRE(rows.size() == 36);
        for (const auto& r : rows) {
            CHECK(r.ok);
            CHECK(r.det == doctest::Approx(r.det_closed).epsilon(1e-9));
        }
    }

    TEST_CASE("midpoint grid")
    {
        const auto g = midpoint_grid(0.0, 1.0, 4);
        REQUIRE(g.size() == 4);
        CHECK(g[0].value() == doctest::Approx(0.125));
        CHECK(g[3].value() == doctest::Approx(0.875));
        CHECK_THROWS_AS(midpoint_grid(0.0, 1.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(midpoint_grid(1.0, 0.0, 3), std::invalid_argument);
    }
}
