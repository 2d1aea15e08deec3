#include "oracles.hpp"

#include "hypdef/scalars.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hypdef;

TEST_SUITE("scalars")
{
    TEST_CASE("angle parsing and printing")
    {
        CHECK(Angle::parse("pi/3").to_string() == "1/3pi");
        CHECK(Angle::parse("2/3pi").to_string() == "2/3pi");
        CHECK(Angle::parse("2/3*pi").to_string() == "2/3pi");
        CHECK(Angle::parse("-pi").to_string() == "-1pi");
        CHECK(Angle::parse("2pi").is_zero_mod_2pi());
        CHECK(Angle::parse("0").to_string() == "0");
        CHECK(Angle::parse("0.5").to_string() == "0.5");
        CHECK_THROWS_AS(Angle::parse("half"), std::invalid_argument);
        CHECK_THROWS_AS(Angle::parse("1.5x"), std::invalid_argument);
    }

    TEST_CASE("angle rationality markers")
    {
        CHECK(Angle::pi_multiple(1, 3).in_pi_rationals() == true);
        CHECK(Angle::parse("0.5").in_pi_rationals() == false);
        CHECK(Angle::parse("0").in_pi_rationals() == true);
        CHECK_FALSE(Angle::radians(0.5).in_pi_rationals().has_value());
    }

    TEST_CASE("angle trigonometry matches std")
    {
        for (int k = -12; k <= 12; ++k) {
            const Angle a = Angle::pi_multiple(k, 6);
            const double v = k * std::numbers::pi / 6.0;
            CHECK(a.cos() == doctest::Approx(std::cos(v)).epsilon(1e-15));
            CHECK(a.sin() == doctest::Approx(std::sin(v)).epsilon(1e-15));
            CHECK(std::abs(a.unit_power(3) - std::polar(1.0, 3 * v)) < 1e-14);
        }
    }

    TEST_CASE("laurent printing")
    {
        const LaurentPoly u = LaurentPoly::u();
        CHECK((9 + 3 * u).to_string() == "9+3*u");
        CHECK((3 + LaurentPoly::u_inv()).to_string() == "3+u^-1");
        CHECK(LaurentPoly().to_string() == "0");
    }

    TEST_CASE("laurent ring axioms on random elements")
    {
        for (int trial = 0; trial < 200; ++trial) {
            const LaurentPoly a = oracle::random_laurent();
            const LaurentPoly b = oracle::random_laurent();
            const LaurentPoly c = oracle::random_laurent();
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a - a == LaurentPoly());
            CHECK((a * b).star() == a.star() * b.star());
            CHECK(a.star().star() == a);
        }
    }

    TEST_CASE("laurent evaluation agrees with termwise sum")
    {
        for (int trial = 0; trial < 100; ++trial) {
            const LaurentPoly a = oracle::random_laurent();
            const LaurentPoly b = oracle::random_laurent();
            const double alpha = oracle::uniform_real(-3.0, 3.0);
            const auto ab = oracle::eval_terms(a, alpha) * oracle::eval_terms(b, alpha);
            CHECK(std::abs((a * b).eval(Angle::radians(alpha)) - ab) < 1e-10 * (1.0 + std::abs(ab)));
            CHECK(std::abs(a.star().eval(Angle::radians(alpha)) - std::conj(oracle::eval_terms(a, alpha))) < 1e-10 * (1.0 + std::abs(ab)));
        }
    }

    TEST_CASE("laurent integrality and units")
    {
        const LaurentPoly u = LaurentPoly::u();
        CHECK((3 * u + LaurentPoly::monomial(1, -3)).is_integral());
        CHECK_FALSE(LaurentPoly::monomial(make_rational(1, 2), 1).is_integral());
        CHECK(LaurentPoly::monomial(make_rational(1, 2), 4).denominator_lcm() == 2);
        CHECK(LaurentPoly::monomial(make_rational(2, 3), 2).inverse() == LaurentPoly::monomial(make_rational(3, 2), -2));
        CHECK_THROWS_AS((1 + u).inverse(), std::domain_error);
    }

    TEST_CASE("extension scalar surd products")
    {
        for (long d : {2L, 5L, 7L, 11L}) {
            const ExtScalar r2 = ExtScalar::sqrt2(d);
            const ExtScalar rd = ExtScalar::sqrtd(d);
            const ExtScalar r2d = ExtScalar::sqrt2d(d);
            CHECK(r2 * r2 == ExtScalar(2));
            CHECK(rd * rd == ExtScalar(d));
            CHECK(r2d * r2d == ExtScalar(2 * d));
            CHECK(r2 * rd == r2d);
            CHECK(r2 * r2.inverse() == ExtScalar(1));
            CHECK(r2d * r2d.inverse() == ExtScalar(1));
            CHECK(r2d.eval(Angle()).real() == doctest::Approx(std::sqrt(2.0 * d)));
        }
    }

    TEST_CASE("extension scalar evaluation is multiplicative")
    {
        for (int trial = 0; trial < 60; ++trial) {
            const long d = 7;
            const ExtScalar x(d, {oracle::random_laurent(), oracle::random_laurent(), oracle::random_laurent(),
                                  oracle::random_laurent()});
            const ExtScalar y(d, {oracle::random_laurent(), oracle::random_laurent(), oracle::random_laurent(),
                                  oracle::random_laurent()});
            const Angle a = Angle::radians(oracle::uniform_real(-3.0, 3.0));
            const auto want = x.eval(a) * y.eval(a);
            CHECK(std::abs((x * y).eval(a) - want) < 1e-9 * (1.0 + std::abs(want)));
            CHECK(std::abs(x.star().eval(a) - std::conj(x.eval(a))) < 1e-9 * (1.0 + std::abs(want)));
        }
    }

    TEST_CASE("extension scalar tags do not mix")
    {
        CHECK_THROWS(ExtScalar::sqrt2(2) * ExtScalar::sqrtd(7) + ExtScalar::sqrtd(5));
    }

    TEST_CASE("gaussian rationals")
    {
        for (int trial = 0; trial < 100; ++trial) {
            const GaussRational z(oracle::random_rational(), oracle::random_rational());
            if (z.is_zero()) {
                continue;
            }
            CHECK(z * z.inverse() == GaussRational(1));
            CHECK((z * z.conj()).im == 0);
        }
        CHECK(GaussRational::i() * GaussRational::i() == GaussRational(-1));
    }

    TEST_CASE("squarefree test")
    {
        for (long d = 1; d <= 200; ++d) {
            bool sf = true;
            for (long p = 2; p * p <= d; ++p) {
                sf = sf && d % (p * p) != 0;
            }
            CHECK(is_squarefree(d) == sf);
        }
    }

    TEST_CASE("format_real round trips")
    {
        CHECK(format_real(-0.0) == "0");
        CHECK(format_real(0.1) == "0.1");
        for (int trial = 0; trial < 100; ++trial) {
            const double v = oracle::uniform_real(-1e6, 1e6);
            CHECK(std::stod(format_real(v)) == v);
        }
    }
}
