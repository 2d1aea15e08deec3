// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "hypdef/bending.hpp"
#include "hypdef/cli.hpp"
#include "hypdef/figure8.hpp"
#include "hypdef/heisenberg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hypdef;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Records the first few failures into the detail string.
class Tally {
public:
    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ++failures_;
            if (failures_ <= 3) {
                notes_ += (notes_.empty() ? "" : "; ") + what;
            }
        }
    }
    Outcome result(const std::string& summary) const
    {
        if (failures_ == 0) {
            return {true, summary};
        }
        return {false, std::to_string(failures_) + " failure(s): " + notes_};
    }

private:
    int failures_ = 0;
    std::string notes_;
};

bool all_linear(const std::vector<RelationResult>& rs)
{
    bool ok = true;
    for (const auto& r : rs) {
        ok = ok && r.exact && r.linear_pass;
    }
    return ok;
}

bool all_projective(const std::vector<RelationResult>& rs)
{
    bool ok = true;
    for (const auto& r : rs) {
        ok = ok && r.exact && r.projective_pass;
    }
    return ok;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Outcome exact_relations()
{
    Tally t;
    const Fig8Exact& f = build_family_exact();
    t.require(all_linear(check_relations(f.rep, f.presentation)), "figure-eight relator");
    for (long d : {2L, 7L, 11L}) {
        const BianchiExact b = bianchi_family_su31_exact(d);
        t.require(all_projective(check_relations(b.rep, bianchi_presentation(d))), "Bianchi d=" + std::to_string(d));
    }
    return t.result("figure-eight relator = I; Bianchi d=2,7,11 projective at symbolic u");
}

Outcome exact_form_invariance()
{
    Tally t;
    const Fig8Exact& f = build_family_exact();
    t.require(preserves_form_exact(f.M, f.J, FormConvention::TransposeConj), "M");
    t.require(preserves_form_exact(f.N, f.J, FormConvention::TransposeConj), "N");
    for (long d : {2L, 7L, 11L}) {
        const BianchiExact b = bianchi_family_su31_exact(d);
        for (const auto* g : {&b.A, &b.T, &b.U}) {
            t.require(preserves_form_exact(*g, b.form, FormConvention::ConjTranspose), "SU31 d=" + std::to_string(d));
        }
        for (const Rational& s : {Rational(0), Rational(1), Rational(1, 2), Rational(-2, 3)}) {
            const BianchiExact o = bianchi_family_so41_exact(d, s);
            for (const auto* g : {&o.A, &o.T, &o.U}) {
                t.require(preserves_form_exact(*g, o.form, FormConvention::ConjTranspose), "SO41 d=" + std::to_string(d));
            }
        }
    }
    return t.result("M, N symbolic; Bianchi SU31 symbolic and SO41 at 4 Pythagorean angles, d=2,7,11");
}

Outcome determinant_law()
{
    Tally t;
    double worst = 0.0;
    for (const Angle& a : midpoint_grid(-pi, pi, 1000)) {
        const double direct = det_J_direct(a);
        const double closed = det_J_closed(a);
        const double rel = std::abs(direct - closed) / std::max(std::abs(closed), std::numeric_limits<double>::min());
        worst = std::max(worst, rel);
        t.require(rel <= 1e-9, "alpha=" + a.to_string() + " rel=" + fmt(rel));
    }
    return t.result("1000 points, worst relative error " + fmt(worst));
}

Outcome signature_trichotomy()
{
    Tally t;
    int checked = 0;
    for (const auto& row : signature_sweep(midpoint_grid(-pi, pi, 720), 0.01, 1e-9)) {
        if (row.expected) {
            ++checked;
            t.require(row.ok, "alpha=" + row.alpha.to_string() + " got " + to_string(row.signature));
        }
    }
    return t.result("720-point grid, " + std::to_string(checked) + " points in the stated bands, 0 misclassified");
}

Outcome trace_identities()
{
    Tally t;
    const auto rows = trace_integrality_check();
    t.require(rows.size() == 9, "nine trace words");
    for (const auto& r : rows) {
        t.require(r.matches, r.name + " trace " + r.trace.to_string());
    }
    const Fig8Exact& f = build_family_exact();
    const LaurentPoly lm = trace_word(f.rep, fig8_l_word() * Word::gen("m"));
    t.require(lm.is_integral(), "Tr(lm) = " + lm.to_string());
    for (long d : {2L, 7L, 11L}) {
        const BianchiExact b = bianchi_family_su31_exact(d);
        t.require(b.U.trace() == ExtScalar(3 + LaurentPoly::u()), "Bianchi Tr U d=" + std::to_string(d));
    }
    return t.result("9 printed traces exact, Tr(lm) = " + lm.to_string() + ", Tr U_u = 3+u for d=2,7,11");
}

Outcome classification_laws()
{
    Tally t;
    int indeterminate = 0;
    const auto grid = midpoint_grid(-2.0 * pi / 3.0, 2.0 * pi / 3.0, 72);
    for (const Angle& a : grid) {
        try {
            const ParabolicityReport r = parabolicity_report(a);
            t.require(r.m.iso.is_unipotent(), "m at " + a.to_string());
            t.require(r.l.iso.tag() == "parabolic-ellipto", "l at " + a.to_string() + " is " + r.l.iso.tag());
            t.require(r.spectrum_matches, "l spectrum at " + a.to_string());
        } catch (const IndeterminateError&) {
            ++indeterminate;
        }
    }
    VerifyOptions opts;
    opts.algebra = false;
    for (long d : {2L, 7L, 11L}) {
        for (const Angle& a : grid) {
            const BianchiReport r = verify_bianchi_su31(d, a, opts);
            indeterminate += r.class_error.empty() ? 0 : 1;
            t.require(r.class_u && r.class_u->iso.is_parabolic(), "SU31 U d=" + std::to_string(d) + " at " + a.to_string());
        }
    }
    for (const Angle& th : midpoint_grid(-pi, pi, 36)) {
        const BianchiReport e = verify_bianchi_so41(2, th, std::nullopt, opts);
        const BianchiReport p = verify_bianchi_so41(7, th, std::nullopt, opts);
        indeterminate += (e.class_error.empty() ? 0 : 1) + (p.class_error.empty() ? 0 : 1);
        t.require(e.class_u && e.class_u->iso.kind == IsoClass::Kind::Elliptic, "SO41 d=2 at " + th.to_string());
        t.require(p.class_u && p.class_u->iso.tag() == "parabolic-ellipto", "SO41 d=7 at " + th.to_string());
    }
    t.require(indeterminate == 0, std::to_string(indeterminate) + " indeterminate");
    return t.result("72-point figure-eight and SU31 grids, 36-point SO41 grid, 0 indeterminate");
}

Outcome orbit_equivalence()
{
    Tally t;
    double worst = 0.0;
    const std::vector<std::pair<long, Angle>> cases = {
        {2, Angle::pi_multiple(1, 3)},  {2, Angle::pi_multiple(1, 2)}, {2, Angle::radians(1.0)},
        {2, Angle::pi_multiple(5, 6)},  {7, Angle::pi_multiple(1, 3)}, {7, Angle::pi_multiple(2, 5)},
        {7, Angle::radians(0.3)},       {7, Angle::pi_multiple(-3, 4)}, {11, Angle::pi_multiple(1, 7)},
        {11, Angle::radians(2.5)},      {5, Angle::pi_multiple(2, 3)}, {6, Angle::radians(-1.7)},
    };
    const HeisPoint p0{{CScalar(0.3, -0.2), CScalar(0.5, 0.4)}, 0.7};
    for (const auto& [d, u] : cases) {
        const CuspParams params = bianchi_cusp(d).numeric(u);
        for (long m = -20; m <= 20; ++m) {
            for (long n = -20; n <= 20; ++n) {
                const HeisPoint a = orbit_point(params, m, n, p0);
                const HeisPoint b = orbit_point_matrix(params, m, n, p0);
                double dev = std::abs(a.t - b.t);
                for (std::size_t k = 0; k < 2; ++k) {
                    dev = std::max(dev, std::abs(a.Z[k] - b.Z[k]));
                }
                worst = std::max(worst, dev);
            }
        }
    }
    t.require(worst <= 1e-9, "max deviation " + fmt(worst));
    return t.result("12 values of u, |m|,|n| <= 20, max deviation " + fmt(worst));
}

Outcome rs1_trichotomy()
{
    Tally t;
    const RS1Element tr{Surd::make(1, 2), Angle::pi_multiple(0)};
    t.require(rs1_classify(tr, {Surd::make(1, 3), Angle::pi_multiple(1, 4)}) == RS1Case::NondiscreteZ2, "case Z2");
    t.require(rs1_classify(tr, {Surd::make(3, 2), Angle::pi_multiple(1, 4)}) == RS1Case::DiscreteNonZ2, "case discrete");
    t.require(rs1_classify(tr, {Surd::make(3, 2), Angle::parse("1")}) == RS1Case::NondiscreteZ2Rational, "case rational");

    std::mt19937_64 gen(7);
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); };
    int agree = 0;
    int counts[3] = {0, 0, 0};
    for (int k = 0; k < 20; ++k) {
        const int kind = k % 3;
        const long r = kind == 0 ? (pick(0, 1) ? 3 : 5) : 2;
        const RS1Element a{Surd::make(make_rational(pick(1, 6), pick(1, 6)), 2), Angle::pi_multiple(0)};
        const Surd b = Surd::make(make_rational(pick(1, 6), pick(1, 6)), r);
        const Angle theta = kind == 2 ? Angle::parse(std::to_string(pick(1, 5)) + "." + std::to_string(pick(1, 9)))
                                      : Angle::pi_multiple(pick(-5, 5), pick(1, 6));
        const RS1Case exact = rs1_classify(a, {b, theta});
        const RS1ProbeResult probe = rs1_probe(a.translation.index() == 0 ? std::get<Surd>(a.translation).value() : 0.0,
                                               b.value(), theta.value(), 1e-2, 10000);
        ++counts[static_cast<int>(exact)];
        const bool same = probe.verdict && *probe.verdict == exact;
        agree += same ? 1 : 0;
        t.require(same, "instance " + std::to_string(k) + " exact " + to_string(exact));
    }
    t.require(counts[0] > 0 && counts[1] > 0 && counts[2] > 0, "all three cases sampled");
    return t.result("three exact cases; probe agrees on " + std::to_string(agree) + "/20 random instances (" +
                    std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" + std::to_string(counts[2]) + ")");
}

Outcome longitude_transcription()
{
    Tally t;
    const Fig8Exact& f = build_family_exact();
    const Mat<LaurentPoly> l = eval_word(f.rep, fig8_l_word());
    const Mat<LaurentPoly> printed = fig8_L_printed();
    int mismatched = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            mismatched += l(i, j) == printed(i, j) ? 0 : 1;
        }
    }
    t.require(mismatched == 0, std::to_string(mismatched) + " entries differ");
    return t.result("16/16 entries equal as Laurent polynomials");
}

Outcome burnside_probe()
{
    Tally t;
    const BianchiNumeric b = bianchi_family(2, Target::SU31, Angle::pi_multiple(1, 2));
    const AlgebraDimension ab = algebra_dimension({b.A, b.T, b.U}, 1e-9);
    const CMat m1 = evaluate(at_u_one(fig8_M()), Angle());
    const CMat n1 = evaluate(at_u_one(fig8_N()), Angle());
    const AlgebraDimension af = algebra_dimension({m1, n1}, 1e-9);
    t.require(ab.dimension == 16, "Bianchi dimension " + std::to_string(ab.dimension));
    t.require(af.dimension == 16, "figure-eight dimension " + std::to_string(af.dimension));
    t.require(ab.margin >= 10.0 && af.margin >= 10.0, "margins");
    return t.result("{A1,T1,U_i}: 16 (margin " + fmt(ab.margin) + "), {M1,N1}: 16 (margin " + fmt(af.margin) + ")");
}

std::string run_capture(const std::vector<std::string>& args)
{
    std::vector<const char*> argv{"hypdef"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
}

Outcome determinism()
{
    Tally t;
    const auto matrix = std::filesystem::temp_directory_path() / "hypdef_acceptance_matrix.json";
    std::ofstream(matrix) << R"({"matrix": [[1,-1,0,-0.5],[0,1,0,1],[0,0,1,0],[0,0,0,1]]})";
    const std::vector<std::vector<std::string>> cmds = {
        {"verify", "figure8", "--alpha", "0.5"},
        {"verify", "figure8", "--u-exact"},
        {"verify", "bianchi", "--d", "7", "--target", "su31", "--u-exact"},
        {"verify", "bianchi", "--d", "2", "--target", "so41", "--theta", "pi/3"},
        {"sweep", "figure8", "--count", "60"},
        {"sweep", "bianchi", "--d", "7", "--target", "so41", "--count", "36"},
        {"orbit", "--d", "2", "--target", "su31", "--u", "pi/3", "--radius", "10"},
        {"classify", matrix.string(), "--form", "siegel"},
    };
    for (const auto& c : cmds) {
        const std::string a = run_capture(c);
        const std::string b = run_capture(c);
        t.require(a == b && a.size() > 2, c[0] + " " + c[1]);
    }
    std::filesystem::remove(matrix);
    return t.result(std::to_string(cmds.size()) + " commands byte-identical across runs");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exact relation law", exact_relations},
        {"exact form invariance", exact_form_invariance},
        {"determinant law", determinant_law},
        {"signature trichotomy", signature_trichotomy},
        {"trace identities", trace_identities},
        {"classification laws", classification_laws},
        {"orbit oracle equivalence", orbit_equivalence},
        {"R x S^1 trichotomy", rs1_trichotomy},
        {"longitude transcription", longitude_transcription},
        {"Burnside probe", burnside_probe},
        {"CLI determinism", determinism},
    };
    const std::vector<double> budget_ms = {5000, 5000, 2000, 0, 0, 0, 10000, 0, 0, 0, 0};
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (budget_ms[k] > 0 && ms > budget_ms[k]) {
            o.ok = false;
            o.detail += " (over the " + fmt(budget_ms[k] / 1000.0) + " s budget)";
        }
        all = all && o.ok;
        std::printf("%s %2zu %-26s %8.1f ms  %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), ms,
                    o.detail.c_str());
    }
    return all ? 0 : 1;
}
