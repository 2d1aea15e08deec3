#include "hypdef/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace hypdef {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json num(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Angle parse_angle(const std::string& text, const std::string& what)
{
    try {
        return Angle::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("bad " + what + " '" + text + "': " + e.what());
    }
}

Rational parse_rational(const std::string& text, const std::string& what)
{
    try {
        Rational q(text);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw UsageError("bad " + what + " '" + text + "' (expected p or p/q)");
    }
}

Json signature_json(const Signature& s)
{
    return Json::array({s.plus, s.minus, s.zero});
}

std::string kind_name(IsoClass::Kind k)
{
    switch (k) {
    case IsoClass::Kind::Identity: return "identity";
    case IsoClass::Kind::Elliptic: return "elliptic";
    case IsoClass::Kind::Parabolic: return "parabolic";
    case IsoClass::Kind::Loxodromic: return "loxodromic";
    }
    return "?";
}

Json spectrum_json(const EigenData& e)
{
    Json arr = Json::array();
    for (const auto& c : e.clusters) {
        arr.push_back({{"re", c.value.real()},
                       {"im", c.value.imag()},
                       {"algebraic", c.algebraic},
                       {"geometric", c.geometric}});
    }
    return arr;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

std::string csv_num(double v)
{
    return std::isfinite(v) ? format_real(v) : "";
}

bool all_true(const Json& checks)
{
    for (const auto& [k, v] : checks.items()) {
        if (!v.get<bool>()) {
            return false;
        }
    }
    return true;
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file '" + path + "'");
    }
    f << text;
}

std::vector<Word> read_words(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot open word list '" + path + "'");
    }
    try {
        return parse_word_list(f);
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Target parse_target(const std::string& s)
{
    return s == "so41" ? Target::SO41 : Target::SU31;
}

void check_d(long d)
{
    try {
        validate_bianchi_d(d);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

/// Exact alpha = k pi / q with q in {1, 2, 3}: u is a root of unity of order dividing 6 or 4.
std::optional<bool> special_point(const std::optional<Angle>& alpha)
{
    if (!alpha || !alpha->is_exact()) {
        return std::nullopt;
    }
    const long q = alpha->denominator();
    return q == 1 || q == 2 || q == 3;
}

CScalar json_scalar(const Json& v)
{
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw UsageError("matrix entries must be numbers or [re, im] pairs");
}

CMat json_matrix(const Json& v, const std::string& what)
{
    if (!v.is_array() || v.empty()) {
        throw UsageError(what + " must be a non-empty array of rows");
    }
    const std::size_t n = v.size();
    CMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!v[i].is_array() || v[i].size() != n) {
            throw UsageError(what + " must be square");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = json_scalar(v[i][j]);
        }
    }
    return m;
}

Json read_json_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------- commands

struct Config {
    std::string family;
    std::string alpha;
    bool u_exact = false;
    std::string words;
    long d = 0;
    std::string target = "su31";
    std::string u;
    std::string theta;
    std::string pythagorean;
    bool no_algebra = false;
    std::string start;
    std::string end;
    int count = 360;
    double exclude = 0.01;
    int radius = 10;
    std::string base = "0,0,0,0,0";
    bool shifted = false;
    std::string matrix_file;
    std::string form = "";
    std::string convention = "";
    double tol = 0.0;
    std::string out;
};

int cmd_verify(const Config& c, std::ostream& out)
{
    Json rep;
    if (c.family == "figure8") {
        if (c.u_exact == !c.alpha.empty()) {
            throw UsageError("verify figure8 needs exactly one of --alpha or --u-exact");
        }
        Figure8VerifyOptions o;
        o.tol = c.tol;
        if (!c.alpha.empty()) {
            o.alpha = parse_angle(c.alpha, "--alpha");
        }
        if (!c.words.empty()) {
            o.extra_words = read_words(c.words);
        }
        rep = figure8_report(o);
    } else {
        check_d(c.d);
        VerifyOptions o;
        o.tol = c.tol;
        o.algebra = !c.no_algebra;
        if (parse_target(c.target) == Target::SU31) {
            if (c.u_exact == !c.u.empty() || !c.theta.empty() || !c.pythagorean.empty()) {
                throw UsageError("verify bianchi --target su31 needs exactly one of --u or --u-exact");
            }
            const std::optional<Angle> u =
                c.u_exact ? std::nullopt : std::optional<Angle>(parse_angle(c.u, "--u"));
            rep = bianchi_report_json(verify_bianchi_su31(c.d, u, o));
        } else {
            if (c.theta.empty() == c.pythagorean.empty() || c.u_exact || !c.u.empty()) {
                throw UsageError("verify bianchi --target so41 needs exactly one of --theta or --pythagorean");
            }
            std::optional<Rational> s;
            Angle theta;
            if (!c.pythagorean.empty()) {
                s = parse_rational(c.pythagorean, "--pythagorean");
            } else {
                theta = parse_angle(c.theta, "--theta");
            }
            rep = bianchi_report_json(verify_bianchi_so41(c.d, theta, s, o));
        }
    }
    emit(rep.dump(2) + "\n", c.out, out);
    return rep["passed"].get<bool>() ? 0 : 1;
}

std::vector<Angle> sweep_grid(const Config& c, const std::string& def_start, const std::string& def_end)
{
    if (c.count < 1) {
        throw UsageError("--count must be at least 1");
    }
    const double a = parse_angle(c.start.empty() ? def_start : c.start, "--start").value();
    const double b = parse_angle(c.end.empty() ? def_end : c.end, "--end").value();
    if (!(b > a)) {
        throw UsageError("--start must be less than --end");
    }
    return midpoint_grid(a, b, c.count);
}

int cmd_sweep(const Config& c, std::ostream& out)
{
    std::ostringstream os;
    bool ok = true;
    ClassifyOptions copts;
    copts.tol = c.tol;
    if (c.family == "figure8") {
        if (!(c.exclude > 0.0)) {
            throw UsageError("--exclude must be positive");
        }
        const auto grid = sweep_grid(c, "-pi", "pi");
        os << "alpha,signature,expected,det,det_closed,class_m,class_l,margin_m,margin_l,ok\n";
        for (const auto& row : signature_sweep(grid, c.exclude, c.tol)) {
            std::string cm;
            std::string cl;
            double mm = std::numeric_limits<double>::quiet_NaN();
            double ml = mm;
            bool row_ok = row.ok;
            if (std::abs(principal_angle(row.alpha)) < 2.0 * std::numbers::pi / 3.0) {
                try {
                    const ParabolicityReport p = parabolicity_report(row.alpha, copts);
                    cm = p.m.iso.tag();
                    cl = p.l.iso.tag();
                    mm = p.m.margin;
                    ml = p.l.margin;
                    row_ok = row_ok && p.m.iso.is_unipotent() && p.l.iso.is_parabolic() && p.spectrum_matches;
                } catch (const IndeterminateError&) {
                    cm = cl = "indeterminate";
                    row_ok = false;
                }
            }
            ok = ok && row_ok;
            os << format_real(row.alpha.value()) << ',' << csv_field(to_string(row.signature)) << ','
               << (row.expected ? csv_field(to_string(*row.expected)) : "") << ',' << csv_num(row.det) << ','
               << csv_num(row.det_closed) << ',' << cm << ',' << cl << ',' << csv_num(mm) << ',' << csv_num(ml)
               << ',' << (row_ok ? "true" : "false") << '\n';
        }
    } else {
        check_d(c.d);
        const Target target = parse_target(c.target);
        const auto grid = sweep_grid(c, target == Target::SO41 ? "0" : "-pi", "pi");
        VerifyOptions o;
        o.tol = c.tol;
        o.algebra = false;
        os << "param,class_u,expected,margin,trace_re,trace_im,ok\n";
        for (const auto& p : grid) {
            const BianchiReport r = target == Target::SU31 ? verify_bianchi_su31(c.d, p, o)
                                                           : verify_bianchi_so41(c.d, p, std::nullopt, o);
            const BianchiNumeric f = bianchi_family(c.d, target, p);
            const CScalar tr = f.U.trace();
            ok = ok && r.class_ok;
            os << format_real(p.value()) << ',' << (r.class_u ? r.class_u->iso.tag() : "indeterminate") << ','
               << r.class_expected << ',' << csv_num(r.class_u ? r.class_u->margin : NAN) << ','
               << format_real(tr.real()) << ',' << format_real(tr.imag()) << ',' << (r.class_ok ? "true" : "false")
               << '\n';
        }
    }
    emit(os.str(), c.out, out);
    return ok ? 0 : 1;
}

HeisPoint parse_base(const std::string& text, Target target)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::exception&) {
            throw UsageError("bad --base component '" + part + "'");
        }
    }
    if (v.size() != 5) {
        throw UsageError("--base needs 5 numbers: Re z1, Im z1, Re z2, Im z2, v");
    }
    HeisPoint p;
    p.t = v[4];
    if (target == Target::SO41) {
        if (v[1] != 0.0) {
            throw UsageError("the SO(4,1) boundary has real z1; Im z1 must be 0");
        }
        p.Z = {v[0], v[2], v[3]};
    } else {
        p.Z = {{v[0], v[1]}, {v[2], v[3]}};
    }
    return p;
}

int cmd_orbit(const Config& c, std::ostream& out)
{
    check_d(c.d);
    if (c.radius < 0 || c.radius > 50) {
        throw UsageError("--radius must be between 0 and 50");
    }
    const Target target = parse_target(c.target);
    const std::string& ptext = target == Target::SU31 ? c.u : c.theta;
    if (ptext.empty()) {
        throw UsageError(target == Target::SU31 ? "orbit --target su31 needs --u" : "orbit --target so41 needs --theta");
    }
    const Angle param = parse_angle(ptext, target == Target::SU31 ? "--u" : "--theta");
    if (c.shifted && target != Target::SU31) {
        throw UsageError("--shifted applies to --target su31 only");
    }
    const BianchiNumeric f = bianchi_family(c.d, target, param);
    const HeisPoint p0 = parse_base(c.base, target);
    std::vector<OrbitRow> rows = orbit_cloud(f.T, f.U, p0, c.radius);
    if (c.shifted) {
        const CuspParams params = bianchi_cusp(c.d).numeric(param);
        try {
            for (auto& r : rows) {
                r.point = raw_to_shifted(params, r.point);
            }
        } catch (const std::domain_error& e) {
            throw UsageError(std::string("--shifted: ") + e.what());
        }
    }
    std::ostringstream os;
    write_orbit_csv(os, rows, orbit_gap(rows));
    emit(os.str(), c.out, out);
    return 0;
}

int cmd_classify(const Config& c, std::ostream& out)
{
    const Json in = read_json_file(c.matrix_file);
    if (!in.is_object() || !in.contains("matrix")) {
        throw UsageError("classify input must be an object with a \"matrix\" field");
    }
    const CMat a = json_matrix(in["matrix"], "matrix");
    std::string conv_name = c.convention;
    if (conv_name.empty()) {
        conv_name = in.value("convention", std::string("conj-transpose"));
    }
    if (conv_name != "conj-transpose" && conv_name != "transpose-conj") {
        throw UsageError("convention must be conj-transpose or transpose-conj");
    }
    const FormConvention conv =
        conv_name == "conj-transpose" ? FormConvention::ConjTranspose : FormConvention::TransposeConj;
    CMat j;
    if (!c.form.empty() && c.form != "siegel") {
        const Json fj = read_json_file(c.form);
        j = json_matrix(fj.is_object() && fj.contains("form") ? fj["form"] : fj, "form");
    } else if (c.form.empty() && in.contains("form") && !in["form"].is_string()) {
        j = json_matrix(in["form"], "form");
    } else {
        j = siegel_form(a.size());
    }
    HermForm form;
    try {
        form = HermForm(j, conv);
    } catch (const std::exception& e) {
        throw UsageError(std::string("form: ") + e.what());
    }
    if (form.size() != a.size()) {
        throw UsageError("matrix and form dimensions differ");
    }

    Json rep;
    rep["family"] = "classify";
    rep["dimension"] = a.size();
    rep["convention"] = conv_name;
    rep["tol"] = c.tol;
    int code = 0;
    ClassifyOptions opts;
    opts.tol = c.tol;
    try {
        const Classification cl = classify_detailed(a, form, opts);
        rep["class"] = cl.iso.tag();
        rep["kind"] = kind_name(cl.iso.kind);
        rep["margin"] = num(cl.margin);
        rep["formDefect"] = num(cl.form_defect);
        rep["spectrum"] = spectrum_json(cl.spectrum);
        rep["error"] = nullptr;
    } catch (const IndeterminateError& e) {
        rep["class"] = "indeterminate";
        rep["kind"] = nullptr;
        rep["margin"] = num(e.margin());
        rep["formDefect"] = nullptr;
        rep["spectrum"] = Json::array();
        rep["error"] = e.what();
        code = 1;
    } catch (const std::domain_error& e) {
        rep["class"] = "not-an-isometry";
        rep["kind"] = nullptr;
        rep["margin"] = nullptr;
        rep["formDefect"] = nullptr;
        rep["spectrum"] = Json::array();
        rep["error"] = e.what();
        code = 1;
    }
    emit(rep.dump(2) + "\n", c.out, out);
    return code;
}

}  // namespace

double default_tolerance()
{
    const char* env = std::getenv("HYPDEF_TOL");
    if (env == nullptr || *env == '\0') {
        return 1e-9;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(env, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != std::string(env).size() || !(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("HYPDEF_TOL must be a positive number");
    }
    return v;
}

Json classification_json(const Classification& c)
{
    return {{"tag", c.iso.tag()},
            {"kind", kind_name(c.iso.kind)},
            {"margin", num(c.margin)},
            {"formDefect", num(c.form_defect)},
            {"spectrum", spectrum_json(c.spectrum)}};
}

Json figure8_report(const Figure8VerifyOptions& opts)
{
    const Fig8Exact& ex = build_family_exact();
    Json checks;

    bool rel = true;
    for (const auto& r : check_relations(ex.rep, ex.presentation)) {
        rel = rel && r.linear_pass;
    }
    checks["relation"] = rel;
    checks["formInvariance"] = preserves_form_exact(ex.M, ex.J, FormConvention::TransposeConj) &&
                               preserves_form_exact(ex.N, ex.J, FormConvention::TransposeConj);
    const Mat<LaurentPoly> l = eval_word(ex.rep, fig8_l_word());
    checks["longitudeTranscription"] = l == fig8_L_printed();
    checks["peripheralCommute"] = ex.M * l == l * ex.M;
    checks["detL"] = det_exact(l) == LaurentPoly(1);

    Json traces = Json::object();
    bool builtin_ok = true;
    bool extra_ok = true;
    const std::size_t nbuiltin = fig8_trace_words().size();
    const auto rows = trace_integrality_check(opts.extra_words);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        traces[r.name] = {{"word", r.word},
                          {"trace", r.trace.to_string()},
                          {"integral", r.integral},
                          {"expected", r.expected ? Json(r.expected->to_string()) : Json(nullptr)},
                          {"matches", r.matches}};
        if (k < nbuiltin) {
            builtin_ok = builtin_ok && r.integral && r.matches;
        } else {
            extra_ok = extra_ok && r.integral;
        }
    }
    checks["traces"] = builtin_ok;
    checks["extraWordsIntegral"] = extra_ok;
    const LaurentPoly tr_lm = trace_word(ex.rep, fig8_l_word() * Word::gen("m"));
    checks["traceLMIntegral"] = tr_lm.is_integral();

    Json rep;
    rep["family"] = "figure8";
    rep["alpha"] = opts.alpha ? opts.alpha->to_string() : "u";
    rep["alphaRadians"] = opts.alpha ? num(opts.alpha->value()) : Json(nullptr);
    rep["signature"] = nullptr;
    rep["expectedSignature"] = nullptr;
    rep["regime"] = nullptr;
    rep["det"] = nullptr;
    Json classes = {{"m", nullptr}, {"l", nullptr}, {"lSpectrumMatches", nullptr}, {"error", nullptr}};

    if (opts.alpha) {
        const Angle& alpha = *opts.alpha;
        const SignatureRow row = signature_sweep({alpha}, 0.01, opts.tol).front();
        rep["signature"] = signature_json(row.signature);
        rep["expectedSignature"] = row.expected ? signature_json(*row.expected) : Json(nullptr);
        const double a = std::abs(principal_angle(alpha));
        const double third = 2.0 * std::numbers::pi / 3.0;
        rep["regime"] = a < third ? "SU(3,1)" : (a > third && a < std::numbers::pi ? "SU(2,2)" : "degenerate");
        const double rel_err = std::abs(row.det - row.det_closed) /
                               std::max(std::abs(row.det_closed), std::numeric_limits<double>::min());
        rep["det"] = {{"direct", row.det}, {"closed", row.det_closed}, {"relativeError", num(rel_err)}};
        if (row.expected) {
            checks["signature"] = row.ok;
        }
        if (row.det_closed != 0.0) {
            checks["determinant"] = rel_err <= 1e-9;
        } else {
            checks["determinant"] = std::abs(row.det) <= 1e-12;
        }
        if (a < third) {
            ClassifyOptions copts;
            copts.tol = opts.tol;
            try {
                const ParabolicityReport p = parabolicity_report(alpha, copts);
                classes["m"] = classification_json(p.m);
                classes["l"] = classification_json(p.l);
                classes["lSpectrumMatches"] = p.spectrum_matches;
                checks["parabolicity"] = p.m.iso.is_unipotent() && p.l.iso.is_parabolic() && p.spectrum_matches;
            } catch (const IndeterminateError& e) {
                classes["error"] = e.what();
                checks["parabolicity"] = false;
            }
        }
    }
    rep["classes"] = classes;
    rep["traces"] = traces;
    rep["traceLM"] = {{"trace", tr_lm.to_string()}, {"integral", tr_lm.is_integral()}};
    rep["checks"] = checks;

    const auto conv = select_commutator_convention<LaurentPoly>(
        map_rep(ex.rep,
                [](const LaurentPoly& p) {
                    Rational sum = 0;
                    for (const auto& [e, q] : p.terms()) {
                        sum += q;
                    }
                    return LaurentPoly(sum);
                }),
        [](CommutatorConvention cc) { return figure8_presentation(cc); }, false);
    const auto special = special_point(opts.alpha);
    rep["annotations"] = {{"entryDenominatorLcm", fig8_entry_denominator_lcm().get_str()},
                          {"commutatorConvention", conv ? Json(to_string(*conv)) : Json(nullptr)},
                          {"integralTracesAtRootOfUnity", special ? Json(*special) : Json(nullptr)}};
    rep["passed"] = all_true(checks);
    return rep;
}

Json bianchi_report_json(const BianchiReport& r)
{
    Json rels = Json::array();
    for (const auto& x : r.relations) {
        rels.push_back({{"label", x.label},
                        {"relator", x.relator},
                        {"linear", x.linear_pass},
                        {"projective", x.projective_pass},
                        {"scalar", x.scalar},
                        {"defect", num(x.projective_defect)}});
    }
    Json class_u = nullptr;
    if (r.class_u) {
        class_u = classification_json(*r.class_u);
    }
    Json checks;
    if (r.relations_checked) {
        checks["relations"] = r.relations_ok;
    }
    checks["trace"] = r.trace_ok;
    checks["formInvariance"] = r.form_ok;
    checks["centralizer"] = r.centralizer_ok;
    checks["latticeReproduced"] = r.lattice_reproduced;
    if (!r.class_expected.empty()) {
        checks["classification"] = r.class_ok;
    }
    if (!r.algebra_error.empty()) {
        checks["algebraProbe"] = false;
    }

    Json rep;
    rep["family"] = "bianchi";
    rep["d"] = r.d;
    rep["target"] = to_string(r.target);
    rep["param"] = r.param;
    rep["exact"] = r.exact;
    rep["relations"] = rels;
    rep["traceU"] = r.trace_u;
    rep["traceExpected"] = r.trace_expected;
    rep["classU"] = class_u;
    rep["classExpected"] = r.class_expected.empty() ? Json(nullptr) : Json(r.class_expected);
    rep["classError"] = r.class_error.empty() ? Json(nullptr) : Json(r.class_error);
    rep["cusp"] = {{"a", r.cusp.a.to_string()},
                   {"b1", r.cusp.b1.to_string()},
                   {"b2", r.cusp.b2.to_string()},
                   {"orthogonal", r.cusp.orthogonal()},
                   {"verdict", r.cusp_verdict},
                   {"parabolicPreserving", r.parabolic_preserving},
                   {"stronglyParabolicPreserving", r.strongly_parabolic_preserving}};
    rep["algebraDim"] = r.algebra ? Json(r.algebra->dimension) : Json(nullptr);
    rep["algebraMargin"] = r.algebra ? num(r.algebra->margin) : Json(nullptr);
    rep["checks"] = checks;
    rep["passed"] = r.passed();
    return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Deformations of cusped hyperbolic lattices: verification, sweeps and orbit dumps"};
    app.require_subcommand(1);
    Config c;
    std::optional<double> tol_flag;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", tol_flag, "Numeric tolerance (default from HYPDEF_TOL or 1e-9)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "Write output to this file instead of stdout");
    };
    auto add_bianchi = [&](CLI::App* sub) {
        sub->add_option("--d", c.d, "Squarefree d >= 2, d != 3");
        sub->add_option("--target", c.target, "su31 or so41")->check(CLI::IsMember({"su31", "so41"}));
    };

    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
    verify->add_option("family", c.family, "figure8 or bianchi")
        ->required()
        ->check(CLI::IsMember({"figure8", "bianchi"}));
    verify->add_option("--alpha", c.alpha, "figure8 parameter angle (e.g. 0.5, pi/4, 2/3pi)");
    verify->add_flag("--u-exact", c.u_exact, "Symbolic u (exact checks only)");
    verify->add_option("--words", c.words, "File of extra words for the trace check");
    add_bianchi(verify);
    verify->add_option("--u", c.u, "su31 parameter angle");
    verify->add_option("--theta", c.theta, "so41 parameter angle");
    verify->add_option("--pythagorean", c.pythagorean, "so41 exact angle 2 atan(s) for rational s");
    verify->add_flag("--no-algebra", c.no_algebra, "Skip the matrix algebra dimension probe");
    add_common(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep written as CSV");
    sweep->add_option("family", c.family, "figure8 or bianchi")
        ->required()
        ->check(CLI::IsMember({"figure8", "bianchi"}));
    sweep->add_option("--start", c.start, "Grid start angle");
    sweep->add_option("--end", c.end, "Grid end angle");
    sweep->add_option("--count", c.count, "Number of grid cells (midpoints are sampled)");
    sweep->add_option("--exclude", c.exclude, "figure8: exclusion radius around |alpha| = 2pi/3 and pi");
    add_bianchi(sweep);
    add_common(sweep);

    CLI::App* orbit = app.add_subcommand("orbit", "Cusp orbit point cloud written as CSV");
    add_bianchi(orbit);
    orbit->add_option("--u", c.u, "su31 parameter angle");
    orbit->add_option("--theta", c.theta, "so41 parameter angle");
    orbit->add_option("--radius", c.radius, "Enumerate |m|, |n| <= R (R <= 50)");
    orbit->add_option("--base", c.base, "Base point: Re z1,Im z1,Re z2,Im z2,v");
    orbit->add_flag("--shifted", c.shifted, "Emit z2 relative to the rotation centre");
    add_common(orbit);

    CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a matrix read from a JSON file");
    classify_cmd->add_option("file", c.matrix_file, "JSON object with \"matrix\" and optional \"form\"")
        ->required();
    classify_cmd->add_option("--form", c.form, "siegel or a JSON file holding the form matrix");
    classify_cmd->add_option("--convention", c.convention, "conj-transpose or transpose-conj");
    add_common(classify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        c.tol = tol_flag ? *tol_flag : default_tolerance();
        if (verify->parsed()) {
            return cmd_verify(c, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(c, out);
        }
        if (orbit->parsed()) {
            return cmd_orbit(c, out);
        }
        return cmd_classify(c, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hypdef
