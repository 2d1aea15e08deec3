#include "hypdef/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hypdef {

namespace {

CMat scaled(const CMat& a, CScalar s)
{
    return a.map([&](const CScalar& x) { return x / s; });
}

CMat minus_identity(CMat a)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        a(i, i) -= 1.0;
    }
    return a;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(ParabolicSubtype s)
{
    switch (s) {
    case ParabolicSubtype::UnipotentStep2: return "unipotent-step2";
    case ParabolicSubtype::UnipotentStep3: return "unipotent-step3";
    case ParabolicSubtype::ElliptoParabolic: return "ellipto";
    }
    return "?";
}

std::string IsoClass::tag() const
{
    switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Elliptic: return boundary ? "elliptic-boundary" : "elliptic-single-point";
    case Kind::Parabolic: return "parabolic-" + to_string(subtype);
    case Kind::Loxodromic: return "loxodromic";
    }
    return "?";
}

ParabolicSubtype parabolic_subtype(const CMat& a, const EigenData& spectrum, double tol)
{
    if (spectrum.clusters.size() != 1) {
        return ParabolicSubtype::ElliptoParabolic;
    }
    const CScalar lambda = spectrum.clusters.front().value;
    const CMat b = minus_identity(scaled(a, lambda));
    const double s = std::max(1.0, max_abs(b));
    const CMat b2 = b * b;
    if (max_abs(b2) <= tol * s * s) {
        return ParabolicSubtype::UnipotentStep2;
    }
    const double r3 = max_abs(b2 * b);
    if (r3 <= tol * s * s * s) {
        return ParabolicSubtype::UnipotentStep3;
    }
    throw IndeterminateError("single eigenvalue cluster but (A/lambda - I)^3 = " + fmt(r3) + " is not negligible",
                             tol * s * s * s / r3);
}

ParabolicSubtype parabolic_subtype(const CMat& a, double tol)
{
    return parabolic_subtype(a, eigen(a, {tol, 1e-4}), tol);
}

bool elliptic_boundary(const CMat& a, const HermForm& form, const EigenData& spectrum, double tol)
{
    const double ktol = tol * std::max(1.0, max_abs(form.gram()));
    for (const auto& c : spectrum.clusters) {
        CMat shifted = a;
        for (std::size_t i = 0; i < a.size(); ++i) {
            shifted(i, i) -= c.value;
        }
        const std::vector<CVec> basis = null_space(shifted, spectrum.rank_threshold);
        if (basis.empty()) {
            continue;
        }
        CMat g(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            for (std::size_t l = 0; l < basis.size(); ++l) {
                g(k, l) = form.inner(basis[l], basis[k]);
            }
        }
        g = g + g.adjoint();
        g = g.map([](const CScalar& x) { return x / 2.0; });
        const Signature sig = herm_signature(HermForm(g), ktol);
        if (sig.zero > 0 || (sig.plus > 0 && sig.minus > 0)) {
            return true;
        }
    }
    return false;
}

bool elliptic_boundary(const CMat& a, const HermForm& form, double tol)
{
    return elliptic_boundary(a, form, eigen(a, {tol, 1e-4}), tol);
}

Classification classify_detailed(const CMat& a, const HermForm& form, const ClassifyOptions& opts)
{
    if (a.size() != form.size()) {
        throw std::invalid_argument("matrix and form dimensions differ");
    }
    const std::size_t n = a.size();
    const double dmod = std::abs(det(a));
    if (!(dmod > 0.0)) {
        throw std::domain_error("singular matrix is not an isometry");
    }
    const CMat an = scaled(a, std::pow(dmod, 1.0 / static_cast<double>(n)));

    Classification out;
    out.form_defect = form_defect(an, form);
    const double allowed = opts.tol * std::max(1.0, max_abs(an) * max_abs(an) * max_abs(form.matrix()));
    if (out.form_defect > allowed) {
        throw std::domain_error("matrix does not preserve the form (defect " + fmt(out.form_defect) + ")");
    }

    out.margin = std::numeric_limits<double>::infinity();
    if (std::abs(an(0, 0)) > 0.0) {
        const double dev = max_abs(minus_identity(scaled(an, an(0, 0))));
        const double m = dev > 0.0 ? std::max(opts.tol / dev, dev / opts.tol) : out.margin;
        if (m < opts.min_margin) {
            throw IndeterminateError("identity decision within " + fmt(opts.min_margin) +
                                         "x of the threshold (margin " + fmt(m) + ")",
                                     m);
        }
        if (dev <= opts.tol) {
            out.margin = m;
            out.iso = IsoClass::identity();
            return out;
        }
    }

    out.spectrum = eigen(an, {opts.tol, opts.cluster_radius});
    out.margin = out.spectrum.min_margin;
    if (out.margin < opts.min_margin) {
        throw IndeterminateError("diagonalizability decision within " + fmt(opts.min_margin) +
                                     "x of the rank threshold (margin " + fmt(out.margin) + ")",
                                 out.margin);
    }

    const bool diagonalizable = std::all_of(out.spectrum.clusters.begin(), out.spectrum.clusters.end(),
                                            [](const EigenCluster& c) { return c.geometric == c.algebraic; });
    if (!diagonalizable) {
        out.iso = IsoClass::parabolic(parabolic_subtype(an, out.spectrum, opts.tol));
        return out;
    }

    int non_unit = 0;
    for (const auto& c : out.spectrum.clusters) {
        if (std::abs(std::abs(c.value) - 1.0) > opts.tol) {
            non_unit += c.algebraic;
        }
    }
    if (non_unit == 0) {
        out.iso = IsoClass::elliptic(elliptic_boundary(an, form, out.spectrum, opts.tol));
    } else if (non_unit == 2) {
        out.iso = IsoClass::loxodromic();
    } else {
        throw std::domain_error("spectrum with " + std::to_string(non_unit) +
                                " non-unit eigenvalues is not that of an isometry");
    }
    return out;
}

IsoClass classify(const CMat& a, const HermForm& form, double tol)
{
    ClassifyOptions opts;
    opts.tol = tol;
    return classify_detailed(a, form, opts).iso;
}

}  // namespace hypdef
