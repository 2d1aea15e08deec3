#pragma once

// Bending deformations along a hypersurface subgroup: the generic HNN and
// amalgam operators, the centralizer one-parameter groups, the Bianchi
// families into SU(3,1) and SO(4,1), their verification and the matrix
// algebra dimension probe.

#include "hypdef/heisenberg.hpp"
#include "hypdef/isometry.hpp"
#include "hypdef/words.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

namespace hypdef {

template <class T>
bool commutes(const Mat<T>& g, const Mat<T>& x, double tol)
{
    if constexpr (std::is_same_v<T, CScalar>) {
        return max_abs_diff(g * x, x * g) <= tol * std::max(1.0, max_abs(g) * max_abs(x));
    } else {
        (void)tol;
        return g * x == x * g;
    }
}

template <class T>
bool same_matrix(const Mat<T>& a, const Mat<T>& b, double tol)
{
    if constexpr (std::is_same_v<T, CScalar>) {
        return max_abs_diff(a, b) <= tol * std::max(1.0, max_abs(a));
    } else {
        (void)tol;
        return a == b;
    }
}

/// HNN data: the base representation (containing the stable letter's image),
/// the stable letter, the edge subgroup generators and the centralizer path.
template <class T>
struct BendDataHNN {
    Rep<T> base;
    std::string stable_letter;
    std::vector<std::string> edge_generators;
    std::function<Mat<T>(const Angle&)> centralizer;
};

/// Stable letter z maps to g * iota(z); the other generators are unchanged.
template <class T>
Rep<T> bend_hnn(const BendDataHNN<T>& data, const Mat<T>& g, double tol = 1e-12)
{
    for (const auto& e : data.edge_generators) {
        if (!commutes(g, data.base.image(e), tol)) {
            throw std::domain_error("bending element does not commute with edge generator '" + e + "'");
        }
    }
    Rep<T> out;
    for (const auto& s : data.base.symbols()) {
        out.set(s, s == data.stable_letter ? g * data.base.image(s) : data.base.image(s));
    }
    return out;
}

template <class T>
Rep<T> bend_hnn(const BendDataHNN<T>& data, const Angle& t, double tol = 1e-12)
{
    return bend_hnn(data, data.centralizer(t), tol);
}

/// Amalgam data: generators of the two factors, the shared edge generators and the centralizer path.
template <class T>
struct BendDataAmalgam {
    Rep<T> gamma1;
    Rep<T> gamma2;
    std::vector<std::string> edge_generators;
    std::function<Mat<T>(const Angle&)> centralizer;
};

/// Gamma1 generators are unchanged; Gamma2 generators are conjugated by g.
template <class T>
Rep<T> bend_amalgam(const BendDataAmalgam<T>& data, const Mat<T>& g, double tol = 1e-12)
{
    const std::set<std::string> edge(data.edge_generators.begin(), data.edge_generators.end());
    for (const auto& e : data.edge_generators) {
        if (!commutes(g, data.gamma1.image(e), tol)) {
            throw std::domain_error("bending element does not commute with edge generator '" + e + "'");
        }
    }
    const Mat<T> gi = mat_inverse(g);
    Rep<T> out;
    for (const auto& s : data.gamma1.symbols()) {
        out.set(s, data.gamma1.image(s));
    }
    for (const auto& s : data.gamma2.symbols()) {
        const Mat<T> img = g * data.gamma2.image(s) * gi;
        if (data.gamma1.has(s)) {
            if (edge.count(s) == 0) {
                throw std::invalid_argument("generator '" + s + "' appears in both factors but not in the edge group");
            }
            if (!same_matrix(img, data.gamma1.image(s), tol)) {
                throw std::domain_error("edge generator '" + s + "' has inconsistent images");
            }
            continue;
        }
        out.set(s, img);
    }
    return out;
}

template <class T>
Rep<T> bend_amalgam(const BendDataAmalgam<T>& data, const Angle& t, double tol = 1e-12)
{
    return bend_amalgam(data, data.centralizer(t), tol);
}

/// Two cyclic factors generated by the same loxodromic element of U(1,1),
/// amalgamated over the trivial group, bent by diag(e^{it/2}, e^{-it/2}).
BendDataAmalgam<CScalar> toy_amalgam();

// ---------------------------------------------------------------- centralizers

enum class Target { SU31, SO41 };
std::string to_string(Target t);

/// Diag(1, 1, u, 1).
CMat centralizer_su31(const Angle& u);
/// Diag(1, 1, u, 1) with u symbolic.
Mat<ExtScalar> centralizer_su31_exact();
/// Rotation by theta in the plane of coordinates 3 and 4 of R^{4,1}.
CMat centralizer_so41(const Angle& theta);
/// Same with (cos, sin) = ((1 - s^2)/(1 + s^2), 2s/(1 + s^2)).
Mat<ExtScalar> centralizer_so41_exact(const Rational& s);
/// theta = 2 atan(s); exact for s in {0, 1, -1}, otherwise marked irrational.
Angle pythagorean_angle(const Rational& s);

/// Siegel form with exact entries.
Mat<ExtScalar> siegel_form_exact(std::size_t n);
/// Embeds R^{3,1} as the span of e1, e2, e3, e5 in R^{4,1}.
template <class T>
Mat<T> embed_so41(const Mat<T>& m)
{
    static constexpr std::size_t idx[4] = {0, 1, 2, 4};
    Mat<T> out = Mat<T>::identity(5);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            out(idx[i], idx[j]) = m(i, j);
        }
    }
    return out;
}

// ---------------------------------------------------------------- Bianchi data

/// Throws std::invalid_argument unless d >= 2 is squarefree and d != 3.
void validate_bianchi_d(long d);

/// Cusp translations T = T_((a,0),0), U = T_((b1,b2),0) of the lattice embedding.
struct BianchiCusp {
    Surd a;
    Surd b1;
    Surd b2;
    bool orthogonal() const { return b1.q == 0; }
    CuspParams numeric(const Angle& u) const;
};

BianchiCusp bianchi_cusp(long d);
/// q sqrt(r) as an element of Q(sqrt2, sqrtd); r must be 1, 2, d or 2d.
ExtScalar surd_to_ext(const Surd& s, long d);
/// The real Heisenberg translation by (z1, z2) of the Siegel model of H^3_R.
Mat<ExtScalar> cusp_translation_exact(const ExtScalar& z1, const ExtScalar& z2);

/// Lattice generators transcribed entry by entry (4x4, Siegel form 2xt + y^2 + z^2).
Mat<ExtScalar> bianchi_A1(long d);
Mat<ExtScalar> bianchi_T1(long d);
Mat<ExtScalar> bianchi_U1(long d);
/// Z3(u) U1 with u symbolic, transcribed entry by entry.
Mat<ExtScalar> bianchi_Uu_printed(long d);

struct BianchiExact {
    long d = 0;
    Target target = Target::SU31;
    Mat<ExtScalar> A;
    Mat<ExtScalar> T;
    Mat<ExtScalar> U;
    Mat<ExtScalar> centralizer;
    Mat<ExtScalar> form;
    Rep<ExtScalar> rep;
};

/// SU(3,1) family with symbolic u, built by bending the lattice embedding.
BianchiExact bianchi_family_su31_exact(long d);
/// SO(4,1) family at the Pythagorean angle of s.
BianchiExact bianchi_family_so41_exact(long d, const Rational& s);

struct BianchiNumeric {
    long d = 0;
    Target target = Target::SU31;
    Angle param;
    CMat A;
    CMat T;
    CMat U;
    CMat centralizer;
    HermForm form;
    Rep<CScalar> rep;
};

BianchiNumeric bianchi_family(long d, Target target, const Angle& param);

// ---------------------------------------------------------------- verification

struct AlgebraDimension {
    int dimension = 0;
    double margin = 0.0;
    std::size_t words = 0;
};

/// Dimension of the span of all words of length <= 2n^2 in the generators.
/// Throws IndeterminateError when a rank decision is within 10x of tol.
AlgebraDimension algebra_dimension(const std::vector<CMat>& gens, double tol = 1e-9);

struct BianchiReport {
    long d = 0;
    Target target = Target::SU31;
    std::string param;
    bool exact = false;

    bool relations_checked = false;
    std::vector<RelationResult> relations;
    bool relations_ok = true;

    std::string trace_u;
    std::string trace_expected;
    bool trace_ok = false;

    bool form_ok = false;
    bool centralizer_ok = false;
    bool lattice_reproduced = false;

    std::optional<Classification> class_u;
    std::string class_error;
    std::string class_expected;
    bool class_ok = true;

    BianchiCusp cusp;
    std::string cusp_verdict;
    bool parabolic_preserving = false;
    bool strongly_parabolic_preserving = false;

    std::optional<AlgebraDimension> algebra;
    std::string algebra_error;

    bool passed() const;
};

struct VerifyOptions {
    double tol = 1e-9;
    bool algebra = true;
};

/// u = nullopt runs the exact symbolic suite; otherwise numeric at u.
BianchiReport verify_bianchi_su31(long d, const std::optional<Angle>& u, const VerifyOptions& opts = {});
/// pythagorean = s runs exact checks at theta = 2 atan(s) (theta is then ignored).
BianchiReport verify_bianchi_so41(long d, const Angle& theta, const std::optional<Rational>& pythagorean,
                                  const VerifyOptions& opts = {});

}  // namespace hypdef
