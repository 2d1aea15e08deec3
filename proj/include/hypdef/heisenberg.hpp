#pragma once

// Siegel-model boundary geometry: the Heisenberg group, the stabilizer of the
// point at infinity, its boundary action, the deformed cusp orbit formula and
// the discreteness trichotomy for subgroups of R x S^1.

#include "hypdef/matform.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hypdef {

/// Boundary point (Z, t) of the Siegel model, Z complex of length n - 1.
struct HeisPoint {
    CVec Z;
    double t = 0.0;
};

/// Heisenberg point with coordinates in Q(i) x Q.
struct ExactHeisPoint {
    std::vector<GaussRational> Z;
    Rational t;
    friend bool operator==(const ExactHeisPoint& a, const ExactHeisPoint& b) { return a.Z == b.Z && a.t == b.t; }
};

/// (Z1 + Z2, t1 + t2 + 2 Im(Z1 Z2^*)), with Z1 Z2^* = sum Z1_k conj(Z2_k).
HeisPoint heis_mul(const HeisPoint& p, const HeisPoint& q);
ExactHeisPoint heis_mul(const ExactHeisPoint& p, const ExactHeisPoint& q);
HeisPoint heis_inverse(const HeisPoint& p);

/// Box quasi-metric max(|dZ|, |dt|^(1/2)).
double heis_box_distance(const HeisPoint& p, const HeisPoint& q);

namespace detail {
inline CScalar imag_unit(const CScalar*) { return {0.0, 1.0}; }
inline GaussRational imag_unit(const GaussRational*) { return GaussRational::i(); }
inline bool near_identity(const CMat& m, double tol) { return max_abs_diff(m, CMat::identity(m.size())) <= tol; }
template <class T>
bool near_identity(const Mat<T>& m, double) { return m == Mat<T>::identity(m.size()); }
}  // namespace detail

/// Heisenberg translation T_(Z,t) of dimension len(Z) + 2.
template <class T>
Mat<T> stab_translation(const std::vector<T>& z, const T& t)
{
    const std::size_t n = z.size() + 2;
    Mat<T> m = Mat<T>::identity(n);
    T norm2(0);
    for (std::size_t k = 0; k < z.size(); ++k) {
        m(0, k + 1) = T(0) - conj(z[k]);
        m(k + 1, n - 1) = z[k];
        norm2 = norm2 + z[k] * conj(z[k]);
    }
    const T i = detail::imag_unit(static_cast<const T*>(nullptr));
    m(0, n - 1) = (T(0) - (norm2 - i * t)) * inverse(T(2));
    return m;
}

/// Heisenberg rotation R_U = diag(1, U, 1); U must be unitary.
template <class T>
Mat<T> stab_rotation(const Mat<T>& u)
{
    if (!detail::near_identity(u.adjoint() * u, 1e-12)) {
        throw std::domain_error("rotation block is not unitary");
    }
    const std::size_t n = u.size() + 2;
    Mat<T> m = Mat<T>::identity(n);
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            m(i + 1, j + 1) = u(i, j);
        }
    }
    return m;
}

/// Heisenberg dilation D_r = diag(r, I, 1/r) of dimension n; r > 0.
CMat stab_dilation(std::size_t n, double r);
Mat<GaussRational> stab_dilation_exact(std::size_t n, const Rational& r);

/// Standard lift ((-|Z|^2 + i t)/2, Z, 1).
CVec standard_lift(const HeisPoint& p);

/// Image of p under a matrix fixing the point at infinity.
HeisPoint boundary_action(const CMat& g, const HeisPoint& p);

// ---------------------------------------------------------------- deformed cusp

/// Cusp translations T = T_((a,0),0), U = T_((b1,b2),0) bent by Z3(u) = diag(1,1,u,1).
struct CuspParams {
    double a = 1.0;
    double b1 = 0.0;
    double b2 = 1.0;
    Angle u;
};

void validate(const CuspParams& p);
CMat cusp_T(const CuspParams& p);
CMat cusp_U(const CuspParams& p);
CMat centralizer_z3(const Angle& u);
CMat cusp_U_bent(const CuspParams& p);
/// Rotation centre c_u = u b2 / (1 - u) of the z2 action; u must differ from 1.
CScalar cusp_center(const CuspParams& p);

/// Conversion between raw z2 and the shifted coordinate z2' = z2 - c_u (Z = (z1, z2)).
HeisPoint shifted_to_raw(const CuspParams& p, const HeisPoint& q);
HeisPoint raw_to_shifted(const CuspParams& p, const HeisPoint& q);

/// Closed form of T^m U_u^n p0 in shifted coordinates (input and output).
HeisPoint orbit_point(const CuspParams& params, long m, long n, const HeisPoint& p0);
/// Same point computed by the matrices T^m (Z3(u) U)^n acting on raw coordinates.
HeisPoint orbit_point_matrix(const CuspParams& params, long m, long n, const HeisPoint& p0);

struct OrbitRow {
    long m = 0;
    long n = 0;
    HeisPoint point;
};

/// Points T^m U^n p0 for |m|, |n| <= R, m outer and n inner, ascending.
std::vector<OrbitRow> orbit_cloud(const CMat& t, const CMat& u, const HeisPoint& p0, int radius);

struct GapResult {
    double gap = 0.0;
    std::size_t points = 0;
    std::size_t coincidences = 0;
};

/// Minimum box distance between distinct orbit points; R <= 50.
GapResult orbit_gap(const std::vector<OrbitRow>& rows);
GapResult orbit_gap_probe(const CMat& t, const CMat& u, const HeisPoint& p0, int radius);

/// CSV with columns m,n,Re z1,Im z1,Re z2,Im z2,v and a trailing gap comment.
void write_orbit_csv(std::ostream& os, const std::vector<OrbitRow>& rows, const GapResult& gap);

// ---------------------------------------------------------------- R x S^1

/// q * sqrt(r) with r squarefree.
struct Surd {
    Rational q;
    long r = 1;
    static Surd make(const Rational& q, long r);
    double value() const;
    std::string to_string() const;
};

/// A real number whose exact nature is unknown unless marked irrational.
struct RawReal {
    double value = 0.0;
    bool irrational = false;
};

using RS1Translation = std::variant<Surd, RawReal>;

double translation_value(const RS1Translation& x);

/// Element (translation, angle) of R x S^1.
struct RS1Element {
    RS1Translation translation;
    Angle angle;
};

enum class RS1Case { NondiscreteZ2, DiscreteNonZ2, NondiscreteZ2Rational };
std::string to_string(RS1Case c);

class UndecidableError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact trichotomy for <T, U> with T = (a, 0) and U = (b, theta).
RS1Case rs1_classify(const RS1Element& t, const RS1Element& u);

/// Exact rationality of x / y when decidable from the inputs.
std::optional<bool> ratio_is_rational(const RS1Translation& x, const RS1Translation& y);

struct RS1ProbeResult {
    std::optional<RS1Case> verdict;  // nullopt: inconclusive
    bool translation_accumulates = false;
    bool fibre_accumulates = false;
    bool relation_found = false;
    std::size_t elements = 0;
    double min_translation = 0.0;
    double min_fibre_angle = 0.0;
};

/// Floating sampling probe over the elements T^m(n) U^n, n in [-N/2, N/2),
/// with m(n) the nearest return of the translation to zero. Accumulation
/// below eps in R (relative to |a|), or in S^1 (as a fraction of a turn)
/// within the zero-translation fibre, is evidence of non-discreteness; a
/// nontrivial element at (0, 0) is a relation.
RS1ProbeResult rs1_probe(double a, double b, double theta, double eps = 1e-2, int elements = 10000);

}  // namespace hypdef
