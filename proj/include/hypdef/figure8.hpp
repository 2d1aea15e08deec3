#pragma once

// The one-parameter family of the figure-eight knot group into U(3,1)/U(2,2):
// generators, invariant form, peripheral word, determinant and signature laws,
// parabolicity of the cusp and trace integrality.

#include "hypdef/isometry.hpp"
#include "hypdef/words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypdef {

Mat<LaurentPoly> fig8_M();
Mat<LaurentPoly> fig8_N();
Mat<LaurentPoly> fig8_J();
/// The longitude image as printed (independent transcription, not computed).
Mat<LaurentPoly> fig8_L_printed();
/// l = n m^-1 n^-1 m^2 n^-1 m^-1 n.
Word fig8_l_word();

/// Substitutes u = 1 exactly.
Mat<LaurentPoly> at_u_one(const Mat<LaurentPoly>& m);

struct Fig8Exact {
    Mat<LaurentPoly> M;
    Mat<LaurentPoly> N;
    Mat<LaurentPoly> J;
    Rep<LaurentPoly> rep;
    Presentation presentation;
};

/// Symbolic family; throws std::logic_error if the relation or form
/// invariance fails (a transcription error).
const Fig8Exact& build_family_exact();

struct Fig8Numeric {
    Angle alpha;
    CMat M;
    CMat N;
    CMat J;
    HermForm form;
    Rep<CScalar> rep;
};

/// Family at u = e^{i alpha}; invariants checked to 1e-10.
Fig8Numeric build_family(const Angle& alpha);

/// -4 (cos a + 1)^2 (2 cos a + 1)^3.
double det_J_closed(const Angle& alpha);

/// det J_u by exact cofactor expansion over Q(i) at u = cos(alpha) + i sin(alpha)
/// (the double values taken as exact rationals).
double det_J_direct(const Angle& alpha);

/// Representative of alpha in (-pi, pi].
double principal_angle(const Angle& alpha);

/// (3,1,0) on |alpha| < 2pi/3 - eps, (2,2,0) on 2pi/3 + eps < |alpha| < pi - eps, else none.
std::optional<Signature> expected_signature(const Angle& alpha, double eps);

struct SignatureRow {
    Angle alpha;
    Signature signature;
    std::optional<Signature> expected;
    double det = 0.0;
    double det_lu = 0.0;
    double det_closed = 0.0;
    bool ok = true;
};

std::vector<SignatureRow> signature_sweep(const std::vector<Angle>& grid, double eps, double tol = 1e-9);

struct ParabolicityReport {
    Classification m;
    Classification l;
    /// Expected clusters {u (x3), u^-3}, merged when they coincide.
    bool spectrum_matches = false;
};

/// Requires |alpha| < 2pi/3. Propagates IndeterminateError.
ParabolicityReport parabolicity_report(const Angle& alpha, const ClassifyOptions& opts = {});

struct TraceWord {
    std::string name;
    Word word;
    std::optional<LaurentPoly> expected;
};

/// The nine built-in words with their printed traces.
std::vector<TraceWord> fig8_trace_words();

struct TraceRow {
    std::string name;
    std::string word;
    LaurentPoly trace;
    bool integral = false;
    std::optional<LaurentPoly> expected;
    bool matches = true;
};

/// Built-in words followed by the extra words.
std::vector<TraceRow> trace_integrality_check(const std::vector<Word>& extra = {});

/// lcm of the denominators of all entries of M, N and J.
Rational fig8_entry_denominator_lcm();

/// Grid of count cell midpoints of (start, end), as raw radians.
std::vector<Angle> midpoint_grid(double start, double end, int count);

}  // namespace hypdef
