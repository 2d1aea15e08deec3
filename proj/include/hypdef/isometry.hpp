#pragma once

// Classification of form-preserving matrices into identity, elliptic,
// parabolic and loxodromic isometries, with parabolic and elliptic subtypes.

#include "hypdef/matform.hpp"

#include <stdexcept>
#include <string>

namespace hypdef {

enum class ParabolicSubtype { UnipotentStep2, UnipotentStep3, ElliptoParabolic };

struct IsoClass {
    enum class Kind { Identity, Elliptic, Parabolic, Loxodromic };
    Kind kind = Kind::Identity;
    bool boundary = false;  // Elliptic only
    ParabolicSubtype subtype = ParabolicSubtype::UnipotentStep2;  // Parabolic only

    static IsoClass identity() { return {}; }
    static IsoClass elliptic(bool boundary) { return {Kind::Elliptic, boundary, ParabolicSubtype::UnipotentStep2}; }
    static IsoClass parabolic(ParabolicSubtype s) { return {Kind::Parabolic, false, s}; }
    static IsoClass loxodromic() { return {Kind::Loxodromic, false, ParabolicSubtype::UnipotentStep2}; }

    bool is_parabolic() const { return kind == Kind::Parabolic; }
    bool is_unipotent() const { return is_parabolic() && subtype != ParabolicSubtype::ElliptoParabolic; }

    /// "identity", "elliptic-boundary", "elliptic-single-point",
    /// "parabolic-unipotent-step2", "parabolic-unipotent-step3",
    /// "parabolic-ellipto", "loxodromic".
    std::string tag() const;

    friend bool operator==(const IsoClass& a, const IsoClass& b) { return a.tag() == b.tag(); }
};

std::string to_string(ParabolicSubtype s);

/// A rank or nilpotency decision that lies too close to its threshold.
class IndeterminateError : public std::runtime_error {
public:
    IndeterminateError(const std::string& what, double margin) : std::runtime_error(what), margin_(margin) {}
    double margin() const { return margin_; }

private:
    double margin_;
};

struct ClassifyOptions {
    double tol = 1e-9;
    double cluster_radius = 1e-4;
    /// Rank decisions closer than this factor to the threshold are indeterminate.
    double min_margin = 10.0;
};

struct Classification {
    IsoClass iso;
    EigenData spectrum;
    double form_defect = 0.0;
    double margin = 0.0;
};

/// Full classification with the spectral data used to decide it.
/// Throws std::domain_error when A does not preserve the form, and
/// IndeterminateError when a rank decision is marginal.
Classification classify_detailed(const CMat& a, const HermForm& form, const ClassifyOptions& opts = {});

IsoClass classify(const CMat& a, const HermForm& form, double tol = 1e-9);

ParabolicSubtype parabolic_subtype(const CMat& a, double tol = 1e-9);
ParabolicSubtype parabolic_subtype(const CMat& a, const EigenData& spectrum, double tol);

bool elliptic_boundary(const CMat& a, const HermForm& form, double tol = 1e-9);
bool elliptic_boundary(const CMat& a, const HermForm& form, const EigenData& spectrum, double tol);

}  // namespace hypdef
