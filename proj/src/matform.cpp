#include "hypdef/matform.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hypdef {

namespace {

using EMat = Eigen::MatrixXcd;

EMat to_eigen(const CMat& a)
{
    const auto n = static_cast<Eigen::Index>(a.size());
    EMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return m;
}

CMat from_eigen(const EMat& m)
{
    CMat a(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
        }
    }
    return a;
}

void require_finite(const CMat& a)
{
    for (const auto& v : a.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::domain_error("non-finite matrix entry");
        }
    }
}

}  // namespace

std::string to_string(FormConvention c)
{
    return c == FormConvention::ConjTranspose ? "conj-transpose" : "transpose-conj";
}

double max_abs(const CMat& a)
{
    double m = 0.0;
    for (const auto& v : a.data()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double max_abs_diff(const CMat& a, const CMat& b)
{
    return max_abs(a - b);
}

bool approx_equal(const CMat& a, const CMat& b, double tol)
{
    return a.size() == b.size() && max_abs_diff(a, b) <= tol;
}

CScalar det(const CMat& a)
{
    require_finite(a);
    return to_eigen(a).partialPivLu().determinant();
}

CMat inverse(const CMat& a)
{
    require_finite(a);
    const EMat m = to_eigen(a);
    Eigen::PartialPivLU<EMat> lu(m);
    if (std::abs(lu.determinant()) == 0.0) {
        throw std::domain_error("matrix is singular");
    }
    return from_eigen(lu.inverse());
}

std::vector<double> singular_values(const CMat& a)
{
    require_finite(a);
    Eigen::JacobiSVD<EMat> svd(to_eigen(a));
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::vector<CVec> null_space(const CMat& a, double threshold)
{
    require_finite(a);
    Eigen::JacobiSVD<EMat> svd(to_eigen(a), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const EMat& v = svd.matrixV();
    std::vector<CVec> out;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s(k) <= threshold) {
            CVec col(static_cast<std::size_t>(v.rows()));
            for (Eigen::Index i = 0; i < v.rows(); ++i) {
                col[static_cast<std::size_t>(i)] = v(i, k);
            }
            out.push_back(std::move(col));
        }
    }
    return out;
}

std::vector<CScalar> eigenvalues(const CMat& a)
{
    require_finite(a);
    Eigen::ComplexEigenSolver<EMat> es(to_eigen(a), false);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalue computation did not converge");
    }
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

CVec mat_vec(const CMat& a, const CVec& v)
{
    if (v.size() != a.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    CVec r(v.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            r[i] += a(i, j) * v[j];
        }
    }
    return r;
}

// ---------------------------------------------------------------- forms

HermForm::HermForm(CMat j, FormConvention conv, double tol) : j_(std::move(j)), conv_(conv)
{
    require_finite(j_);
    const double scale = std::max(1.0, max_abs(j_));
    if (max_abs_diff(j_.adjoint(), j_) > tol * scale) {
        throw std::domain_error("form matrix is not Hermitian");
    }
    k_ = conv_ == FormConvention::ConjTranspose ? j_ : j_.transpose();
}

CScalar HermForm::inner(const CVec& x, const CVec& y) const
{
    const CVec kx = mat_vec(k_, x);
    CScalar s = 0.0;
    for (std::size_t i = 0; i < kx.size(); ++i) {
        s += std::conj(y[i]) * kx[i];
    }
    return s;
}

CMat siegel_form(std::size_t n)
{
    if (n < 2) {
        throw std::invalid_argument("Siegel form needs dimension at least 2");
    }
    CMat h(n);
    h(0, n - 1) = 1.0;
    h(n - 1, 0) = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        h(i, i) = 1.0;
    }
    return h;
}

double form_defect(const CMat& g, const HermForm& form)
{
    require_finite(g);
    return max_abs(form_defect_matrix(g, form.matrix(), form.convention()));
}

std::string to_string(const Signature& s)
{
    return "(" + std::to_string(s.plus) + "," + std::to_string(s.minus) + "," + std::to_string(s.zero) + ")";
}

Signature herm_signature(const HermForm& form, double tol)
{
    Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(form.gram()), Eigen::EigenvaluesOnly);
    Signature s;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double v = es.eigenvalues()(k);
        if (v > tol) {
            ++s.plus;
        } else if (v < -tol) {
            ++s.minus;
        } else {
            ++s.zero;
        }
    }
    return s;
}

// ---------------------------------------------------------------- eigenstructure

EigenData eigen(const CMat& a, const EigenOptions& opts)
{
    const std::vector<CScalar> ev = eigenvalues(a);
    const std::size_t n = ev.size();

    // Greedy union of eigenvalues within relative distance cluster_radius.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double scale = std::max({std::abs(ev[i]), std::abs(ev[j]), 1e-300});
            if (std::abs(ev[i] - ev[j]) <= opts.cluster_radius * scale) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }

    const std::vector<double> sa = singular_values(a);
    EigenData out;
    out.rank_threshold = opts.tol * (sa.empty() ? 0.0 : sa.front());
    const double tau = out.rank_threshold;

    for (const auto& g : groups) {
        CScalar mean = 0.0;
        for (std::size_t idx : g) {
            mean += ev[idx];
        }
        mean /= static_cast<double>(g.size());

        CMat shifted = a;
        for (std::size_t i = 0; i < a.size(); ++i) {
            shifted(i, i) -= mean;
        }
        const std::vector<double> s = singular_values(shifted);
        int rank = 0;
        double margin = std::numeric_limits<double>::infinity();
        for (double v : s) {
            if (v > tau) {
                ++rank;
                margin = std::min(margin, tau > 0.0 ? v / tau : std::numeric_limits<double>::infinity());
            } else if (v > 0.0) {
                margin = std::min(margin, tau / v);
            }
        }
        EigenCluster c;
        c.value = mean;
        c.algebraic = static_cast<int>(g.size());
        c.geometric = std::clamp(static_cast<int>(n) - rank, 1, c.algebraic);
        c.margin = margin;
        out.min_margin = std::min(out.min_margin, margin);
        out.clusters.push_back(c);
    }

    // Deterministic order: by argument, then modulus.
    std::sort(out.clusters.begin(), out.clusters.end(), [](const EigenCluster& x, const EigenCluster& y) {
        const double ax = std::arg(x.value);
        const double ay = std::arg(y.value);
        if (std::abs(ax - ay) > 1e-12) {
            return ax < ay;
        }
        return std::abs(x.value) < std::abs(y.value);
    });
    return out;
}

}  // namespace hypdef
