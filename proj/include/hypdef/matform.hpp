#pragma once

// Dense square matrices over any scalar backend, Hermitian forms, signatures,
// determinants and eigenstructure.

#include "hypdef/scalars.hpp"

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace hypdef {

template <class T>
class Mat {
public:
    Mat() = default;

    explicit Mat(std::size_t n) : n_(n), a_(n * n, T(0))
    {
        if (n == 0) {
            throw std::invalid_argument("matrix dimension must be at least 1");
        }
    }

    Mat(std::initializer_list<std::initializer_list<T>> rows) : Mat(rows.size())
    {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != n_) {
                throw std::invalid_argument("matrix literal is not square");
            }
            std::size_t j = 0;
            for (const auto& v : row) {
                (*this)(i, j++) = v;
            }
            ++i;
        }
    }

    static Mat identity(std::size_t n)
    {
        Mat m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    static Mat diagonal(const std::vector<T>& d)
    {
        Mat m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    std::size_t size() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<T>& data() const { return a_; }

    Mat transpose() const
    {
        Mat r(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                r(j, i) = (*this)(i, j);
            }
        }
        return r;
    }

    Mat conjugate() const
    {
        Mat r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) {
            r.a_[k] = conj(a_[k]);
        }
        return r;
    }

    Mat adjoint() const { return transpose().conjugate(); }

    T trace() const
    {
        T s(0);
        for (std::size_t i = 0; i < n_; ++i) {
            s = s + (*this)(i, i);
        }
        return s;
    }

    bool is_zero() const
    {
        for (const auto& v : a_) {
            if (!hypdef::is_zero(v)) {
                return false;
            }
        }
        return true;
    }

    template <class F>
    auto map(F&& f) const
    {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        Mat<U> r(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                r(i, j) = f((*this)(i, j));
            }
        }
        return r;
    }

    friend Mat operator+(const Mat& x, const Mat& y)
    {
        x.check_same(y);
        Mat r(x.n_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) {
            r.a_[k] = x.a_[k] + y.a_[k];
        }
        return r;
    }

    friend Mat operator-(const Mat& x, const Mat& y)
    {
        x.check_same(y);
        Mat r(x.n_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) {
            r.a_[k] = x.a_[k] - y.a_[k];
        }
        return r;
    }

    friend Mat operator*(const Mat& x, const Mat& y)
    {
        x.check_same(y);
        const std::size_t n = x.n_;
        Mat r(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const T& xik = x(i, k);
                if (hypdef::is_zero(xik)) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const T& ykj = y(k, j);
                    if (!hypdef::is_zero(ykj)) {
                        r(i, j) = r(i, j) + xik * ykj;
                    }
                }
            }
        }
        return r;
    }

    friend Mat operator*(const T& s, const Mat& x)
    {
        Mat r(x.n_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) {
            r.a_[k] = s * x.a_[k];
        }
        return r;
    }

    friend bool operator==(const Mat& x, const Mat& y) { return x.n_ == y.n_ && x.a_ == y.a_; }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

private:
    void check_same(const Mat& o) const
    {
        if (n_ != o.n_) {
            throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(n_) + " vs " +
                                        std::to_string(o.n_));
        }
    }

    std::size_t n_ = 0;
    std::vector<T> a_;
};

using CMat = Mat<CScalar>;
using CVec = std::vector<CScalar>;

/// Division-free determinant: Leibniz expansion memoized over used-column sets.
template <class T>
T det_exact(const Mat<T>& a)
{
    const std::size_t n = a.size();
    if (n > 20) {
        throw std::invalid_argument("exact determinant limited to dimension 20");
    }
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<T> f(full + 1, T(0));
    std::vector<bool> live(full + 1, false);
    f[0] = T(1);
    live[0] = true;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (!live[mask] || is_zero(f[mask])) {
            continue;
        }
        const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
        for (std::size_t j = 0; j < n; ++j) {
            if ((mask >> j) & 1U) {
                continue;
            }
            const T& e = a(row, j);
            if (is_zero(e)) {
                continue;
            }
            const bool odd = (__builtin_popcountll(mask >> (j + 1)) & 1) != 0;
            const std::size_t next = mask | (std::size_t{1} << j);
            T term = e * f[mask];
            f[next] = odd ? f[next] - term : f[next] + term;
            live[next] = true;
        }
    }
    return f[full];
}

template <class T>
Mat<T> minor_matrix(const Mat<T>& a, std::size_t row, std::size_t col)
{
    const std::size_t n = a.size();
    Mat<T> m(n - 1);
    for (std::size_t i = 0, r = 0; i < n; ++i) {
        if (i == row) {
            continue;
        }
        for (std::size_t j = 0, c = 0; j < n; ++j) {
            if (j == col) {
                continue;
            }
            m(r, c++) = a(i, j);
        }
        ++r;
    }
    return m;
}

template <class T>
Mat<T> adjugate(const Mat<T>& a)
{
    const std::size_t n = a.size();
    Mat<T> r(n);
    if (n == 1) {
        r(0, 0) = T(1);
        return r;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            T c = det_exact(minor_matrix(a, i, j));
            r(j, i) = ((i + j) % 2 == 0) ? c : T(0) - c;
        }
    }
    return r;
}

/// adj(A)/det(A); det must be a unit of the scalar ring.
template <class T>
Mat<T> inverse_exact(const Mat<T>& a)
{
    const T d = det_exact(a);
    if (is_zero(d)) {
        throw std::domain_error("matrix is singular");
    }
    return inverse(d) * adjugate(a);
}

/// Exact inverse for exact backends; LU inverse for the numeric backend.
template <class T>
Mat<T> mat_inverse(const Mat<T>& a)
{
    return inverse_exact(a);
}

CMat inverse(const CMat& a);
inline CMat mat_inverse(const CMat& a) { return inverse(a); }

template <class T>
Mat<T> power(const Mat<T>& a, long k, const std::function<Mat<T>(const Mat<T>&)>& inv)
{
    Mat<T> base = k < 0 ? inv(a) : a;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Mat<T> r = Mat<T>::identity(a.size());
    while (e > 0) {
        if (e & 1UL) {
            r = r * base;
        }
        e >>= 1U;
        if (e > 0) {
            base = base * base;
        }
    }
    return r;
}

/// Evaluates an exact matrix at u = e^{i alpha}.
template <class T>
CMat evaluate(const Mat<T>& a, const Angle& alpha)
{
    return a.map([&](const T& x) { return to_complex(x, alpha); });
}

/// Hermitian-form invariance conventions.
/// ConjTranspose: g* J g = J.  TransposeConj: g^T J conj(g) = J.
enum class FormConvention { ConjTranspose, TransposeConj };

std::string to_string(FormConvention c);

template <class T>
Mat<T> form_defect_matrix(const Mat<T>& g, const Mat<T>& j, FormConvention conv)
{
    if (conv == FormConvention::ConjTranspose) {
        return g.adjoint() * j * g - j;
    }
    return g.transpose() * j * g.conjugate() - j;
}

/// Exact zero test of the defect matrix.
template <class T>
bool preserves_form_exact(const Mat<T>& g, const Mat<T>& j, FormConvention conv)
{
    return form_defect_matrix(g, j, conv).is_zero();
}

template <class T>
bool is_hermitian_exact(const Mat<T>& j)
{
    return j.adjoint() == j;
}

// ---------------------------------------------------------------- numeric side

double max_abs(const CMat& a);
double max_abs_diff(const CMat& a, const CMat& b);
bool approx_equal(const CMat& a, const CMat& b, double tol);
CScalar det(const CMat& a);
CMat inverse(const CMat& a);
/// Singular values in decreasing order.
std::vector<double> singular_values(const CMat& a);
/// Orthonormal basis (columns) of the numerical null space at the given threshold.
std::vector<CVec> null_space(const CMat& a, double threshold);
std::vector<CScalar> eigenvalues(const CMat& a);
CVec mat_vec(const CMat& a, const CVec& v);

/// A Hermitian form, stored with the convention it is invariant under.
///
/// inner(x, y) = y* K x, where K = J for ConjTranspose and K = J^T for
/// TransposeConj, so both conventions share one numerical Gram matrix.
class HermForm {
public:
    HermForm() = default;
    explicit HermForm(CMat j, FormConvention conv = FormConvention::ConjTranspose, double tol = 1e-12);

    const CMat& matrix() const { return j_; }
    const CMat& gram() const { return k_; }
    FormConvention convention() const { return conv_; }
    std::size_t size() const { return j_.size(); }
    CScalar inner(const CVec& x, const CVec& y) const;

private:
    CMat j_;
    CMat k_;
    FormConvention conv_ = FormConvention::ConjTranspose;
};

/// Siegel form of dimension n: antidiagonal corner ones with an identity block.
CMat siegel_form(std::size_t n);

double form_defect(const CMat& g, const HermForm& form);

struct Signature {
    int plus = 0;
    int minus = 0;
    int zero = 0;
    friend bool operator==(const Signature& a, const Signature& b)
    {
        return a.plus == b.plus && a.minus == b.minus && a.zero == b.zero;
    }
};

std::string to_string(const Signature& s);

Signature herm_signature(const HermForm& form, double tol = 1e-9);

struct EigenCluster {
    CScalar value;
    int algebraic = 0;
    int geometric = 0;
    /// Distance of the rank decision from the threshold, as a ratio >= 1.
    double margin = std::numeric_limits<double>::infinity();
};

struct EigenData {
    std::vector<EigenCluster> clusters;
    double rank_threshold = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
};

struct EigenOptions {
    double tol = 1e-9;
    double cluster_radius = 1e-4;
};

/// Clusters eigenvalues at relative distance cluster_radius and computes
/// geometric multiplicities as n - rank(A - lambda I) with the rank threshold
/// tol * sigma_max(A).
EigenData eigen(const CMat& a, const EigenOptions& opts = {});

}  // namespace hypdef
