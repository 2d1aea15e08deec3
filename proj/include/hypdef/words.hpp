#pragma once

// Free words, finite presentations, representations on generators, relation
// checks and trace words.

#include "hypdef/matform.hpp"

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hypdef {

struct Factor {
    std::string symbol;
    long exp = 1;
    friend bool operator==(const Factor& a, const Factor& b) { return a.symbol == b.symbol && a.exp == b.exp; }
};

/// Freely reduced word; the empty word is the identity.
class Word {
public:
    Word() = default;
    explicit Word(const std::vector<Factor>& factors);

    static Word gen(const std::string& symbol, long exp = 1);
    /// Factors `sym^exp` (or bare `sym`) separated by '.'; "" or "1" is the identity.
    static Word parse(std::string_view text);

    const std::vector<Factor>& factors() const { return f_; }
    bool empty() const { return f_.empty(); }
    std::size_t length() const;
    Word inverse() const;
    Word pow(long k) const;
    /// Cyclic rotation by k letters (of the expanded word).
    Word rotate(std::size_t k) const;
    /// Dotted form `m^1.n^-1`; the identity prints as "1".
    std::string to_string() const;

    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word& a, const Word& b) { return a.f_ == b.f_; }

private:
    std::vector<Factor> f_;
};

/// Primary: [a,b] = a b a^-1 b^-1.  Alternate: [a,b] = a^-1 b^-1 a b.
enum class CommutatorConvention { Primary, Alternate };
std::string to_string(CommutatorConvention c);
Word commutator(const Word& a, const Word& b, CommutatorConvention c = CommutatorConvention::Primary);

struct Presentation {
    std::string name;
    std::vector<std::string> generators;
    std::vector<Word> relators;
    std::vector<std::string> labels;
    CommutatorConvention convention = CommutatorConvention::Primary;
    /// Throws if a relator uses an undeclared generator.
    void validate() const;
};

/// Generators m, n with the single relator m w n^-1 w^-1, w = [n, m^-1].
Presentation figure8_presentation(CommutatorConvention c = CommutatorConvention::Primary);
/// Generators a, t, u with relators [t,u], a^2, (at)^3 and the d-specific one; d in {2, 7, 11}.
Presentation bianchi_presentation(long d, CommutatorConvention c = CommutatorConvention::Primary);
/// "figure8", "bianchi2", "bianchi7" or "bianchi11".
Presentation builtin_presentation(std::string_view name);

/// One word per line; '#' starts a comment; blank lines are skipped.
std::vector<Word> parse_word_list(std::istream& in);

/// Generator images with cached inverses; all of one dimension and backend.
template <class T>
class Rep {
public:
    void set(const std::string& symbol, const Mat<T>& image)
    {
        if (!images_.empty() && images_.begin()->second.size() != image.size()) {
            throw std::invalid_argument("generator '" + symbol + "' has a different dimension");
        }
        images_[symbol] = image;
        inverses_[symbol] = mat_inverse(image);
    }

    bool has(const std::string& symbol) const { return images_.count(symbol) != 0; }

    const Mat<T>& image(const std::string& symbol) const { return lookup(images_, symbol); }
    const Mat<T>& inverse_image(const std::string& symbol) const { return lookup(inverses_, symbol); }

    std::size_t dimension() const
    {
        if (images_.empty()) {
            throw std::logic_error("empty representation");
        }
        return images_.begin()->second.size();
    }

    std::vector<std::string> symbols() const
    {
        std::vector<std::string> out;
        for (const auto& kv : images_) {
            out.push_back(kv.first);
        }
        return out;
    }

private:
    static const Mat<T>& lookup(const std::map<std::string, Mat<T>>& m, const std::string& symbol)
    {
        auto it = m.find(symbol);
        if (it == m.end()) {
            throw std::invalid_argument("symbol '" + symbol + "' is not in the representation");
        }
        return it->second;
    }

    std::map<std::string, Mat<T>> images_;
    std::map<std::string, Mat<T>> inverses_;
};

template <class T>
Mat<T> eval_word(const Rep<T>& rep, const Word& w)
{
    Mat<T> r = Mat<T>::identity(rep.dimension());
    for (const auto& f : w.factors()) {
        const Mat<T>& g = f.exp > 0 ? rep.image(f.symbol) : rep.inverse_image(f.symbol);
        const long k = f.exp > 0 ? f.exp : -f.exp;
        for (long i = 0; i < k; ++i) {
            r = r * g;
        }
    }
    return r;
}

template <class T>
T trace_word(const Rep<T>& rep, const Word& w)
{
    return eval_word(rep, w).trace();
}

inline bool in_Z_laurent(const LaurentPoly& p)
{
    return p.is_integral();
}

/// Maps every generator image through f (for instance evaluation at an angle).
template <class T, class F>
auto map_rep(const Rep<T>& rep, F&& f)
{
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Rep<U> out;
    for (const auto& s : rep.symbols()) {
        out.set(s, rep.image(s).map(f));
    }
    return out;
}

template <class T>
Rep<CScalar> evaluate_rep(const Rep<T>& rep, const Angle& alpha)
{
    return map_rep(rep, [&](const T& x) { return to_complex(x, alpha); });
}

struct RelationResult {
    std::string label;
    std::string relator;
    bool exact = false;
    bool linear_pass = false;
    bool projective_pass = false;
    /// The scalar lambda with R = lambda I when the projective check passes.
    std::string scalar;
    double linear_defect = 0.0;
    double projective_defect = 0.0;
};

/// Exact backends test R = I and R = lambda I exactly; the numeric backend
/// reports max-entry defects from I and from (tr R / n) I and passes at tol.
template <class T>
std::vector<RelationResult> check_relations(const Rep<T>& rep, const Presentation& pres, double tol = 1e-9)
{
    std::vector<RelationResult> out;
    const std::size_t n = rep.dimension();
    for (std::size_t k = 0; k < pres.relators.size(); ++k) {
        RelationResult res;
        res.label = k < pres.labels.size() ? pres.labels[k] : pres.relators[k].to_string();
        res.relator = pres.relators[k].to_string();
        const Mat<T> r = eval_word(rep, pres.relators[k]);
        if constexpr (std::is_same_v<T, CScalar>) {
            const CScalar lambda = r.trace() / static_cast<double>(n);
            res.linear_defect = max_abs_diff(r, CMat::identity(n));
            res.projective_defect = max_abs_diff(r, lambda * CMat::identity(n));
            res.linear_pass = res.linear_defect <= tol;
            res.projective_pass = res.projective_defect <= tol;
            res.scalar = to_string(lambda);
        } else {
            res.exact = true;
            const T lambda = r(0, 0);
            res.linear_pass = r == Mat<T>::identity(n);
            res.projective_pass = !is_zero(lambda) && r == lambda * Mat<T>::identity(n);
            res.scalar = res.projective_pass ? to_string(lambda) : "";
            res.linear_defect = res.linear_pass ? 0.0 : 1.0;
            res.projective_defect = res.projective_pass ? 0.0 : 1.0;
        }
        out.push_back(res);
    }
    return out;
}

/// Tries the primary commutator convention, then the alternate one, on a
/// representation known to satisfy the relations (the undeformed one).
template <class T>
std::optional<CommutatorConvention> select_commutator_convention(
    const Rep<T>& rep, const std::function<Presentation(CommutatorConvention)>& make, bool projective)
{
    for (auto c : {CommutatorConvention::Primary, CommutatorConvention::Alternate}) {
        bool ok = true;
        for (const auto& r : check_relations(rep, make(c))) {
            ok = ok && (projective ? r.projective_pass : r.linear_pass);
        }
        if (ok) {
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace hypdef
