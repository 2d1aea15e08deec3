#include "hypdef/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypdef {

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

bool valid_symbol(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::vector<std::string> expand(const Word& w)
{
    std::vector<std::string> letters;
    for (const auto& f : w.factors()) {
        const std::string sym = f.exp > 0 ? f.symbol : f.symbol + "'";
        for (long i = 0; i < (f.exp > 0 ? f.exp : -f.exp); ++i) {
            letters.push_back(sym);
        }
    }
    return letters;
}

}  // namespace

Word::Word(const std::vector<Factor>& factors)
{
    for (const auto& f : factors) {
        if (f.exp == 0) {
            continue;
        }
        if (!f_.empty() && f_.back().symbol == f.symbol) {
            f_.back().exp += f.exp;
            if (f_.back().exp == 0) {
                f_.pop_back();
            }
        } else {
            f_.push_back(f);
        }
    }
}

Word Word::gen(const std::string& symbol, long exp)
{
    if (!valid_symbol(symbol)) {
        throw std::invalid_argument("invalid generator symbol '" + symbol + "'");
    }
    return Word({{symbol, exp}});
}

Word Word::parse(std::string_view text)
{
    const std::string s = trim(text);
    if (s.empty() || s == "1") {
        return {};
    }
    std::vector<Factor> factors;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = trim(part);
        const auto caret = part.find('^');
        std::string sym = trim(part.substr(0, caret));
        long exp = 1;
        if (caret != std::string::npos) {
            const std::string e = trim(part.substr(caret + 1));
            std::size_t used = 0;
            try {
                exp = std::stol(e, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (e.empty() || used != e.size()) {
                throw std::invalid_argument("bad exponent in word factor '" + part + "'");
            }
        }
        if (!valid_symbol(sym)) {
            throw std::invalid_argument("bad generator in word factor '" + part + "'");
        }
        factors.push_back({sym, exp});
    }
    return Word(factors);
}

std::size_t Word::length() const
{
    std::size_t n = 0;
    for (const auto& f : f_) {
        n += static_cast<std::size_t>(f.exp > 0 ? f.exp : -f.exp);
    }
    return n;
}

Word Word::inverse() const
{
    std::vector<Factor> r(f_.rbegin(), f_.rend());
    for (auto& f : r) {
        f.exp = -f.exp;
    }
    return Word(r);
}

Word Word::pow(long k) const
{
    const Word base = k < 0 ? inverse() : *this;
    Word r;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) {
        r = r * base;
    }
    return r;
}

Word Word::rotate(std::size_t k) const
{
    const std::vector<std::string> letters = expand(*this);
    if (letters.empty()) {
        return *this;
    }
    k %= letters.size();
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const std::string& l = letters[(i + k) % letters.size()];
        if (l.back() == '\'') {
            factors.push_back({l.substr(0, l.size() - 1), -1});
        } else {
            factors.push_back({l, 1});
        }
    }
    return Word(factors);
}

std::string Word::to_string() const
{
    if (f_.empty()) {
        return "1";
    }
    std::string out;
    for (const auto& f : f_) {
        if (!out.empty()) {
            out += '.';
        }
        out += f.symbol + "^" + std::to_string(f.exp);
    }
    return out;
}

Word operator*(const Word& a, const Word& b)
{
    std::vector<Factor> f = a.f_;
    f.insert(f.end(), b.f_.begin(), b.f_.end());
    return Word(f);
}

std::string to_string(CommutatorConvention c)
{
    return c == CommutatorConvention::Primary ? "aba^-1b^-1" : "a^-1b^-1ab";
}

Word commutator(const Word& a, const Word& b, CommutatorConvention c)
{
    if (c == CommutatorConvention::Primary) {
        return a * b * a.inverse() * b.inverse();
    }
    return a.inverse() * b.inverse() * a * b;
}

void Presentation::validate() const
{
    const std::set<std::string> gens(generators.begin(), generators.end());
    for (const auto& r : relators) {
        for (const auto& f : r.factors()) {
            if (gens.count(f.symbol) == 0) {
                throw std::invalid_argument("relator " + r.to_string() + " uses undeclared generator '" +
                                            f.symbol + "'");
            }
        }
    }
}

Presentation figure8_presentation(CommutatorConvention c)
{
    const Word m = Word::gen("m");
    const Word n = Word::gen("n");
    const Word w = commutator(n, m.inverse(), c);
    Presentation p;
    p.name = "figure8";
    p.generators = {"m", "n"};
    p.relators = {m * w * n.inverse() * w.inverse()};
    p.labels = {"m w n^-1 w^-1, w=[n,m^-1]"};
    p.convention = c;
    p.validate();
    return p;
}

Presentation bianchi_presentation(long d, CommutatorConvention c)
{
    const Word a = Word::gen("a");
    const Word t = Word::gen("t");
    const Word u = Word::gen("u");
    Presentation p;
    p.name = "bianchi" + std::to_string(d);
    p.generators = {"a", "t", "u"};
    p.relators = {commutator(t, u, c), a.pow(2), (a * t).pow(3)};
    p.labels = {"[t,u]", "a^2", "(at)^3"};
    switch (d) {
    case 2:
        p.relators.push_back((a * u.inverse() * a * u).pow(2));
        p.labels.emplace_back("(au^-1au)^2");
        break;
    case 7:
        p.relators.push_back((a * t * u.inverse() * a * u).pow(2));
        p.labels.emplace_back("(atu^-1au)^2");
        break;
    case 11:
        p.relators.push_back((a * t * u.inverse() * a * u).pow(3));
        p.labels.emplace_back("(atu^-1au)^3");
        break;
    default:
        throw std::invalid_argument("no built-in presentation for d=" + std::to_string(d));
    }
    p.convention = c;
    p.validate();
    return p;
}

Presentation builtin_presentation(std::string_view name)
{
    if (name == "figure8") {
        return figure8_presentation();
    }
    if (name.substr(0, 7) == "bianchi") {
        const std::string rest(name.substr(7));
        if (rest == "2" || rest == "7" || rest == "11") {
            return bianchi_presentation(std::stol(rest));
        }
    }
    throw std::invalid_argument("unknown presentation '" + std::string(name) + "'");
}

std::vector<Word> parse_word_list(std::istream& in)
{
    std::vector<Word> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        try {
            out.push_back(Word::parse(line));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace hypdef
