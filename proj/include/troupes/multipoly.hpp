#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/numeric.hpp"

namespace troupes {

/// Exact multivariate polynomial in variables x1..xr with Rational
/// coefficients. Terms are kept in graded lexicographic order and zero
/// coefficients are never stored.
class MultiPoly {
public:
    using Exponents = std::vector<unsigned>;

    struct GradedLex {
        bool operator()(const Exponents& a, const Exponents& b) const {
            unsigned da = std::accumulate(a.begin(), a.end(), 0u);
            unsigned db = std::accumulate(b.begin(), b.end(), 0u);
            if (da != db) return da < db;
            return a < b;
        }
    };
    using TermMap = std::map<Exponents, Rational, GradedLex>;

    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("negative variable count");
    }

    static MultiPoly constant(const Rational& c, int nvars = 0) {
        MultiPoly p(nvars);
        if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
        return p;
    }

    /// x_index (1-based) as a polynomial in nvars variables.
    static MultiPoly variable(int index, int nvars) {
        if (index < 1 || index > nvars)
            throw std::invalid_argument("variable index out of range");
        MultiPoly p(nvars);
        Exponents e(nvars, 0);
        e[index - 1] = 1;
        p.terms_[e] = 1;
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const Exponents& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
    }
    Rational constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant())
            throw std::invalid_argument("constant_value of non-constant polynomial");
        return terms_.begin()->second;
    }
    /// Coefficient of the all-zero exponent (constant term).
    Rational constant_term() const {
        auto it = terms_.find(Exponents(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long total_degree() const {  // -1 for the zero polynomial
        if (terms_.empty()) return -1;
        const Exponents& e = terms_.rbegin()->first;
        return std::accumulate(e.begin(), e.end(), 0l);
    }

    const TermMap& terms() const { return terms_; }

    Rational coeff(const Exponents& e) const {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("exponent arity mismatch");
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("exponent arity mismatch");
        Rational& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }

    /// Same polynomial viewed in nvars >= current arity (new variables unused).
    MultiPoly with_nvars(int nvars) const {
        if (nvars == nvars_) return *this;
        if (nvars < nvars_) {
            if (!is_constant())
                throw std::invalid_argument("cannot narrow variable count");
            return constant(constant_value(), nvars);
        }
        MultiPoly out(nvars);
        for (const auto& [e, c] : terms_) {
            Exponents ee = e;
            ee.resize(nvars, 0);
            out.terms_[ee] = c;
        }
        return out;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return combine(o, 1); }
    MultiPoly& operator-=(const MultiPoly& o) { return combine(o, -1); }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly out(a.nvars_);
        for (const auto& [e, c] : a.terms_) out.terms_[e] = -c;
        return out;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        MultiPoly out(x.nvars_);
        for (const auto& [ea, ca] : x.terms_)
            for (const auto& [eb, cb] : y.terms_) {
                Exponents e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator*(const Rational& s, const MultiPoly& p) {
        MultiPoly out(p.nvars_);
        if (s != 0)
            for (const auto& [e, c] : p.terms_) out.terms_[e] = s * c;
        return out;
    }
    friend MultiPoly operator*(const MultiPoly& p, const Rational& s) { return s * p; }
    MultiPoly& operator*=(const Rational& s) { return *this = s * *this; }
    MultiPoly operator/(const Rational& s) const {
        if (s == 0) throw std::invalid_argument("division by zero");
        return Rational(1) / s * *this;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(1, nvars_), b = *this;
        while (e) {
            if (e & 1) r *= b;
            if (e >>= 1) b *= b;
        }
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        if (nvars_ == o.nvars_) return terms_ == o.terms_;
        auto [a, b] = aligned(*this, o);
        return a.terms_ == b.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw std::invalid_argument("evaluation point arity mismatch");
        Rational out = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
            out += t;
        }
        return out;
    }

    /// Substitute x_index := value (1-based); arity is preserved.
    MultiPoly substitute(int index, const Rational& value) const {
        if (index < 1 || index > nvars_)
            throw std::invalid_argument("variable index out of range");
        MultiPoly out(nvars_);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (unsigned k = 0; k < e[index - 1]; ++k) t *= value;
            Exponents ee = e;
            ee[index - 1] = 0;
            out.add_term(ee, t);
        }
        return out;
    }

    /// Partial derivative with respect to x_index (1-based).
    MultiPoly derivative(int index) const {
        if (index < 1 || index > nvars_)
            throw std::invalid_argument("variable index out of range");
        MultiPoly out(nvars_);
        for (const auto& [e, c] : terms_) {
            unsigned k = e[index - 1];
            if (k == 0) continue;
            Exponents ee = e;
            ee[index - 1] = k - 1;
            out.add_term(ee, c * Rational(k));
        }
        return out;
    }

    /// Text form, e.g. "1 + 3*x1^2 - 1/2*x1*x2"; the zero polynomial is "0".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational mag = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            std::string vars;
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += "x" + std::to_string(i + 1);
                if (e[i] > 1) vars += "^" + std::to_string(e[i]);
            }
            if (vars.empty())
                os << mag.str();
            else if (mag == 1)
                os << vars;
            else
                os << mag.str() << "*" << vars;
        }
        return os.str();
    }

    /// Parse the to_string grammar. The result has arity
    /// max(min_nvars, largest variable index mentioned).
    static MultiPoly parse(const std::string& text, int min_nvars = 0);

private:
    MultiPoly& combine(const MultiPoly& o, int sign) {
        if (nvars_ != o.nvars_) {
            auto [a, b] = aligned(*this, o);
            *this = a;
            return combine(b, sign);
        }
        for (const auto& [e, c] : o.terms_) add_term(e, sign > 0 ? c : Rational(-c));
        return *this;
    }

    static std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
        int n = std::max(a.nvars_, b.nvars_);
        return {a.with_nvars(n), b.with_nvars(n)};
    }

    int nvars_;
    TermMap terms_;
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) {
        for (char c : text)
            if (!isspace(static_cast<unsigned char>(c))) src_ += c;
    }

    MultiPoly parse(int min_nvars) {
        if (src_.empty()) throw std::invalid_argument("empty polynomial literal");
        std::vector<std::pair<Rational, MultiPoly::Exponents>> raw;
        int maxvar = 0;
        size_t pos = 0;
        int sign = 1;
        if (src_[pos] == '+' || src_[pos] == '-') {
            sign = src_[pos] == '-' ? -1 : 1;
            ++pos;
        }
        while (true) {
            auto [coef, expo] = term(pos, maxvar);
            raw.emplace_back(sign * coef, expo);
            if (pos == src_.size()) break;
            if (src_[pos] == '+') sign = 1;
            else if (src_[pos] == '-') sign = -1;
            else throw std::invalid_argument("expected '+' or '-' in polynomial at offset " +
                                             std::to_string(pos));
            ++pos;
        }
        int nvars = std::max(min_nvars, maxvar);
        MultiPoly out(nvars);
        for (auto& [c, e] : raw) {
            e.resize(nvars, 0);
            out.add_term(e, c);
        }
        return out;
    }

private:
    std::pair<Rational, MultiPoly::Exponents> term(size_t& pos, int& maxvar) {
        Rational coef = 1;
        MultiPoly::Exponents expo;
        bool any = false;
        if (pos < src_.size() && isdigit(static_cast<unsigned char>(src_[pos]))) {
            coef = number(pos);
            any = true;
            if (pos < src_.size() && src_[pos] == '*') ++pos;
            else return {coef, expo};
        }
        while (pos < src_.size() && src_[pos] == 'x') {
            ++pos;
            long idx = integer(pos).convert_to<long>();
            if (idx < 1) throw std::invalid_argument("variable index must be >= 1");
            maxvar = std::max<long>(maxvar, idx);
            unsigned e = 1;
            if (pos < src_.size() && src_[pos] == '^') {
                ++pos;
                e = integer(pos).convert_to<unsigned>();
            }
            if (expo.size() < static_cast<size_t>(idx)) expo.resize(idx, 0);
            expo[idx - 1] += e;
            any = true;
            if (pos < src_.size() && src_[pos] == '*') ++pos;
            else break;
        }
        if (!any) throw std::invalid_argument("expected term in polynomial at offset " +
                                              std::to_string(pos));
        return {coef, expo};
    }

    Rational number(size_t& pos) {
        Integer num = integer(pos);
        if (pos < src_.size() && src_[pos] == '/') {
            ++pos;
            Integer den = integer(pos);
            if (den == 0) throw std::invalid_argument("zero denominator in polynomial literal");
            return Rational(num, den);
        }
        return Rational(num);
    }

    Integer integer(size_t& pos) {
        size_t start = pos;
        while (pos < src_.size() && isdigit(static_cast<unsigned char>(src_[pos]))) ++pos;
        if (pos == start)
            throw std::invalid_argument("expected number in polynomial at offset " +
                                        std::to_string(pos));
        return Integer(src_.substr(start, pos - start));
    }

    std::string src_;
};

}  // namespace detail

inline MultiPoly MultiPoly::parse(const std::string& text, int min_nvars) {
    return detail::PolyParser(text).parse(min_nvars);
}

}  // namespace troupes
