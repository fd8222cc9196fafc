#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/multipoly.hpp"

namespace troupes {

/// Truncated formal power series in z with MultiPoly coefficients.
/// The order N is explicit: coefficients of z^0..z^N are exact, nothing is
/// known beyond. Binary operations return the minimum of the two orders.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order, int nvars = 0)
        : order_(order), coeffs_(order + 1, MultiPoly(nvars)) {
        if (order < 0) throw std::invalid_argument("negative truncation order");
    }

    TruncatedSeries(int order, std::vector<MultiPoly> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
        if (static_cast<int>(coeffs_.size()) != order_ + 1)
            throw std::invalid_argument("coefficient count does not match order");
    }

    static TruncatedSeries zero(int order, int nvars = 0) { return TruncatedSeries(order, nvars); }

    static TruncatedSeries constant(const Rational& c, int order) {
        TruncatedSeries s(order);
        s.coeffs_[0] = MultiPoly::constant(c);
        return s;
    }

    /// The series z + O(z^{order+1}).
    static TruncatedSeries z(int order) {
        TruncatedSeries s(order);
        if (order >= 1) s.coeffs_[1] = MultiPoly::constant(1);
        return s;
    }

    int order() const { return order_; }

    const MultiPoly& coeff(int n) const {
        if (n < 0 || n > order_) throw std::invalid_argument("coefficient index out of range");
        return coeffs_[n];
    }
    void set_coeff(int n, MultiPoly p) {
        if (n < 0 || n > order_) throw std::invalid_argument("coefficient index out of range");
        coeffs_[n] = std::move(p);
    }

    TruncatedSeries truncate(int new_order) const {
        if (new_order > order_) throw std::invalid_argument("cannot extend truncation order");
        TruncatedSeries s(new_order);
        for (int i = 0; i <= new_order; ++i) s.coeffs_[i] = coeffs_[i];
        return s;
    }

    /// Smallest n with a nonzero coefficient; order()+1 if all stored
    /// coefficients vanish.
    int valuation() const {
        for (int i = 0; i <= order_; ++i)
            if (!coeffs_[i].is_zero()) return i;
        return order_ + 1;
    }

    bool operator==(const TruncatedSeries& o) const {
        if (order_ != o.order_) return false;
        for (int i = 0; i <= order_; ++i)
            if (coeffs_[i] != o.coeffs_[i]) return false;
        return true;
    }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        int n = std::min(a.order_, b.order_);
        TruncatedSeries s(n);
        for (int i = 0; i <= n; ++i) s.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return s;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        int n = std::min(a.order_, b.order_);
        TruncatedSeries s(n);
        for (int i = 0; i <= n; ++i) s.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return s;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a) {
        TruncatedSeries s(a.order_);
        for (int i = 0; i <= a.order_; ++i) s.coeffs_[i] = -a.coeffs_[i];
        return s;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        int n = std::min(a.order_, b.order_);
        TruncatedSeries s(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j + i <= n; ++j) {
                if (a.coeffs_[i].is_zero() || b.coeffs_[j].is_zero()) continue;
                s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        return s;
    }
    friend TruncatedSeries operator*(const MultiPoly& p, const TruncatedSeries& a) {
        TruncatedSeries s(a.order_);
        for (int i = 0; i <= a.order_; ++i) s.coeffs_[i] = p * a.coeffs_[i];
        return s;
    }
    friend TruncatedSeries operator*(const Rational& r, const TruncatedSeries& a) {
        return MultiPoly::constant(r) * a;
    }

    /// a / b; requires the constant term of b to be a nonzero rational
    /// constant (the only units of the polynomial coefficient ring).
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
        int n = std::min(a.order_, b.order_);
        const MultiPoly& b0 = b.coeffs_[0];
        if (!b0.is_constant() || b0.constant_value() == 0)
            throw std::invalid_argument(
                "series division requires a unit constant term; divisor has constant term '" +
                b0.to_string() + "'");
        Rational inv = Rational(1) / b0.constant_value();
        TruncatedSeries s(n);
        for (int i = 0; i <= n; ++i) {
            MultiPoly acc = a.coeffs_[i];
            for (int j = 1; j <= i; ++j) {
                if (b.coeffs_[j].is_zero() || s.coeffs_[i - j].is_zero()) continue;
                acc -= b.coeffs_[j] * s.coeffs_[i - j];
            }
            s.coeffs_[i] = inv * acc;
        }
        return s;
    }

    /// Formal derivative with respect to z; order drops by one.
    TruncatedSeries derivative_z() const {
        if (order_ == 0) return TruncatedSeries(0);
        TruncatedSeries s(order_ - 1);
        for (int i = 1; i <= order_; ++i) s.coeffs_[i - 1] = Rational(i) * coeffs_[i];
        return s;
    }

    /// Coefficientwise partial derivative with respect to x_index.
    TruncatedSeries derivative_x(int index) const {
        TruncatedSeries s(order_);
        for (int i = 0; i <= order_; ++i)
            s.coeffs_[i] = coeffs_[i].nvars() >= index ? coeffs_[i].derivative(index)
                                                       : MultiPoly();
        return s;
    }

    /// Coefficientwise substitution x_index := value.
    TruncatedSeries substitute_x(int index, const Rational& value) const {
        TruncatedSeries s(order_);
        for (int i = 0; i <= order_; ++i)
            s.coeffs_[i] = coeffs_[i].nvars() >= index ? coeffs_[i].substitute(index, value)
                                                       : coeffs_[i];
        return s;
    }

private:
    int order_;
    std::vector<MultiPoly> coeffs_;
};

/// log(1 + a) for a series a with zero constant term.
inline TruncatedSeries log1p(const TruncatedSeries& a) {
    if (!a.coeff(0).is_zero())
        throw std::invalid_argument("log1p requires zero constant term; got '" +
                                    a.coeff(0).to_string() + "'");
    int n = a.order();
    TruncatedSeries acc = TruncatedSeries::zero(n);
    TruncatedSeries pw = TruncatedSeries::constant(1, n);
    for (int m = 1; m <= n; ++m) {
        pw = pw * a;
        Rational c = Rational(m % 2 == 1 ? 1 : -1, m);
        acc = acc + c * pw;
    }
    return acc;
}

/// exp(a) for a series a with zero constant term.
inline TruncatedSeries exp_series(const TruncatedSeries& a) {
    if (!a.coeff(0).is_zero())
        throw std::invalid_argument("exp requires zero constant term; got '" +
                                    a.coeff(0).to_string() + "'");
    int n = a.order();
    TruncatedSeries acc = TruncatedSeries::constant(1, n);
    TruncatedSeries pw = TruncatedSeries::constant(1, n);
    Rational fact = 1;
    for (int m = 1; m <= n; ++m) {
        pw = pw * a;
        fact *= m;
        acc = acc + (Rational(1) / fact) * pw;
    }
    return acc;
}

/// sqrt(1 + a), branch with constant term 1, via Newton iteration.
inline TruncatedSeries sqrt1p(const TruncatedSeries& a) {
    if (!a.coeff(0).is_zero())
        throw std::invalid_argument("sqrt requires zero constant term; got '" +
                                    a.coeff(0).to_string() + "'");
    int n = a.order();
    TruncatedSeries f = TruncatedSeries::constant(1, n) + a;
    TruncatedSeries g = TruncatedSeries::constant(1, n);
    Rational half(1, 2);
    int iters = 2;
    for (int m = 1; m < n + 1; m *= 2) ++iters;
    for (int k = 0; k < iters; ++k) g = half * (g + f / g);
    if (g * g != f) throw std::logic_error("sqrt Newton iteration failed to converge");
    return g;
}

/// a(b(z)) for b with zero constant term.
inline TruncatedSeries compose(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!b.coeff(0).is_zero())
        throw std::invalid_argument("compose requires inner series with zero constant term");
    int n = std::min(a.order(), b.order());
    TruncatedSeries bt = b.truncate(n);
    TruncatedSeries acc = TruncatedSeries::zero(n);
    for (int i = a.order() <= n ? a.order() : n; i >= 0; --i) {
        acc = acc * bt;
        acc.set_coeff(0, acc.coeff(0) + a.coeff(i));
    }
    return acc;
}

/// Compositional inverse of a (zero constant term, linear coefficient a
/// nonzero rational constant), via Newton iteration.
inline TruncatedSeries comp_inverse(const TruncatedSeries& a) {
    if (!a.coeff(0).is_zero())
        throw std::invalid_argument("comp_inverse requires zero constant term; got '" +
                                    a.coeff(0).to_string() + "'");
    const MultiPoly& a1 = a.coeff(1);
    if (!a1.is_constant() || a1.constant_value() == 0)
        throw std::invalid_argument(
            "comp_inverse requires an invertible (nonzero rational) linear coefficient; got '" +
            a1.to_string() + "'");
    int n = a.order();
    TruncatedSeries g = (Rational(1) / a1.constant_value()) * TruncatedSeries::z(n);
    TruncatedSeries da = a.derivative_z();
    int iters = 2;
    for (int m = 1; m < n + 1; m *= 2) ++iters;
    for (int k = 0; k < iters; ++k) {
        TruncatedSeries err = compose(a, g) - TruncatedSeries::z(n);
        TruncatedSeries slope = compose(TruncatedSeries(n, [&] {
            std::vector<MultiPoly> c(n + 1);
            for (int i = 0; i <= n; ++i) c[i] = i <= da.order() ? da.coeff(i) : MultiPoly();
            return c;
        }()), g);
        g = g - err / slope;
    }
    if (compose(a, g) != TruncatedSeries::z(n))
        throw std::logic_error("comp_inverse Newton iteration failed to converge");
    return g;
}

enum class EgfDirection { to_egf, to_ogf };

/// Coefficientwise conversion between ordinary and exponential generating
/// functions: to_egf divides coefficient n by n!, to_ogf multiplies.
inline TruncatedSeries ogf_egf(const TruncatedSeries& a, EgfDirection dir) {
    int n = a.order();
    TruncatedSeries s(n);
    Rational fact = 1;
    for (int i = 0; i <= n; ++i) {
        if (i > 0) fact *= i;
        s.set_coeff(i, dir == EgfDirection::to_egf ? a.coeff(i) / fact
                                                   : fact * a.coeff(i));
    }
    return s;
}

}  // namespace troupes
