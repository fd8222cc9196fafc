#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace troupes {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    Integer r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact at every step
    }
    return r;
}

/// n!! for odd n >= -1, with (-1)!! = 1.
inline Integer double_factorial_odd(long n) {
    if (n < -1 || n % 2 == 0)
        throw std::invalid_argument("double_factorial_odd expects odd n >= -1");
    Integer r = 1;
    for (long i = n; i >= 3; i -= 2) r *= i;
    return r;
}

inline Integer int_pow(const Integer& base, unsigned e) {
    Integer r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// floor(x^(1/n)) for x >= 0, n >= 1.
inline Integer nth_root_floor(const Integer& x, unsigned n) {
    if (x < 0) throw std::invalid_argument("nth_root_floor of negative value");
    if (n == 0) throw std::invalid_argument("nth_root_floor with n = 0");
    if (x == 0 || x == 1 || n == 1) return x;
    Integer lo = 0, hi = 1;
    while (int_pow(hi, n) <= x) hi <<= 1;
    while (hi - lo > 1) {
        Integer mid = (lo + hi) >> 1;
        if (int_pow(mid, n) <= x) lo = mid; else hi = mid;
    }
    return lo;
}

/// Decimal rendering of q truncated to `digits` places, e.g. "1.62924".
inline std::string decimal_string(const Rational& q, unsigned digits) {
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;
    Integer scaled = num * int_pow(Integer(10), digits) / den;
    std::string s = scaled.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    return (neg ? "-" : "") + out;
}

/// Decimal rendering of (q)^(1/n) for q >= 0, truncated to `digits` places.
inline std::string nth_root_decimal_string(const Rational& q, unsigned n, unsigned digits) {
    if (q < 0) throw std::invalid_argument("nth root of negative rational");
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    // floor(10^digits * (num/den)^(1/n)) = floor(((num * 10^(digits*n)) / den)^(1/n)),
    // up to one ulp from the inner floor division; compensate with extra scale.
    unsigned guard = 4;
    Integer scale = int_pow(Integer(10), (digits + guard) * n);
    Integer v = nth_root_floor(num * scale / den, n);
    v /= int_pow(Integer(10), guard);
    std::string s = v.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    return out;
}

inline Rational parse_rational(const std::string& text) {
    // cpp_rational accepts "a/b" and plain integers; normalize whitespace first.
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    try {
        return Rational(t);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
}

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& n) { return n.str(); }

}  // namespace troupes
