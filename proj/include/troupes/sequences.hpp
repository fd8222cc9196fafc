#pragma once

#include <string>
#include <vector>

#include "troupes/errors.hpp"
#include "troupes/multipoly.hpp"

namespace troupes::seq {

inline constexpr long kSequenceCap = 5000;

/// Catalan numbers C_0..C_n.
inline std::vector<Integer> catalan_list(long n) {
    check_cap("sequence_n", kSequenceCap, n);
    std::vector<Integer> c(n + 1);
    c[0] = 1;
    for (long i = 0; i < n; ++i) c[i + 1] = c[i] * 2 * (2 * i + 1) / (i + 2);
    return c;
}

inline Integer catalan(long n) { return n < 0 ? Integer(0) : catalan_list(n)[n]; }

/// C_{(n-1)/2} for odd n, 0 otherwise (the full-tree counting profile).
inline Integer aerated_catalan(long n) {
    if (n < 1 || n % 2 == 0) return 0;
    return catalan((n - 1) / 2);
}

/// Motzkin numbers with the convention M_{-1} = 0.
inline std::vector<Integer> motzkin_list(long n) {
    check_cap("sequence_n", kSequenceCap, n);
    std::vector<Integer> m(n + 1);
    if (n >= 0) m[0] = 1;
    for (long i = 1; i <= n; ++i) {
        m[i] = m[i - 1];
        for (long j = 0; j <= i - 2; ++j) m[i] += m[j] * m[i - 2 - j];
    }
    return m;
}

inline Integer motzkin(long n) { return n < 0 ? Integer(0) : motzkin_list(n)[n]; }

/// Large Schroeder numbers 1, 2, 6, 22, 90, 394, ...
inline Integer schroeder(long n) {
    if (n < 0) return 0;
    check_cap("sequence_n", kSequenceCap, n);
    Integer s = 0;
    for (long j = 0; j <= n; ++j) s += binomial(n + j, n - j) * catalan(j);
    return s;
}

inline Integer narayana(long n, long i) {
    if (n < 1 || i < 1 || i > n) return 0;
    return binomial(n, i) * binomial(n, i - 1) / n;
}

/// Euler numbers 1, 1, 1, 2, 5, 16, 61, 272, ... via the boustrophedon
/// recurrence.
inline std::vector<Integer> euler_list(long n) {
    check_cap("sequence_n", kSequenceCap, n);
    std::vector<Integer> e(n + 1);
    std::vector<Integer> row{1};
    e[0] = 1;
    for (long m = 1; m <= n; ++m) {
        std::vector<Integer> cur(m + 1);
        cur[0] = 0;
        for (long k = 1; k <= m; ++k) cur[k] = cur[k - 1] + row[m - k];
        e[m] = cur[m];
        row = std::move(cur);
    }
    return e;
}

inline Integer euler_number(long n) { return n < 0 ? Integer(0) : euler_list(n)[n]; }

/// Eulerian numbers A(n,k) = #{pi in S_n : des(pi) = k}.
inline Integer eulerian(long n, long k) {
    if (n < 0 || k < 0 || (n > 0 && k >= n) || (n == 0 && k > 0)) return 0;
    std::vector<Integer> row{1};
    for (long m = 1; m <= n; ++m) {
        std::vector<Integer> cur(m, 0);
        for (long j = 0; j < m; ++j) {
            Integer v = 0;
            if (j < static_cast<long>(row.size())) v += (j + 1) * row[j];
            if (j - 1 >= 0 && j - 1 < static_cast<long>(row.size())) v += (m - j) * row[j - 1];
            cur[j] = v;
        }
        row = std::move(cur);
    }
    return k < static_cast<long>(row.size()) ? row[k] : Integer(0);
}

/// Eulerian polynomial A_n(x) = sum_k A(n,k) x^k (univariate in x1).
inline MultiPoly eulerian_poly(long n) {
    MultiPoly p(1);
    long kmax = n == 0 ? 0 : n - 1;
    for (long k = 0; k <= kmax; ++k)
        p.add_term({static_cast<unsigned>(k)}, Rational(eulerian(n, k)));
    return p;
}

/// Narayana polynomial N_n(x) = sum_{i=1}^n N(n,i) x^i, defined for n >= 1.
inline MultiPoly narayana_poly(long n) {
    if (n < 1) throw std::invalid_argument("narayana_poly requires n >= 1");
    MultiPoly p(1);
    for (long i = 1; i <= n; ++i)
        p.add_term({static_cast<unsigned>(i)}, Rational(narayana(n, i)));
    return p;
}

/// N_n(s*x) for a rational scale s.
inline MultiPoly narayana_poly_scaled(long n, const Rational& s) {
    if (n < 1) throw std::invalid_argument("narayana_poly_scaled requires n >= 1");
    MultiPoly p(1);
    Rational pw = 1;
    for (long i = 1; i <= n; ++i) {
        pw *= s;
        p.add_term({static_cast<unsigned>(i)}, Rational(narayana(n, i)) * pw);
    }
    return p;
}

/// Motzkin polynomial M_n(x): coefficient of x^i is n!/((n-2i+2)! i! (i-1)!)
/// when n-2i+2 >= 0. Convention: M_{-1}(x) = 0. M_n(1) is the Motzkin number.
inline MultiPoly motzkin_poly(long n) {
    MultiPoly p(1);
    if (n < 0) return p;
    for (long i = 1; 2 * i <= n + 2; ++i) {
        Integer c = factorial(n) / (factorial(n - 2 * i + 2) * factorial(i) * factorial(i - 1));
        p.add_term({static_cast<unsigned>(i)}, Rational(c));
    }
    return p;
}

/// Odd double factorials (2k-1)!! for k = 0..n: 1, 1, 3, 15, 105, ...
inline std::vector<Integer> double_factorial_odd_list(long n) {
    check_cap("sequence_n", kSequenceCap, n);
    std::vector<Integer> d(n + 1);
    d[0] = 1;
    for (long k = 1; k <= n; ++k) d[k] = d[k - 1] * (2 * k - 1);
    return d;
}

inline std::vector<Integer> factorial_list(long n) {
    check_cap("sequence_n", kSequenceCap, n);
    std::vector<Integer> f(n + 1);
    f[0] = 1;
    for (long k = 1; k <= n; ++k) f[k] = f[k - 1] * k;
    return f;
}

enum class Name {
    catalan,
    aerated_catalan,
    motzkin,
    schroeder,
    euler,
    double_factorial_odd,
    factorial,
};

/// Values a_0..a_N of a named integer sequence.
inline std::vector<Integer> sequence(Name name, long N) {
    check_cap("sequence_n", kSequenceCap, N);
    std::vector<Integer> out(N + 1);
    switch (name) {
        case Name::catalan: return catalan_list(N);
        case Name::aerated_catalan:
            for (long i = 0; i <= N; ++i) out[i] = aerated_catalan(i);
            return out;
        case Name::motzkin: return motzkin_list(N);
        case Name::schroeder:
            for (long i = 0; i <= N; ++i) out[i] = schroeder(i);
            return out;
        case Name::euler: return euler_list(N);
        case Name::double_factorial_odd: return double_factorial_odd_list(N);
        case Name::factorial: return factorial_list(N);
    }
    throw std::invalid_argument("unknown sequence name");
}

inline Name sequence_name_from_string(const std::string& s) {
    if (s == "catalan") return Name::catalan;
    if (s == "aerated_catalan") return Name::aerated_catalan;
    if (s == "motzkin") return Name::motzkin;
    if (s == "schroeder") return Name::schroeder;
    if (s == "euler") return Name::euler;
    if (s == "double_factorial_odd") return Name::double_factorial_odd;
    if (s == "factorial") return Name::factorial;
    throw std::invalid_argument("unknown sequence name: " + s);
}

}  // namespace troupes::seq
