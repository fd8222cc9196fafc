#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/cumulant.hpp"
#include "troupes/multipoly.hpp"
#include "troupes/permutation.hpp"
#include "troupes/sequences.hpp"
#include "troupes/series.hpp"
#include "troupes/troupe.hpp"
#include "troupes/vhc.hpp"

namespace troupes {

inline constexpr int kTwoStackCap = 12;    // max n + l for the table
inline constexpr int kThreeStackCap = 9;   // max n for the recurrence
inline constexpr int kSortedRecurrenceCap = 400;
inline constexpr int kDegreeCap = 9;
inline constexpr int kDegreeBoundCap = 300;

/// All hooks of pi with southwest endpoint at position d (1-based).
inline std::vector<Hook> sw_hooks(const Permutation& pi, int d) {
    std::vector<Hook> out;
    for (int j = d + 1; j <= pi.size(); ++j)
        if (pi[j - 1] > pi[d - 1]) out.push_back(Hook{d, j});
    return out;
}

/// pi with the entries strictly after the southwest endpoint through the
/// northeast endpoint removed.
inline Permutation hook_unsheltered(const Permutation& pi, const Hook& h) {
    std::vector<int> v;
    for (int i = 1; i <= h.sw; ++i) v.push_back(pi[i - 1]);
    for (int i = h.ne + 1; i <= pi.size(); ++i) v.push_back(pi[i - 1]);
    return Permutation(std::move(v));
}

/// The entries strictly between the endpoints of the hook.
inline Permutation hook_sheltered(const Permutation& pi, const Hook& h) {
    std::vector<int> v;
    for (int i = h.sw + 1; i <= h.ne - 1; ++i) v.push_back(pi[i - 1]);
    return Permutation(std::move(v));
}

namespace detail {

/// G_n for engine use: closed form when available, enumeration otherwise.
inline MultiPoly g_value(const TroupeSpec& spec, int n, const std::vector<TreeStatistic>& stats,
                         int cap = kTroupeCap) {
    if (stats.empty() && spec.is_named()) {
        Integer c;
        switch (spec.named()) {
            case TroupeSpec::Named::BPT: c = seq::catalan(n); break;
            case TroupeSpec::Named::FBPT: c = seq::aerated_catalan(n); break;
            case TroupeSpec::Named::MOT: c = seq::motzkin(n - 1); break;
            case TroupeSpec::Named::SCH: c = seq::schroeder(n); break;
        }
        return MultiPoly::constant(Rational(c));
    }
    if (auto closed = g_polynomial_closed(spec, n, stats)) return *closed;
    return g_polynomial(spec, n, stats, cap);
}

/// Counting sequence of a named troupe, uncapped (used by the cumulant-side
/// engines which run past enumeration scale).
inline Integer troupe_count(const TroupeSpec& spec, int n, int cap = kTroupeCap) {
    if (n < 0) return 0;
    if (spec.is_named()) {
        switch (spec.named()) {
            case TroupeSpec::Named::BPT: return seq::catalan(n);
            case TroupeSpec::Named::FBPT: return seq::aerated_catalan(n);
            case TroupeSpec::Named::MOT: return seq::motzkin(n - 1);
            case TroupeSpec::Named::SCH: return seq::schroeder(n);
        }
    }
    return Integer(enumerate_troupe(spec, n, cap).size());
}

}  // namespace detail

enum class FertilityMethod { brute, vhc_formula };

/// |s^{-1}(pi)|: by exhaustive search over orderings of the ground set, or
/// by the sum of Catalan products over valid hook configurations.
inline Integer fertility(const Permutation& pi, FertilityMethod method = FertilityMethod::vhc_formula,
                         int cap = kVhcCap) {
    if (method == FertilityMethod::brute)
        return Integer(brute_preimages(pi, cap).size());
    Integer total = 0;
    for_each_vhc(pi, [&](const ValidHookConfiguration& h) {
        Integer prod = 1;
        for (int q : coloring(h).q) prod *= seq::catalan(q);
        total += prod;
    }, cap);
    return total;
}

/// Combined fertility summary: the configuration count, the plain fertility,
/// and preimage counts restricted to each named troupe and permutation
/// class, all from one pass over the hook configurations.
struct FertilityReport {
    Permutation base;
    Integer vhc_count = 0;
    Integer fertility = 0;
    std::map<std::string, MultiPoly> per_class;
};

inline FertilityReport fertility_report(const Permutation& pi, int cap = kVhcCap) {
    FertilityReport rep;
    rep.base = pi;
    Integer full = 0, mot = 0, sch = 0;
    MultiPoly edp_weighted(1);
    for_each_vhc(pi, [&](const ValidHookConfiguration& h) {
        rep.vhc_count += 1;
        Integer cat = 1, aer = 1, mo = 1, sc = 1;
        MultiPoly mw = MultiPoly::constant(1, 1);
        for (int q : coloring(h).q) {
            cat *= seq::catalan(q);
            aer *= (q % 2 == 0) ? Integer(0) : seq::catalan((q - 1) / 2);
            mo *= seq::motzkin(q - 1);
            sc *= seq::schroeder(q);
            mw *= seq::motzkin_poly(q - 1);
        }
        rep.fertility += cat;
        full += aer;
        mot += mo;
        sch += sc;
        edp_weighted += mw;
    }, cap);
    rep.per_class["BPT"] = MultiPoly::constant(Rational(rep.fertility));
    rep.per_class["FBPT"] = MultiPoly::constant(Rational(full));
    rep.per_class["MOT"] = MultiPoly::constant(Rational(mot));
    rep.per_class["SCH"] = MultiPoly::constant(Rational(sch));
    if (pi.size() % 2 == 1)  // alternating preimages of odd-length bases
        rep.per_class["alternating"] = MultiPoly::constant(Rational(full));
    rep.per_class["edp"] = MultiPoly::constant(Rational(mot));
    rep.per_class["edp_weighted"] = edp_weighted;
    return rep;
}

enum class PreimageClass { alternating, edp };

/// Count (or descent-weight, for edp) the preimages of pi lying in the given
/// permutation class, via the class's tree fertility formula.
/// alternating: sum over configurations of C_{(q-1)/2} products (odd length
/// only); edp: Motzkin number / Motzkin polynomial products.
inline MultiPoly class_preimage(const Permutation& pi, PreimageClass cls, bool weighted = false,
                                int cap = kVhcCap) {
    if (cls == PreimageClass::alternating) {
        if (weighted)
            throw std::invalid_argument("weighted form is only available for the edp class");
        if (pi.size() % 2 == 0)
            throw unsupported_error(
                "no formula is available for alternating preimages of even-length permutations");
        Integer total = 0;
        for_each_vhc(pi, [&](const ValidHookConfiguration& h) {
            Integer prod = 1;
            for (int q : coloring(h).q)
                prod *= (q % 2 == 0) ? Integer(0) : seq::catalan((q - 1) / 2);
            total += prod;
        }, cap);
        return MultiPoly::constant(Rational(total));
    }
    MultiPoly total(weighted ? 1 : 0);
    for_each_vhc(pi, [&](const ValidHookConfiguration& h) {
        MultiPoly prod = MultiPoly::constant(1, weighted ? 1 : 0);
        for (int q : coloring(h).q)
            prod *= weighted ? seq::motzkin_poly(q - 1)
                             : MultiPoly::constant(Rational(seq::motzkin(q - 1)));
        total += prod;
    }, cap);
    return total;
}

/// Uniquely sorted = sorted with exactly (n-1)/2 descents; equivalently the
/// fertility is exactly 1.
inline bool uniquely_sorted(const Permutation& pi, int cap = kVhcCap) {
    int n = pi.size();
    if (n == 0 || n % 2 == 0) return false;
    if (static_cast<int>(descents(pi).size()) != (n - 1) / 2) return false;
    return fertility(pi, FertilityMethod::vhc_formula, cap) >= 1;
}

inline constexpr int kUniqueDirectCap = 9;

/// |U_n|: direct enumeration for small n, the matching-only free cumulant
/// route (Lassalle numbers) beyond.
inline Integer count_uniquely_sorted(int n, int direct_cap = kUniqueDirectCap) {
    if (n < 0) throw std::invalid_argument("negative length");
    if (n == 0 || n % 2 == 0) return 0;
    if (n <= direct_cap) {
        Integer c = 0;
        for_each_permutation(n, [&](const Permutation& pi) {
            if (uniquely_sorted(pi)) ++c;
        });
        return c;
    }
    CumulantSequence kappa{SeqKind::free_cumulants, {}};
    for (int m = 1; m <= n + 1; ++m)
        kappa.values.push_back(MultiPoly::constant(m == 2 ? -1 : 0));
    CumulantSequence c = convert_via_recursion(kappa, SeqKind::classical);
    Rational v = (-c.at(n + 1)).constant_value();
    return boost::multiprecision::numerator(v);
}

enum class DescentRoute { enumerate, cumulant };

/// sum over sigma in S_{n-1} of x^{des(s(sigma))+1}, by direct image
/// enumeration or through the free cumulants kappa_m = -x C_{m-1}.
inline MultiPoly sorted_descent_polynomial(int n, DescentRoute route = DescentRoute::cumulant,
                                           int brute_cap = kBrutePermCap) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (route == DescentRoute::enumerate) {
        check_cap("brute_perm_n", brute_cap, n - 1);
        MultiPoly acc(1);
        for_each_permutation(n - 1, [&](const Permutation& sigma) {
            unsigned d = static_cast<unsigned>(descents(stack_sort(sigma)).size());
            acc.add_term({d + 1}, 1);
        });
        return acc;
    }
    CumulantSequence kappa{SeqKind::free_cumulants, {}};
    MultiPoly x = MultiPoly::variable(1, 1);
    for (int m = 1; m <= n; ++m)
        kappa.values.push_back(-(Rational(seq::catalan(m - 1)) * x));
    CumulantSequence c = convert_via_recursion(kappa, SeqKind::classical);
    return -c.at(n);
}

/// Exact expected value of des(s(sigma))+1 over sigma in S_{n-1}:
/// (3 - sum_{j<=n} 1/j!) n.
inline Rational expected_descent(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    Rational s = 0, fact = 1;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) fact *= j;
        s += Rational(1) / fact;
    }
    return (Rational(3) - s) * n;
}

/// E(D_n^m) where D_n = des(s(sigma))+1: repeated x d/dx of the descent
/// polynomial, evaluated at x = 1 and normalized by (n-1)!.
inline Rational descent_moment(int n, int m, DescentRoute route = DescentRoute::cumulant) {
    MultiPoly p = sorted_descent_polynomial(n, route);
    for (int i = 0; i < m; ++i) {
        p = p.derivative(1);
        // multiply by x
        MultiPoly shifted(1);
        for (const auto& [e, c] : p.terms()) shifted.add_term({e[0] + 1}, c);
        p = shifted;
    }
    return p.evaluate({1}) / Rational(factorial(n - 1));
}

/// Exact probability that 1 is a descent of s(sigma) for uniform sigma in
/// S_n: the finite sum from the direct stack analysis.
inline Rational first_descent_probability(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    Rational total = 0, fact = 1;  // fact tracks (m+1)!
    for (int m = 1; m <= n - 1; ++m) {
        fact = Rational(factorial(m + 1));
        total += Rational(Integer(m) * (m - 1) * (m - 2), 2) / fact;
    }
    total += Rational(Integer(n - 1) * (n - 2), 2) / Rational(factorial(n));
    return total;
}

/// Brute probability that position i is a descent of s(sigma) for uniform
/// sigma in S_n; i = 1 matches first_descent_probability exactly. Exposed as
/// data (no limit claims).
inline Rational descent_position_probability_brute(int n, int i, int cap = kBrutePermCap) {
    check_cap("brute_perm_n", cap, n);
    if (i < 1) throw std::invalid_argument("descent position must be >= 1");
    Integer hits = 0;
    for_each_permutation(n, [&](const Permutation& sigma) {
        Permutation img = stack_sort(sigma);
        if (i + 1 <= img.size() && img[i - 1] > img[i]) ++hits;
    });
    return Rational(hits, factorial(n));
}

inline Rational first_descent_probability_brute(int n, int cap = kBrutePermCap) {
    return descent_position_probability_brute(n, 1, cap);
}

/// EGF in z of sum over standardized decreasing trees of the troupe with
/// n-1 vertices of x^{des(postorder)+1}; built from the free cumulants
/// kappa_m = -x |T_{m-1}|.
inline TruncatedSeries troupe_descent_series(const TroupeSpec& spec, int N,
                                             int cap = kTroupeCap) {
    CumulantSequence kappa{SeqKind::free_cumulants, {}};
    MultiPoly x = MultiPoly::variable(1, 1);
    for (int m = 1; m <= N; ++m)
        kappa.values.push_back(-(Rational(detail::troupe_count(spec, m - 1, cap)) * x));
    CumulantSequence c = convert_via_recursion(kappa, SeqKind::classical);
    TruncatedSeries egf(N);
    Rational fact = 1;
    for (int n = 1; n <= N; ++n) {
        fact *= n;
        egf.set_coeff(n, -c.at(n) / fact);
    }
    return egf;
}

enum class SortedCountMethod { brute, recurrence };

/// Table of the sorted-permutation recurrence: e[m][n] for m + n <= M, with
/// e_{0,n} = 1, e_{m,-1} = 0 and e_{m,0} = |s(S_m)|.
inline std::vector<std::vector<Integer>> sorted_count_table(int M) {
    check_cap("sorted_recurrence_m", kSortedRecurrenceCap, M);
    std::vector<std::vector<Integer>> e(M + 1);
    std::vector<std::vector<Integer>> binom(M + 1, std::vector<Integer>(M + 1, 0));
    for (int a = 0; a <= M; ++a) {
        binom[a][0] = 1;
        for (int b = 1; b <= a; ++b)
            binom[a][b] = binom[a - 1][b - 1] + (b <= a - 1 ? binom[a - 1][b] : Integer(0));
    }
    for (int m = 0; m <= M; ++m) {
        int width = M - m;
        e[m].assign(width + 1, 0);
        for (int n = 0; n <= width; ++n) {
            if (m == 0) {
                e[m][n] = 1;
                continue;
            }
            Integer acc = (n + 1 <= M - (m - 1)) ? e[m - 1][n + 1] : Integer(0);
            for (int i = 1; i <= m - 1; ++i)
                for (int j = 0; j <= n - 1; ++j) {
                    const Integer& left = e[m - i - 1][n - j];
                    Integer diff = e[i][j] - (j >= 1 ? e[i][j - 1] : Integer(0));
                    if (diff == 0 || left == 0) continue;
                    acc += binom[m - 1][i] * left * diff;
                }
            e[m][n] = acc;
        }
    }
    return e;
}

/// |s(S_m)|: the number of sorted permutations in S_m.
inline Integer sorted_count(int m, SortedCountMethod method = SortedCountMethod::recurrence,
                            int brute_cap = kBrutePermCap) {
    if (m < 0) throw std::invalid_argument("negative length");
    if (method == SortedCountMethod::brute) {
        check_cap("brute_perm_n", brute_cap, m);
        std::set<std::vector<int>> images;
        for_each_permutation(m, [&](const Permutation& sigma) {
            images.insert(stack_sort(sigma).entries());
        });
        return Integer(images.size());
    }
    return sorted_count_table(m)[m][0];
}

/// deg(s : S_n -> S_n) = (1/n!) sum over pi of fertility(pi)^2.
inline Rational degree_noninvertibility(int n, int cap = kDegreeCap) {
    check_cap("degree_n", cap, n);
    Integer acc = 0;
    for_each_permutation(n, [&](const Permutation& pi) {
        Integer f = fertility(pi, FertilityMethod::vhc_formula);
        acc += f * f;
    });
    return Rational(acc, factorial(n));
}

struct DegreeBound {
    int N = 0;
    Integer minus_c_N;   // -c_N for kappa_m = -C_{m-1}^2
    Rational ratio;      // -c_N / (N^2 (N-1)!), a lower bound for deg(s:S_{N-1})
    std::string root_decimal;  // ratio^(1/N) rendered to a fixed precision
};

/// The free-probability lower-bound ingredient for the degree of
/// noninvertibility: exact -c_N for kappa_m = -C_{m-1}^2 plus a decimal
/// rendering of (-c_N / (N^2 (N-1)!))^(1/N).
inline DegreeBound degree_lower_bound(int N, unsigned digits = 5, int cap = kDegreeBoundCap) {
    check_cap("degree_bound_n", cap, N);
    CumulantSequence kappa{SeqKind::free_cumulants, {}};
    for (int m = 1; m <= N; ++m) {
        Integer c = seq::catalan(m - 1);
        kappa.values.push_back(MultiPoly::constant(-Rational(c * c)));
    }
    CumulantSequence c = convert_via_recursion(kappa, SeqKind::classical);
    DegreeBound out;
    out.N = N;
    Rational minus_cN = (-c.at(N)).constant_value();
    out.minus_c_N = boost::multiprecision::numerator(minus_cN);
    out.ratio = minus_cN / (Rational(Integer(N) * N) * Rational(factorial(N - 1)));
    out.root_decimal = nth_root_decimal_string(out.ratio, N, digits);
    return out;
}

/// Standardized 231-avoiding permutations of [n], lexicographic order.
inline std::vector<Permutation> av231_permutations(int n) {
    // pi avoids 231 iff pi = L max R where L uses the smallest |L| values and
    // L, R avoid 231
    std::map<int, std::vector<std::vector<int>>> memo;
    struct Rec {
        std::map<int, std::vector<std::vector<int>>>& memo;
        const std::vector<std::vector<int>>& go(int m) {
            auto it = memo.find(m);
            if (it != memo.end()) return it->second;
            std::vector<std::vector<int>> out;
            if (m == 0) {
                out.push_back({});
            } else {
                for (int left = 0; left <= m - 1; ++left) {
                    auto ls = go(left);
                    auto rs = go(m - 1 - left);
                    for (const auto& l : ls)
                        for (const auto& r : rs) {
                            std::vector<int> v = l;
                            v.push_back(m);
                            for (int e : r) v.push_back(e + left);
                            out.push_back(std::move(v));
                        }
                }
            }
            return memo[m] = out;
        }
    } rec{memo};
    std::vector<Permutation> out;
    for (const auto& v : rec.go(n)) out.push_back(Permutation{std::vector<int>(v)});
    std::sort(out.begin(), out.end());
    return out;
}

/// The weighted two-stack table: entry (n, l) is the sum over 231-avoiding
/// permutations of length n + l with tail length >= l of the troupe's
/// refined fertility polynomial.
struct TwoStackTable {
    int N = 0;  // entries computed for n + l <= N
    std::vector<std::vector<MultiPoly>> entry;  // entry[n][l], n + l <= N
    std::vector<MultiPoly> g;                   // G_0..G_N
    int nvars = 0;
};

inline TwoStackTable two_stack(const TroupeSpec& spec, const std::vector<TreeStatistic>& stats,
                               int N, int cap = kTwoStackCap) {
    check_cap("two_stack_n", cap, N);
    TwoStackTable table;
    table.N = N;
    table.nvars = static_cast<int>(stats.size());
    table.g.reserve(N + 1);
    for (int i = 0; i <= N; ++i) table.g.push_back(detail::g_value(spec, i, stats));
    table.entry.assign(N + 1, {});
    for (int n = 0; n <= N; ++n) table.entry[n].assign(N - n + 1, MultiPoly(table.nvars));
    for (int len = 0; len <= N; ++len) {
        for (const Permutation& pi : av231_permutations(len)) {
            MultiPoly w(table.nvars);
            for_each_vhc(pi, [&](const ValidHookConfiguration& h) {
                MultiPoly prod = MultiPoly::constant(1, table.nvars);
                for (int q : coloring(h).q) prod *= table.g[q];
                w += prod;
            }, cap);
            if (w.is_zero()) continue;
            int tl = tail_length(pi);
            for (int l = 0; l <= std::min(tl, len); ++l) table.entry[len - l][l] += w;
        }
    }
    return table;
}

/// Check the troupe functional equation
///   (I(z,y)-I(z,0)) (I(z,y)-G(y)) = (I(z,y)-G(y))/z - (I(z,y)-I(z,0))/y
/// as a truncated bivariate identity over all monomials z^a y^b with
/// a + b <= N - 1.
inline bool functional_equation_check(const TwoStackTable& t) {
    int N = t.N;
    auto I = [&](int a, int b) -> MultiPoly {
        if (a + b > N) throw std::logic_error("index outside computed triangle");
        return t.entry[a][b];
    };
    // A = I - I(z,0) kills the l = 0 column; B = I - G(y) kills the n = 0
    // row because [z^0 y^b] I = G_b (computed, not assumed).
    auto A = [&](int a, int b) { return b == 0 ? MultiPoly(t.nvars) : I(a, b); };
    auto B = [&](int a, int b) { return a == 0 ? I(0, b) - t.g[b] : I(a, b); };
    for (int a = 0; a + 1 <= N; ++a)
        for (int b = 0; a + b <= N - 1; ++b) {
            MultiPoly lhs(t.nvars);
            for (int a1 = 0; a1 <= a; ++a1)
                for (int b1 = 0; b1 <= b; ++b1) lhs += A(a1, b1) * B(a - a1, b - b1);
            MultiPoly rhs = B(a + 1, b) - A(a, b + 1);
            if (lhs != rhs) return false;
        }
    return true;
}

enum class WitnessKind { fbpt, mot };

/// Evaluate the explicit annihilating quintic of the l = 0 column series
/// I(z,0) (full trees or Motzkin trees, unweighted) modulo z^{N+1}.
inline bool algebraic_witness_check(WitnessKind which, const TwoStackTable& t) {
    if (t.nvars != 0)
        throw std::invalid_argument("algebraic witness applies to the unweighted table");
    int N = t.N;
    TruncatedSeries v(N);
    for (int n = 0; n <= N; ++n) v.set_coeff(n, t.entry[n][0]);
    TruncatedSeries z = TruncatedSeries::z(N);
    auto zp = [&](int k) {
        TruncatedSeries s = TruncatedSeries::constant(1, N);
        for (int i = 0; i < k; ++i) s = s * z;
        return s;
    };
    std::vector<TruncatedSeries> vp{TruncatedSeries::constant(1, N)};
    for (int i = 1; i <= 5; ++i) vp.push_back(vp.back() * v);
    TruncatedSeries acc = TruncatedSeries::zero(N);
    if (which == WitnessKind::fbpt) {
        acc = acc + (Rational(-1) * zp(1) + Rational(27) * zp(3));
        acc = acc + (TruncatedSeries::constant(1, N) - Rational(33) * zp(2)) * vp[1];
        acc = acc + (Rational(4) * zp(1) + Rational(33) * zp(3)) * vp[2];
        acc = acc + (Rational(6) * zp(2) + zp(4)) * vp[3];
        acc = acc + Rational(4) * zp(3) * vp[4];
        acc = acc + zp(4) * vp[5];
    } else {
        acc = acc + (Rational(-1) * zp(1) + Rational(3) * zp(2) + Rational(24) * zp(3) + zp(4));
        acc = acc + (TruncatedSeries::constant(1, N) - Rational(4) * zp(1) - Rational(27) * zp(2) +
                     Rational(26) * zp(3) + Rational(4) * zp(4)) * vp[1];
        acc = acc + (Rational(4) * zp(1) - Rational(4) * zp(2) + Rational(29) * zp(3) +
                     Rational(7) * zp(4)) * vp[2];
        acc = acc + (Rational(6) * zp(2) + Rational(4) * zp(3) + Rational(7) * zp(4)) * vp[3];
        acc = acc + Rational(4) * (zp(3) + zp(4)) * vp[4];
        acc = acc + zp(4) * vp[5];
    }
    for (int n = 0; n <= N; ++n)
        if (!acc.coeff(n).is_zero()) return false;
    return true;
}

/// State of the three-stack recurrence: the table of polynomials
/// E^{(g)}_{>=l}(m) for l <= n, g <= n+1, m <= n, with E^{(0)} identically
/// zero and E^{(g)}_{>=l}(1) = G_{l+1} exactly when g = 2.
struct ThreeStackState {
    int n = 0;
    int nvars = 0;
    std::vector<std::vector<std::vector<MultiPoly>>> e;  // e[l][g][m]

    const MultiPoly& at(int l, int g, int m) const { return e[l][g][m]; }

    /// The weighted count over decreasing troupe trees whose postorder
    /// reading is 2-stack-sortable: the sum of E^{(g)}_{>=0}(n) over g.
    MultiPoly total() const {
        MultiPoly acc(nvars);
        for (int g = 1; g <= n + 1; ++g) acc += e[0][g][n];
        return acc;
    }
};

inline ThreeStackState three_stack_state(const TroupeSpec& spec,
                                         const std::vector<TreeStatistic>& stats, int n,
                                         int cap = kThreeStackCap) {
    check_cap("three_stack_n", cap, n);
    if (n < 1) throw std::invalid_argument("n must be positive");
    int nv = static_cast<int>(stats.size());
    std::vector<MultiPoly> G;
    for (int i = 0; i <= n + 1; ++i) G.push_back(detail::g_value(spec, i, stats));
    ThreeStackState st;
    st.n = n;
    st.nvars = nv;
    st.e.assign(n + 1, std::vector<std::vector<MultiPoly>>(
                           n + 2, std::vector<MultiPoly>(n + 1, MultiPoly(nv))));
    auto& E = st.e;
    for (int l = 0; l <= n; ++l) E[l][2][1] = G[l + 1];
    for (int m = 1; m <= n - 1; ++m) {  // computing E(m+1) from E(m)
        for (int l = 0; l + (m + 1) <= n + 1 && l <= n; ++l) {
            for (int g = 1; g <= n + 1; ++g) {
                MultiPoly acc(nv);
                for (int j = 1; j <= l; ++j) {
                    for (int a = 2; a <= m; ++a)
                        for (int b = std::max(2, g - a); b <= g - 1; ++b)
                            for (int i = a - 1; i <= m - b + 1; ++i) {
                                if (i < 1 || m - i < 1 || i > n || m - i > n) continue;
                                if (j - 1 > n || l - j + 1 > n) continue;
                                const MultiPoly& ea = E[j - 1][a][i];
                                const MultiPoly& eb = E[l - j + 1][b][m - i];
                                if (ea.is_zero() || eb.is_zero()) continue;
                                acc += ea * eb;
                            }
                    if (j - 1 <= n) {
                        const MultiPoly& ep = E[j - 1][g - 1][m];
                        if (!ep.is_zero() && l - j + 1 <= n + 1)
                            acc += ep * G[l - j + 1];
                    }
                }
                if (l + 1 <= n) acc += E[l + 1][g - 1][m];
                E[l][g][m + 1] = acc;
            }
        }
    }
    return st;
}

inline MultiPoly three_stack(const TroupeSpec& spec, const std::vector<TreeStatistic>& stats,
                             int n, int cap = kThreeStackCap) {
    return three_stack_state(spec, stats, n, cap).total();
}

// ---------------------------------------------------------------------------
// Exact real-rootedness diagnostics (Sturm sequences on integer polynomials)
// ---------------------------------------------------------------------------

namespace detail {

using RatPoly = std::vector<Rational>;  // ascending coefficients, no trailing zeros

inline void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int rp_deg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly rp_derivative(const RatPoly& p) {
    RatPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(Integer(i)));
    rp_trim(d);
    return d;
}

inline RatPoly rp_rem(RatPoly a, const RatPoly& b) {
    while (rp_deg(a) >= rp_deg(b) && !a.empty()) {
        Rational f = a.back() / b.back();
        int shift = rp_deg(a) - rp_deg(b);
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        rp_trim(a);
    }
    return a;
}

inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
    rp_trim(a);
    rp_trim(b);
    while (!b.empty()) {
        RatPoly r = rp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

inline RatPoly rp_div_exact(const RatPoly& a, const RatPoly& b) {
    RatPoly rem = a, q(std::max<size_t>(1, a.size() - b.size() + 1), Rational(0));
    while (rp_deg(rem) >= rp_deg(b) && !rem.empty()) {
        Rational f = rem.back() / b.back();
        int shift = rp_deg(rem) - rp_deg(b);
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) rem[i + shift] -= f * b[i];
        rp_trim(rem);
    }
    rp_trim(q);
    return q;
}

inline int sign_at_plus_inf(const RatPoly& p) { return p.empty() ? 0 : (p.back() > 0 ? 1 : -1); }
inline int sign_at_minus_inf(const RatPoly& p) {
    if (p.empty()) return 0;
    int s = p.back() > 0 ? 1 : -1;
    return rp_deg(p) % 2 == 0 ? s : -s;
}

/// Number of distinct real roots via a Sturm chain.
inline int sturm_distinct_real_roots(RatPoly p) {
    rp_trim(p);
    if (rp_deg(p) <= 0) return 0;
    std::vector<RatPoly> chain{p, rp_derivative(p)};
    while (!chain.back().empty() && rp_deg(chain.back()) > 0) {
        RatPoly r = rp_rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        rp_trim(r);
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    auto variations = [&](bool at_plus) {
        int v = 0, prev = 0;
        for (const RatPoly& q : chain) {
            int s = at_plus ? sign_at_plus_inf(q) : sign_at_minus_inf(q);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations(false) - variations(true);
}

}  // namespace detail

/// Exact test that a univariate polynomial has only real roots: strip the
/// power of x, pass to the squarefree part, and compare the Sturm count of
/// distinct real roots with the degree.
inline bool real_rooted(const MultiPoly& poly) {
    if (poly.nvars() > 1) throw std::invalid_argument("real_rooted expects a univariate polynomial");
    detail::RatPoly p;
    for (const auto& [e, c] : poly.terms()) {
        unsigned k = e.empty() ? 0 : e[0];
        if (p.size() <= k) p.resize(k + 1, Rational(0));
        p[k] = c;
    }
    detail::rp_trim(p);
    if (p.empty() || detail::rp_deg(p) == 0) return true;
    size_t val = 0;
    while (val < p.size() && p[val] == 0) ++val;
    p.erase(p.begin(), p.begin() + val);  // roots at zero are real
    if (detail::rp_deg(p) == 0) return true;
    detail::RatPoly g = detail::rp_gcd(p, detail::rp_derivative(p));
    detail::RatPoly sf = detail::rp_deg(g) >= 1 ? detail::rp_div_exact(p, g) : p;
    return detail::sturm_distinct_real_roots(sf) == detail::rp_deg(sf);
}

}  // namespace troupes
