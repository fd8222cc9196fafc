#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/errors.hpp"

namespace troupes {

/// A permutation in one-line notation: an ordering of a finite set of
/// distinct positive integers. The ground set is the entry set and need not
/// be {1..n}.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
        std::set<int> seen;
        for (int e : entries_) {
            if (e <= 0) throw std::invalid_argument("permutation entries must be positive");
            if (!seen.insert(e).second)
                throw std::invalid_argument("permutation entries must be distinct");
        }
    }

    static Permutation identity(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i + 1;
        return Permutation(std::move(v));
    }

    /// Comma-separated literal, e.g. "4,1,6,2"; the empty string is the
    /// empty permutation.
    static Permutation parse(const std::string& text) {
        std::string t;
        for (char c : text)
            if (!isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) return Permutation();
        std::vector<int> v;
        std::istringstream is(t);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) throw std::invalid_argument("empty entry in permutation literal");
            size_t used = 0;
            int val = std::stoi(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument("bad permutation entry: '" + tok + "'");
            v.push_back(val);
        }
        return Permutation(std::move(v));
    }

    std::string to_string() const {
        std::string out;
        for (size_t i = 0; i < entries_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(entries_[i]);
        }
        return out;
    }

    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    int operator[](int i) const { return entries_[i]; }  // 0-based access
    const std::vector<int>& entries() const { return entries_; }

    bool operator==(const Permutation& o) const { return entries_ == o.entries_; }
    bool operator!=(const Permutation& o) const { return entries_ != o.entries_; }
    bool operator<(const Permutation& o) const { return entries_ < o.entries_; }

    bool is_increasing() const {
        return std::is_sorted(entries_.begin(), entries_.end());
    }

    bool is_standardized() const {
        for (int i = 0; i < size(); ++i)
            if (std::find(entries_.begin(), entries_.end(), i + 1) == entries_.end())
                return false;
        return true;
    }

private:
    std::vector<int> entries_;
};

enum class SortEngine { stack, recursive };

namespace detail {

inline void stack_sort_rec(const std::vector<int>& in, std::vector<int>& out) {
    if (in.empty()) return;
    auto mx = std::max_element(in.begin(), in.end());
    std::vector<int> left(in.begin(), mx), right(mx + 1, in.end());
    stack_sort_rec(left, out);
    stack_sort_rec(right, out);
    out.push_back(*mx);
}

}  // namespace detail

/// West's stack-sorting map. The stack engine runs the one-pass push/pop
/// procedure; the recursive engine uses s(LmR) = s(L)s(R)m. Both agree.
inline Permutation stack_sort(const Permutation& pi, SortEngine engine = SortEngine::stack) {
    if (engine == SortEngine::recursive) {
        std::vector<int> out;
        out.reserve(pi.size());
        detail::stack_sort_rec(pi.entries(), out);
        return Permutation(std::move(out));
    }
    std::vector<int> stack, out;
    out.reserve(pi.size());
    for (int next : pi.entries()) {
        while (!stack.empty() && next > stack.back()) {
            out.push_back(stack.back());
            stack.pop_back();
        }
        stack.push_back(next);
    }
    while (!stack.empty()) {
        out.push_back(stack.back());
        stack.pop_back();
    }
    return Permutation(std::move(out));
}

/// Descent positions (1-based i with pi_i > pi_{i+1}).
inline std::vector<int> descents(const Permutation& pi) {
    std::vector<int> d;
    for (int i = 0; i + 1 < pi.size(); ++i)
        if (pi[i] > pi[i + 1]) d.push_back(i + 1);
    return d;
}

/// Peak positions (1-based i in 2..n-1 with pi_{i-1} < pi_i > pi_{i+1}).
inline std::vector<int> peaks(const Permutation& pi) {
    std::vector<int> p;
    for (int i = 1; i + 1 < pi.size(); ++i)
        if (pi[i - 1] < pi[i] && pi[i] > pi[i + 1]) p.push_back(i + 1);
    return p;
}

/// Order-isomorphic permutation of [n].
inline Permutation standardize(const Permutation& pi) {
    std::vector<int> sorted = pi.entries();
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> out(pi.size());
    for (int i = 0; i < pi.size(); ++i)
        out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), pi[i]) -
                                  sorted.begin()) + 1;
    return Permutation(std::move(out));
}

inline bool avoids_231(const Permutation& pi) {
    // pattern 231: i1 < i2 < i3 with pi_{i3} < pi_{i1} < pi_{i2}
    int n = pi.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (pi[j] <= pi[i]) continue;
            for (int k = j + 1; k < n; ++k)
                if (pi[k] < pi[i]) return false;
        }
    return true;
}

struct Classification {
    std::vector<int> descents;
    std::vector<int> peaks;
    int tail_length = 0;
    bool alternating = false;
    bool edp = false;  // every descent is a peak
    bool avoids_231 = false;
    bool increasing = false;
};

/// Permutation-class report. Classes defined by relative order (alternating,
/// edp, avoids_231) accept arbitrary ground sets; tail_length is computed on
/// the standardization.
inline Classification classify(const Permutation& pi) {
    Classification c;
    c.descents = descents(pi);
    c.peaks = peaks(pi);
    c.increasing = pi.is_increasing();
    Permutation st = standardize(pi);
    int n = st.size();
    int tl = 0;
    while (tl < n && st[n - 1 - tl] == n - tl) ++tl;
    c.tail_length = tl;
    std::vector<int> evens;
    for (int i = 2; i <= pi.size() - 1; i += 2) evens.push_back(i);
    c.alternating = c.descents == evens;
    c.edp = c.descents.size() == c.peaks.size();
    c.avoids_231 = troupes::avoids_231(pi);
    return c;
}

inline int tail_length(const Permutation& pi) { return classify(pi).tail_length; }

inline constexpr int kBrutePermCap = 10;

/// All sigma (orderings of the ground set of pi) with s(sigma) = pi, in
/// lexicographic order. This is the oracle of record for fertility.
inline std::vector<Permutation> brute_preimages(const Permutation& pi, int cap = kBrutePermCap) {
    check_cap("brute_perm_n", cap, pi.size());
    std::vector<Permutation> out;
    std::vector<int> ground = pi.entries();
    std::sort(ground.begin(), ground.end());
    if (ground.empty()) {
        out.push_back(Permutation());
        return out;
    }
    do {
        Permutation sigma{std::vector<int>(ground)};
        if (stack_sort(sigma) == pi) out.push_back(sigma);
    } while (std::next_permutation(ground.begin(), ground.end()));
    return out;
}

inline bool is_t_stack_sortable(const Permutation& pi, int t) {
    if (t < 1) throw std::invalid_argument("t must be positive");
    Permutation cur = pi;
    for (int i = 0; i < t; ++i) cur = stack_sort(cur);
    return cur.is_increasing();
}

/// d is right-bound iff every entry greater than pi_d and to its right is
/// also to the right of the last descent.
inline bool is_right_bound_descent(const Permutation& pi, int d) {
    std::vector<int> ds = descents(pi);
    if (std::find(ds.begin(), ds.end(), d) == ds.end()) return false;
    int dk = ds.back();
    for (int p = d; p < pi.size(); ++p)
        if (pi[p] > pi[d - 1] && p + 1 <= dk) return false;
    return true;
}

/// Visit permutations of [n] in lexicographic order.
template <typename F>
void for_each_permutation(int n, F&& f) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    if (n == 0) {
        f(Permutation());
        return;
    }
    do {
        f(Permutation{std::vector<int>(v)});
    } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace troupes
