#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/errors.hpp"
#include "troupes/multipoly.hpp"
#include "troupes/sequences.hpp"
#include "troupes/tree.hpp"

namespace troupes {

inline constexpr int kTroupeCap = 11;       // max vertex count for enumeration
inline constexpr int kPreimageCap = 10;     // max permutation length for preimages
inline constexpr int kTransformCap = 10;    // max size for the troupe transform

/// A troupe given either by name (binary plane trees, full binary plane
/// trees, Motzkin trees, Schroeder 2-colored binary trees) or by a finite
/// list of branch generators.
class TroupeSpec {
public:
    enum class Named { BPT, FBPT, MOT, SCH };

    static TroupeSpec bpt() { return TroupeSpec(Named::BPT); }
    static TroupeSpec fbpt() { return TroupeSpec(Named::FBPT); }
    static TroupeSpec mot() { return TroupeSpec(Named::MOT); }
    static TroupeSpec sch() { return TroupeSpec(Named::SCH); }

    static TroupeSpec generated(const std::vector<Tree>& branches) {
        TroupeSpec s;
        std::map<std::string, Tree> dedup;
        for (const Tree& t : branches) {
            if (!is_branch(t))
                throw std::invalid_argument("generators of a troupe must be branches");
            if (!t) {
                s.include_empty_ = true;
                continue;
            }
            dedup.emplace(serialize(t), t);
        }
        for (auto& [key, t] : dedup) s.generators_.push_back(t);
        return s;
    }

    bool is_named() const { return named_.has_value(); }
    Named named() const {
        if (!named_) throw std::logic_error("not a named troupe");
        return *named_;
    }
    const std::vector<Tree>& generators() const { return generators_; }

    bool contains_empty() const {
        if (!named_) return include_empty_;
        return *named_ == Named::BPT || *named_ == Named::SCH;
    }

    std::string to_string() const {
        if (named_) {
            switch (*named_) {
                case Named::BPT: return "BPT";
                case Named::FBPT: return "FBPT";
                case Named::MOT: return "MOT";
                case Named::SCH: return "SCH";
            }
        }
        std::string out = "generated[";
        if (include_empty_) out += "() ";
        for (const Tree& t : generators_) out += serialize(t) + " ";
        if (out.back() == ' ') out.pop_back();
        return out + "]";
    }

    static TroupeSpec parse(const std::string& s) {
        if (s == "BPT") return bpt();
        if (s == "FBPT") return fbpt();
        if (s == "MOT") return mot();
        if (s == "SCH") return sch();
        throw std::invalid_argument("unknown troupe name: '" + s + "' (use BPT/FBPT/MOT/SCH)");
    }

private:
    TroupeSpec() = default;
    explicit TroupeSpec(Named n) : named_(n) {}

    std::optional<Named> named_;
    std::vector<Tree> generators_;   // nonempty branches, canonical order
    bool include_empty_ = false;
};

namespace detail {

inline bool all_black(const Tree& t) {
    if (!t) return true;
    return t->color.is_black() && all_black(t->left) && all_black(t->right);
}

inline bool full_shape(const Tree& t) {
    if (!t) return true;
    if (static_cast<bool>(t->left) != static_cast<bool>(t->right)) return false;
    return full_shape(t->left) && full_shape(t->right);
}

inline bool no_lone_right_child(const Tree& t) {
    if (!t) return true;
    if (!t->left && t->right) return false;
    return no_lone_right_child(t->left) && no_lone_right_child(t->right);
}

inline bool schroeder_colored(const Tree& t) {
    if (!t) return true;
    if (!t->color.is_black() && !t->color.is_white()) return false;
    if (t->color.is_white() && t->left) return false;
    return schroeder_colored(t->left) && schroeder_colored(t->right);
}

inline bool black_peaked(const Tree& t) {
    if (!t) return true;
    if (t->left && t->right && !t->color.is_black()) return false;
    return black_peaked(t->left) && black_peaked(t->right);
}

/// Path of the first (in postorder) black vertex with 2 children, if any.
inline bool first_peak_postorder(const Tree& t, const std::string& prefix, std::string& out) {
    if (!t) return false;
    if (first_peak_postorder(t->left, prefix + "L", out)) return true;
    if (first_peak_postorder(t->right, prefix + "R", out)) return true;
    if (t->left && t->right && t->color.is_black()) {
        out = prefix;
        return true;
    }
    return false;
}

}  // namespace detail

inline bool in_troupe(const Tree& t, const TroupeSpec& spec) {
    if (spec.is_named()) {
        switch (spec.named()) {
            case TroupeSpec::Named::BPT:
                return detail::all_black(t);
            case TroupeSpec::Named::FBPT:
                return t && detail::all_black(t) && detail::full_shape(t);
            case TroupeSpec::Named::MOT:
                return t && detail::all_black(t) && detail::no_lone_right_child(t);
            case TroupeSpec::Named::SCH:
                return detail::schroeder_colored(t);
        }
    }
    if (!t) return spec.contains_empty();
    if (!detail::black_peaked(t)) return false;
    if (is_branch(t)) {
        std::string key = serialize(t);
        for (const Tree& g : spec.generators())
            if (serialize(g) == key) return true;
        return false;
    }
    // Decompose at the first black 2-child vertex in postorder; soundness and
    // completeness follow from decomposition closure.
    std::string path;
    detail::first_peak_postorder(t, "", path);
    auto [t1, t2] = decompose(t, path);
    return in_troupe(t1, spec) && in_troupe(t2, spec);
}

/// All trees of the insertion closure of the given branch generators,
/// grouped by size 0..max_size. Level n of the result is sorted by canonical
/// serialization.
inline std::vector<std::vector<Tree>> insertion_closure_levels(const std::vector<Tree>& gens,
                                                               int max_size) {
    std::vector<std::map<std::string, Tree>> levels(max_size + 1);
    for (const Tree& g : gens) {
        long sz = tree_size(g);
        if (g && sz <= max_size) levels[sz].emplace(serialize(g), g);
    }
    for (int n = 3; n <= max_size; ++n) {
        for (int a = 1; a <= n - 2; ++a) {
            int b = n - 1 - a;
            for (const auto& [ka, t1] : levels[a])
                for (const auto& [kb, t2] : levels[b])
                    for (const std::string& v : vertex_paths(t1)) {
                        Tree t = insert(t1, v, t2);
                        levels[n].emplace(serialize(t), t);
                    }
        }
    }
    std::vector<std::vector<Tree>> out(max_size + 1);
    for (int n = 0; n <= max_size; ++n)
        for (const auto& [k, t] : levels[n]) out[n].push_back(t);
    return out;
}

namespace detail {

inline std::vector<Tree> enumerate_named(TroupeSpec::Named which, int n,
                                         std::map<int, std::vector<Tree>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<Tree> out;
    switch (which) {
        case TroupeSpec::Named::BPT:
            if (n == 0) out.push_back(nullptr);
            else
                for (int i = 0; i <= n - 1; ++i)
                    for (const Tree& l : enumerate_named(which, i, memo))
                        for (const Tree& r : enumerate_named(which, n - 1 - i, memo))
                            out.push_back(node(Color::black(), l, r));
            break;
        case TroupeSpec::Named::FBPT:
            if (n == 1) out.push_back(leaf(Color::black()));
            else if (n >= 3 && n % 2 == 1)
                for (int i = 1; i <= n - 2; i += 2)
                    for (const Tree& l : enumerate_named(which, i, memo))
                        for (const Tree& r : enumerate_named(which, n - 1 - i, memo))
                            out.push_back(node(Color::black(), l, r));
            break;
        case TroupeSpec::Named::MOT:
            if (n == 1) out.push_back(leaf(Color::black()));
            else if (n >= 2) {
                for (const Tree& l : enumerate_named(which, n - 1, memo))
                    out.push_back(node(Color::black(), l, nullptr));
                for (int i = 1; i <= n - 2; ++i)
                    for (const Tree& l : enumerate_named(which, i, memo))
                        for (const Tree& r : enumerate_named(which, n - 1 - i, memo))
                            out.push_back(node(Color::black(), l, r));
            }
            break;
        case TroupeSpec::Named::SCH:
            if (n == 0) out.push_back(nullptr);
            else {
                for (int i = 0; i <= n - 1; ++i)
                    for (const Tree& l : enumerate_named(which, i, memo))
                        for (const Tree& r : enumerate_named(which, n - 1 - i, memo))
                            out.push_back(node(Color::black(), l, r));
                for (const Tree& r : enumerate_named(which, n - 1, memo))
                    out.push_back(node(Color::white(), nullptr, r));
            }
            break;
    }
    memo[n] = out;
    return out;
}

}  // namespace detail

/// Exhaustive, duplicate-free list of the troupe's trees with n vertices.
inline std::vector<Tree> enumerate_troupe(const TroupeSpec& spec, int n, int cap = kTroupeCap) {
    check_cap("troupe_n", cap, n);
    if (n < 0) throw std::invalid_argument("negative size");
    if (spec.is_named()) {
        std::map<int, std::vector<Tree>> memo;
        return detail::enumerate_named(spec.named(), n, memo);
    }
    std::vector<Tree> level = insertion_closure_levels(spec.generators(), n)[n];
    if (n == 0 && spec.contains_empty()) level.push_back(nullptr);
    return level;
}

namespace detail {

struct FlatTree {
    // preorder-flattened skeleton: parent[i] is the parent index (-1 for root)
    std::vector<int> parent;
    std::vector<Color> color;
    std::vector<int> left, right;  // child indices or -1

    int add(const Tree& t, int par) {
        if (!t) return -1;
        int id = static_cast<int>(parent.size());
        parent.push_back(par);
        color.push_back(t->color);
        left.push_back(-1);
        right.push_back(-1);
        int l = add(t->left, id);
        int r = add(t->right, id);
        left[id] = l;
        right[id] = r;
        return id;
    }

    DTree rebuild(int id, const std::vector<int>& label) const {
        if (id < 0) return nullptr;
        return dnode(label[id], color[id], rebuild(left[id], label), rebuild(right[id], label));
    }
};

inline void decreasing_labelings(const FlatTree& ft, int next_label, std::vector<int>& label,
                                 std::vector<int>& frontier, std::vector<DTree>& out) {
    if (next_label == 0) {
        out.push_back(ft.rebuild(0, label));
        return;
    }
    // The next (largest remaining) label goes to some unlabeled vertex whose
    // parent is already labeled.
    for (size_t fi = 0; fi < frontier.size(); ++fi) {
        int v = frontier[fi];
        label[v] = next_label;
        std::vector<int> nf = frontier;
        nf.erase(nf.begin() + fi);
        if (ft.left[v] >= 0) nf.push_back(ft.left[v]);
        if (ft.right[v] >= 0) nf.push_back(ft.right[v]);
        decreasing_labelings(ft, next_label - 1, label, nf, out);
        label[v] = 0;
    }
}

}  // namespace detail

/// All standardized decreasing trees whose skeleton lies in the troupe and
/// has n vertices.
inline std::vector<DTree> enumerate_decreasing(const TroupeSpec& spec, int n,
                                               int cap = kTroupeCap) {
    check_cap("troupe_n", cap, n);
    std::vector<DTree> out;
    if (n == 0) {
        if (spec.contains_empty()) out.push_back(nullptr);
        return out;
    }
    for (const Tree& t : enumerate_troupe(spec, n, cap)) {
        detail::FlatTree ft;
        ft.add(t, -1);
        std::vector<int> label(n, 0), frontier{0};
        detail::decreasing_labelings(ft, n, label, frontier, out);
    }
    return out;
}

/// Monomial product over a statistic list for one tree.
inline MultiPoly stat_monomial(const Tree& t, const std::vector<TreeStatistic>& stats) {
    int r = static_cast<int>(stats.size());
    MultiPoly::Exponents e(r);
    for (int i = 0; i < r; ++i) {
        long v = stats[i].eval(t);
        if (v < 0) throw std::logic_error("negative statistic exponent");
        e[i] = static_cast<unsigned>(v);
    }
    MultiPoly p(r);
    p.add_term(e, 1);
    return p;
}

/// G_n(x_1..x_r) = sum over trees of the troupe with n vertices of
/// x_1^{f_1(T)} ... x_r^{f_r(T)}, by exhaustive enumeration.
inline MultiPoly g_polynomial(const TroupeSpec& spec, int n,
                              const std::vector<TreeStatistic>& stats, int cap = kTroupeCap) {
    MultiPoly acc(static_cast<int>(stats.size()));
    for (const Tree& t : enumerate_troupe(spec, n, cap)) acc += stat_monomial(t, stats);
    return acc;
}

/// Closed-form fast path for g_polynomial when one is known for the given
/// troupe/statistics combination; std::nullopt otherwise. Always agrees with
/// enumeration.
inline std::optional<MultiPoly> g_polynomial_closed(const TroupeSpec& spec, int n,
                                                    const std::vector<TreeStatistic>& stats) {
    if (!spec.is_named() || n < 0) return std::nullopt;
    using Tag = TreeStatistic::Tag;
    std::vector<Tag> tags;
    for (const auto& s : stats) tags.push_back(s.tag());
    auto x = [](int i) { return MultiPoly::Exponents{static_cast<unsigned>(i)}; };

    switch (spec.named()) {
        case TroupeSpec::Named::BPT:
            if (tags == std::vector<Tag>{Tag::des_plus_one}) {
                if (n == 0) return MultiPoly::variable(1, 1);
                return seq::narayana_poly(n);
            }
            if (tags == std::vector<Tag>{Tag::des_plus_one, Tag::peak_plus_one}) {
                MultiPoly p(2);
                if (n == 0) {
                    p.add_term({1, 0}, 1);
                    return p;
                }
                for (long j = 0; 2 * j <= n + 1; ++j)
                    for (long i = j; i <= n; ++i) {
                        Integer c = binomial(n - 1, n - j) * binomial(n + 1 - j, j) *
                                    binomial(n + 1 - 2 * j, i - j);
                        if (c == 0) continue;
                        p.add_term({static_cast<unsigned>(i), static_cast<unsigned>(j)},
                                   Rational(c, Integer(n + 1 - j)));
                    }
                return p;
            }
            return std::nullopt;
        case TroupeSpec::Named::MOT:
            if (tags == std::vector<Tag>{Tag::des_plus_one}) return seq::motzkin_poly(n - 1);
            return std::nullopt;
        case TroupeSpec::Named::SCH:
            if (tags == std::vector<Tag>{Tag::des_plus_one}) {
                if (n == 0) return MultiPoly::variable(1, 1);
                return seq::narayana_poly_scaled(n, 2);
            }
            if (tags == std::vector<Tag>{Tag::black_plus_one}) {
                MultiPoly p(1);
                for (long j = 0; j <= n; ++j)
                    p.add_term(x(j + 1), Rational(binomial(n + j, n - j) * seq::catalan(j)));
                return p;
            }
            return std::nullopt;
        case TroupeSpec::Named::FBPT:
            if (tags.empty()) return MultiPoly::constant(Rational(seq::aerated_catalan(n)));
            return std::nullopt;
    }
    return std::nullopt;
}

namespace detail {

inline bool preimage_root_ok(const TroupeSpec& spec, Color c, const DTree& l, const DTree& r) {
    if (spec.is_named()) {
        switch (spec.named()) {
            case TroupeSpec::Named::BPT: return true;
            case TroupeSpec::Named::FBPT: return static_cast<bool>(l) == static_cast<bool>(r);
            case TroupeSpec::Named::MOT: return !(!l && r);
            case TroupeSpec::Named::SCH: return !(c.is_white() && l);
        }
    }
    if (l && r && !c.is_black()) return false;  // black-peaked
    return true;
}

inline std::vector<Color> preimage_palette(const TroupeSpec& spec) {
    if (spec.is_named()) {
        if (spec.named() == TroupeSpec::Named::SCH) return {Color::black(), Color::white()};
        return {Color::black()};
    }
    std::set<Color> colors{Color::black()};
    struct Walk {
        std::set<Color>& cs;
        void operator()(const Tree& t) {
            if (!t) return;
            cs.insert(t->color);
            (*this)(t->left);
            (*this)(t->right);
        }
    } walk{colors};
    for (const Tree& g : spec.generators()) walk(g);
    return std::vector<Color>(colors.begin(), colors.end());
}

inline std::vector<DTree> preimages_range(const Permutation& pi, int lo, int hi,
                                          const TroupeSpec& spec,
                                          const std::vector<Color>& palette,
                                          std::map<std::pair<int, int>, std::vector<DTree>>& memo) {
    if (lo == hi) return {nullptr};
    auto key = std::make_pair(lo, hi);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<DTree> out;
    int root = pi[hi - 1];
    bool root_is_max = true;
    for (int i = lo; i < hi - 1; ++i)
        if (pi[i] > root) root_is_max = false;
    if (root_is_max) {
        for (int s = lo; s <= hi - 1; ++s) {
            std::vector<DTree> ls = preimages_range(pi, lo, s, spec, palette, memo);
            if (ls.empty()) continue;
            std::vector<DTree> rs = preimages_range(pi, s, hi - 1, spec, palette, memo);
            for (const DTree& l : ls)
                for (const DTree& r : rs)
                    for (Color c : palette)
                        if (preimage_root_ok(spec, c, l, r)) out.push_back(dnode(root, c, l, r));
        }
    }
    memo[key] = out;
    return out;
}

}  // namespace detail

/// All decreasing trees with postorder reading pi whose skeleton is in the
/// troupe. This is the master brute-force oracle for the fertility formulas.
inline std::vector<DTree> postorder_preimages(const Permutation& pi, const TroupeSpec& spec,
                                              int cap = kPreimageCap) {
    check_cap("preimage_n", cap, pi.size());
    if (pi.empty())
        return spec.contains_empty() ? std::vector<DTree>{nullptr} : std::vector<DTree>{};
    std::map<std::pair<int, int>, std::vector<DTree>> memo;
    std::vector<DTree> all = detail::preimages_range(pi, 0, pi.size(), spec,
                                                     detail::preimage_palette(spec), memo);
    if (spec.is_named()) return all;
    std::vector<DTree> out;
    for (const DTree& t : all)
        if (in_troupe(skel(t), spec)) out.push_back(t);
    return out;
}

enum class RealizationStyle { synthetic_colors, black_shapes };

/// Realize omega_n branch generators per size n (omega_0 must be 0 or 1 and
/// only toggles the empty tree). synthetic_colors uses all-left chains with a
/// fresh synthetic color per generator; black_shapes uses distinct all-black
/// chain shapes (requires omega_n <= 2^(n-1)).
inline std::vector<Tree> realize_generators(const std::vector<long>& omega,
                                            RealizationStyle style) {
    if (!omega.empty() && omega[0] != 0 && omega[0] != 1)
        throw std::invalid_argument("omega_0 must be 0 or 1 (empty-tree inclusion flag)");
    std::vector<Tree> gens;
    if (!omega.empty() && omega[0] == 1) gens.push_back(nullptr);
    int counter = 0;
    for (size_t n = 1; n < omega.size(); ++n) {
        if (omega[n] < 0) throw std::invalid_argument("omega entries must be nonnegative");
        if (style == RealizationStyle::black_shapes && n >= 1) {
            long avail = n == 1 ? 1 : (1l << (n - 1));
            if (omega[n] > avail)
                throw std::invalid_argument(
                    "black_shapes realization supports at most 2^(n-1) generators per size");
        }
        for (long j = 0; j < omega[n]; ++j) {
            Tree t = nullptr;
            if (style == RealizationStyle::synthetic_colors) {
                Color c = Color::synthetic(++counter);
                for (size_t k = 0; k < n; ++k) t = node(c, t, nullptr);
            } else {
                // chain shape from the bits of j: bit i says whether step i is
                // a right edge
                t = leaf(Color::black());
                for (size_t i = 0; i + 1 < n; ++i) {
                    bool right = (j >> i) & 1;
                    t = right ? node(Color::black(), nullptr, t) : node(Color::black(), t, nullptr);
                }
            }
            gens.push_back(t);
        }
    }
    return gens;
}

/// The troupe transform: counts of the insertion closure by size, for
/// n = 0..N. Depends only on omega, not on the realization (property-tested).
inline std::vector<long> troupe_transform(const std::vector<long>& omega, int N,
                                          int cap = kTransformCap,
                                          RealizationStyle style = RealizationStyle::synthetic_colors) {
    check_cap("transform_n", cap, N);
    std::vector<long> om = omega;
    om.resize(std::max<size_t>(om.size(), N + 1), 0);
    std::vector<Tree> gens = realize_generators(om, style);
    bool has_empty = !gens.empty() && !gens.front();
    std::vector<Tree> nonempty(gens.begin() + (has_empty ? 1 : 0), gens.end());
    auto levels = insertion_closure_levels(nonempty, N);
    std::vector<long> out(N + 1);
    for (int n = 0; n <= N; ++n) out[n] = static_cast<long>(levels[n].size());
    if (has_empty) out[0] += 1;
    return out;
}

}  // namespace troupes
