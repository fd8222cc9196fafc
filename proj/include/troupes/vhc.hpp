#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/errors.hpp"
#include "troupes/partition.hpp"
#include "troupes/permutation.hpp"
#include "troupes/tree.hpp"

namespace troupes {

inline constexpr int kVhcCap = 12;  // max length of the base permutation

/// A hook of a permutation: 1-based positions sw < ne with pi_sw < pi_ne.
struct Hook {
    int sw = 0;
    int ne = 0;
    bool operator==(const Hook& o) const { return sw == o.sw && ne == o.ne; }
    bool operator<(const Hook& o) const { return std::tie(sw, ne) < std::tie(o.sw, o.ne); }
};

/// Standalone validator for the definition of a valid hook configuration:
/// one hook per descent with its southwest endpoint there, no point of the
/// plot strictly above any hook, and no two hooks intersecting except where
/// the northeast endpoint of one is the southwest endpoint of the other.
inline bool is_valid_vhc(const Permutation& pi, const std::vector<Hook>& hooks) {
    std::vector<int> ds = descents(pi);
    if (hooks.size() != ds.size()) return false;
    int n = pi.size();
    for (size_t t = 0; t < hooks.size(); ++t) {
        const Hook& h = hooks[t];
        if (h.sw != ds[t]) return false;
        if (h.ne <= h.sw || h.ne > n) return false;
        if (pi[h.sw - 1] >= pi[h.ne - 1]) return false;
        // nothing above the hook: pi_ne is the maximum over the window
        for (int m = h.sw; m <= h.ne; ++m)
            if (pi[m - 1] > pi[h.ne - 1]) return false;
    }
    for (size_t a = 0; a < hooks.size(); ++a)
        for (size_t b = a + 1; b < hooks.size(); ++b) {
            Hook h1 = hooks[a], h2 = hooks[b];  // h1.sw < h2.sw
            if (h1.ne == h2.ne) return false;   // horizontal overlap
            // vertical part of h2 against horizontal part of h1
            if (h1.sw <= h2.sw && h2.sw <= h1.ne && pi[h2.sw - 1] <= pi[h1.ne - 1] &&
                pi[h1.ne - 1] <= pi[h2.ne - 1] && h1.ne != h2.sw)
                return false;
        }
    return true;
}

/// A valid hook configuration: a base permutation together with one hook per
/// descent (in ascending descent order).
class ValidHookConfiguration {
public:
    ValidHookConfiguration(Permutation base, std::vector<Hook> hooks, bool validate = true)
        : base_(std::move(base)), hooks_(std::move(hooks)) {
        if (validate && !is_valid_vhc(base_, hooks_))
            throw std::invalid_argument("not a valid hook configuration");
    }

    const Permutation& base() const { return base_; }
    const std::vector<Hook>& hooks() const { return hooks_; }
    int num_hooks() const { return static_cast<int>(hooks_.size()); }

    bool operator==(const ValidHookConfiguration& o) const {
        return base_ == o.base_ && hooks_ == o.hooks_;
    }
    bool operator<(const ValidHookConfiguration& o) const {
        if (base_ != o.base_) return base_ < o.base_;
        return hooks_ < o.hooks_;
    }

    /// Literal form: base permutation, then hook list with 1-based
    /// positions, e.g. "3,1,4,2,5,6,7 [(1,3),(3,5)]".
    std::string to_string() const {
        std::string out = base_.to_string() + " [";
        for (size_t i = 0; i < hooks_.size(); ++i) {
            if (i) out += ",";
            out += "(" + std::to_string(hooks_[i].sw) + "," + std::to_string(hooks_[i].ne) + ")";
        }
        return out + "]";
    }

    static ValidHookConfiguration parse(const std::string& text) {
        size_t bracket = text.find('[');
        if (bracket == std::string::npos)
            throw std::invalid_argument("configuration literal needs a hook list in brackets");
        Permutation base = Permutation::parse(text.substr(0, bracket));
        std::string rest;
        for (size_t i = bracket; i < text.size(); ++i)
            if (!isspace(static_cast<unsigned char>(text[i]))) rest += text[i];
        if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
            throw std::invalid_argument("bad hook list");
        rest = rest.substr(1, rest.size() - 2);
        std::vector<Hook> hooks;
        size_t pos = 0;
        while (pos < rest.size()) {
            if (rest[pos] == ',') ++pos;
            if (pos >= rest.size()) break;
            if (rest[pos] != '(') throw std::invalid_argument("bad hook list");
            size_t close = rest.find(')', pos);
            if (close == std::string::npos) throw std::invalid_argument("bad hook list");
            std::string pair = rest.substr(pos + 1, close - pos - 1);
            size_t comma = pair.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("bad hook list");
            hooks.push_back(Hook{std::stoi(pair.substr(0, comma)), std::stoi(pair.substr(comma + 1))});
            pos = close + 1;
        }
        return ValidHookConfiguration(std::move(base), std::move(hooks));
    }

private:
    Permutation base_;
    std::vector<Hook> hooks_;
};

namespace detail {

struct VhcEntry {
    int orig_pos;  // 1-based position in the original permutation
    int value;
};

template <typename Emit>
void vhc_rec(const Permutation& pi, const std::vector<int>& ds, int i,
             std::vector<VhcEntry>& state, std::vector<Hook>& hooks, Emit&& emit) {
    if (i == 0) {
        emit(hooks);
        return;
    }
    int d = ds[i - 1];
    size_t sw_pos = 0;
    while (sw_pos < state.size() && state[sw_pos].orig_pos != d) ++sw_pos;
    int sw_value = state[sw_pos].value;
    for (size_t t = sw_pos + 1; t < state.size(); ++t) {
        if (state[t].value <= sw_value) continue;
        hooks[i - 1] = Hook{d, state[t].orig_pos};
        std::vector<VhcEntry> next;
        next.reserve(state.size() - (t - sw_pos));
        next.insert(next.end(), state.begin(), state.begin() + sw_pos + 1);
        next.insert(next.end(), state.begin() + t + 1, state.end());
        vhc_rec(pi, ds, i - 1, next, hooks, emit);
    }
}

}  // namespace detail

/// Visit every valid hook configuration of pi, generated by the iterative
/// decomposition procedure (descents processed from largest to smallest).
template <typename F>
void for_each_vhc(const Permutation& pi, F&& f, int cap = kVhcCap) {
    check_cap("vhc_n", cap, pi.size());
    std::vector<int> ds = descents(pi);
    if (ds.empty()) {
        f(ValidHookConfiguration(pi, {}, false));
        return;
    }
    std::vector<detail::VhcEntry> state;
    for (int i = 0; i < pi.size(); ++i) state.push_back({i + 1, pi[i]});
    std::vector<Hook> hooks(ds.size());
    detail::vhc_rec(pi, ds, static_cast<int>(ds.size()), state, hooks,
                    [&](const std::vector<Hook>& h) {
                        f(ValidHookConfiguration(pi, h, false));
                    });
}

inline std::vector<ValidHookConfiguration> enumerate_vhc(const Permutation& pi,
                                                         int cap = kVhcCap) {
    std::vector<ValidHookConfiguration> out;
    for_each_vhc(pi, [&](ValidHookConfiguration h) { out.push_back(std::move(h)); }, cap);
    return out;
}

enum class VhcRestrict { none, avoid231 };

/// Visit all valid hook configurations of permutations in S_{n-1}, bases in
/// lexicographic order (optionally restricted to 231-avoiding bases).
template <typename F>
void for_each_vhc_all(int n, VhcRestrict restrict, F&& f, int cap = kVhcCap) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    check_cap("vhc_n", cap, n - 1);
    for_each_permutation(n - 1, [&](const Permutation& pi) {
        if (restrict == VhcRestrict::avoid231 && !avoids_231(pi)) return;
        for_each_vhc(pi, f, cap);
    });
}

inline std::vector<ValidHookConfiguration> enumerate_vhc_all(int n,
                                                             VhcRestrict restrict = VhcRestrict::none,
                                                             int cap = kVhcCap) {
    std::vector<ValidHookConfiguration> out;
    for_each_vhc_all(n, restrict, [&](ValidHookConfiguration h) { out.push_back(std::move(h)); },
                     cap);
    return out;
}

/// The coloring a configuration induces on the plot of its base, plus the
/// derived composition and the two projected set partitions.
struct VhcColoring {
    /// Modified coloring (northeast endpoints colored like their hooks):
    /// entry m-1 is the color of the point (m, pi_m); 0 is blue (the sky),
    /// hook t (1-based, ascending descent order) is color t.
    std::vector<int> point_colors;
    std::vector<int> q;        // q^H = (q_0..q_k), from the unmodified coloring
    SetPartition vertical;     // heights projection; the sky joins as height n
    SetPartition horizontal;   // positions projection; n joins the blue block
};

/// Color of the point at 1-based position m (0 = blue), looking straight up;
/// the southwest endpoint of a hook looks around the left side of its own
/// vertical part. Northeast endpoints are not handled here.
namespace detail {

inline int upward_color(const Permutation& pi, const std::vector<Hook>& hooks, int m) {
    int best = 0, best_height = -1;
    for (size_t t = 0; t < hooks.size(); ++t) {
        const Hook& h = hooks[t];
        bool covers = h.sw == m ? false  // own hook: look around the left side
                                : (h.sw < m && m <= h.ne);
        if (!covers) continue;
        int height = pi[h.ne - 1];
        if (height <= pi[m - 1]) continue;
        if (best_height < 0 || height < best_height) {
            best_height = height;
            best = static_cast<int>(t) + 1;
        }
    }
    return best;
}

}  // namespace detail

inline VhcColoring coloring(const ValidHookConfiguration& cfg) {
    const Permutation& pi = cfg.base();
    const std::vector<Hook>& hooks = cfg.hooks();
    int len = pi.size(), k = cfg.num_hooks(), n = len + 1;
    std::vector<int> ne_of(len + 1, 0);  // position -> hook color whose ne it is
    for (int t = 0; t < k; ++t) ne_of[hooks[t].ne] = t + 1;

    std::vector<int> modified(len, 0);
    std::vector<int> q(k + 1, 0);
    for (int m = 1; m <= len; ++m) {
        if (ne_of[m]) {
            modified[m - 1] = ne_of[m];
        } else {
            int c = detail::upward_color(pi, hooks, m);
            modified[m - 1] = c;
            q[c] += 1;  // unmodified coloring: ne endpoints stay uncolored
        }
    }

    std::vector<std::vector<int>> vblocks(k + 1), hblocks(k + 1);
    for (int m = 1; m <= len; ++m) {
        vblocks[modified[m - 1]].push_back(pi[m - 1]);
        hblocks[modified[m - 1]].push_back(m);
    }
    vblocks[0].push_back(n);  // the sky is a blue point at height n
    hblocks[0].push_back(n);  // n joins the blue block of positions
    std::vector<int> ground(n);
    for (int i = 0; i < n; ++i) ground[i] = i + 1;
    std::vector<std::vector<int>> vb, hb;
    for (int c = 0; c <= k; ++c) {
        if (!vblocks[c].empty()) vb.push_back(vblocks[c]);
        if (!hblocks[c].empty()) hb.push_back(hblocks[c]);
    }
    return VhcColoring{modified, q, SetPartition(ground, vb), SetPartition(ground, hb)};
}

/// Phi: the connected partition from the vertical projection, together with
/// the acyclic orientation of its crossing graph obtained by comparing the
/// minima of the corresponding horizontal blocks.
inline std::pair<SetPartition, Orientation> phi(const ValidHookConfiguration& cfg) {
    VhcColoring col = coloring(cfg);
    int k = cfg.num_hooks();
    // map color -> canonical block index in vertical / horizontal partitions
    std::vector<int> vmin_of_color(k + 1, -1), hmin_of_color(k + 1, -1);
    {
        const Permutation& pi = cfg.base();
        int len = pi.size(), n = len + 1;
        std::vector<int> vmin(k + 1, n + 1), hmin(k + 1, n + 1);
        for (int m = 1; m <= len; ++m) {
            int c = col.point_colors[m - 1];
            vmin[c] = std::min(vmin[c], pi[m - 1]);
            hmin[c] = std::min(hmin[c], m);
        }
        vmin[0] = std::min(vmin[0], n);
        hmin[0] = std::min(hmin[0], n);
        vmin_of_color = vmin;
        hmin_of_color = hmin;
    }
    // canonical vertical block index -> color
    std::vector<int> color_of_block(k + 1, -1);
    for (int c = 0; c <= k; ++c) {
        int idx = col.vertical.block_index_of(vmin_of_color[c]);
        color_of_block[idx] = c;
    }
    SimpleGraph g = crossing_graph(col.vertical);
    Orientation o{g, {}};
    for (auto [a, b] : g.edges) {
        int ca = color_of_block[a], cb = color_of_block[b];
        if (hmin_of_color[ca] < hmin_of_color[cb]) o.directed.emplace_back(a, b);
        else o.directed.emplace_back(b, a);
    }
    return {col.vertical, o};
}

/// Psi: the noncrossing partition from the horizontal projection, together
/// with pi^{-1} concatenated with n.
inline std::pair<SetPartition, Permutation> psi(const ValidHookConfiguration& cfg) {
    const Permutation& pi = cfg.base();
    if (!pi.is_standardized())
        throw std::invalid_argument("psi requires a standardized base permutation");
    int len = pi.size();
    std::vector<int> inv(len + 1);
    for (int i = 1; i <= len; ++i) inv[pi[i - 1]] = i;
    std::vector<int> sigma(inv.begin() + 1, inv.end());
    sigma.push_back(len + 1);
    return {coloring(cfg).horizontal, Permutation(std::move(sigma))};
}

/// Number of configurations whose horizontal projection is eta: the
/// linear-extension count of the arch graph of K(eta) when 1 and n share a
/// block of eta (equivalently {n} is a singleton of K(eta), so no successor
/// hook would have to end past the base permutation), and 0 otherwise. The
/// position 1 point is always blue and n always joins the blue block, so
/// every horizontal projection has 1 and n together.
inline Integer psi_image_multiplicity(const SetPartition& eta, int cap = kLinextCap) {
    int n = eta.size();
    if (!is_noncrossing(eta))
        throw std::invalid_argument("psi_image_multiplicity requires eta noncrossing");
    if (n > 1 && eta.block_index_of(1) != eta.block_index_of(n)) return 0;
    return linear_extension_count(kreweras(eta), cap);
}

/// Inverse of Psi: reconstruct the configuration from a noncrossing
/// partition eta of [n] (with 1 and n in the same block) and sigma in
/// L(K(eta)).
inline ValidHookConfiguration psi_inverse(const SetPartition& eta, const Permutation& sigma) {
    int n = eta.size();
    if (!is_noncrossing(eta)) throw std::invalid_argument("psi_inverse requires eta noncrossing");
    if (n > 1 && eta.block_index_of(1) != eta.block_index_of(n))
        throw std::invalid_argument(
            "eta is not a horizontal projection: 1 and n must share a block");
    if (sigma.size() != n || !sigma.is_standardized())
        throw std::invalid_argument("sigma must be a standardized permutation of the same size");
    SetPartition keta = kreweras(eta);
    Digraph arch = arch_graph(keta);
    std::vector<int> pos(n + 1);
    for (int i = 0; i < n; ++i) pos[sigma[i]] = i + 1;
    for (auto [a, b] : arch.edges)
        if (pos[a] >= pos[b])
            throw std::invalid_argument("sigma is not in L(K(eta))");
    // sigma = pi^{-1} n
    if (sigma[n - 1] != n) throw std::invalid_argument("sigma is not in L(K(eta))");
    std::vector<int> pi_entries(n - 1);
    for (int i = 1; i <= n - 1; ++i) pi_entries[sigma[i - 1] - 1] = i;
    Permutation pi{std::move(pi_entries)};
    // hooks: each descent d gets the hook (d, successor of d in K(eta))
    std::vector<int> succ(n + 1, 0);
    for (const auto& b : keta.blocks())
        for (size_t i = 0; i + 1 < b.size(); ++i) succ[b[i]] = b[i + 1];
    std::vector<Hook> hooks;
    for (int d : descents(pi)) {
        if (!succ[d])
            throw std::invalid_argument("sigma is not in L(K(eta))");
        hooks.push_back(Hook{d, succ[d]});
    }
    return ValidHookConfiguration(std::move(pi), std::move(hooks));
}

/// Number of standardized decreasing binary plane trees whose skeleton is
/// the in-order tree of pi: the rooted-tree hook length formula
/// (n-1)! / prod of subtree sizes. Depends only on the base permutation.
inline Integer tree_hook_count(const Permutation& pi) {
    if (!pi.is_standardized())
        throw std::invalid_argument("tree_hook_count requires a standardized base");
    Tree t = skel(inorder_tree(pi));
    Integer denom = 1;
    struct Walk {
        Integer& denom;
        long operator()(const Tree& t) {
            if (!t) return 0;
            long sz = 1 + (*this)(t->left) + (*this)(t->right);
            denom *= sz;
            return sz;
        }
    } walk{denom};
    walk(t);
    return factorial(pi.size()) / denom;
}

inline Integer tree_hook_count(const ValidHookConfiguration& cfg) {
    return tree_hook_count(cfg.base());
}

}  // namespace troupes
