#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/errors.hpp"
#include "troupes/numeric.hpp"

namespace troupes {

inline constexpr int kPartitionAllCap = 10;
inline constexpr int kPartitionNoncrossingCap = 14;
inline constexpr int kPartitionMatchingCap = 18;
inline constexpr int kTutteEdgeCap = 20;
inline constexpr int kLinextCap = 18;

/// A set partition of a totally ordered finite ground set. Canonical form:
/// blocks ordered by minimum element, elements ascending within a block.
class SetPartition {
public:
    SetPartition(std::vector<int> ground, std::vector<std::vector<int>> blocks)
        : ground_(std::move(ground)), blocks_(std::move(blocks)) {
        std::sort(ground_.begin(), ground_.end());
        if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end())
            throw std::invalid_argument("ground set elements must be distinct");
        std::set<int> seen;
        for (auto& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("blocks must be nonempty");
            std::sort(b.begin(), b.end());
            for (int e : b)
                if (!seen.insert(e).second)
                    throw std::invalid_argument("blocks must be pairwise disjoint");
        }
        if (seen != std::set<int>(ground_.begin(), ground_.end()))
            throw std::invalid_argument("union of blocks must equal ground set");
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    /// Partition of [n] from block assignment ids (0-based element -> block id).
    static SetPartition from_assignment(const std::vector<int>& which) {
        int n = static_cast<int>(which.size());
        std::map<int, std::vector<int>> blocks;
        for (int i = 0; i < n; ++i) blocks[which[i]].push_back(i + 1);
        std::vector<int> ground(n);
        for (int i = 0; i < n; ++i) ground[i] = i + 1;
        std::vector<std::vector<int>> bl;
        for (auto& [id, b] : blocks) bl.push_back(b);
        return SetPartition(ground, bl);
    }

    const std::vector<int>& ground() const { return ground_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int size() const { return static_cast<int>(ground_.size()); }

    int block_index_of(int element) const {
        for (int i = 0; i < num_blocks(); ++i)
            for (int e : blocks_[i])
                if (e == element) return i;
        throw std::invalid_argument("element not in ground set");
    }

    bool operator==(const SetPartition& o) const {
        return ground_ == o.ground_ && blocks_ == o.blocks_;
    }
    bool operator!=(const SetPartition& o) const { return !(*this == o); }
    bool operator<(const SetPartition& o) const { return blocks_ < o.blocks_; }

    /// Literal form: blocks separated by '|' inside braces, e.g.
    /// "{1,4,5|2,3|6|7,8}".
    std::string to_string() const {
        std::string out = "{";
        for (size_t i = 0; i < blocks_.size(); ++i) {
            if (i) out += "|";
            for (size_t j = 0; j < blocks_[i].size(); ++j) {
                if (j) out += ",";
                out += std::to_string(blocks_[i][j]);
            }
        }
        return out + "}";
    }

    /// Parse the literal form. With no explicit ground set the ground is
    /// declared to be {1..max}; duplicates and gaps are rejected.
    static SetPartition parse(const std::string& text, std::vector<int> ground = {}) {
        std::string t;
        for (char c : text)
            if (!isspace(static_cast<unsigned char>(c))) t += c;
        if (t.size() < 2 || t.front() != '{' || t.back() != '}')
            throw std::invalid_argument("partition literal must be enclosed in braces");
        t = t.substr(1, t.size() - 2);
        std::vector<std::vector<int>> blocks;
        std::istringstream blockstream(t);
        std::string blocktext;
        int maxel = 0;
        while (std::getline(blockstream, blocktext, '|')) {
            std::vector<int> b;
            std::istringstream es(blocktext);
            std::string tok;
            while (std::getline(es, tok, ',')) {
                if (tok.empty()) throw std::invalid_argument("empty element in partition literal");
                size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size() || v <= 0)
                    throw std::invalid_argument("bad partition element: '" + tok + "'");
                maxel = std::max(maxel, v);
                b.push_back(v);
            }
            if (b.empty()) throw std::invalid_argument("empty block in partition literal");
            blocks.push_back(b);
        }
        if (ground.empty())
            for (int i = 1; i <= maxel; ++i) ground.push_back(i);
        return SetPartition(std::move(ground), std::move(blocks));  // ctor rejects gaps/dups
    }

private:
    std::vector<int> ground_;
    std::vector<std::vector<int>> blocks_;
};

/// Undirected simple graph on vertex ids 0..v-1.
struct SimpleGraph {
    int vcount = 0;
    std::vector<std::pair<int, int>> edges;  // (a, b) with a < b, no duplicates

    void add_edge(int a, int b) {
        if (a == b) throw std::invalid_argument("no self-loops");
        if (a > b) std::swap(a, b);
        if (b >= vcount) throw std::invalid_argument("vertex id out of range");
        if (std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end())
            edges.emplace_back(a, b);
    }

    bool connected() const {
        if (vcount == 0) return true;
        std::vector<int> comp(vcount, -1);
        std::vector<int> stack{0};
        comp[0] = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [a, b] : edges) {
                int other = a == v ? b : b == v ? a : -1;
                if (other >= 0 && comp[other] < 0) {
                    comp[other] = 0;
                    stack.push_back(other);
                }
            }
        }
        return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
    }
};

/// An assignment of a direction to every edge of a graph.
struct Orientation {
    SimpleGraph graph;
    std::vector<std::pair<int, int>> directed;  // aligned with graph.edges

    bool is_acyclic() const {
        int n = graph.vcount;
        std::vector<int> indeg(n, 0);
        for (auto [u, v] : directed) ++indeg[v];
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        int seen = 0;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            ++seen;
            for (auto [a, b] : directed)
                if (a == v && --indeg[b] == 0) queue.push_back(b);
        }
        return seen == n;
    }

    std::vector<int> sources() const {
        std::vector<int> indeg(graph.vcount, 0);
        for (auto [u, v] : directed) ++indeg[v];
        std::vector<int> out;
        for (int v = 0; v < graph.vcount; ++v)
            if (indeg[v] == 0) out.push_back(v);
        return out;
    }

    bool operator==(const Orientation& o) const {
        return graph.vcount == o.graph.vcount && directed == o.directed;
    }
};

namespace detail {

/// Two blocks cross iff the label sequence along their sorted union has at
/// least four runs (an ABAB alternation).
inline bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
    size_t i = 0, j = 0;
    int runs = 0, last = -1;
    while (i < a.size() || j < b.size()) {
        int lab;
        if (j >= b.size() || (i < a.size() && a[i] < b[j])) {
            lab = 0;
            ++i;
        } else {
            lab = 1;
            ++j;
        }
        if (lab != last) {
            ++runs;
            last = lab;
        }
    }
    return runs >= 4;
}

}  // namespace detail

/// Crossing graph: vertex i is the i-th block in canonical order; edges join
/// blocks that form a crossing.
inline SimpleGraph crossing_graph(const SetPartition& p) {
    SimpleGraph g;
    g.vcount = p.num_blocks();
    for (int i = 0; i < g.vcount; ++i)
        for (int j = i + 1; j < g.vcount; ++j)
            if (detail::blocks_cross(p.blocks()[i], p.blocks()[j])) g.add_edge(i, j);
    return g;
}

inline bool is_noncrossing(const SetPartition& p) { return crossing_graph(p).edges.empty(); }

inline bool is_connected(const SetPartition& p) { return crossing_graph(p).connected(); }

enum class PartitionKind { all, noncrossing, connected, noncrossing_matching };

inline PartitionKind partition_kind_from_string(const std::string& s) {
    if (s == "all") return PartitionKind::all;
    if (s == "noncrossing") return PartitionKind::noncrossing;
    if (s == "connected") return PartitionKind::connected;
    if (s == "noncrossing-matching") return PartitionKind::noncrossing_matching;
    throw std::invalid_argument("unknown partition kind: " + s);
}

namespace detail {

inline void enumerate_all_rec(int n, int i, std::vector<int>& which, int used,
                              std::vector<SetPartition>& out) {
    if (i == n) {
        out.push_back(SetPartition::from_assignment(which));
        return;
    }
    for (int b = 0; b <= used; ++b) {
        which[i] = b;
        enumerate_all_rec(n, i + 1, which, b == used ? used + 1 : used, out);
    }
}

// Noncrossing partitions of the interval elems[lo..hi): pick the block of the
// minimum element; the gaps between consecutive chosen elements (and after
// the last) are partitioned independently.
inline std::vector<std::vector<std::vector<int>>> nc_rec(const std::vector<int>& elems, int lo,
                                                         int hi) {
    std::vector<std::vector<std::vector<int>>> out;
    if (lo >= hi) {
        out.push_back({});
        return out;
    }
    int m = hi - lo - 1;  // elements after the minimum
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> block{elems[lo]};
        std::vector<std::pair<int, int>> gaps;
        int prev = lo;
        for (int k = 0; k < m; ++k)
            if ((mask >> k) & 1) {
                gaps.emplace_back(prev + 1, lo + 1 + k);
                block.push_back(elems[lo + 1 + k]);
                prev = lo + 1 + k;
            }
        gaps.emplace_back(prev + 1, hi);
        std::vector<std::vector<std::vector<int>>> combined{{block}};
        for (auto [glo, ghi] : gaps) {
            if (glo >= ghi) continue;
            auto sub = nc_rec(elems, glo, ghi);
            std::vector<std::vector<std::vector<int>>> next;
            for (const auto& base : combined)
                for (const auto& extra : sub) {
                    auto merged = base;
                    merged.insert(merged.end(), extra.begin(), extra.end());
                    next.push_back(std::move(merged));
                }
            combined = std::move(next);
        }
        for (auto& p : combined) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace detail

/// Exhaustive, duplicate-free enumeration in canonical order. Ground set is
/// {1..n}.
inline std::vector<SetPartition> enumerate_partitions(int n, PartitionKind kind,
                                                      int cap = -1) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<SetPartition> out;
    switch (kind) {
        case PartitionKind::all:
        case PartitionKind::connected: {
            check_cap("partition_all_n", cap < 0 ? kPartitionAllCap : cap, n);
            std::vector<int> which(n, 0);
            detail::enumerate_all_rec(n, 0, which, 0, out);
            if (kind == PartitionKind::connected) {
                std::vector<SetPartition> filtered;
                for (auto& p : out)
                    if (is_connected(p)) filtered.push_back(std::move(p));
                out = std::move(filtered);
            }
            break;
        }
        case PartitionKind::noncrossing: {
            check_cap("partition_noncrossing_n", cap < 0 ? kPartitionNoncrossingCap : cap, n);
            std::vector<int> elems(n);
            for (int i = 0; i < n; ++i) elems[i] = i + 1;
            for (auto& blocks : detail::nc_rec(elems, 0, n))
                out.push_back(SetPartition(elems, blocks));
            break;
        }
        case PartitionKind::noncrossing_matching: {
            check_cap("partition_matching_n", cap < 0 ? kPartitionMatchingCap : cap, n);
            if (n % 2 == 1) return out;
            std::vector<int> elems(n);
            for (int i = 0; i < n; ++i) elems[i] = i + 1;
            // recursive matcher: always match the least element of the first
            // pending segment
            struct Rec {
                const std::vector<int>& ground;
                std::vector<SetPartition>& out;
                std::vector<std::vector<int>> cur;
                void go(std::vector<std::vector<int>> segments) {
                    while (!segments.empty() && segments.back().empty()) segments.pop_back();
                    if (segments.empty()) {
                        out.push_back(SetPartition(ground, cur));
                        return;
                    }
                    std::vector<int> seg = segments.back();
                    segments.pop_back();
                    for (size_t j = 1; j < seg.size(); j += 2) {
                        auto next = segments;
                        if (j + 1 < seg.size())
                            next.emplace_back(seg.begin() + j + 1, seg.end());
                        if (j > 1) next.emplace_back(seg.begin() + 1, seg.begin() + j);
                        cur.push_back({seg[0], seg[j]});
                        go(next);
                        cur.pop_back();
                    }
                }
            } rec{elems, out, {}};
            rec.go({elems});
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Kreweras complement of a noncrossing partition of [n], by the interleaved
/// construction: primed copies i' and j' are joined exactly when the
/// interval {i+1..j} is a union of blocks of eta, and the complement is the
/// resulting maximal compatible partition.
inline SetPartition kreweras(const SetPartition& eta) {
    int n = eta.size();
    for (int i = 0; i < n; ++i)
        if (eta.ground()[i] != i + 1)
            throw std::invalid_argument("kreweras requires ground set {1..n}");
    if (!is_noncrossing(eta)) throw std::invalid_argument("kreweras requires a noncrossing partition");

    std::vector<int> bmin(n + 1), bmax(n + 1);
    for (const auto& b : eta.blocks())
        for (int e : b) {
            bmin[e] = b.front();
            bmax[e] = b.back();
        }
    std::vector<int> dsu(n + 1);
    for (int i = 1; i <= n; ++i) dsu[i] = i;
    auto find = [&](int x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            bool ok = true;
            for (int e = i + 1; e <= j && ok; ++e)
                if (bmin[e] < i + 1 || bmax[e] > j) ok = false;
            if (ok) dsu[find(i)] = find(j);
        }
    std::map<int, std::vector<int>> blocks;
    for (int i = 1; i <= n; ++i) blocks[find(i)].push_back(i);
    std::vector<std::vector<int>> bl;
    for (auto& [root, b] : blocks) bl.push_back(b);
    return SetPartition(eta.ground(), bl);
}

/// Number of acyclic orientations of G whose unique source is v; equals the
/// Tutte polynomial value T_G(1,0). Brute force over all 2^|E| orientations.
inline Integer tutte_point(const SimpleGraph& g, int v, int edge_cap = kTutteEdgeCap) {
    if (v < 0 || v >= g.vcount) throw std::invalid_argument("vertex not in graph");
    check_cap("tutte_edges", edge_cap, static_cast<long long>(g.edges.size()));
    size_t m = g.edges.size();
    Integer count = 0;
    for (unsigned long long mask = 0; mask < (1ull << m); ++mask) {
        Orientation o{g, {}};
        o.directed.reserve(m);
        for (size_t e = 0; e < m; ++e) {
            auto [a, b] = g.edges[e];
            if ((mask >> e) & 1) o.directed.emplace_back(a, b);
            else o.directed.emplace_back(b, a);
        }
        if (!o.is_acyclic()) continue;
        std::vector<int> src = o.sources();
        if (src.size() == 1 && src[0] == v) ++count;
    }
    return count;
}

/// Directed graph on vertices 1..n.
struct Digraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;
};

/// Arch graph of a partition of [n] (usually a Kreweras complement): for
/// i < n, an edge i -> i+1 when i is maximal in its block, else i+1 -> i;
/// plus an edge from each element to its successor within its block.
inline Digraph arch_graph(const SetPartition& p) {
    int n = p.size();
    for (int i = 0; i < n; ++i)
        if (p.ground()[i] != i + 1)
            throw std::invalid_argument("arch_graph requires ground set {1..n}");
    Digraph g;
    g.n = n;
    std::vector<int> succ(n + 1, 0), ismax(n + 1, 0);
    for (const auto& b : p.blocks()) {
        for (size_t i = 0; i + 1 < b.size(); ++i) succ[b[i]] = b[i + 1];
        ismax[b.back()] = 1;
    }
    for (int i = 1; i <= n - 1; ++i) {
        if (ismax[i]) g.edges.emplace(i, i + 1);
        else g.edges.emplace(i + 1, i);
    }
    for (int i = 1; i <= n; ++i)
        if (succ[i]) g.edges.emplace(i, succ[i]);
    return g;
}

/// |L(p)|: the number of permutations of [n] in which i appears to the left
/// of j for every arch-graph edge i -> j (0 when the graph is cyclic).
/// Bitmask dynamic programming over subsets.
inline Integer linear_extension_count(const SetPartition& p, int cap = kLinextCap) {
    int n = p.size();
    check_cap("linext_n", cap, n);
    Digraph g = arch_graph(p);
    std::vector<unsigned> pred(n, 0);  // 0-based: pred[v] = mask of required predecessors
    for (auto [a, b] : g.edges) pred[b - 1] |= 1u << (a - 1);
    std::vector<unsigned long long> ways(1u << n, 0);
    ways[0] = 1;
    for (unsigned s = 1; s < (1u << n); ++s) {
        unsigned long long total = 0;
        for (int v = 0; v < n; ++v) {
            unsigned bit = 1u << v;
            if (!(s & bit)) continue;
            if ((pred[v] & (s & ~bit)) != pred[v]) continue;  // all preds placed
            total += ways[s & ~bit];
        }
        ways[s] = total;
    }
    return Integer(ways[(1u << n) - 1]);
}

}  // namespace troupes
