#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/permutation.hpp"

namespace troupes {

/// Vertex color: black and white are always available; synthetic colors
/// c1, c2, ... form an unbounded namespace used by generated troupes.
class Color {
public:
    static Color black() { return Color(0); }
    static Color white() { return Color(1); }
    static Color synthetic(int k) {
        if (k < 1) throw std::invalid_argument("synthetic color index must be >= 1");
        return Color(k + 1);
    }

    bool is_black() const { return id_ == 0; }
    bool is_white() const { return id_ == 1; }
    bool is_synthetic() const { return id_ >= 2; }
    int synthetic_index() const { return id_ - 1; }

    std::string to_string() const {
        if (id_ == 0) return "b";
        if (id_ == 1) return "w";
        return "c" + std::to_string(id_ - 1);
    }

    static Color parse(const std::string& s) {
        if (s == "b") return black();
        if (s == "w") return white();
        if (s.size() >= 2 && s[0] == 'c') {
            for (size_t i = 1; i < s.size(); ++i)
                if (!isdigit(static_cast<unsigned char>(s[i])))
                    throw std::invalid_argument("bad color literal: '" + s + "'");
            return synthetic(std::stoi(s.substr(1)));
        }
        throw std::invalid_argument("bad color literal: '" + s + "'");
    }

    bool operator==(const Color& o) const { return id_ == o.id_; }
    bool operator!=(const Color& o) const { return id_ != o.id_; }
    bool operator<(const Color& o) const { return id_ < o.id_; }

private:
    explicit Color(int id) : id_(id) {}
    int id_;
};

struct TreeNode;
/// Colored binary plane tree; nullptr is the empty tree.
using Tree = std::shared_ptr<const TreeNode>;

struct TreeNode {
    Color color;
    Tree left, right;
};

inline Tree node(Color c, Tree l = nullptr, Tree r = nullptr) {
    return std::make_shared<const TreeNode>(TreeNode{c, std::move(l), std::move(r)});
}

inline Tree leaf(Color c) { return node(c); }

struct DTreeNode;
/// Labeled colored binary plane tree with strictly decreasing labels along
/// root-to-leaf paths; nullptr is the empty tree.
using DTree = std::shared_ptr<const DTreeNode>;

struct DTreeNode {
    int label;
    Color color;
    DTree left, right;
};

inline DTree dnode(int label, Color c, DTree l = nullptr, DTree r = nullptr) {
    return std::make_shared<const DTreeNode>(DTreeNode{label, c, std::move(l), std::move(r)});
}

inline long tree_size(const Tree& t) {
    return t ? 1 + tree_size(t->left) + tree_size(t->right) : 0;
}
inline long tree_size(const DTree& t) {
    return t ? 1 + tree_size(t->left) + tree_size(t->right) : 0;
}

/// Canonical serialization; doubles as the literal syntax: "()" for the
/// empty tree, "(c L R)" otherwise.
inline std::string serialize(const Tree& t) {
    if (!t) return "()";
    return "(" + t->color.to_string() + " " + serialize(t->left) + " " +
           serialize(t->right) + ")";
}

/// "(label:c L R)" form for decreasing trees.
inline std::string serialize(const DTree& t) {
    if (!t) return "()";
    return "(" + std::to_string(t->label) + ":" + t->color.to_string() + " " +
           serialize(t->left) + " " + serialize(t->right) + ")";
}

namespace detail {

class TreeParser {
public:
    explicit TreeParser(const std::string& text) {
        for (char c : text)
            if (!isspace(static_cast<unsigned char>(c))) src_ += c;
    }

    Tree parse_tree() {
        size_t pos = 0;
        Tree t = tree(pos);
        if (pos != src_.size()) throw std::invalid_argument("trailing input in tree literal");
        return t;
    }

    DTree parse_dtree() {
        size_t pos = 0;
        DTree t = dtree(pos);
        if (pos != src_.size()) throw std::invalid_argument("trailing input in tree literal");
        std::set<int> labels;
        check_decreasing(t, labels);
        return t;
    }

private:
    Tree tree(size_t& pos) {
        expect(pos, '(');
        if (peek(pos) == ')') {
            ++pos;
            return nullptr;
        }
        Color c = color(pos);
        Tree l = tree(pos);
        Tree r = tree(pos);
        expect(pos, ')');
        return node(c, l, r);
    }

    DTree dtree(size_t& pos) {
        expect(pos, '(');
        if (peek(pos) == ')') {
            ++pos;
            return nullptr;
        }
        size_t start = pos;
        while (pos < src_.size() && isdigit(static_cast<unsigned char>(src_[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("expected label in tree literal");
        int label = std::stoi(src_.substr(start, pos - start));
        expect(pos, ':');
        Color c = color(pos);
        DTree l = dtree(pos);
        DTree r = dtree(pos);
        expect(pos, ')');
        return dnode(label, c, l, r);
    }

    Color color(size_t& pos) {
        size_t start = pos;
        while (pos < src_.size() && src_[pos] != '(' && src_[pos] != ')') ++pos;
        return Color::parse(src_.substr(start, pos - start));
    }

    void check_decreasing(const DTree& t, std::set<int>& labels) {
        if (!t) return;
        if (t->label <= 0) throw std::invalid_argument("labels must be positive");
        if (!labels.insert(t->label).second)
            throw std::invalid_argument("repeated label " + std::to_string(t->label));
        for (const DTree* child : {&t->left, &t->right})
            if (*child && (*child)->label >= t->label)
                throw std::invalid_argument("labels must decrease away from the root");
        check_decreasing(t->left, labels);
        check_decreasing(t->right, labels);
    }

    char peek(size_t pos) const {
        if (pos >= src_.size()) throw std::invalid_argument("unexpected end of tree literal");
        return src_[pos];
    }
    void expect(size_t& pos, char c) {
        if (peek(pos) != c)
            throw std::invalid_argument(std::string("expected '") + c + "' in tree literal");
        ++pos;
    }

    std::string src_;
};

}  // namespace detail

inline Tree parse_tree(const std::string& text) { return detail::TreeParser(text).parse_tree(); }
inline DTree parse_dtree(const std::string& text) { return detail::TreeParser(text).parse_dtree(); }

/// Skeleton: forget the labels.
inline Tree skel(const DTree& t) {
    if (!t) return nullptr;
    return node(t->color, skel(t->left), skel(t->right));
}

inline bool tree_equal(const Tree& a, const Tree& b) {
    if (!a || !b) return !a && !b;
    return a->color == b->color && tree_equal(a->left, b->left) && tree_equal(a->right, b->right);
}

/// Root-to-vertex L/R paths of all vertices, in preorder ("" is the root).
inline void vertex_paths(const Tree& t, std::vector<std::string>& out,
                         const std::string& prefix = "") {
    if (!t) return;
    out.push_back(prefix);
    vertex_paths(t->left, out, prefix + "L");
    vertex_paths(t->right, out, prefix + "R");
}

inline std::vector<std::string> vertex_paths(const Tree& t) {
    std::vector<std::string> out;
    vertex_paths(t, out);
    return out;
}

inline Tree subtree_at(const Tree& t, const std::string& path) {
    Tree cur = t;
    for (char c : path) {
        if (!cur) break;
        if (c == 'L') cur = cur->left;
        else if (c == 'R') cur = cur->right;
        else throw std::invalid_argument("vertex path must consist of L/R steps");
    }
    if (!cur) throw std::invalid_argument("vertex path '" + path + "' does not address a vertex");
    return cur;
}

namespace detail {

inline Tree replace_at(const Tree& t, const std::string& path, size_t i, const Tree& repl) {
    if (i == path.size()) return repl;
    if (!t) throw std::invalid_argument("vertex path does not address a vertex");
    if (path[i] == 'L') return node(t->color, replace_at(t->left, path, i + 1, repl), t->right);
    if (path[i] == 'R') return node(t->color, t->left, replace_at(t->right, path, i + 1, repl));
    throw std::invalid_argument("vertex path must consist of L/R steps");
}

}  // namespace detail

/// Insertion of t2 into t1 at the vertex addressed by path: the vertex v
/// becomes the left child of a new black vertex v*, and t2 becomes the right
/// subtree of v*.
inline Tree insert(const Tree& t1, const std::string& path, const Tree& t2) {
    if (!t1 || !t2) throw std::invalid_argument("insertion requires nonempty trees");
    Tree v = subtree_at(t1, path);
    return detail::replace_at(t1, path, 0, node(Color::black(), v, t2));
}

/// Decomposition at the black 2-child vertex v* addressed by path: returns
/// (t1, t2) where t2 is the right subtree of v* and t1 contracts the edge
/// from v* to its left child, keeping the child's color.
inline std::pair<Tree, Tree> decompose(const Tree& t, const std::string& path) {
    Tree vstar = subtree_at(t, path);
    if (!vstar->color.is_black())
        throw std::invalid_argument("decomposition vertex must be black");
    if (!vstar->left || !vstar->right)
        throw std::invalid_argument("decomposition vertex must have 2 children");
    Tree t2 = vstar->right;
    Tree t1 = detail::replace_at(t, path, 0, vstar->left);
    return {t1, t2};
}

enum class Traversal { inorder, postorder };

inline void traverse_into(const DTree& t, Traversal order, std::vector<int>& out) {
    if (!t) return;
    if (order == Traversal::inorder) {
        traverse_into(t->left, order, out);
        out.push_back(t->label);
        traverse_into(t->right, order, out);
    } else {
        traverse_into(t->left, order, out);
        traverse_into(t->right, order, out);
        out.push_back(t->label);
    }
}

inline Permutation traverse(const DTree& t, Traversal order) {
    std::vector<int> out;
    traverse_into(t, order, out);
    return Permutation(std::move(out));
}

struct TreeStats {
    long des = 0;    // right edges
    long peak = 0;   // vertices with 2 children
    long black = 0;  // black vertices
    long size = 0;   // vertices
};

inline TreeStats statistics(const Tree& t) {
    if (!t) return TreeStats{0, -1, 0, 0};  // des(eps)=0, peak(eps)=-1
    TreeStats s{0, 0, t->color.is_black() ? 1l : 0l, 1};
    if (t->left) {
        TreeStats l = statistics(t->left);
        s.des += l.des;
        s.peak += std::max(l.peak, 0l);
        s.black += l.black;
        s.size += l.size;
    }
    if (t->right) {
        TreeStats r = statistics(t->right);
        s.des += r.des + 1;  // the edge to the right child is a right edge
        s.peak += std::max(r.peak, 0l);
        s.black += r.black;
        s.size += r.size;
    }
    if (t->left && t->right) s.peak += 1;
    return s;
}

inline TreeStats statistics(const DTree& t) { return statistics(skel(t)); }

inline long count_color(const Tree& t, Color c) {
    if (!t) return 0;
    return (t->color == c ? 1 : 0) + count_color(t->left, c) + count_color(t->right, c);
}

/// A branch has no vertex with 2 children.
inline bool is_branch(const Tree& t) {
    if (!t) return true;
    if (t->left && t->right) return false;
    return is_branch(t->left) && is_branch(t->right);
}

/// Insertion-additive tree statistic: one of size+1, des+1, peak+1, black+1,
/// or the count of vertices with a fixed non-black color.
class TreeStatistic {
public:
    enum class Tag { size_plus_one, des_plus_one, peak_plus_one, black_plus_one, color_count };

    static TreeStatistic size_plus_one() { return TreeStatistic(Tag::size_plus_one); }
    static TreeStatistic des_plus_one() { return TreeStatistic(Tag::des_plus_one); }
    static TreeStatistic peak_plus_one() { return TreeStatistic(Tag::peak_plus_one); }
    static TreeStatistic black_plus_one() { return TreeStatistic(Tag::black_plus_one); }
    static TreeStatistic color_count(Color c) {
        if (c.is_black())
            throw std::invalid_argument("color_count(black) is not insertion-additive; use black+1");
        TreeStatistic s(Tag::color_count);
        s.color_ = c;
        return s;
    }

    Tag tag() const { return tag_; }

    long eval(const Tree& t) const {
        TreeStats st = statistics(t);
        switch (tag_) {
            case Tag::size_plus_one: return st.size + 1;
            case Tag::des_plus_one: return st.des + 1;
            case Tag::peak_plus_one: return st.peak + 1;
            case Tag::black_plus_one: return st.black + 1;
            case Tag::color_count: return count_color(t, color_);
        }
        throw std::logic_error("unreachable");
    }

    std::string to_string() const {
        switch (tag_) {
            case Tag::size_plus_one: return "size+1";
            case Tag::des_plus_one: return "des+1";
            case Tag::peak_plus_one: return "peak+1";
            case Tag::black_plus_one: return "black+1";
            case Tag::color_count: return "count:" + color_.to_string();
        }
        throw std::logic_error("unreachable");
    }

    static TreeStatistic parse(const std::string& s) {
        if (s == "size+1") return size_plus_one();
        if (s == "des+1") return des_plus_one();
        if (s == "peak+1") return peak_plus_one();
        if (s == "black+1") return black_plus_one();
        if (s.rfind("count:", 0) == 0) return color_count(Color::parse(s.substr(6)));
        throw std::invalid_argument("unknown tree statistic: '" + s + "'");
    }

private:
    explicit TreeStatistic(Tag tag) : tag_(tag), color_(Color::white()) {}
    Tag tag_;
    Color color_;
};

/// The unique decreasing (all-black) binary plane tree with in-order
/// reading pi.
inline DTree inorder_tree(const Permutation& pi) {
    const std::vector<int>& e = pi.entries();
    // recursive helper on the half-open index range [lo, hi)
    struct Builder {
        const std::vector<int>& e;
        DTree build(int lo, int hi) const {
            if (lo >= hi) return nullptr;
            int mx = lo;
            for (int i = lo + 1; i < hi; ++i)
                if (e[i] > e[mx]) mx = i;
            return dnode(e[mx], Color::black(), build(lo, mx), build(mx + 1, hi));
        }
    };
    return Builder{e}.build(0, pi.size());
}

/// Standardized <=> label set is exactly {1..n}.
inline bool is_standardized(const DTree& t) {
    std::vector<int> labels;
    traverse_into(t, Traversal::inorder, labels);
    std::sort(labels.begin(), labels.end());
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != static_cast<int>(i) + 1) return false;
    return true;
}

}  // namespace troupes
