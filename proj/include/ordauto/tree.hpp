#ifndef ORDAUTO_TREE_HPP
#define ORDAUTO_TREE_HPP

// Finite full-binary labeled trees and convolution of tree tuples.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ordauto {

/// Reserved pad symbol of convolution alphabets.
inline constexpr std::string_view kPad = "~";
/// Separator between the parts of a convolution symbol.
inline constexpr char kPartSeparator = '|';

/// Path from the root: '0' = left child, '1' = right child.
struct NodePath {
    std::string bits;

    NodePath() = default;
    explicit NodePath(std::string b) : bits(std::move(b)) {}

    NodePath child(int side) const { return NodePath(bits + (side == 0 ? '0' : '1')); }
    bool is_root() const noexcept { return bits.empty(); }
    NodePath parent() const { return NodePath(bits.substr(0, bits.size() - 1)); }
    std::string text() const { return bits.empty() ? "<root>" : bits; }

    auto operator<=>(const NodePath&) const = default;
};

class TreeError : public FormatError {
public:
    enum class Kind { NotPrefixClosed, MissingSibling, EmptyTree, InvalidProjection };

    TreeError(Kind k, NodePath p, const std::string& what) : FormatError(what), kind(k), path(std::move(p)) {}

    Kind kind;
    NodePath path;
};

/// Prefix-closed, full-binary, nonempty set of node paths.
class TreeDomain {
public:
    const std::set<NodePath>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool contains(const NodePath& p) const { return nodes_.count(p) != 0; }
    bool is_leaf(const NodePath& p) const { return !contains(p.child(0)); }

    std::size_t leaf_count() const {
        return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [&](const NodePath& p) { return is_leaf(p); }));
    }

private:
    friend TreeDomain validate(std::set<NodePath> nodes);
    std::set<NodePath> nodes_;
};

/// Checks the tree rules; errors name the first offending node.
inline TreeDomain validate(std::set<NodePath> nodes) {
    if (nodes.empty()) throw TreeError(TreeError::Kind::EmptyTree, NodePath{}, "empty tree");
    for (const auto& p : nodes) {
        if (!p.is_root() && !nodes.count(p.parent()))
            throw TreeError(TreeError::Kind::NotPrefixClosed, p, "node " + p.text() + " has no parent");
        const bool l = nodes.count(p.child(0)) != 0;
        const bool r = nodes.count(p.child(1)) != 0;
        if (l != r) {
            NodePath missing = p.child(l ? 1 : 0);
            throw TreeError(TreeError::Kind::MissingSibling, missing, "missing sibling node " + missing.text());
        }
    }
    TreeDomain d;
    d.nodes_ = std::move(nodes);
    return d;
}

/// A labeled finite full-binary tree.  Nodes are stored in preorder; node 0 is the root.
class SigmaTree {
public:
    struct Node {
        std::string label;
        std::int32_t left = -1;
        std::int32_t right = -1;
        bool is_leaf() const noexcept { return left < 0; }
        bool operator==(const Node&) const = default;
    };

    static SigmaTree leaf(std::string label) {
        SigmaTree t;
        t.nodes_.push_back(Node{std::move(label)});
        return t;
    }

    static SigmaTree node(std::string label, const SigmaTree& left, const SigmaTree& right) {
        SigmaTree t;
        t.nodes_.reserve(1 + left.size() + right.size());
        const auto lsize = static_cast<std::int32_t>(left.size());
        t.nodes_.push_back(Node{std::move(label), 1, 1 + lsize});
        for (const Node& n : left.nodes_) t.nodes_.push_back(shifted(n, 1));
        for (const Node& n : right.nodes_) t.nodes_.push_back(shifted(n, 1 + lsize));
        return t;
    }

    /// Builds a tree from a path->label map after validating its domain.
    static SigmaTree from_labels(const std::map<NodePath, std::string>& labels) {
        std::set<NodePath> paths;
        for (const auto& [p, _] : labels) paths.insert(p);
        validate(paths);
        std::function<SigmaTree(const NodePath&)> build = [&](const NodePath& p) {
            auto it = labels.find(p.child(0));
            if (it == labels.end()) return leaf(labels.at(p));
            return node(labels.at(p), build(p.child(0)), build(p.child(1)));
        };
        return build(NodePath{});
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Node& at(std::size_t i) const { return nodes_.at(i); }
    const std::string& root_label() const { return nodes_.front().label; }

    /// Copy of the subtree rooted at preorder index i.
    SigmaTree subtree(std::size_t i) const {
        const std::size_t end = subtree_end(i);
        SigmaTree t;
        const auto off = static_cast<std::int32_t>(i);
        for (std::size_t k = i; k < end; ++k) t.nodes_.push_back(shifted(nodes_[k], -off));
        return t;
    }

    /// One past the last preorder index of the subtree at i.
    std::size_t subtree_end(std::size_t i) const {
        while (!nodes_[i].is_leaf()) i = static_cast<std::size_t>(nodes_[i].right);
        return i + 1;
    }

    /// Node paths in preorder (which is also lexicographic order).
    std::vector<NodePath> paths() const {
        std::vector<NodePath> out(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            if (!n.is_leaf()) {
                out[static_cast<std::size_t>(n.left)] = out[i].child(0);
                out[static_cast<std::size_t>(n.right)] = out[i].child(1);
            }
        }
        return out;
    }

    TreeDomain domain() const {
        auto p = paths();
        return validate(std::set<NodePath>(p.begin(), p.end()));
    }

    std::map<NodePath, std::string> labels() const {
        std::map<NodePath, std::string> m;
        auto p = paths();
        for (std::size_t i = 0; i < p.size(); ++i) m.emplace(p[i], nodes_[i].label);
        return m;
    }

    std::optional<std::string> label_at(const NodePath& p) const {
        std::size_t i = 0;
        for (char b : p.bits) {
            if (nodes_[i].is_leaf()) return std::nullopt;
            i = static_cast<std::size_t>(b == '0' ? nodes_[i].left : nodes_[i].right);
        }
        return nodes_[i].label;
    }

    /// Term syntax: `sym` or `sym(left,right)`.
    std::string to_string() const {
        std::string out;
        write(0, out);
        return out;
    }

    /// Same shape with new labels given in preorder.
    SigmaTree relabeled(const std::vector<std::string>& preorder_labels) const {
        SigmaTree t = *this;
        for (std::size_t i = 0; i < t.nodes_.size(); ++i) t.nodes_[i].label = preorder_labels.at(i);
        return t;
    }

    bool operator==(const SigmaTree&) const = default;

private:
    static Node shifted(Node n, std::int32_t by) {
        if (!n.is_leaf()) {
            n.left += by;
            n.right += by;
        }
        return n;
    }

    void write(std::size_t i, std::string& out) const {
        const Node& n = nodes_[i];
        out += n.label;
        if (n.is_leaf()) return;
        out += '(';
        write(static_cast<std::size_t>(n.left), out);
        out += ',';
        write(static_cast<std::size_t>(n.right), out);
        out += ')';
    }

    std::vector<Node> nodes_;
};

inline bool is_symbol_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '~' ||
           c == '|';
}

/// Parses the tree term syntax; whitespace is not allowed.
inline SigmaTree parse_tree(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> FormatError {
        return FormatError("tree syntax error at " + std::to_string(pos) + ": " + what);
    };
    std::function<SigmaTree()> term = [&]() -> SigmaTree {
        const std::size_t start = pos;
        while (pos < text.size() && is_symbol_char(text[pos])) ++pos;
        if (pos == start) throw fail("expected a symbol");
        std::string label(text.substr(start, pos - start));
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            SigmaTree l = term();
            if (pos >= text.size() || text[pos] != ',') throw fail("expected ','");
            ++pos;
            SigmaTree r = term();
            if (pos >= text.size() || text[pos] != ')') throw fail("expected ')'");
            ++pos;
            return SigmaTree::node(std::move(label), l, r);
        }
        return SigmaTree::leaf(std::move(label));
    };
    SigmaTree t = term();
    if (pos != text.size()) throw fail("trailing characters");
    return t;
}

/// Splits a convolution label at '|'.
inline std::vector<std::string> symbol_parts(std::string_view label) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t bar = label.find(kPartSeparator, start);
        parts.emplace_back(label.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return parts;
}

inline std::string join_parts(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += kPartSeparator;
        s += parts[i];
    }
    return s;
}

/// Overlays the trees on the union of their domains; absent coordinates carry the pad.
/// A single tree convolves to itself.
inline SigmaTree convolve(const std::vector<SigmaTree>& trees) {
    if (trees.empty()) throw DomainError("convolve needs at least one tree");
    if (trees.size() == 1) return trees.front();
    std::function<SigmaTree(const std::vector<std::int32_t>&)> go = [&](const std::vector<std::int32_t>& at) {
        std::vector<std::string> parts;
        bool internal = false;
        for (std::size_t i = 0; i < trees.size(); ++i) {
            if (at[i] < 0) {
                parts.emplace_back(kPad);
                continue;
            }
            const auto& n = trees[i].nodes()[static_cast<std::size_t>(at[i])];
            parts.push_back(n.label);
            internal = internal || !n.is_leaf();
        }
        std::string label = join_parts(parts);
        if (!internal) return SigmaTree::leaf(std::move(label));
        std::vector<std::int32_t> l(trees.size(), -1), r(trees.size(), -1);
        for (std::size_t i = 0; i < trees.size(); ++i) {
            if (at[i] < 0) continue;
            const auto& n = trees[i].nodes()[static_cast<std::size_t>(at[i])];
            l[i] = n.left;
            r[i] = n.right;
        }
        return SigmaTree::node(std::move(label), go(l), go(r));
    };
    return go(std::vector<std::int32_t>(trees.size(), 0));
}

/// Coordinate i of a convolution.  Throws TreeError when that coordinate is not a tree.
inline SigmaTree split(const SigmaTree& conv, std::size_t i) {
    std::map<NodePath, std::string> kept;
    const auto paths = conv.paths();
    for (std::size_t k = 0; k < paths.size(); ++k) {
        auto parts = symbol_parts(conv.nodes()[k].label);
        if (i >= parts.size()) throw DomainError("convolution has arity " + std::to_string(parts.size()));
        if (parts[i] != kPad) kept.emplace(paths[k], parts[i]);
    }
    try {
        return SigmaTree::from_labels(kept);
    } catch (const TreeError& e) {
        if (e.kind == TreeError::Kind::EmptyTree) throw;
        throw TreeError(TreeError::Kind::InvalidProjection, e.path,
                        "coordinate " + std::to_string(i) + " is not a tree: " + e.what());
    }
}

/// Enumeration order: node count, then the sorted path lists, then the preorder labels.
inline std::strong_ordering enumeration_order(const SigmaTree& a, const SigmaTree& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    if (auto c = a.paths() <=> b.paths(); c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (auto c = a.nodes()[i].label <=> b.nodes()[i].label; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

namespace detail {

/// All full-binary shapes with exactly n nodes (n odd), labels empty.
inline const std::vector<SigmaTree>& shapes_of_size(std::size_t n) {
    static std::map<std::size_t, std::vector<SigmaTree>> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<SigmaTree> out;
    if (n == 1) {
        out.push_back(SigmaTree::leaf(""));
    } else if (n >= 3 && n % 2 == 1) {
        for (std::size_t l = 1; l + 1 < n; l += 2) {
            const auto& left = shapes_of_size(l);
            const auto& right = shapes_of_size(n - 1 - l);
            for (const auto& a : left)
                for (const auto& b : right) out.push_back(SigmaTree::node("", a, b));
        }
        std::sort(out.begin(), out.end(), [](const SigmaTree& a, const SigmaTree& b) { return a.paths() < b.paths(); });
    }
    return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace detail

/// All trees over `alphabet` with at most max_nodes nodes, in enumeration order.
/// Not thread-safe on first use of a given size (shape cache).
inline std::vector<SigmaTree> enumerate_trees(std::vector<std::string> alphabet, std::size_t max_nodes) {
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    std::vector<SigmaTree> out;
    if (alphabet.empty()) return out;
    for (std::size_t n = 1; n <= max_nodes; n += 2) {
        for (const SigmaTree& shape : detail::shapes_of_size(n)) {
            std::vector<std::size_t> digit(n, 0);
            std::vector<std::string> labels(n);
            for (;;) {
                for (std::size_t i = 0; i < n; ++i) labels[i] = alphabet[digit[i]];
                out.push_back(shape.relabeled(labels));
                std::size_t k = n;
                while (k > 0 && ++digit[k - 1] == alphabet.size()) digit[--k] = 0;
                if (k == 0) break;
            }
        }
    }
    return out;
}

}  // namespace ordauto

#endif
