#ifndef ORDAUTO_CLOSURE_HPP
#define ORDAUTO_CLOSURE_HPP

// Coordinate manipulation on convolution automata: cylindrification,
// projection with pad-closure, renaming of coordinates and diagonals.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "alphabet.hpp"
#include "automaton.hpp"
#include "error.hpp"

namespace ordauto {

class BadPosition : public DomainError {
public:
    BadPosition(std::size_t pos, std::size_t arity)
        : DomainError("coordinate " + std::to_string(pos) + " out of range for arity " + std::to_string(arity)) {}
};

namespace detail {

inline std::vector<std::uint32_t> erase_part(std::vector<std::uint32_t> parts, std::size_t i) {
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i));
    return parts;
}

inline std::vector<std::uint32_t> insert_part(std::vector<std::uint32_t> parts, std::size_t i, std::uint32_t x) {
    parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(i), x);
    return parts;
}

}  // namespace detail

/// Adds a free coordinate at position i (0 <= i <= arity).
inline TreeAutomaton cylindrify(const TreeAutomaton& a, std::size_t i, const Limits& limits = {}) {
    const Alphabet& in = a.alphabet();
    if (i > in.arity()) throw BadPosition(i, in.arity() + 1);
    const Alphabet out = in.with_arity(in.arity() + 1);
    const auto free = static_cast<State>(a.num_states());
    const std::uint32_t radix = in.radix();

    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    // only-i region below the original tree
    for (std::uint32_t x = 1; x < radix; ++x) {
        std::vector<std::uint32_t> parts(out.arity(), 0);
        parts[i] = x;
        const Symbol s = *out.make(parts);
        leaf.push_back({free, s});
        trans.push_back({free, s, free, free});
    }
    for (const auto& r : a.leaf_rules()) {
        const auto p = in.parts(r.sym);
        for (std::uint32_t x = 0; x < radix; ++x) {
            const Symbol s = *out.make(detail::insert_part(p, i, x));
            leaf.push_back({r.state, s});
            if (x != 0) trans.push_back({r.state, s, free, free});
        }
    }
    for (const auto& t : a.transitions()) {
        const auto p = in.parts(t.sym);
        for (std::uint32_t x = 0; x < radix; ++x)
            trans.push_back({t.src, *out.make(detail::insert_part(p, i, x)), t.left, t.right});
    }
    return tidy(TreeAutomaton(out, a.num_states() + 1, a.initial(), std::move(leaf), std::move(trans)), limits);
}

/// Existential projection of coordinate i (arity >= 2).
///
/// Subtrees where only coordinate i is present are guessed away: a state from
/// which such a subtree is accepted lets its parent act as a leaf.
inline TreeAutomaton project(const TreeAutomaton& a, std::size_t i, const Limits& limits = {}) {
    const Alphabet& in = a.alphabet();
    if (in.arity() < 2 || i >= in.arity()) throw BadPosition(i, in.arity());
    const Alphabet out = in.with_arity(in.arity() - 1);
    const std::size_t n = a.num_states();

    // E: states accepting some tree over only-i symbols
    std::vector<bool> e(n, false);
    for (const auto& r : a.leaf_rules())
        if (in.only_coordinate(r.sym, i)) e[r.state] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& t : a.transitions())
            if (!e[t.src] && e[t.left] && e[t.right] && in.only_coordinate(t.sym, i)) {
                e[t.src] = true;
                changed = true;
            }
    }

    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    for (const auto& r : a.leaf_rules()) {
        if (auto s = out.make(detail::erase_part(in.parts(r.sym), i))) leaf.push_back({r.state, *s});
    }
    for (const auto& t : a.transitions()) {
        const auto p = in.parts(t.sym);
        auto s = out.make(detail::erase_part(p, i));
        if (!s) continue;
        trans.push_back({t.src, *s, t.left, t.right});
        if (p[i] != 0 && e[t.left] && e[t.right]) leaf.push_back({t.src, *s});
    }
    return tidy(TreeAutomaton(out, n, a.initial(), std::move(leaf), std::move(trans)), limits);
}

/// Reindexes coordinates: coordinate p of `a` becomes coordinate f[p] of an
/// m-ary result.  f must be onto [0, m); coordinates sharing a target must agree.
inline TreeAutomaton rename(const TreeAutomaton& a, std::size_t m, const std::vector<std::size_t>& f,
                            const Limits& limits = {}) {
    const Alphabet& in = a.alphabet();
    if (f.size() != in.arity()) throw DomainError("rename map has wrong length");
    std::vector<bool> hit(m, false);
    for (std::size_t t : f) {
        if (t >= m) throw BadPosition(t, m);
        hit[t] = true;
    }
    for (bool h : hit)
        if (!h) throw DomainError("rename map must be onto");
    const Alphabet out = in.with_arity(m);
    auto relabel = [&](Symbol s) -> std::optional<Symbol> {
        std::vector<std::uint32_t> parts(m, 0);
        std::vector<bool> set(m, false);
        for (std::size_t p = 0; p < f.size(); ++p) {
            const auto x = in.part(s, p);
            if (set[f[p]] && parts[f[p]] != x) return std::nullopt;
            parts[f[p]] = x;
            set[f[p]] = true;
        }
        return out.make(parts);
    };
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    for (const auto& r : a.leaf_rules())
        if (auto s = relabel(r.sym)) leaf.push_back({r.state, *s});
    for (const auto& t : a.transitions())
        if (auto s = relabel(t.sym)) trans.push_back({t.src, *s, t.left, t.right});
    return tidy(TreeAutomaton(out, a.num_states(), a.initial(), std::move(leaf), std::move(trans)), limits);
}

/// conv(t, ..., t) (m copies) for t in L(a), a over a plain alphabet.
inline TreeAutomaton diagonal(const TreeAutomaton& a, std::size_t m, const Limits& limits = {}) {
    const Alphabet& in = a.alphabet();
    if (in.arity() != 1) throw DomainError("diagonal expects a plain alphabet");
    if (m == 0) throw BadPosition(0, 0);
    const Alphabet out = in.with_arity(m);
    auto copy = [&](Symbol s) { return *out.make(std::vector<std::uint32_t>(m, in.part(s, 0))); };
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    for (const auto& r : a.leaf_rules()) leaf.push_back({r.state, copy(r.sym)});
    for (const auto& t : a.transitions()) trans.push_back({t.src, copy(t.sym), t.left, t.right});
    return tidy(TreeAutomaton(out, a.num_states(), a.initial(), std::move(leaf), std::move(trans)), limits);
}

}  // namespace ordauto

#endif
