#ifndef ORDAUTO_CODES_HPP
#define ORDAUTO_CODES_HPP

// Canonical {0,1}-tree codes of ordinals below w^(w^n).
//
// Level 1: the left spine 0^i carries the coefficient of w^i, written in binary
// LSB first along the right branch 0^i 1^j.  Level n+1: writing d = w^(w^n), an
// ordinal is d^k*a_k + ... + a_0 with a_i < d, and the level-n code of a_i hangs
// at 0^i 1.  Nodes only required by the full-binary rule are leaves labeled 0,
// and zero is the single node 0 at every level.

#include <cstddef>
#include <string>
#include <vector>

#include "alphabet.hpp"
#include "automaton.hpp"
#include "cnf.hpp"
#include "error.hpp"
#include "tree.hpp"

namespace ordauto {

class OutOfRange : public DomainError {
public:
    using DomainError::DomainError;
};

class NotACode : public FormatError {
public:
    NotACode(std::size_t level, const std::string& path)
        : FormatError("not a level-" + std::to_string(level) + " code (first difference at node '" + path + "')"),
          level(level),
          node(path) {}
    std::size_t level;
    std::string node;
};

inline const std::vector<std::string>& code_base() {
    static const std::vector<std::string> base{"0", "1"};
    return base;
}

inline Alphabet code_alphabet(std::size_t arity = 1) { return Alphabet(code_base(), arity); }

/// Longest spine a code may have; longer ones are rejected as too large to build.
inline constexpr std::size_t kMaxSpine = 1u << 20;

/// Whether a < w^(w^n).
inline bool below_level(const OrdCNF& a, std::size_t n) {
    for (const auto& t : a.terms())
        if (t.exponent.size() > n) return false;
    return true;
}

namespace detail {

inline SigmaTree leaf0() { return SigmaTree::leaf("0"); }

inline std::string bit_label(const Natural& b, std::size_t j) { return bit_test(b, static_cast<unsigned>(j)) ? "1" : "0"; }

inline std::size_t msb_index(const Natural& b) { return static_cast<std::size_t>(boost::multiprecision::msb(b)); }

/// Bits j.. of b along a right branch; b >> j must be nonzero.
inline SigmaTree coefficient_tail(const Natural& b, std::size_t j) {
    const std::size_t msb = msb_index(b);
    SigmaTree t = SigmaTree::leaf("1");
    for (std::size_t i = msb; i-- > j;) t = SigmaTree::node(bit_label(b, i), leaf0(), t);
    return t;
}

inline std::size_t small_exponent(const Natural& e) {
    if (e >= kMaxSpine) throw ResourceError("ordinal code too large to build");
    return static_cast<std::size_t>(e);
}

inline SigmaTree encode_level1(const std::vector<Natural>& b) {
    // b[i] is the coefficient of w^i; b.back() > 0
    const std::size_t m = b.size() - 1;
    SigmaTree t;
    if (b[m] == 1) {
        t = SigmaTree::leaf("1");
    } else {
        t = SigmaTree::node(bit_label(b[m], 0), leaf0(), coefficient_tail(b[m], 1));
    }
    for (std::size_t i = m; i-- > 0;) {
        SigmaTree right = b[i] <= 1 ? leaf0() : coefficient_tail(b[i], 1);
        t = SigmaTree::node(bit_label(b[i], 0), t, right);
    }
    return t;
}

}  // namespace detail

/// Canonical code of a at level n; OutOfRange unless a < w^(w^n).
inline SigmaTree encode(std::size_t n, const OrdCNF& a) {
    if (n == 0) throw DomainError("level must be at least 1");
    if (!below_level(a, n)) throw OutOfRange(render(a) + " is not below w^(w^" + std::to_string(n) + ")");
    if (a.is_zero()) return detail::leaf0();
    if (n == 1) {
        const std::size_t m = detail::small_exponent(a.terms().front().exponent.coeff(0));
        std::vector<Natural> b(m + 1);
        for (const auto& t : a.terms()) b[detail::small_exponent(t.exponent.coeff(0))] = t.coeff;
        return detail::encode_level1(b);
    }
    // split by the coefficient of w^(n-1) in the exponent
    const std::size_t k = detail::small_exponent(a.terms().front().exponent.coeff(n - 1));
    std::vector<std::vector<CnfTerm>> parts(k + 1);
    for (const auto& t : a.terms())
        parts[detail::small_exponent(t.exponent.coeff(n - 1))].push_back(CnfTerm{t.exponent.truncated(n - 1), t.coeff});
    SigmaTree spine = SigmaTree::node("0", detail::leaf0(), encode(n - 1, OrdCNF(parts[k])));
    for (std::size_t i = k; i-- > 0;) spine = SigmaTree::node("0", spine, encode(n - 1, OrdCNF(parts[i])));
    return spine;
}

namespace detail {

inline OrdCNF decode_lenient(std::size_t n, const SigmaTree& t, std::size_t at);

/// Preorder index of the left spine nodes starting at `at`.
inline std::vector<std::size_t> left_spine(const SigmaTree& t, std::size_t at) {
    std::vector<std::size_t> v{at};
    while (!t.nodes()[v.back()].is_leaf()) v.push_back(static_cast<std::size_t>(t.nodes()[v.back()].left));
    return v;
}

inline Natural right_bits(const SigmaTree& t, std::size_t at) {
    Natural b = 0;
    std::size_t j = 0;
    for (std::size_t x = at;; ++j) {
        if (t.nodes()[x].label == "1") bit_set(b, static_cast<unsigned>(j));
        if (t.nodes()[x].is_leaf()) break;
        x = static_cast<std::size_t>(t.nodes()[x].right);
    }
    return b;
}

inline OrdCNF decode_lenient(std::size_t n, const SigmaTree& t, std::size_t at) {
    const auto spine = left_spine(t, at);
    std::vector<CnfTerm> terms;
    if (n == 1) {
        for (std::size_t i = spine.size(); i-- > 0;) {
            Natural b = right_bits(t, spine[i]);
            if (b != 0) terms.push_back(CnfTerm{Poly::constant(i), std::move(b)});
        }
        return OrdCNF(std::move(terms));
    }
    for (std::size_t i = spine.size(); i-- > 0;) {
        const auto& node = t.nodes()[spine[i]];
        if (node.is_leaf()) continue;
        const OrdCNF part = decode_lenient(n - 1, t, static_cast<std::size_t>(node.right));
        for (const auto& term : part.terms()) {
            std::vector<Natural> c = term.exponent.coeffs();
            c.resize(n);
            c[n - 1] = i;
            terms.push_back(CnfTerm{Poly(std::move(c)), term.coeff});
        }
    }
    return OrdCNF(std::move(terms));
}

/// Path of the first node where two trees differ (structure or label), preorder.
inline std::string first_difference(const SigmaTree& a, const SigmaTree& b) {
    const auto pa = a.paths();
    const auto pb = b.paths();
    for (std::size_t i = 0; i < pa.size() || i < pb.size(); ++i) {
        if (i >= pa.size()) return pb[i].text();
        if (i >= pb.size() || pa[i] != pb[i]) return pa[i].text();
        if (a.nodes()[i].label != b.nodes()[i].label) return pa[i].text();
    }
    return "";
}

}  // namespace detail

/// Inverse of encode; NotACode names the first node where t departs from the
/// code of the ordinal its spine would denote.
inline OrdCNF decode(std::size_t n, const SigmaTree& t) {
    if (n == 0) throw DomainError("level must be at least 1");
    const auto paths = t.paths();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t.nodes()[i].label != "0" && t.nodes()[i].label != "1") throw NotACode(n, paths[i].text());
    OrdCNF a = detail::decode_lenient(n, t, 0);
    SigmaTree canon;
    try {
        canon = encode(n, a);
    } catch (const ResourceError&) {
        throw NotACode(n, "");
    }
    if (!(canon.nodes() == t.nodes())) throw NotACode(n, detail::first_difference(t, canon));
    return a;
}

/// L_n: exactly the codes at level n.
inline TreeAutomaton domain_automaton(std::size_t n) {
    if (n == 0) throw DomainError("level must be at least 1");
    const Alphabet al = code_alphabet();
    const Symbol s0 = *al.parse("0"), s1 = *al.parse("1");
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    // level 1 states: 0 root, 1 spine, 2 coefficient tail, 3 forced zero leaf
    enum : State { kRoot = 0, kSpine = 1, kTail = 2, kZero = 3 };
    leaf.push_back({kZero, s0});
    leaf.push_back({kRoot, s0});
    for (State s : {kRoot, kSpine, kTail}) leaf.push_back({s, s1});
    for (Symbol x : {s0, s1}) {
        trans.push_back({kTail, x, kZero, kTail});
        for (State s : {kRoot, kSpine}) {
            trans.push_back({s, x, kZero, kTail});
            trans.push_back({s, x, kSpine, kZero});
            trans.push_back({s, x, kSpine, kTail});
        }
    }
    State root = kRoot, nonzero = kSpine;
    State next = 4;
    for (std::size_t level = 2; level <= n; ++level) {
        const State r = next++, sp = next++;
        leaf.push_back({r, s0});
        for (State s : {r, sp}) {
            trans.push_back({s, s0, sp, root});
            trans.push_back({s, s0, kZero, nonzero});
        }
        root = r;
        nonzero = sp;
    }
    // only the top root is initial
    return trim(TreeAutomaton(al, next, {root}, std::move(leaf), std::move(trans)));
}

}  // namespace ordauto

#endif
