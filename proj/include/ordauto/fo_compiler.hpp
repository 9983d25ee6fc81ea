#ifndef ORDAUTO_FO_COMPILER_HPP
#define ORDAUTO_FO_COMPILER_HPP

// Compilation of first-order formulas over an automatic presentation.
//
// Every subformula is compiled over its own free variables, ordered by a fixed
// rank (the requested free order first, then binders in preorder), and only
// widened where a connective needs it.  A compiled DFA stands for its language
// intersected with the dom-tuples: only convolution shape is enforced while
// building, dom is imposed on a coordinate before it is projected away and on
// the final result.  Negation is therefore relative to the dom-tuples and
// quantifiers range over dom.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "automaton.hpp"
#include "closure.hpp"
#include "dfa.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "tree.hpp"

namespace ordauto {

class UnknownRelation : public FormatError {
public:
    explicit UnknownRelation(const std::string& rel) : FormatError("unknown relation '" + rel + "'"), name(rel) {}
    std::string name;
};

class FreeVarMissing : public DomainError {
public:
    explicit FreeVarMissing(const std::string& v)
        : DomainError("free variable '" + v + "' is not in the variable order"), var(v) {}
    std::string var;
};

class FreeVarsPresent : public DomainError {
public:
    explicit FreeVarsPresent(const std::string& v) : DomainError("sentence has free variable '" + v + "'") {}
};

class NotInDomain : public DomainError {
public:
    using DomainError::DomainError;
};

/// Named relation automata; `dom` (unary) is the domain.
struct Presentation {
    std::map<std::string, TreeAutomaton> relations;
    /// Optional deterministic forms of some relations, same languages.
    std::map<std::string, BottomUpDFA> dfas;

    /// Sets a relation from its deterministic form.
    void set(const std::string& name, BottomUpDFA d, const Limits& limits = {}) {
        relations.insert_or_assign(name, tidy(to_nta(d), limits));
        dfas.insert_or_assign(name, std::move(d));
    }

    const TreeAutomaton& dom() const { return at("dom"); }
    Alphabet base() const { return dom().alphabet(); }

    const TreeAutomaton& at(const std::string& name) const {
        auto it = relations.find(name);
        if (it == relations.end()) throw UnknownRelation(name);
        return it->second;
    }

    Signature signature() const {
        Signature s;
        for (const auto& [n, a] : relations) s[n] = a.alphabet().arity();
        return s;
    }

    /// Checks the signature: dom unary, all relations over the dom base alphabet.
    void validate() const {
        if (!relations.count("dom")) throw FormatError("presentation lacks a dom relation");
        if (dom().alphabet().arity() != 1) throw FormatError("dom must be unary");
        for (const auto& [n, a] : relations)
            if (!(a.alphabet().plain() == base())) throw AlphabetMismatch("relation '" + n + "' uses another base alphabet");
    }
};

/// Extends p with the unary relation name = {t}; t must be in dom.
inline Presentation bind_constant(const Presentation& p, const std::string& name, const SigmaTree& t) {
    if (!accepts(p.dom(), t)) throw NotInDomain("tree " + t.to_string() + " is not in the domain");
    Presentation out = p;
    out.relations.insert_or_assign(name, TreeAutomaton::singleton(p.base(), t));
    out.dfas.erase(name);
    return out;
}

namespace detail {

/// Payload for "no state".
inline constexpr std::uint64_t kNoState = BottomUpDFA::kNone;

struct AndOp {
    const BottomUpDFA& a;
    const BottomUpDFA& b;
    static std::uint64_t pack(State x, State y) { return (std::uint64_t{x} << 32) | y; }
    std::optional<std::uint64_t> leaf(Symbol s) const { return join(a.leaf(s), b.leaf(s)); }
    std::optional<std::uint64_t> step(Symbol s, std::uint64_t l, std::uint64_t r) const {
        return join(a.step(s, State(l >> 32), State(r >> 32)), b.step(s, State(l), State(r)));
    }
    bool accepting(std::uint64_t p) const { return a.accepting()[p >> 32] && b.accepting()[State(p)]; }
    void candidates(std::uint64_t l, std::uint64_t r, std::vector<Symbol>& out) const {
        auto [x, xe] = a.steps_from(State(l >> 32), State(r >> 32));
        auto [y, ye] = b.steps_from(State(l), State(r));
        while (x != xe && y != ye) {
            if (x->sym < y->sym) ++x;
            else if (y->sym < x->sym) ++y;
            else {
                out.push_back(x->sym);
                ++x;
                ++y;
            }
        }
    }

private:
    static std::optional<std::uint64_t> join(State x, State y) {
        if (x == BottomUpDFA::kNone || y == BottomUpDFA::kNone) return std::nullopt;
        return pack(x, y);
    }
};

struct OrOp {
    const BottomUpDFA& a;
    const BottomUpDFA& b;
    std::optional<std::uint64_t> leaf(Symbol s) const { return join(a.leaf(s), b.leaf(s)); }
    std::optional<std::uint64_t> step(Symbol s, std::uint64_t l, std::uint64_t r) const {
        return join(a.step(s, State(l >> 32), State(r >> 32)), b.step(s, State(l), State(r)));
    }
    bool accepting(std::uint64_t p) const {
        const State x = State(p >> 32), y = State(p);
        return (x != BottomUpDFA::kNone && a.accepting()[x]) || (y != BottomUpDFA::kNone && b.accepting()[y]);
    }

private:
    static std::optional<std::uint64_t> join(State x, State y) {
        if (x == BottomUpDFA::kNone && y == BottomUpDFA::kNone) return std::nullopt;
        return (std::uint64_t{x} << 32) | y;
    }
};

struct IdOp {
    const BottomUpDFA& a;
    std::optional<std::uint64_t> leaf(Symbol s) const { return live(a.leaf(s)); }
    std::optional<std::uint64_t> step(Symbol s, std::uint64_t l, std::uint64_t r) const {
        return live(a.step(s, State(l), State(r)));
    }
    bool accepting(std::uint64_t p) const { return a.accepting()[p]; }
    void candidates(std::uint64_t l, std::uint64_t r, std::vector<Symbol>& out) const {
        auto [x, xe] = a.steps_from(State(l), State(r));
        for (; x != xe; ++x) out.push_back(x->sym);
    }

private:
    static std::optional<std::uint64_t> live(State q) {
        if (q == BottomUpDFA::kNone) return std::nullopt;
        return q;
    }
};

struct NotOp {
    const BottomUpDFA& a;
    std::optional<std::uint64_t> leaf(Symbol s) const { return a.leaf(s); }
    std::optional<std::uint64_t> step(Symbol s, std::uint64_t l, std::uint64_t r) const {
        return a.step(s, State(l), State(r));
    }
    bool accepting(std::uint64_t p) const { return p == kNoState || !a.accepting()[p]; }
};

/// Runs `a` on a symbol-wise image of the input.  map[s] is a symbol of `a`,
/// kAbsent when none of a's coordinates is present, or kDrop.
struct MapOp {
    static constexpr std::int64_t kDrop = -2, kAbsent = -1;
    static constexpr std::uint64_t kAbsentState = kNoState - 1;

    const BottomUpDFA& a;
    std::vector<std::int64_t> map;

    std::optional<std::uint64_t> leaf(Symbol s) const {
        const auto m = map[s];
        if (m == kDrop) return std::nullopt;
        if (m == kAbsent) return kAbsentState;
        return live(a.leaf(Symbol(m)));
    }
    std::optional<std::uint64_t> step(Symbol s, std::uint64_t l, std::uint64_t r) const {
        const auto m = map[s];
        const bool la = l == kAbsentState, ra = r == kAbsentState;
        if (m == kDrop || la != ra) return std::nullopt;
        if (m == kAbsent) return la ? std::optional<std::uint64_t>(kAbsentState) : std::nullopt;
        return live(la ? a.leaf(Symbol(m)) : a.step(Symbol(m), State(l), State(r)));
    }
    bool accepting(std::uint64_t p) const { return p != kAbsentState && a.accepting()[p]; }

    /// Indexes `map`; call once it is filled in.
    void prepare() {
        preimage.assign(a.alphabet().size(), {});
        above_absent.clear();
        for (Symbol s = 0; s < map.size(); ++s) {
            if (map[s] >= 0) preimage[Symbol(map[s])].push_back(s);
            if (map[s] == kAbsent || (map[s] >= 0 && a.leaf(Symbol(map[s])) != BottomUpDFA::kNone))
                above_absent.push_back(s);
        }
    }
    void candidates(std::uint64_t l, std::uint64_t r, std::vector<Symbol>& out) const {
        const bool la = l == kAbsentState, ra = r == kAbsentState;
        if (la != ra) return;
        if (la) {
            out.insert(out.end(), above_absent.begin(), above_absent.end());
            return;
        }
        auto [x, xe] = a.steps_from(State(l), State(r));
        for (; x != xe; ++x) out.insert(out.end(), preimage[x->sym].begin(), preimage[x->sym].end());
    }

    std::vector<std::vector<Symbol>> preimage;
    std::vector<Symbol> above_absent;

private:
    static std::optional<std::uint64_t> live(State q) {
        if (q == BottomUpDFA::kNone) return std::nullopt;
        return q;
    }
};

/// Subset construction for projecting coordinate i of `a`.  A node of the
/// projection may be a leaf where `a` still reads subtrees holding only i.
class ProjectOp {
public:
    ProjectOp(const BottomUpDFA& a, std::size_t i, const Alphabet& out) : a_(a), ext_(out.size()) {
        const Alphabet& in = a.alphabet();
        std::vector<bool> only(a.num_states(), false);
        for (Symbol s = 0; s < in.size(); ++s)
            if (in.only_coordinate(s, i) && a.leaf(s) != BottomUpDFA::kNone) only[a.leaf(s)] = true;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& st : a.steps())
                if (!only[st.dst] && only[st.left] && only[st.right] && in.only_coordinate(st.sym, i))
                    changed = only[st.dst] = true;
        }
        for (State q = 0; q < a.num_states(); ++q)
            if (only[q]) only_.push_back(q);
        for (Symbol s = 0; s < out.size(); ++s) {
            const auto parts = out.parts(s);
            for (std::uint32_t x = 0; x < in.radix(); ++x) {
                auto p = parts;
                p.insert(p.begin() + static_cast<std::ptrdiff_t>(i), x);
                if (auto t = in.make(p)) ext_[s].push_back({*t, x != 0});
            }
        }
    }

    std::optional<std::uint64_t> leaf(Symbol s) {
        scratch_.clear();
        for (const auto& [t, present] : ext_[s]) {
            add(a_.leaf(t));
            if (present)
                for (State l : only_)
                    for (State r : only_) add(a_.step(t, l, r));
        }
        return finish();
    }

    std::optional<std::uint64_t> step(Symbol s, std::uint64_t l, std::uint64_t r) {
        scratch_.clear();
        const auto ls = subsets_[l], rs = subsets_[r];
        for (const auto& [t, present] : ext_[s])
            for (State p : ls)
                for (State q : rs) add(a_.step(t, p, q));
        return finish();
    }

    bool accepting(std::uint64_t p) const {
        const auto& s = subsets_[p];
        return std::any_of(s.begin(), s.end(), [&](State q) { return a_.accepting()[q]; });
    }

private:
    void add(State q) {
        if (q != BottomUpDFA::kNone) scratch_.push_back(q);
    }
    std::optional<std::uint64_t> finish() {
        if (scratch_.empty()) return std::nullopt;
        std::sort(scratch_.begin(), scratch_.end());
        scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
        auto [it, fresh] = ids_.emplace(scratch_, subsets_.size());
        if (fresh) subsets_.push_back(scratch_);
        return it->second;
    }

    const BottomUpDFA& a_;
    std::vector<std::vector<std::pair<Symbol, bool>>> ext_;
    std::vector<State> only_;
    std::vector<State> scratch_;
    std::vector<std::vector<State>> subsets_;
    std::unordered_map<std::vector<State>, std::uint64_t, VectorHash> ids_;
};

}  // namespace detail

class Compiler {
public:
    Compiler(const Presentation& p, const Limits& limits = {})
        : p_(p), limits_(limits), base_(p.base()),
          dom_dfa_(p.dfas.count("dom") ? p.dfas.at("dom") : minimal_dfa(p.dom(), limits)),
          any_dfa_(universal_dfa(base_)) {
        dom_nonempty_ = dom_dfa_.num_states() > 0;
    }

    /// Automaton over |free_order|-ary convolutions of the satisfying dom tuples.
    /// An empty order yields dom for a true sentence and the empty language otherwise.
    TreeAutomaton compile(const FormulaPtr& phi, const std::vector<std::string>& free_order) {
        return tidy(to_nta(compile_dfa(phi, free_order)), limits_);
    }

    BottomUpDFA compile_dfa(const FormulaPtr& phi, const std::vector<std::string>& free_order) {
        rank_.clear();
        for (const auto& v : free_order)
            if (!rank_.emplace(v, rank_.size()).second) throw DomainError("duplicate variable '" + v + "' in order");
        for (const auto& v : free_variables(*phi))
            if (!rank_.count(v)) throw FreeVarMissing(v);
        assign_ranks(*phi);
        Rel r = run(*phi);
        if (free_order.empty()) return r.truth ? dom_dfa_ : empty_dfa(1);
        return in_domain(widen(std::move(r), free_order).dfa);
    }

    BottomUpDFA compile_dfa(std::string_view phi, const std::vector<std::string>& free_order) {
        return compile_dfa(parse(phi), free_order);
    }

    bool eval_sentence(std::string_view phi) { return eval_sentence(parse(phi)); }

    /// Adds or replaces a relation visible to later compilations.
    void define(const std::string& name, BottomUpDFA d) {
        if (!(d.alphabet().plain() == base_)) throw AlphabetMismatch("relation '" + name + "' uses another base alphabet");
        rel_dfa_.insert_or_assign(name, std::move(d));
        atoms_.erase(atoms_.lower_bound(name + ':'), atoms_.lower_bound(name + ';'));
    }

    Signature signature() const {
        Signature sig = p_.signature();
        for (const auto& [n, d] : rel_dfa_) sig[n] = d.alphabet().arity();
        return sig;
    }

    FormulaPtr parse(std::string_view phi) const {
        const Signature sig = signature();
        return parse_formula(phi, &sig);
    }

    const BottomUpDFA& dom_dfa() const { return dom_dfa_; }

    bool eval_sentence(const FormulaPtr& phi) {
        for (const auto& v : free_variables(*phi)) throw FreeVarsPresent(v);
        rank_.clear();
        assign_ranks(*phi);
        return run(*phi).truth;
    }

private:
    // vars empty: a truth value; otherwise a minimal DFA over vars.size() coordinates
    struct Rel {
        std::vector<std::string> vars;
        BottomUpDFA dfa;
        bool truth = false;
    };

    void assign_ranks(const Formula& f) {
        for (const auto& v : f.vars) rank_.emplace(v, rank_.size());
        for (const auto& k : f.kids) assign_ranks(*k);
    }

    Rel truth(bool b) const { return Rel{{}, BottomUpDFA{}, b}; }

    BottomUpDFA empty_dfa(std::size_t m) const {
        const Alphabet al = base_.with_arity(m);
        return BottomUpDFA(al, 0, std::vector<State>(al.size(), BottomUpDFA::kNone), {}, {});
    }

    /// Explores op over valid m-ary convolutions; over dom-tuples with `domain`.
    template <class Op>
    BottomUpDFA lift(Op& op, std::size_t m, bool domain = false) {
        const Alphabet al = base_.with_arity(m);
        TupleContext ctx(domain ? dom_dfa_ : any_dfa_, al);
        LiftedModel<TupleContext, Op> model(ctx, op);
        return minimize(prune(explore(model, al, limits_)));
    }

    BottomUpDFA in_domain(const BottomUpDFA& a) {
        detail::IdOp op{a};
        return lift(op, a.alphabet().arity(), true);
    }

    const BottomUpDFA& relation(const std::string& name) {
        auto it = rel_dfa_.find(name);
        if (it != rel_dfa_.end()) return it->second;
        if (auto d = p_.dfas.find(name); d != p_.dfas.end()) return d->second;
        return rel_dfa_.emplace(name, minimal_dfa(p_.at(name), limits_)).first->second;
    }

    std::vector<std::string> sorted(std::vector<std::string> v) const {
        std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return rank_.at(a) < rank_.at(b); });
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    /// Runs `a` on coordinates src of an m-ary input; other coordinates are free
    /// except that each pair in `agree` must carry equal parts.
    BottomUpDFA mapped(const BottomUpDFA& a, const std::vector<std::size_t>& src, std::size_t m,
                       const std::vector<std::pair<std::size_t, std::size_t>>& agree = {}) {
        const Alphabet al = base_.with_arity(m);
        detail::MapOp op{a, std::vector<std::int64_t>(al.size(), detail::MapOp::kDrop), {}, {}};
        for (Symbol s = 0; s < al.size(); ++s) {
            if (std::any_of(agree.begin(), agree.end(), [&](auto e) { return al.part(s, e.first) != al.part(s, e.second); }))
                continue;
            std::vector<std::uint32_t> parts;
            for (std::size_t c : src) parts.push_back(al.part(s, c));
            if (auto t = a.alphabet().make(parts)) op.map[s] = *t;
            else op.map[s] = detail::MapOp::kAbsent;
        }
        op.prepare();
        return lift(op, m);
    }

    /// Widens r to `target` (rank-sorted, a superset of r.vars).
    Rel widen(Rel r, const std::vector<std::string>& target) {
        if (r.vars == target) return r;
        if (r.vars.empty()) {
            if (!r.truth) return Rel{target, empty_dfa(target.size()), false};
            const BottomUpDFA none = empty_dfa(target.size());
            detail::NotOp op{none};
            return Rel{target, lift(op, target.size()), false};
        }
        std::vector<std::size_t> src;
        for (const auto& v : r.vars)
            src.push_back(static_cast<std::size_t>(std::find(target.begin(), target.end(), v) - target.begin()));
        return Rel{target, mapped(r.dfa, src, target.size()), false};
    }

    std::vector<std::string> joined(const Rel& a, const Rel& b) const {
        std::vector<std::string> v = a.vars;
        v.insert(v.end(), b.vars.begin(), b.vars.end());
        return sorted(std::move(v));
    }

    Rel negate(Rel r) {
        if (r.vars.empty()) return truth(!r.truth);
        detail::NotOp op{r.dfa};
        r.dfa = lift(op, r.vars.size());
        return r;
    }

    template <class Op>
    Rel combine(Rel a, Rel b) {
        const auto v = joined(a, b);
        Rel x = widen(std::move(a), v), y = widen(std::move(b), v);
        Op op{x.dfa, y.dfa};
        return Rel{v, lift(op, v.size()), false};
    }

    Rel conj(Rel a, Rel b) {
        if (a.vars.empty()) return a.truth ? b : widen(truth(false), b.vars);
        if (b.vars.empty()) return b.truth ? a : widen(truth(false), a.vars);
        return combine<detail::AndOp>(std::move(a), std::move(b));
    }

    Rel disj(Rel a, Rel b) {
        if (a.vars.empty()) return a.truth ? widen(truth(true), b.vars) : b;
        if (b.vars.empty()) return b.truth ? widen(truth(true), a.vars) : a;
        return combine<detail::OrOp>(std::move(a), std::move(b));
    }

    Rel exists(const std::string& x, Rel r) {
        if (r.vars.empty()) return truth(r.truth && dom_nonempty_);
        const auto it = std::find(r.vars.begin(), r.vars.end(), x);
        if (it == r.vars.end()) return r;
        if (r.vars.size() == 1) return truth(in_domain(r.dfa).num_states() > 0);
        const auto i = static_cast<std::size_t>(it - r.vars.begin());
        const std::string key = ":dom:" + std::to_string(i) + '/' + std::to_string(r.vars.size());
        auto dom_i = atoms_.find(key);
        if (dom_i == atoms_.end()) dom_i = atoms_.emplace(key, mapped(dom_dfa_, {i}, r.vars.size())).first;
        detail::AndOp both{r.dfa, dom_i->second};
        const BottomUpDFA bound = lift(both, r.vars.size());
        r.vars.erase(it);
        detail::ProjectOp op(bound, i, base_.with_arity(r.vars.size()));
        r.dfa = lift(op, r.vars.size());
        return r;
    }

    Rel run(const Formula& f) {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::Atom: {
                const BottomUpDFA& rel = relation(f.name);
                if (rel.alphabet().arity() != f.vars.size())
                    throw ArityError(f.name, rel.alphabet().arity(), f.vars.size());
                auto vars = sorted(f.vars);
                std::string key = f.name + ':';
                std::vector<std::size_t> src;
                for (const auto& v : f.vars) {
                    src.push_back(static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin()));
                    key += std::to_string(src.back()) + ',';
                }
                auto it = atoms_.find(key);
                if (it == atoms_.end()) it = atoms_.emplace(key, mapped(rel, src, vars.size())).first;
                return Rel{vars, it->second, false};
            }
            case K::Eq: {
                if (f.vars[0] == f.vars[1]) return Rel{{f.vars[0]}, any_dfa_, false};
                return Rel{sorted(f.vars), mapped(any_dfa_, {0}, 2, {{0, 1}}), false};
            }
            case K::Not: return negate(run(*f.kids[0]));
            case K::And: return conj(run(*f.kids[0]), run(*f.kids[1]));
            case K::Or: return disj(run(*f.kids[0]), run(*f.kids[1]));
            case K::Implies: return disj(negate(run(*f.kids[0])), run(*f.kids[1]));
            case K::Exists: return exists(f.vars[0], run(*f.kids[0]));
            case K::Forall: return negate(exists(f.vars[0], negate(run(*f.kids[0]))));
        }
        return truth(false);
    }

    Presentation p_;
    Limits limits_;
    Alphabet base_;
    BottomUpDFA dom_dfa_;
    BottomUpDFA any_dfa_;
    bool dom_nonempty_ = false;
    std::map<std::string, std::size_t> rank_;
    std::map<std::string, BottomUpDFA> rel_dfa_;
    // mapped atoms by "name:positions", and dom on coordinate i of m as ":dom:i/m"
    std::map<std::string, BottomUpDFA> atoms_;
};

inline TreeAutomaton compile(const Presentation& p, const FormulaPtr& phi, const std::vector<std::string>& free_order,
                             const Limits& limits = {}) {
    return Compiler(p, limits).compile(phi, free_order);
}

inline TreeAutomaton compile(const Presentation& p, std::string_view phi, const std::vector<std::string>& free_order,
                             const Limits& limits = {}) {
    const Signature sig = p.signature();
    return compile(p, parse_formula(phi, &sig), free_order, limits);
}

inline bool eval_sentence(const Presentation& p, const FormulaPtr& phi, const Limits& limits = {}) {
    return Compiler(p, limits).eval_sentence(phi);
}

inline bool eval_sentence(const Presentation& p, std::string_view phi, const Limits& limits = {}) {
    const Signature sig = p.signature();
    return eval_sentence(p, parse_formula(phi, &sig), limits);
}

struct SanityItem {
    std::string name;
    bool passed;
};

/// The sentences are written so that no subformula has more than four free variables.
inline const std::vector<std::pair<std::string, std::string>>& sanity_sentences() {
    static const std::vector<std::pair<std::string, std::string>> s{
        {"le reflexive", "ALL x. le(x,x)"},
        {"le antisymmetric", "ALL x. ALL y. (le(x,y) & le(y,x) -> x=y)"},
        {"le transitive", "ALL x. ALL y. ALL z. (le(x,y) & le(y,z) -> le(x,z))"},
        {"le total", "ALL x. ALL y. (le(x,y) | le(y,x))"},
        {"add functional", "~EX x. EX y. EX z. (add(x,y,z) & EX w. (add(x,y,w) & ~z=w))"},
        {"zero is identity", "ALL z. ((ALL y. le(z,y)) -> ALL x. add(z,x,x))"},
        {"add strictly monotone on the right",
         "~EX x. EX y. EX s. (add(x,y,s) & EX v. ((le(y,v) & ~y=v) & EX t. (add(x,v,t) & le(t,s))))"},
        {"definedness closed downward",
         "~EX x. EX y. ((EX s. add(x,y,s)) & EX u. (le(u,x) & EX v. (le(v,y) & ~EX t. add(u,v,t))))"},
        {"add associative",
         "~EX x. EX y. EX z. EX s. (add(x,y,s) & EX t. (add(y,z,t) & EX w. (add(s,z,w) & EX r. (add(x,t,r) & ~r=w))))"},
    };
    return s;
}

/// Evaluates the ordinal-with-addition axioms above; well-foundedness is not checked.
inline std::vector<SanityItem> sanity_check(const Presentation& p, const Limits& limits = {}) {
    p.validate();
    const Signature sig = p.signature();
    if (!sig.count("le") || sig.at("le") != 2) throw FormatError("presentation needs a binary le");
    if (!sig.count("add") || sig.at("add") != 3) throw FormatError("presentation needs a ternary add");
    Compiler c(p, limits);
    std::vector<SanityItem> out;
    for (const auto& [name, text] : sanity_sentences()) out.push_back({name, c.eval_sentence(parse_formula(text, &sig))});
    return out;
}

}  // namespace ordauto

#endif
