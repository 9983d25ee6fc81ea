#ifndef ORDAUTO_DFA_HPP
#define ORDAUTO_DFA_HPP

// Deterministic bottom-up automata built by on-the-fly exploration of implicit
// models, plus the subset construction and relative complement on top of it.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "automaton.hpp"
#include "error.hpp"
#include "tree.hpp"

namespace ordauto {

namespace detail {

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
        std::uint64_t h = p.first * 0x9E3779B97F4A7C15ull ^ p.second;
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

struct VectorHash {
    std::size_t operator()(const std::vector<State>& v) const noexcept {
        std::uint64_t h = v.size();
        for (State s : v) h = (h ^ s) * 0x100000001B3ull;
        return static_cast<std::size_t>(h);
    }
};

}  // namespace detail

struct StepRule {
    Symbol sym;
    State left;
    State right;
    State dst;
    auto operator<=>(const StepRule&) const = default;
};

/// Partial deterministic bottom-up automaton.  A missing leaf or step entry
/// stands for a rejecting sink; the determinized form of an NTA is total.
class BottomUpDFA {
public:
    static constexpr State kNone = static_cast<State>(-1);

    BottomUpDFA() = default;

    BottomUpDFA(Alphabet alphabet, std::size_t num_states, std::vector<State> leaf, std::vector<StepRule> steps,
                std::vector<bool> accepting)
        : alphabet_(std::move(alphabet)),
          num_states_(num_states),
          leaf_(std::move(leaf)),
          steps_(std::move(steps)),
          accepting_(std::move(accepting)) {
        // ordered by (left, right, sym) so that each child pair owns a sym-sorted run
        sort_steps();
        for (std::size_t i = 0; i < steps_.size();) {
            std::size_t j = i;
            while (j < steps_.size() && steps_[j].left == steps_[i].left && steps_[j].right == steps_[i].right) {
                if (j > i && steps_[j].sym == steps_[j - 1].sym) throw Error("nondeterministic step in BottomUpDFA");
                ++j;
            }
            pairs_.emplace(pack(steps_[i].left, steps_[i].right), std::make_pair(i, j));
            i = j;
        }
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_states() const noexcept { return num_states_; }
    const std::vector<State>& leaf_states() const noexcept { return leaf_; }
    /// Sorted by (left, right, sym).
    const std::vector<StepRule>& steps() const noexcept { return steps_; }
    const std::vector<bool>& accepting() const noexcept { return accepting_; }

    State leaf(Symbol a) const { return leaf_[a]; }

    /// The steps whose children are (l, r), sorted by symbol.
    std::pair<const StepRule*, const StepRule*> steps_from(State l, State r) const {
        if (l == kNone || r == kNone) return {nullptr, nullptr};
        auto it = pairs_.find(pack(l, r));
        if (it == pairs_.end()) return {nullptr, nullptr};
        return {steps_.data() + it->second.first, steps_.data() + it->second.second};
    }

    State step(Symbol a, State l, State r) const {
        auto [b, e] = steps_from(l, r);
        if (b == e) return kNone;
        const StepRule* it = std::lower_bound(b, e, a, [](const StepRule& x, Symbol s) { return x.sym < s; });
        return it != e && it->sym == a ? it->dst : kNone;
    }

    /// State reached at the root, kNone when the run falls into the sink.
    State run(const SigmaTree& t) const {
        const auto syms = encode_labels(alphabet_, t);
        std::vector<State> at(t.size());
        for (std::size_t i = t.size(); i-- > 0;) {
            const auto& n = t.nodes()[i];
            at[i] = n.is_leaf() ? leaf_[syms[i]]
                                : step(syms[i], at[static_cast<std::size_t>(n.left)], at[static_cast<std::size_t>(n.right)]);
        }
        return at[0];
    }

    bool accepts(const SigmaTree& t) const {
        const State q = run(t);
        return q != kNone && accepting_[q];
    }

private:
    Alphabet alphabet_;
    std::size_t num_states_ = 0;
    std::vector<State> leaf_;
    std::vector<StepRule> steps_;
    std::vector<bool> accepting_;
    static std::uint64_t pack(State l, State r) { return (std::uint64_t{l} << 32) | r; }

    // stable counting passes on sym, right, left; then drops duplicates
    void sort_steps() {
        std::vector<StepRule> tmp(steps_.size());
        auto pass = [&](std::size_t range, auto key) {
            std::vector<std::size_t> at(range + 1, 0);
            for (const auto& s : steps_) ++at[key(s) + 1];
            for (std::size_t i = 0; i < range; ++i) at[i + 1] += at[i];
            for (const auto& s : steps_) tmp[at[key(s)]++] = s;
            steps_.swap(tmp);
        };
        for (const auto& s : steps_)
            if (s.sym >= alphabet_.size() || s.left >= num_states_ || s.right >= num_states_ || s.dst >= num_states_)
                throw Error("BottomUpDFA step out of range");
        pass(alphabet_.size(), [](const StepRule& s) { return std::size_t{s.sym}; });
        pass(num_states_, [](const StepRule& s) { return std::size_t{s.right}; });
        pass(num_states_, [](const StepRule& s) { return std::size_t{s.left}; });
        steps_.erase(std::unique(steps_.begin(), steps_.end()), steps_.end());
    }

    std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> pairs_;
};

using Move = std::pair<Symbol, std::uint64_t>;

/// Builds the reachable part of an implicit deterministic model.
///
/// A model exposes 64-bit keys and
///   void leaf_moves(std::vector<Move>&)
///   void step_moves(std::uint64_t left, std::uint64_t right, std::vector<Move>&)
///   bool accepting(std::uint64_t)
///   std::uint64_t group(std::uint64_t)
/// Only keys of equal group are ever combined as siblings, so group() must
/// separate keys whose pairing can never produce a move.
/// When `keys_out` is given it receives the key of every state.
template <class Model>
BottomUpDFA explore(Model& model, const Alphabet& alphabet, const Limits& limits = {},
                    std::vector<std::uint64_t>* keys_out = nullptr) {
    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::uint64_t> keys;
    auto intern = [&](std::uint64_t key) {
        auto [it, fresh] = ids.emplace(key, static_cast<State>(keys.size()));
        if (fresh) {
            keys.push_back(key);
            check_budget(keys.size(), limits);
        }
        return it->second;
    };
    std::vector<State> leaf(alphabet.size(), BottomUpDFA::kNone);
    std::vector<Move> moves;
    model.leaf_moves(moves);
    for (const auto& [sym, key] : moves) leaf[sym] = intern(key);

    std::vector<StepRule> steps;
    std::unordered_map<std::uint64_t, std::vector<State>> by_group;
    for (std::size_t next = 0; next < keys.size(); ++next) {
        const auto q = static_cast<State>(next);
        auto& peers = by_group[model.group(keys[q])];
        peers.push_back(q);
        for (std::size_t i = 0; i < peers.size(); ++i) {
            const State p = peers[i];
            for (int dir = 0; dir < (p == q ? 1 : 2); ++dir) {
                const State l = dir == 0 ? p : q;
                const State r = dir == 0 ? q : p;
                moves.clear();
                model.step_moves(keys[l], keys[r], moves);
                for (const auto& [sym, key] : moves) steps.push_back({sym, l, r, intern(key)});
            }
        }
    }
    std::vector<bool> acc(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) acc[i] = model.accepting(keys[i]);
    if (keys_out) *keys_out = keys;
    return BottomUpDFA(alphabet, keys.size(), std::move(leaf), std::move(steps), std::move(acc));
}

/// Explicit DFA viewed as a model; keys are its states.
class DfaModel {
public:
    explicit DfaModel(const BottomUpDFA& d) : d_(&d) {
    }

    void leaf_moves(std::vector<Move>& out) const {
        for (Symbol a = 0; a < d_->leaf_states().size(); ++a)
            if (d_->leaf(a) != BottomUpDFA::kNone) out.emplace_back(a, d_->leaf(a));
    }
    void step_moves(std::uint64_t l, std::uint64_t r, std::vector<Move>& out) const {
        auto [b, e] = d_->steps_from(static_cast<State>(l), static_cast<State>(r));
        for (; b != e; ++b) out.emplace_back(b->sym, b->dst);
    }
    bool accepting(std::uint64_t k) const { return d_->accepting()[k]; }
    std::uint64_t group(std::uint64_t) const { return 0; }

private:
    const BottomUpDFA* d_;
};

/// Every tree over the alphabet, in one state.
class UniversalContext {
public:
    explicit UniversalContext(const Alphabet& a) : size_(a.size()) {}
    void leaf_moves(std::vector<Move>& out) const {
        for (Symbol s = 0; s < size_; ++s) out.emplace_back(s, 0);
    }
    void step_moves(std::uint64_t, std::uint64_t, std::vector<Move>& out) const { leaf_moves(out); }
    bool accepting(std::uint64_t) const { return true; }
    std::uint64_t group(std::uint64_t) const { return 0; }

private:
    Symbol size_;
};

/// Convolutions of k trees each accepted by a plain-alphabet DFA, computed lazily.
///
/// A key holds one digit per coordinate: 0 when the coordinate is absent (pad)
/// at the node, otherwise 1 + the DFA state of that coordinate's subtree.
class TupleContext {
public:
    TupleContext(const BottomUpDFA& dom, const Alphabet& alphabet) : dom_(&dom), alphabet_(alphabet) {
        if (!(dom.alphabet() == alphabet.plain())) throw AlphabetMismatch("tuple context over a different base");
        radix_ = dom.num_states() + 1;
        long double span = 1;
        for (std::size_t i = 0; i < alphabet.arity(); ++i) {
            pow_.push_back(static_cast<std::uint64_t>(span));
            span *= static_cast<long double>(radix_);
        }
        if (span > 1.8e19L) throw ResourceError("tuple context too large");
        for (Symbol x = 0; x < dom.alphabet().size(); ++x)
            if (dom.leaf(x) != BottomUpDFA::kNone) leaf_opts_.push_back({x + 1, dom.leaf(x) + 1});
        for (const auto& s : dom.steps()) by_pair_map_[pack(s.left, s.right)].push_back({s.sym + 1, s.dst + 1});
    }

    std::size_t arity() const { return alphabet_.arity(); }

    void leaf_moves(std::vector<Move>& out) const {
        std::vector<const std::vector<Opt>*> opts(arity(), &leaf_with_pad());
        product(opts, out);
    }

    void step_moves(std::uint64_t l, std::uint64_t r, std::vector<Move>& out) const {
        std::vector<const std::vector<Opt>*> opts(arity());
        for (std::size_t i = 0; i < arity(); ++i) {
            const std::uint64_t a = digit(l, i), b = digit(r, i);
            if (a == 0 && b == 0) {
                opts[i] = &leaf_with_pad();
            } else if (a != 0 && b != 0) {
                auto it = by_pair_map_.find(pack(static_cast<State>(a - 1), static_cast<State>(b - 1)));
                if (it == by_pair_map_.end()) return;
                opts[i] = &it->second;
            } else {
                return;
            }
        }
        product(opts, out);
    }

    /// The key above children l and r at a node labelled s, if s fits there.
    std::optional<std::uint64_t> step_on(Symbol s, std::uint64_t l, std::uint64_t r) const {
        std::uint64_t key = 0;
        for (std::size_t i = arity(); i-- > 0;) {
            const std::uint32_t part = alphabet_.part(s, i);
            const std::uint64_t a = l / pow_[i] % radix_, b = r / pow_[i] % radix_;
            State q = 0;
            if (part == 0) {
                if (a != 0 || b != 0) return std::nullopt;
                key *= radix_;
                continue;
            }
            if (a == 0 && b == 0) q = dom_->leaf(part - 1);
            else if (a != 0 && b != 0) q = dom_->step(part - 1, State(a - 1), State(b - 1));
            else return std::nullopt;
            if (q == BottomUpDFA::kNone) return std::nullopt;
            key = key * radix_ + q + 1;
        }
        return key;
    }

    bool accepting(std::uint64_t k) const {
        for (std::size_t i = 0; i < arity(); ++i) {
            const auto d = digit(k, i);
            if (d == 0 || !dom_->accepting()[d - 1]) return false;
        }
        return true;
    }

    std::uint64_t group(std::uint64_t k) const {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < arity(); ++i)
            if (digit(k, i) != 0) mask |= std::uint64_t{1} << i;
        return mask;
    }

    /// Whether a nonzero digit stands for an accepting domain state.
    bool dom_accepting(std::uint64_t digit) const { return dom_->accepting()[digit - 1]; }

    /// Digit of coordinate i: 0 absent, else 1 + domain state.
    std::uint64_t digit(std::uint64_t k, std::size_t i) const { return k / pow_[i] % radix_; }

private:
    struct Opt {
        std::uint32_t part;  // 0 pad, else base index + 1
        std::uint64_t digit;
    };

    static std::uint64_t pack(State l, State r) { return (std::uint64_t{l} << 32) | r; }

    const std::vector<Opt>& leaf_with_pad() const {
        if (pad_leaf_.empty()) {
            pad_leaf_.push_back({0, 0});
            pad_leaf_.insert(pad_leaf_.end(), leaf_opts_.begin(), leaf_opts_.end());
        }
        return pad_leaf_;
    }

    void product(const std::vector<const std::vector<Opt>*>& opts, std::vector<Move>& out) const {
        const std::size_t k = arity();
        std::vector<std::size_t> idx(k, 0);
        std::vector<std::uint32_t> parts(k);
        for (std::size_t i = 0; i < k; ++i)
            if (opts[i]->empty()) return;
        for (;;) {
            std::uint64_t key = 0;
            for (std::size_t i = k; i-- > 0;) {
                const Opt& o = (*opts[i])[idx[i]];
                parts[i] = o.part;
                key = key * radix_ + o.digit;
            }
            if (auto sym = alphabet_.make(parts)) out.emplace_back(*sym, key);
            std::size_t i = 0;
            while (i < k && ++idx[i] == opts[i]->size()) idx[i++] = 0;
            if (i == k) break;
        }
    }

    const BottomUpDFA* dom_;
    Alphabet alphabet_;
    std::uint64_t radix_ = 1;
    std::vector<std::uint64_t> pow_;
    std::vector<Opt> leaf_opts_;
    mutable std::vector<Opt> pad_leaf_;
    std::unordered_map<std::uint64_t, std::vector<Opt>> by_pair_map_;
};

/// Synchronous product of two models over the same alphabet.
template <class A, class B>
class ProductModel {
public:
    ProductModel(A& a, B& b) : a_(a), b_(b) {}

    void leaf_moves(std::vector<Move>& out) {
        std::vector<Move> x, y;
        a_.leaf_moves(x);
        b_.leaf_moves(y);
        join(x, y, out);
    }
    void step_moves(std::uint64_t l, std::uint64_t r, std::vector<Move>& out) {
        std::vector<Move> x, y;
        a_.step_moves(pairs_[l].first, pairs_[r].first, x);
        if (x.empty()) return;
        b_.step_moves(pairs_[l].second, pairs_[r].second, y);
        join(x, y, out);
    }
    bool accepting(std::uint64_t k) { return a_.accepting(pairs_[k].first) && b_.accepting(pairs_[k].second); }
    std::uint64_t group(std::uint64_t k) {
        const auto key = std::make_pair(a_.group(pairs_[k].first), b_.group(pairs_[k].second));
        auto [it, _] = groups_.emplace(key, groups_.size());
        return it->second;
    }

private:
    void join(std::vector<Move>& x, std::vector<Move>& y, std::vector<Move>& out) {
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        std::size_t j = 0;
        for (const auto& [sym, ka] : x) {
            while (j < y.size() && y[j].first < sym) ++j;
            for (std::size_t m = j; m < y.size() && y[m].first == sym; ++m) out.emplace_back(sym, intern(ka, y[m].second));
        }
    }
    std::uint64_t intern(std::uint64_t a, std::uint64_t b) {
        auto [it, fresh] = ids_.emplace(std::make_pair(a, b), pairs_.size());
        if (fresh) pairs_.emplace_back(a, b);
        return it->second;
    }

    A& a_;
    B& b_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t, detail::PairHash> ids_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> groups_;
};

/// Subset construction of an NTA, run inside a context model.  With
/// `complemented`, a key accepts when the context accepts and no initial state
/// is in the subset.
template <class Context>
class DeterminizeModel {
public:
    DeterminizeModel(const TreeAutomaton& a, Context& ctx, bool complemented)
        : a_(a), ctx_(ctx), complemented_(complemented), by_left_(a.num_states()), leaf_(a.alphabet().size()),
          buckets_(a.alphabet().size()), mark_(a.num_states(), 0), is_initial_(a.num_states(), false) {
        for (const auto& t : a.transitions()) by_left_[t.left].push_back({t.sym, t.right, t.src});
        for (const auto& r : a.leaf_rules()) leaf_[r.sym].push_back(r.state);
        for (State s : a.initial()) is_initial_[s] = true;
    }

    void leaf_moves(std::vector<Move>& out) {
        std::vector<Move> cm;
        ctx_.leaf_moves(cm);
        for (const auto& [sym, ck] : cm) out.emplace_back(sym, intern(ck, subset_id(leaf_[sym])));
    }

    void step_moves(std::uint64_t l, std::uint64_t r, std::vector<Move>& out) {
        std::vector<Move> cm;
        ctx_.step_moves(entries_[l].first, entries_[r].first, cm);
        if (cm.empty()) return;
        const auto& sl = subsets_[entries_[l].second];
        const auto& sr = subsets_[entries_[r].second];
        if (!sl.empty() && !sr.empty()) {
            for (State q : sr) mark_[q] = 1;
            for (State p : sl)
                for (const auto& e : by_left_[p])
                    if (mark_[e.right]) {
                        if (buckets_[e.sym].empty()) touched_.push_back(e.sym);
                        buckets_[e.sym].push_back(e.src);
                    }
            for (State q : sr) mark_[q] = 0;
        }
        for (const auto& [sym, ck] : cm) {
            auto& b = buckets_[sym];
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
            out.emplace_back(sym, intern(ck, subset_id(b)));
        }
        for (Symbol s : touched_) buckets_[s].clear();
        touched_.clear();
    }

    bool accepting(std::uint64_t k) {
        const auto& [ck, sid] = entries_[k];
        if (!ctx_.accepting(ck)) return false;
        const auto& s = subsets_[sid];
        const bool hit = std::any_of(s.begin(), s.end(), [&](State q) { return is_initial_[q]; });
        return complemented_ ? !hit : hit;
    }

    std::uint64_t group(std::uint64_t k) { return ctx_.group(entries_[k].first); }

private:
    struct Entry {
        Symbol sym;
        State right;
        State src;
    };

    std::uint64_t subset_id(const std::vector<State>& s) {
        auto [it, fresh] = subset_ids_.emplace(s, subsets_.size());
        if (fresh) subsets_.push_back(s);
        return it->second;
    }
    std::uint64_t intern(std::uint64_t ck, std::uint64_t sid) {
        auto [it, fresh] = ids_.emplace(std::make_pair(ck, sid), entries_.size());
        if (fresh) entries_.emplace_back(ck, sid);
        return it->second;
    }

    const TreeAutomaton& a_;
    Context& ctx_;
    bool complemented_;
    std::vector<std::vector<Entry>> by_left_;
    std::vector<std::vector<State>> leaf_;
    std::vector<std::vector<State>> buckets_;
    std::vector<Symbol> touched_;
    std::vector<char> mark_;
    std::vector<bool> is_initial_;
    std::vector<std::vector<State>> subsets_;
    std::unordered_map<std::vector<State>, std::uint64_t, detail::VectorHash> subset_ids_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t, detail::PairHash> ids_;
};

/// A deterministic payload run alongside a context.  The operation supplies
///   std::optional<std::uint64_t> leaf(Symbol)
///   std::optional<std::uint64_t> step(Symbol, std::uint64_t left, std::uint64_t right)
///   bool accepting(std::uint64_t)
/// where an empty optional drops the move.
template <class Context, class Op>
class LiftedModel {
public:
    LiftedModel(Context& ctx, Op& op) : ctx_(ctx), op_(op) {}

    void leaf_moves(std::vector<Move>& out) {
        cm_.clear();
        ctx_.leaf_moves(cm_);
        for (const auto& [sym, ck] : cm_)
            if (auto p = op_.leaf(sym)) out.emplace_back(sym, intern(ck, *p));
    }

    void step_moves(std::uint64_t l, std::uint64_t r, std::vector<Move>& out) {
        const auto el = entries_[l], er = entries_[r];
        if constexpr (requires { op_.candidates(el.second, er.second, syms_); }) {
            // sparse ops name the symbols they can take; the context only vets them
            syms_.clear();
            op_.candidates(el.second, er.second, syms_);
            for (Symbol sym : syms_)
                if (auto ck = ctx_.step_on(sym, el.first, er.first))
                    if (auto p = op_.step(sym, el.second, er.second)) out.emplace_back(sym, intern(*ck, *p));
            return;
        }
        cm_.clear();
        ctx_.step_moves(el.first, er.first, cm_);
        for (const auto& [sym, ck] : cm_)
            if (auto p = op_.step(sym, el.second, er.second)) out.emplace_back(sym, intern(ck, *p));
    }

    bool accepting(std::uint64_t k) { return ctx_.accepting(entries_[k].first) && op_.accepting(entries_[k].second); }
    std::uint64_t group(std::uint64_t k) { return ctx_.group(entries_[k].first); }

private:
    std::uint64_t intern(std::uint64_t ck, std::uint64_t payload) {
        auto [it, fresh] = ids_.emplace(std::make_pair(ck, payload), entries_.size());
        if (fresh) entries_.emplace_back(ck, payload);
        return it->second;
    }

    Context& ctx_;
    Op& op_;
    std::vector<Move> cm_;
    std::vector<Symbol> syms_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t, detail::PairHash> ids_;
};

/// Subset construction over the whole alphabet; total, reachable subsets only.
inline BottomUpDFA determinize_bottom_up(const TreeAutomaton& a, const Limits& limits = {}) {
    UniversalContext ctx(a.alphabet());
    DeterminizeModel<UniversalContext> m(a, ctx, false);
    return explore(m, a.alphabet(), limits);
}

/// Drops states that cannot reach an accepting state through any context.
inline BottomUpDFA prune(const BottomUpDFA& d) {
    const std::size_t n = d.num_states();
    std::vector<bool> useful(n, false);
    std::vector<std::vector<std::pair<State, State>>> into(n);  // dst -> children
    for (const auto& s : d.steps()) into[s.dst].emplace_back(s.left, s.right);
    std::vector<State> stack;
    for (State q = 0; q < n; ++q)
        if (d.accepting()[q]) {
            useful[q] = true;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        const State q = stack.back();
        stack.pop_back();
        for (auto [l, r] : into[q])
            for (State c : {l, r})
                if (!useful[c]) {
                    useful[c] = true;
                    stack.push_back(c);
                }
    }
    std::vector<State> id(n, BottomUpDFA::kNone);
    State next = 0;
    for (State q = 0; q < n; ++q)
        if (useful[q]) id[q] = next++;
    std::vector<State> leaf(d.leaf_states().size(), BottomUpDFA::kNone);
    for (std::size_t a = 0; a < leaf.size(); ++a)
        if (d.leaf_states()[a] != BottomUpDFA::kNone) leaf[a] = id[d.leaf_states()[a]];
    std::vector<StepRule> steps;
    for (const auto& s : d.steps())
        if (useful[s.dst] && useful[s.left] && useful[s.right]) steps.push_back({s.sym, id[s.left], id[s.right], id[s.dst]});
    std::vector<bool> acc(next);
    for (State q = 0; q < n; ++q)
        if (useful[q]) acc[id[q]] = d.accepting()[q];
    return BottomUpDFA(d.alphabet(), next, std::move(leaf), std::move(steps), std::move(acc));
}

/// Moore-style partition refinement starting from the given output classes;
/// expects a pruned DFA (the sink is implicit).  Returns the class of each state.
inline std::vector<State> refine_partition(const BottomUpDFA& d, std::vector<State> cls, std::size_t& count) {
    const std::size_t n = d.num_states();
    // per state, the steps it takes part in as (side, sym, other child, dst),
    // in a fixed order so signatures compare position by position
    struct Use {
        std::uint32_t side_sym;
        State other;
        State dst;
    };
    // layout per state: its left uses, then its right uses; step order keeps each run sorted
    std::vector<std::size_t> start(n + 1, 0), mid(n, 0);
    for (const auto& s : d.steps()) {
        ++start[s.left + 1];
        ++start[s.right + 1];
        ++mid[s.left];
    }
    for (std::size_t q = 0; q < n; ++q) start[q + 1] += start[q];
    std::vector<Use> uses(start[n]);
    {
        std::vector<std::size_t> at_l(start.begin(), start.end() - 1), at_r(n);
        for (std::size_t q = 0; q < n; ++q) at_r[q] = start[q] + mid[q];
        for (const auto& s : d.steps()) {
            uses[at_l[s.left]++] = {s.sym << 1, s.right, s.dst};
            uses[at_r[s.right]++] = {(s.sym << 1) | 1u, s.left, s.dst};
        }
    }
    auto same = [&](State p, State q) {
        if (cls[p] != cls[q] || start[p + 1] - start[p] != start[q + 1] - start[q]) return false;
        for (std::size_t i = start[p], j = start[q]; i < start[p + 1]; ++i, ++j)
            if (uses[i].side_sym != uses[j].side_sym || uses[i].other != uses[j].other || cls[uses[i].dst] != cls[uses[j].dst])
                return false;
        return true;
    };
    count = 0;
    for (;;) {
        std::unordered_map<std::uint64_t, std::vector<State>> buckets;  // hash -> representatives
        buckets.reserve(n);
        std::vector<State> next(n);
        std::vector<State> reps;
        for (State q = 0; q < n; ++q) {
            std::uint64_t h = cls[q] * 0x9E3779B97F4A7C15ull;
            for (std::size_t i = start[q]; i < start[q + 1]; ++i) {
                h = (h ^ uses[i].side_sym) * 0x100000001B3ull;
                h = (h ^ uses[i].other) * 0x100000001B3ull;
                h = (h ^ cls[uses[i].dst]) * 0x100000001B3ull;
            }
            auto& bucket = buckets[h];
            State found = BottomUpDFA::kNone;
            for (State r : bucket)
                if (same(r, q)) {
                    found = next[r];
                    break;
                }
            if (found == BottomUpDFA::kNone) {
                found = static_cast<State>(reps.size());
                reps.push_back(q);
                bucket.push_back(q);
            }
            next[q] = found;
        }
        const std::size_t c = reps.size();
        cls = std::move(next);
        if (c == count) break;
        count = c;
    }
    return cls;
}

/// Quotient of a DFA by a congruence given as a class map.
inline BottomUpDFA quotient(const BottomUpDFA& d, const std::vector<State>& cls, std::size_t count) {
    std::vector<State> leaf(d.leaf_states().size(), BottomUpDFA::kNone);
    for (std::size_t a = 0; a < leaf.size(); ++a)
        if (d.leaf_states()[a] != BottomUpDFA::kNone) leaf[a] = cls[d.leaf_states()[a]];
    std::vector<StepRule> steps;
    steps.reserve(d.steps().size());
    for (const auto& s : d.steps()) steps.push_back({s.sym, cls[s.left], cls[s.right], cls[s.dst]});
    std::vector<bool> acc(count);
    for (State q = 0; q < d.num_states(); ++q) acc[cls[q]] = d.accepting()[q];
    return BottomUpDFA(d.alphabet(), count, std::move(leaf), std::move(steps), std::move(acc));
}

/// Language-preserving minimization of a pruned DFA.
inline BottomUpDFA minimize(const BottomUpDFA& d) {
    const std::size_t n = d.num_states();
    if (n == 0) return d;
    std::vector<State> cls(n);
    for (State q = 0; q < n; ++q) cls[q] = d.accepting()[q] ? 1 : 0;
    std::size_t count = 0;
    cls = refine_partition(d, std::move(cls), count);
    return quotient(d, cls, count);
}

/// The same language as a top-down automaton: accepting states become initial.
inline TreeAutomaton to_nta(const BottomUpDFA& d) {
    std::vector<State> init;
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    for (State q = 0; q < d.num_states(); ++q)
        if (d.accepting()[q]) init.push_back(q);
    for (Symbol a = 0; a < d.leaf_states().size(); ++a)
        if (d.leaf(a) != BottomUpDFA::kNone) leaf.push_back({d.leaf(a), a});
    trans.reserve(d.steps().size());
    for (const auto& s : d.steps()) trans.push_back({s.dst, s.sym, s.left, s.right});
    return TreeAutomaton(d.alphabet(), d.num_states(), std::move(init), std::move(leaf), std::move(trans));
}

/// Explore a model, prune, minimize and convert to a trimmed NTA.
template <class Model>
TreeAutomaton materialize(Model& m, const Alphabet& alphabet, const Limits& limits = {}) {
    return tidy(to_nta(minimize(prune(explore(m, alphabet, limits)))), limits);
}

/// The trees accepted by the context but not by `a`.
template <class Context>
TreeAutomaton complement_within(const TreeAutomaton& a, Context& ctx, const Limits& limits = {}) {
    DeterminizeModel<Context> m(a, ctx, true);
    return materialize(m, a.alphabet(), limits);
}

/// One-state DFA accepting every tree over the plain base alphabet.
inline BottomUpDFA universal_dfa(const Alphabet& plain) {
    std::vector<State> leaf(plain.size(), 0);
    std::vector<StepRule> steps;
    for (Symbol a = 0; a < plain.size(); ++a) steps.push_back({a, 0, 0, 0});
    return BottomUpDFA(plain, 1, std::move(leaf), std::move(steps), {true});
}

/// Convolutions of k arbitrary valid trees (k = the alphabet's arity).
inline TreeAutomaton valid_convolution_language(const Alphabet& alphabet, const Limits& limits = {}) {
    const BottomUpDFA u = universal_dfa(alphabet.plain());
    TupleContext ctx(u, alphabet);
    return materialize(ctx, alphabet, limits);
}

/// Valid trees over the alphabet not in L(a); for arity > 1 the universe is the valid convolutions.
inline TreeAutomaton complement(const TreeAutomaton& a, const Limits& limits = {}) {
    const BottomUpDFA u = universal_dfa(a.alphabet().plain());
    TupleContext ctx(u, a.alphabet());
    return complement_within(a, ctx, limits);
}

/// Language equality, over all trees of the alphabet (valid convolutions or not).
inline bool equivalent(const TreeAutomaton& a, const TreeAutomaton& b, const Limits& limits = {}) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    UniversalContext u(a.alphabet());
    return is_empty(intersect(a, complement_within(b, u, limits), limits)) &&
           is_empty(intersect(b, complement_within(a, u, limits), limits));
}

/// Minimal deterministic form of a language, used as a domain for TupleContext.
inline BottomUpDFA minimal_dfa(const TreeAutomaton& a, const Limits& limits = {}) {
    return minimize(prune(determinize_bottom_up(a, limits)));
}

}  // namespace ordauto

#endif
