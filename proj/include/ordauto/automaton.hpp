#ifndef ORDAUTO_AUTOMATON_HPP
#define ORDAUTO_AUTOMATON_HPP

// Top-down nondeterministic tree automata: acceptance, emptiness, trimming,
// products, unions, bisimulation reduction and witness extraction.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "error.hpp"
#include "tree.hpp"

namespace ordauto {

using State = std::uint32_t;

struct Transition {
    State src;
    Symbol sym;
    State left;
    State right;
    auto operator<=>(const Transition&) const = default;
};

struct LeafRule {
    State state;
    Symbol sym;
    auto operator<=>(const LeafRule&) const = default;
};

/// Size knobs shared by every closure operation.
struct Limits {
    /// Results with more states than this get a bisimulation reduction pass.
    std::size_t reduce_threshold = 5000;
    /// Any intermediate automaton larger than this aborts with ResourceError.
    std::size_t max_states = 1'000'000;
};

inline void check_budget(std::size_t states, const Limits& limits) {
    if (states > limits.max_states)
        throw ResourceError("state budget exceeded: " + std::to_string(states) + " > " + std::to_string(limits.max_states));
}

/// (S, delta, I, F) with F a set of (state, leaf symbol) pairs.
class TreeAutomaton {
public:
    TreeAutomaton() = default;

    TreeAutomaton(Alphabet alphabet, std::size_t num_states, std::vector<State> initial, std::vector<LeafRule> leaf,
                  std::vector<Transition> transitions)
        : alphabet_(std::move(alphabet)),
          num_states_(num_states),
          initial_(std::move(initial)),
          leaf_(std::move(leaf)),
          transitions_(std::move(transitions)) {
        sort_unique(initial_);
        sort_unique(leaf_);
        sort_unique(transitions_);
        auto bad_state = [&](State s) { return s >= num_states_; };
        auto bad_sym = [&](Symbol a) { return a >= alphabet_.size(); };
        if (std::any_of(initial_.begin(), initial_.end(), bad_state)) throw FormatError("initial state out of range");
        for (const auto& r : leaf_)
            if (bad_state(r.state) || bad_sym(r.sym)) throw FormatError("leaf rule out of range");
        for (const auto& t : transitions_)
            if (bad_state(t.src) || bad_state(t.left) || bad_state(t.right) || bad_sym(t.sym))
                throw FormatError("transition out of range");
        build_offsets();
    }

    /// Accepts nothing.
    static TreeAutomaton empty(Alphabet alphabet) { return TreeAutomaton(std::move(alphabet), 0, {}, {}, {}); }

    /// Accepts every tree over the alphabet (including invalid convolutions).
    static TreeAutomaton universal(Alphabet alphabet) {
        std::vector<LeafRule> leaf;
        std::vector<Transition> trans;
        for (Symbol a = 0; a < alphabet.size(); ++a) {
            leaf.push_back({0, a});
            trans.push_back({0, a, 0, 0});
        }
        return TreeAutomaton(std::move(alphabet), 1, {0}, std::move(leaf), std::move(trans));
    }

    /// Accepts exactly `t`; throws AlphabetMismatch if t uses foreign symbols.
    static TreeAutomaton singleton(Alphabet alphabet, const SigmaTree& t) {
        std::vector<LeafRule> leaf;
        std::vector<Transition> trans;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto& n = t.nodes()[i];
            auto sym = alphabet.parse(n.label);
            if (!sym) throw AlphabetMismatch("symbol '" + n.label + "' not in alphabet " + alphabet.describe());
            const auto s = static_cast<State>(i);
            if (n.is_leaf())
                leaf.push_back({s, *sym});
            else
                trans.push_back({s, *sym, static_cast<State>(n.left), static_cast<State>(n.right)});
        }
        return TreeAutomaton(std::move(alphabet), t.size(), {0}, std::move(leaf), std::move(trans));
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_states() const noexcept { return num_states_; }
    const std::vector<State>& initial() const noexcept { return initial_; }
    const std::vector<LeafRule>& leaf_rules() const noexcept { return leaf_; }
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }

    /// Transitions with source s, sorted by symbol.
    std::span<const Transition> transitions_from(State s) const {
        return {transitions_.data() + trans_off_[s], transitions_.data() + trans_off_[s + 1]};
    }
    /// Leaf rules of state s, sorted by symbol.
    std::span<const LeafRule> leaf_rules_of(State s) const {
        return {leaf_.data() + leaf_off_[s], leaf_.data() + leaf_off_[s + 1]};
    }

    bool operator==(const TreeAutomaton& o) const {
        return alphabet_ == o.alphabet_ && num_states_ == o.num_states_ && initial_ == o.initial_ && leaf_ == o.leaf_ &&
               transitions_ == o.transitions_;
    }

private:
    template <class T>
    static void sort_unique(std::vector<T>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    void build_offsets() {
        trans_off_.assign(num_states_ + 1, 0);
        leaf_off_.assign(num_states_ + 1, 0);
        for (const auto& t : transitions_) ++trans_off_[t.src + 1];
        for (const auto& r : leaf_) ++leaf_off_[r.state + 1];
        for (std::size_t i = 0; i < num_states_; ++i) {
            trans_off_[i + 1] += trans_off_[i];
            leaf_off_[i + 1] += leaf_off_[i];
        }
    }

    Alphabet alphabet_;
    std::size_t num_states_ = 0;
    std::vector<State> initial_;
    std::vector<LeafRule> leaf_;
    std::vector<Transition> transitions_;
    std::vector<std::size_t> trans_off_{0};
    std::vector<std::size_t> leaf_off_{0};
};

/// Symbol codes of a tree's labels in preorder; throws AlphabetMismatch on foreign labels.
inline std::vector<Symbol> encode_labels(const Alphabet& alphabet, const SigmaTree& t) {
    std::vector<Symbol> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto s = alphabet.parse(t.nodes()[i].label);
        if (!s) throw AlphabetMismatch("symbol '" + t.nodes()[i].label + "' not in alphabet " + alphabet.describe());
        out[i] = *s;
    }
    return out;
}

/// Bottom-up state-set propagation, with the symbol index built once for many queries.
class AcceptanceChecker {
public:
    explicit AcceptanceChecker(const TreeAutomaton& a) : a_(&a), by_sym_(a.alphabet().size()), leaf_(a.alphabet().size()) {
        for (const auto& t : a.transitions()) by_sym_[t.sym].push_back(t);
        for (const auto& r : a.leaf_rules()) leaf_[r.sym].push_back(r.state);
        is_initial_.assign(a.num_states(), false);
        for (State s : a.initial()) is_initial_[s] = true;
    }

    bool accepts(const SigmaTree& t) const { return accepts_symbols(t, encode_labels(a_->alphabet(), t)); }

    /// Set of states from which `t` is accepted.
    std::vector<bool> states_for(const SigmaTree& t) const {
        return run(t, encode_labels(a_->alphabet(), t));
    }

    bool accepts_symbols(const SigmaTree& t, const std::vector<Symbol>& syms) const {
        auto root = run(t, syms);
        for (State s = 0; s < root.size(); ++s)
            if (root[s] && is_initial_[s]) return true;
        return false;
    }

private:
    std::vector<bool> run(const SigmaTree& t, const std::vector<Symbol>& syms) const {
        const std::size_t n = a_->num_states();
        std::vector<std::vector<bool>> sets(t.size());
        for (std::size_t i = t.size(); i-- > 0;) {
            const auto& node = t.nodes()[i];
            std::vector<bool> cur(n, false);
            if (node.is_leaf()) {
                for (State s : leaf_[syms[i]]) cur[s] = true;
            } else {
                const auto& l = sets[static_cast<std::size_t>(node.left)];
                const auto& r = sets[static_cast<std::size_t>(node.right)];
                for (const auto& tr : by_sym_[syms[i]])
                    if (l[tr.left] && r[tr.right]) cur[tr.src] = true;
            }
            sets[i] = std::move(cur);
        }
        return std::move(sets[0]);
    }

    const TreeAutomaton* a_;
    std::vector<std::vector<Transition>> by_sym_;
    std::vector<std::vector<State>> leaf_;
    std::vector<bool> is_initial_;
};

inline bool accepts(const TreeAutomaton& a, const SigmaTree& t) { return AcceptanceChecker(a).accepts(t); }

/// States that accept at least one tree (least fixpoint from the leaf rules).
inline std::vector<bool> productive_states(const TreeAutomaton& a) {
    const std::size_t n = a.num_states();
    std::vector<bool> prod(n, false);
    std::vector<std::vector<std::size_t>> waiting(n);
    std::vector<int> missing(a.transitions().size(), 0);
    std::vector<State> queue;
    auto mark = [&](State s) {
        if (!prod[s]) {
            prod[s] = true;
            queue.push_back(s);
        }
    };
    for (const auto& r : a.leaf_rules()) mark(r.state);
    for (std::size_t i = 0; i < a.transitions().size(); ++i) {
        const auto& t = a.transitions()[i];
        missing[i] = t.left == t.right ? 1 : 2;
        waiting[t.left].push_back(i);
        if (t.right != t.left) waiting[t.right].push_back(i);
    }
    while (!queue.empty()) {
        const State s = queue.back();
        queue.pop_back();
        for (std::size_t i : waiting[s])
            if (--missing[i] == 0) mark(a.transitions()[i].src);
    }
    return prod;
}

inline bool is_empty(const TreeAutomaton& a) {
    const auto prod = productive_states(a);
    return std::none_of(a.initial().begin(), a.initial().end(), [&](State s) { return prod[s]; });
}

/// Keeps exactly the states that are productive and reachable from an initial state.
inline TreeAutomaton trim(const TreeAutomaton& a) {
    const auto prod = productive_states(a);
    const std::size_t n = a.num_states();
    std::vector<bool> reach(n, false);
    std::vector<State> stack;
    for (State s : a.initial())
        if (prod[s] && !reach[s]) {
            reach[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        const State s = stack.back();
        stack.pop_back();
        for (const auto& t : a.transitions_from(s)) {
            if (!prod[t.left] || !prod[t.right]) continue;
            for (State c : {t.left, t.right})
                if (!reach[c]) {
                    reach[c] = true;
                    stack.push_back(c);
                }
        }
    }
    std::vector<State> id(n, 0);
    State next = 0;
    for (State s = 0; s < n; ++s)
        if (reach[s]) id[s] = next++;
    std::vector<State> init;
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    for (State s : a.initial())
        if (reach[s]) init.push_back(id[s]);
    for (const auto& r : a.leaf_rules())
        if (reach[r.state]) leaf.push_back({id[r.state], r.sym});
    for (const auto& t : a.transitions())
        if (reach[t.src] && reach[t.left] && reach[t.right]) trans.push_back({id[t.src], t.sym, id[t.left], id[t.right]});
    return TreeAutomaton(a.alphabet(), next, std::move(init), std::move(leaf), std::move(trans));
}

/// Quotient by the coarsest downward bisimulation; preserves the language of every state.
inline TreeAutomaton reduce(const TreeAutomaton& a) {
    const std::size_t n = a.num_states();
    if (n == 0) return a;
    std::vector<State> cls(n, 0);
    std::size_t num_classes = 0;
    for (;;) {
        std::map<std::pair<State, std::vector<std::uint64_t>>, State> sig_ids;
        std::vector<State> next(n);
        for (State s = 0; s < n; ++s) {
            std::vector<std::uint64_t> sig;
            for (const auto& r : a.leaf_rules_of(s)) sig.push_back(std::uint64_t{r.sym} << 1);
            for (const auto& t : a.transitions_from(s)) {
                // symbol, left class, right class packed; classes < 2^20 checked by budget elsewhere
                sig.push_back(((std::uint64_t{t.sym} << 42) | (std::uint64_t{cls[t.left]} << 21) | cls[t.right]) << 1 | 1);
            }
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto [it, _] = sig_ids.emplace(std::make_pair(cls[s], std::move(sig)), static_cast<State>(sig_ids.size()));
            next[s] = it->second;
        }
        const std::size_t count = sig_ids.size();
        cls = std::move(next);
        if (count == num_classes) break;
        num_classes = count;
    }
    if (num_classes == n) return a;
    std::vector<State> init;
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    for (State s : a.initial()) init.push_back(cls[s]);
    for (const auto& r : a.leaf_rules()) leaf.push_back({cls[r.state], r.sym});
    for (const auto& t : a.transitions()) trans.push_back({cls[t.src], t.sym, cls[t.left], cls[t.right]});
    return TreeAutomaton(a.alphabet(), num_classes, std::move(init), std::move(leaf), std::move(trans));
}

/// Trim, then reduce when the result is larger than the configured threshold.
inline TreeAutomaton tidy(const TreeAutomaton& a, const Limits& limits) {
    TreeAutomaton t = trim(a);
    if (t.num_states() > limits.reduce_threshold) t = trim(reduce(t));
    check_budget(t.num_states(), limits);
    return t;
}

/// Top-down product restricted to state pairs reachable from initial pairs.
inline TreeAutomaton intersect(const TreeAutomaton& a, const TreeAutomaton& b, const Limits& limits = {}) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::pair<State, State>> pairs;
    auto intern = [&](State p, State q) {
        const std::uint64_t key = (std::uint64_t{p} << 32) | q;
        auto [it, fresh] = ids.emplace(key, static_cast<State>(pairs.size()));
        if (fresh) {
            pairs.emplace_back(p, q);
            check_budget(pairs.size(), limits);
        }
        return it->second;
    };
    std::vector<State> init;
    for (State p : a.initial())
        for (State q : b.initial()) init.push_back(intern(p, q));
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [p, q] = pairs[k];
        const auto id = static_cast<State>(k);
        auto la = a.leaf_rules_of(p);
        auto lb = b.leaf_rules_of(q);
        for (std::size_t i = 0, j = 0; i < la.size() && j < lb.size();) {
            if (la[i].sym < lb[j].sym) ++i;
            else if (lb[j].sym < la[i].sym) ++j;
            else {
                leaf.push_back({id, la[i].sym});
                ++i;
                ++j;
            }
        }
        auto ta = a.transitions_from(p);
        auto tb = b.transitions_from(q);
        std::size_t i = 0, j = 0;
        while (i < ta.size() && j < tb.size()) {
            if (ta[i].sym < tb[j].sym) {
                ++i;
                continue;
            }
            if (tb[j].sym < ta[i].sym) {
                ++j;
                continue;
            }
            const Symbol sym = ta[i].sym;
            std::size_t iend = i, jend = j;
            while (iend < ta.size() && ta[iend].sym == sym) ++iend;
            while (jend < tb.size() && tb[jend].sym == sym) ++jend;
            for (std::size_t x = i; x < iend; ++x)
                for (std::size_t y = j; y < jend; ++y) {
                    const State l = intern(ta[x].left, tb[y].left);
                    const State r = intern(ta[x].right, tb[y].right);
                    trans.push_back({id, sym, l, r});
                }
            i = iend;
            j = jend;
        }
    }
    return tidy(TreeAutomaton(a.alphabet(), pairs.size(), std::move(init), std::move(leaf), std::move(trans)), limits);
}

/// Disjoint union.
inline TreeAutomaton unite(const TreeAutomaton& a, const TreeAutomaton& b, const Limits& limits = {}) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const auto off = static_cast<State>(a.num_states());
    std::vector<State> init = a.initial();
    std::vector<LeafRule> leaf = a.leaf_rules();
    std::vector<Transition> trans = a.transitions();
    for (State s : b.initial()) init.push_back(s + off);
    for (const auto& r : b.leaf_rules()) leaf.push_back({r.state + off, r.sym});
    for (const auto& t : b.transitions()) trans.push_back({t.src + off, t.sym, t.left + off, t.right + off});
    return tidy(TreeAutomaton(a.alphabet(), a.num_states() + b.num_states(), std::move(init), std::move(leaf),
                              std::move(trans)),
                limits);
}

namespace detail {

/// Minimal accepted tree per (state, size) under the enumeration order.
class WitnessSearch {
public:
    explicit WitnessSearch(const TreeAutomaton& a) : a_(a) {
        const std::size_t n = a.num_states();
        min_size_.assign(n, kInf);
        using Item = std::pair<std::size_t, State>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        std::vector<std::vector<std::size_t>> users(n);
        for (std::size_t i = 0; i < a.transitions().size(); ++i) {
            users[a.transitions()[i].left].push_back(i);
            users[a.transitions()[i].right].push_back(i);
        }
        for (const auto& r : a.leaf_rules())
            if (min_size_[r.state] > 1) {
                min_size_[r.state] = 1;
                pq.emplace(1, r.state);
            }
        std::vector<bool> done(n, false);
        while (!pq.empty()) {
            auto [d, s] = pq.top();
            pq.pop();
            if (done[s] || d != min_size_[s]) continue;
            done[s] = true;
            for (std::size_t i : users[s]) {
                const auto& t = a.transitions()[i];
                if (min_size_[t.left] == kInf || min_size_[t.right] == kInf) continue;
                const std::size_t c = 1 + min_size_[t.left] + min_size_[t.right];
                if (c < min_size_[t.src]) {
                    min_size_[t.src] = c;
                    pq.emplace(c, t.src);
                }
            }
        }
    }

    std::optional<SigmaTree> best_overall() {
        std::size_t n = kInf;
        for (State s : a_.initial()) n = std::min(n, min_size_[s]);
        if (n == kInf) return std::nullopt;
        std::optional<SigmaTree> best;
        for (State s : a_.initial()) {
            if (min_size_[s] != n) continue;
            const SigmaTree& cand = *best_tree(s, n);
            if (!best || enumeration_order(cand, *best) < 0) best = cand;
        }
        return best;
    }

private:
    static constexpr std::size_t kInf = static_cast<std::size_t>(-1);

    bool feasible(State s, std::size_t n) {
        if (n < min_size_[s] || n % 2 == 0) return false;
        const auto key = std::make_pair(s, n);
        if (auto it = feasible_.find(key); it != feasible_.end()) return it->second;
        bool ok = false;
        if (n == 1) {
            ok = !a_.leaf_rules_of(s).empty();
        } else {
            for (const auto& t : a_.transitions_from(s)) {
                if (min_size_[t.left] == kInf || min_size_[t.right] == kInf) continue;
                for (std::size_t l = min_size_[t.left]; l + min_size_[t.right] + 1 <= n && !ok; l += 2)
                    ok = feasible(t.left, l) && feasible(t.right, n - 1 - l);
                if (ok) break;
            }
        }
        feasible_.emplace(key, ok);
        return ok;
    }

    const SigmaTree* best_tree(State s, std::size_t n) {
        const auto key = std::make_pair(s, n);
        if (auto it = best_.find(key); it != best_.end()) return &it->second;
        std::optional<SigmaTree> best;
        auto offer = [&](SigmaTree cand) {
            if (!best || enumeration_order(cand, *best) < 0) best = std::move(cand);
        };
        if (n == 1) {
            for (const auto& r : a_.leaf_rules_of(s)) offer(SigmaTree::leaf(a_.alphabet().text(r.sym)));
        } else {
            for (const auto& t : a_.transitions_from(s)) {
                if (min_size_[t.left] == kInf || min_size_[t.right] == kInf) continue;
                for (std::size_t l = min_size_[t.left]; l + min_size_[t.right] + 1 <= n; l += 2) {
                    if (!feasible(t.left, l) || !feasible(t.right, n - 1 - l)) continue;
                    const SigmaTree* lt = best_tree(t.left, l);
                    const SigmaTree* rt = best_tree(t.right, n - 1 - l);
                    offer(SigmaTree::node(a_.alphabet().text(t.sym), *lt, *rt));
                }
            }
        }
        return &best_.emplace(key, std::move(*best)).first->second;
    }

    const TreeAutomaton& a_;
    std::vector<std::size_t> min_size_;
    std::map<std::pair<State, std::size_t>, bool> feasible_;
    std::map<std::pair<State, std::size_t>, SigmaTree> best_;
};

}  // namespace detail

/// A smallest accepted tree, ties broken by enumeration order; nullopt iff the language is empty.
inline std::optional<SigmaTree> extract_witness(const TreeAutomaton& a) {
    const TreeAutomaton t = trim(a);
    detail::WitnessSearch search(t);
    return search.best_overall();
}

}  // namespace ordauto

#endif
