#ifndef ORDAUTO_SEMANTIC_HPP
#define ORDAUTO_SEMANTIC_HPP

// Deterministic bottom-up automata for the order and addition relations on codes.
//
// Every node of a convolution is read in two ways at once: as the start of a
// coefficient (bits along the right branch) and as the root of an ordinal (left
// spine).  The reading does not depend on the node's role, a padded coordinate
// reads as all zero bits, and absent children read as zero.  Validity of the
// coordinates is left to a TupleContext in the product.
//
// Level m is built from the minimized level m-1 automaton, whose states are
// partitioned by their reading so that the reading survives minimization.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "alphabet.hpp"
#include "automaton.hpp"
#include "codes.hpp"
#include "dfa.hpp"

namespace ordauto {

enum class Relation { Le, Add };

namespace detail {

class SemanticAlgebra {
public:
    explicit SemanticAlgebra(Relation rel) : rel_(rel), alphabet_(code_alphabet(rel == Relation::Le ? 2 : 3)) {}

    // order comparison values
    static constexpr std::uint32_t kLt = 0, kEq = 1, kGt = 2;
    // addition coefficient flags; the reading keeps the low four
    static constexpr std::uint32_t kTzb = 1, kEca = 2, kEcb = 4, kAdd0 = 8, kAdd1 = 16;
    // addition spine flags
    static constexpr std::uint32_t kZb = 1, kECA = 2, kECB = 4, kOk = 8;
    // reading of an addition state: (b zero, c = a, c = b, a + b = c)
    static constexpr std::uint32_t kHolds = 8;

    Relation relation() const { return rel_; }
    const Alphabet& alphabet() const { return alphabet_; }

    std::uint32_t spine_span() const { return rel_ == Relation::Le ? 3 : 16; }
    std::uint32_t spine_neutral() const { return rel_ == Relation::Le ? kEq : (kZb | kECA | kECB); }
    std::uint32_t tail_neutral() const { return rel_ == Relation::Le ? kEq : (kTzb | kEca | kEcb | kAdd0); }

    unsigned bits(Symbol s) const {
        unsigned b = 0;
        for (std::size_t i = 0; i < alphabet_.arity(); ++i)
            if (alphabet_.part(s, i) == 2) b |= 1u << i;
        return b;
    }

    std::uint32_t tail_step(unsigned b, std::uint32_t r) const {
        const unsigned x = b & 1, y = (b >> 1) & 1;
        if (rel_ == Relation::Le) {
            if (r != kEq) return r;
            return x < y ? kLt : x == y ? kEq : kGt;
        }
        const unsigned z = (b >> 2) & 1;
        std::uint32_t t = 0;
        if (y == 0 && (r & kTzb)) t |= kTzb;
        if (z == x && (r & kEca)) t |= kEca;
        if (z == y && (r & kEcb)) t |= kEcb;
        for (unsigned cin = 0; cin < 2; ++cin) {
            const unsigned s = x + y + cin;
            if ((s & 1) == z && (r & ((s >> 1) ? kAdd1 : kAdd0))) t |= cin ? kAdd1 : kAdd0;
        }
        return t;
    }

    std::uint32_t tail_reading(std::uint32_t t) const {
        return rel_ == Relation::Le ? t : (t & (kTzb | kEca | kEcb | kAdd0));
    }

    /// l: spine value of the left child; h: reading of the current component.
    std::uint32_t combine(std::uint32_t l, std::uint32_t h) const {
        if (rel_ == Relation::Le) return l != kEq ? l : h;
        std::uint32_t s = 0;
        if ((l & kZb) && (h & kZb)) s |= kZb;
        if ((l & kECA) && (h & kECA)) s |= kECA;
        if ((l & kECB) && (h & kECB)) s |= kECB;
        if (((l & kOk) && (h & kECB)) || ((l & kZb) && (l & kECA) && !(h & kZb) && (h & kHolds))) s |= kOk;
        return s;
    }

    std::uint32_t spine_reading(std::uint32_t s) const {
        if (rel_ == Relation::Le) return s;
        const bool holds = (s & kOk) || ((s & kZb) && (s & kECA));
        return (s & (kZb | kECA | kECB)) | (holds ? kHolds : 0);
    }

    bool holds(std::uint32_t reading) const {
        return rel_ == Relation::Le ? reading != kGt : (reading & kHolds) != 0;
    }

private:
    Relation rel_;
    Alphabet alphabet_;
};

/// Relation automaton of one level restricted to convolutions of codes, with the
/// reading of every state.  A state whose tuple is not a code tuple may still be
/// reached; its reading is only meaningful at code tuples.
struct RelationLevel {
    BottomUpDFA dfa;
    std::vector<std::uint32_t> reading;
};

/// Level m >= 1 model: (tuple context key, level m-1 state, spine value).  At
/// level 1 the lower state is the coefficient reading itself.
class RelationLevelModel {
public:
    RelationLevelModel(const SemanticAlgebra& alg, TupleContext& ctx, const RelationLevel* sub)
        : alg_(alg), ctx_(ctx), sub_(sub) {}

    void leaf_moves(std::vector<Move>& out) {
        std::vector<Move> cm;
        ctx_.leaf_moves(cm);
        for (const auto& [sym, ck] : cm) {
            const unsigned b = alg_.bits(sym);
            if (!sub_) {
                const std::uint32_t t = alg_.tail_step(b, alg_.tail_neutral());
                out.emplace_back(sym, intern(ck, t, alg_.combine(alg_.spine_neutral(), alg_.tail_reading(t))));
            } else {
                const State s = sub_->dfa.leaf(sym);
                out.emplace_back(sym, intern(ck, s, alg_.combine(alg_.spine_neutral(), neutral_reading())));
            }
        }
    }

    void step_moves(std::uint64_t l, std::uint64_t r, std::vector<Move>& out) {
        std::vector<Move> cm;
        const Entry el = entries_[l], er = entries_[r];
        ctx_.step_moves(el.ctx, er.ctx, cm);
        for (const auto& [sym, ck] : cm) {
            const unsigned b = alg_.bits(sym);
            if (!sub_) {
                const std::uint32_t t = alg_.tail_step(b, er.sub);
                out.emplace_back(sym, intern(ck, t, alg_.combine(el.spine, alg_.tail_reading(t))));
                continue;
            }
            const State s = sub_->dfa.step(sym, el.sub, er.sub);
            // a right child that is not a code tuple never feeds a spine that is read
            const std::uint32_t spine = er.sub == BottomUpDFA::kNone
                                            ? alg_.spine_neutral()
                                            : alg_.combine(el.spine, sub_->reading[er.sub]);
            out.emplace_back(sym, intern(ck, s, spine));
        }
    }

    bool accepting(std::uint64_t k) const {
        return ctx_.accepting(entries_[k].ctx) && alg_.holds(reading(k));
    }
    std::uint64_t group(std::uint64_t k) const { return ctx_.group(entries_[k].ctx); }
    std::uint32_t reading(std::uint64_t k) const { return alg_.spine_reading(entries_[k].spine); }

    /// Whether every present coordinate sits at the root of a code.
    bool at_roots(std::uint64_t k) const {
        const std::uint64_t ck = entries_[k].ctx;
        for (std::size_t i = 0; i < ctx_.arity(); ++i) {
            const auto d = ctx_.digit(ck, i);
            if (d != 0 && !ctx_.dom_accepting(d)) return false;
        }
        return true;
    }

private:
    struct Entry {
        std::uint64_t ctx;
        State sub;
        std::uint32_t spine;
    };

    std::uint32_t neutral_reading() const { return alg_.spine_reading(alg_.spine_neutral()); }

    std::uint64_t intern(std::uint64_t ck, State sub, std::uint32_t spine) {
        const std::pair<std::uint64_t, std::uint64_t> key{ck, (std::uint64_t{sub} << 8) | spine};
        auto [it, fresh] = ids_.emplace(key, entries_.size());
        if (fresh) entries_.push_back({ck, sub, spine});
        return it->second;
    }

    const SemanticAlgebra& alg_;
    TupleContext& ctx_;
    const RelationLevel* sub_;
    std::vector<Entry> entries_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t, PairHash> ids_;
};

inline RelationLevel build_relation_level(const SemanticAlgebra& alg, const BottomUpDFA& dom, const RelationLevel* sub,
                                          const Limits& limits) {
    TupleContext ctx(dom, alg.alphabet());
    RelationLevelModel model(alg, ctx, sub);
    std::vector<std::uint64_t> keys;
    BottomUpDFA d = explore(model, alg.alphabet(), limits, &keys);
    std::vector<State> cls(d.num_states());
    std::map<std::pair<std::uint32_t, bool>, State> ids;
    for (State q = 0; q < d.num_states(); ++q) {
        // readings are only consulted at code roots; elsewhere they are left free
        const std::uint32_t rd = model.at_roots(keys[q]) ? model.reading(keys[q]) : 0xFFFF;
        const auto key = std::make_pair(rd, bool(d.accepting()[q]));
        cls[q] = ids.emplace(key, static_cast<State>(ids.size())).first->second;
    }
    std::size_t count = 0;
    cls = refine_partition(d, std::move(cls), count);
    RelationLevel out{quotient(d, cls, count), std::vector<std::uint32_t>(count)};
    for (State q = 0; q < d.num_states(); ++q)
        if (model.at_roots(keys[q])) out.reading[cls[q]] = model.reading(keys[q]);
    return out;
}

}  // namespace detail

/// Minimal DFA of the order (arity 2) or addition (arity 3) relation on level-n
/// codes; accepts exactly the convolutions of code tuples in the relation.
inline BottomUpDFA relation_dfa(Relation rel, std::size_t level, const Limits& limits = {}) {
    if (level == 0) throw DomainError("level must be at least 1");
    static std::mutex mu;
    static std::map<std::pair<Relation, std::size_t>, std::shared_ptr<const BottomUpDFA>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({rel, level}); it != cache.end()) return *it->second;

    detail::SemanticAlgebra alg(rel);
    std::optional<detail::RelationLevel> cur;
    for (std::size_t m = 1; m <= level; ++m) {
        const BottomUpDFA dom = minimal_dfa(domain_automaton(m), limits);
        cur = detail::build_relation_level(alg, dom, cur ? &*cur : nullptr, limits);
    }
    auto d = std::make_shared<const BottomUpDFA>(minimize(prune(cur->dfa)));
    cache.emplace(std::make_pair(rel, level), d);
    return *d;
}

}  // namespace ordauto

#endif
