#ifndef ORDAUTO_DECIDER_HPP
#define ORDAUTO_DECIDER_HPP

// Cantor normal form of the ordinal presented by a bundle, and isomorphism.
//
// The additively closed elements are the w-powers below the ordinal.  The
// leading exponent is the order type of those below the largest one (or of all
// of them when the ordinal is itself closed); peeling the leading power leaves
// the tail, and the loop ends when the domain is empty or closed.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "cnf.hpp"
#include "dfa.hpp"
#include "fo_compiler.hpp"
#include "presentations.hpp"

namespace ordauto {

class IterationBudgetExceeded : public ResourceError {
public:
    using ResourceError::ResourceError;
};

class EmptyDomain : public DomainError {
public:
    EmptyDomain() : DomainError("the domain is empty") {}
};

struct DeciderLimits {
    Limits states;
    /// Cap on peels per cnf_of call.
    std::size_t max_peels = 10'000;
    /// Cap on maximum removals plus limit steps per otp_small call.
    std::size_t max_otp_steps = 10'000;
};

/// One round of the order-type iteration: b maxima were removed from `set`,
/// and `next` is the minimum plus the limit points of what remained.
struct OtpIteration {
    BottomUpDFA set;
    Natural removed;
    std::optional<BottomUpDFA> next;
};

struct OtpResult {
    Poly type;
    std::vector<OtpIteration> iterations;
};

struct PeelRecord {
    Poly exponent;
    std::optional<SigmaTree> witness;
    std::size_t dom_states = 0;
    std::size_t le_states = 0;
    std::size_t add_states = 0;
    std::vector<OtpIteration> otp;
};

struct DecoderTrace {
    std::vector<PeelRecord> peels;

    /// One line per peel: exponent, witness, automaton sizes.
    std::string text() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < peels.size(); ++i) {
            const auto& p = peels[i];
            out << "peel " << i << " exponent " << render(p.exponent) << " witness "
                << (p.witness ? p.witness->to_string() : std::string("-")) << " dom " << p.dom_states << " le "
                << p.le_states << " add " << p.add_states << '\n';
        }
        return out.str();
    }
};

/// FO queries on one bundle; named sets are unary DFAs over its domain.
class Decider {
public:
    Decider(const PresentationBundle& b, const DeciderLimits& limits = {})
        : limits_(limits), c_(b.presentation, limits.states) {
        c_.define("lt", c_.compile_dfa("le(x,y) & ~x=y", {"x", "y"}));
    }

    Compiler& compiler() { return c_; }

    BottomUpDFA unary(std::string_view phi) { return c_.compile_dfa(phi, {"x"}); }

    /// Nonzero x with g+g defined and below x for every g < x.  Since
    /// g+h <= m+m for m = max(g,h), this is the pairwise condition with one
    /// variable fewer.
    BottomUpDFA closed_elements() {
        return unary("(EX g. lt(g,x)) & ALL g. (lt(g,x) -> EX s. (add(g,g,s) & lt(s,x)))");
    }

    /// The pairwise form: all g,h < x have g+h defined and below x.
    BottomUpDFA closed_elements_pairwise() {
        return unary(
            "(EX g. lt(g,x)) & ~EX g. (lt(g,x) & EX h. (lt(h,x) & ~EX s. (add(g,h,s) & lt(s,x))))");
    }

    bool total() { return c_.eval_sentence("ALL x. ALL y. EX z. add(x,y,z)"); }

    BottomUpDFA maximum(const BottomUpDFA& s) {
        c_.define("set_", s);
        return unary("set_(x) & ALL y. (set_(y) -> le(y,x))");
    }

    BottomUpDFA minimum(const BottomUpDFA& s) {
        c_.define("set_", s);
        return unary("set_(x) & ALL y. (set_(y) -> le(x,y))");
    }

    BottomUpDFA minus(const BottomUpDFA& a, const BottomUpDFA& b) {
        c_.define("left_", a);
        c_.define("right_", b);
        return unary("left_(x) & ~right_(x)");
    }

    BottomUpDFA below(const BottomUpDFA& s, const BottomUpDFA& m) {
        c_.define("set_", s);
        c_.define("top_", m);
        return unary("set_(x) & EX t. (top_(t) & lt(x,t))");
    }

    /// The minimum of t together with the members of t that have smaller
    /// members but no largest smaller one.
    BottomUpDFA min_and_limits(const BottomUpDFA& t) {
        c_.define("set_", t);
        return unary(
            "set_(x) & ((ALL y. (set_(y) -> le(x,y))) | ((EX g. (set_(g) & lt(g,x))) & "
            "ALL g. ((set_(g) & lt(g,x)) -> EX h. (set_(h) & lt(g,h) & lt(h,x)))))");
    }

    /// Order type of a set of type below w^w.
    OtpResult otp_small(BottomUpDFA s) {
        OtpResult out;
        std::vector<Natural> coeffs;
        std::size_t steps = 0;
        auto tick = [&] {
            if (++steps > limits_.max_otp_steps)
                throw IterationBudgetExceeded("order type iteration exceeded " + std::to_string(limits_.max_otp_steps) +
                                              " steps");
        };
        while (!empty(s)) {
            OtpIteration it{s, 0, std::nullopt};
            BottomUpDFA t = s;
            while (!empty(t)) {
                const BottomUpDFA m = maximum(t);
                if (empty(m)) break;
                t = minus(t, m);
                ++it.removed;
                tick();
            }
            coeffs.push_back(it.removed);
            if (!empty(t)) {
                it.next = min_and_limits(t);
                tick();
            }
            s = it.next ? *it.next : BottomUpDFA{};
            out.iterations.push_back(std::move(it));
            if (!out.iterations.back().next) break;
        }
        out.type = Poly(std::move(coeffs));
        return out;
    }

    static bool empty(const BottomUpDFA& d) { return d.num_states() == 0; }

    /// Some member of a nonempty set.
    static SigmaTree element(const BottomUpDFA& d) {
        auto w = extract_witness(to_nta(d));
        if (!w) throw EmptyDomain();
        return *w;
    }

private:
    DeciderLimits limits_;
    Compiler c_;
};

struct LeadingExponent {
    Poly exponent;
    std::optional<SigmaTree> witness;
    std::vector<OtpIteration> otp;
};

inline LeadingExponent leading_exponent(Decider& d) {
    if (Decider::empty(d.compiler().dom_dfa())) throw EmptyDomain();
    const BottomUpDFA closed = d.closed_elements();
    if (Decider::empty(closed)) return {Poly{}, std::nullopt, {}};
    if (d.total()) {
        OtpResult r = d.otp_small(closed);
        return {std::move(r.type), std::nullopt, std::move(r.iterations)};
    }
    const BottomUpDFA top = d.maximum(closed);
    OtpResult r = d.otp_small(d.below(closed, top));
    return {std::move(r.type), Decider::element(top), std::move(r.iterations)};
}

inline LeadingExponent leading_exponent(const PresentationBundle& b, const DeciderLimits& limits = {}) {
    Decider d(b, limits);
    return leading_exponent(d);
}

inline BottomUpDFA closed_elements(const PresentationBundle& b, const DeciderLimits& limits = {}) {
    return Decider(b, limits).closed_elements();
}

inline OtpResult otp_small(const PresentationBundle& b, const BottomUpDFA& s, const DeciderLimits& limits = {}) {
    return Decider(b, limits).otp_small(s);
}

/// The tail after the leading power whose code is m: {g : m + g is defined}.
/// `c` must be a compiler over b's presentation.
inline PresentationBundle peel(const PresentationBundle& b, Compiler& c, const SigmaTree& m,
                               const DeciderLimits& limits = {}) {
    if (!c.dom_dfa().accepts(m)) throw NotInDomain("witness " + m.to_string() + " is not in the domain");
    c.define("peel_", minimal_dfa(TreeAutomaton::singleton(b.presentation.base(), m), limits.states));
    const BottomUpDFA dom = c.compile_dfa("EX c. (peel_(c) & EX s. add(c,x,s))", {"x"});
    PresentationBundle out = with_domain(b, c, dom, limits.states);
    out.bound.reset();
    return out;
}

inline PresentationBundle peel(const PresentationBundle& b, const SigmaTree& m, const DeciderLimits& limits = {}) {
    Compiler c(b.presentation, limits.states);
    return peel(b, c, m, limits);
}

inline OrdCNF cnf_of(const PresentationBundle& b, DecoderTrace* trace = nullptr, const DeciderLimits& limits = {}) {
    std::vector<Poly> exps;
    PresentationBundle cur = b;
    for (std::size_t peels = 0;; ++peels) {
        if (peels > limits.max_peels)
            throw IterationBudgetExceeded("more than " + std::to_string(limits.max_peels) + " peels");
        Decider d(cur, limits);
        if (Decider::empty(d.compiler().dom_dfa())) break;
        LeadingExponent lead = leading_exponent(d);
        if (trace) {
            PeelRecord rec;
            rec.exponent = lead.exponent;
            rec.witness = lead.witness;
            rec.dom_states = cur.presentation.at("dom").num_states();
            rec.le_states = cur.presentation.at("le").num_states();
            rec.add_states = cur.presentation.at("add").num_states();
            rec.otp = std::move(lead.otp);
            trace->peels.push_back(std::move(rec));
        }
        if (!exps.empty() && cmp_poly(lead.exponent, exps.back()) > 0)
            throw IterationBudgetExceeded("peeled exponents increased; the input is not a canonical ordinal presentation");
        exps.push_back(lead.exponent);
        if (!lead.witness) break;
        cur = peel(cur, d.compiler(), *lead.witness, limits);
    }
    std::vector<CnfTerm> terms;
    for (const auto& e : exps) {
        if (!terms.empty() && terms.back().exponent == e) ++terms.back().coeff;
        else terms.push_back(CnfTerm{e, 1});
    }
    return OrdCNF(std::move(terms));
}

struct IsoResult {
    bool isomorphic;
    OrdCNF first;
    OrdCNF second;
};

inline IsoResult isomorphic(const PresentationBundle& a, const PresentationBundle& b, const DeciderLimits& limits = {}) {
    OrdCNF x = cnf_of(a, nullptr, limits);
    OrdCNF y = cnf_of(b, nullptr, limits);
    const bool same = x == y;
    return {same, std::move(x), std::move(y)};
}

}  // namespace ordauto

#endif
