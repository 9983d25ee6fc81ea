#include <gtest/gtest.h>

#include "ordauto/decider.hpp"
#include "test_support.hpp"

using namespace ordauto;
using ordauto::testing::power_set_type;
using ordauto::testing::SmallOrdinal;

namespace {

const PresentationBundle& level1() {
    static const PresentationBundle b = build_presentation(1);
    return b;
}

const PresentationBundle& level2() {
    static const PresentationBundle b = build_presentation(2);
    return b;
}

PresentationBundle below(const char* a) { return restrict(level1(), parse_cnf(a)); }

Poly poly(std::vector<int> c) { return Poly(std::vector<Natural>(c.begin(), c.end())); }

std::set<std::string> decoded(const TreeAutomaton& a, std::size_t level = 1, std::size_t max_nodes = 9) {
    std::set<std::string> out;
    for (const auto& t : enumerate_trees({"0", "1"}, max_nodes))
        if (accepts(a, t)) out.insert(render(decode(level, t)));
    return out;
}

std::set<std::string> decoded(const BottomUpDFA& d, std::size_t level = 1, std::size_t max_nodes = 9) {
    return decoded(to_nta(d), level, max_nodes);
}

}  // namespace

TEST(Closed, Examples) {
    EXPECT_EQ(decoded(closed_elements(below("w*2+3"))), (std::set<std::string>{"1", "w"}));
    EXPECT_TRUE(Decider::empty(closed_elements(below("1"))));
    // w^k has a code of 2k+1 nodes, so nine nodes reach w^4
    EXPECT_EQ(decoded(closed_elements(level1())), (std::set<std::string>{"1", "w", "w^2", "w^3", "w^4"}));
}

TEST(Closed, PairwiseFormAgrees) {
    for (const char* a : {"1", "5", "w", "w*2+3", "w^2", "w^2*2+w"}) {
        Decider d(below(a));
        EXPECT_TRUE(equivalent(to_nta(d.closed_elements()), to_nta(d.closed_elements_pairwise()))) << a;
    }
    Decider d(level1());
    EXPECT_TRUE(equivalent(to_nta(d.closed_elements()), to_nta(d.closed_elements_pairwise())));
}

TEST(Closed, Level2PowersOnly) {
    const PresentationBundle b = restrict(level2(), parse_cnf("w^(w+1)*2+w^3"));
    const BottomUpDFA c = closed_elements(b);
    for (unsigned e1 = 0; e1 <= 2; ++e1)
        for (unsigned e0 = 0; e0 <= 3; ++e0) {
            const OrdCNF p = omega_power(poly({int(e0), int(e1)}));
            EXPECT_EQ(c.accepts(encode(2, p)), cmp(p, parse_cnf("w^(w+1)*2+w^3")) < 0) << render(p);
        }
    EXPECT_FALSE(c.accepts(encode(2, parse_cnf("w^(w)*2"))));
    EXPECT_FALSE(c.accepts(encode(2, parse_cnf("w+1"))));
}

TEST(Witness, MaxAgreesWithLeastElementWithoutClosedAbove) {
    for (const char* a : {"5", "w+1", "w*2+3", "w^2+1", "w^2*3+w*2"}) {
        Decider d(below(a));
        const BottomUpDFA closed = d.closed_elements();
        d.compiler().define("closed_", closed);
        const BottomUpDFA least = d.compiler().compile_dfa(
            "(~EX g. (closed_(g) & lt(x,g))) & ALL y. ((~EX g. (closed_(g) & lt(y,g))) -> le(x,y))", {"x"});
        EXPECT_TRUE(equivalent(to_nta(least), to_nta(d.maximum(closed)))) << a;
    }
}

TEST(Otp, Examples) {
    Decider d(below("w*2+3"));
    EXPECT_EQ(d.otp_small(d.closed_elements()).type, poly({2}));
    Decider e(below("w"));
    const OtpResult r = e.otp_small(e.compiler().dom_dfa());
    EXPECT_EQ(r.type, poly({0, 1}));
    ASSERT_EQ(r.iterations.size(), 2u);
    EXPECT_EQ(r.iterations[0].removed, 0);
    EXPECT_EQ(r.iterations[1].removed, 1);
    EXPECT_EQ(e.otp_small(BottomUpDFA{}).type, Poly{});
}

TEST(Otp, FiniteSets) {
    for (int n = 1; n <= 6; ++n) {
        Decider d(below(std::to_string(n).c_str()));
        EXPECT_EQ(d.otp_small(d.compiler().dom_dfa()).type, poly({n})) << n;
    }
}

TEST(Otp, LawOnEveryIteration) {
    for (const char* a : {"w^2*2+w*3+1", "w^(w+2)*2+w^(w)+w^2*3"}) {
        const OrdCNF bound = parse_cnf(a);
        const std::size_t level = below_level(bound, 1) ? 1 : 2;
        const PresentationBundle b = restrict(level == 1 ? level1() : level2(), bound);
        Decider d(b);
        const OtpResult r = d.otp_small(d.closed_elements());
        for (const auto& it : r.iterations) {
            const auto cur = power_set_type(level, 6, [&](const SigmaTree& t) { return it.set.accepts(t); });
            ASSERT_TRUE(cur);
            SmallOrdinal next;
            if (it.next) {
                const auto n = power_set_type(level, 6, [&](const SigmaTree& t) { return it.next->accepts(t); });
                ASSERT_TRUE(n);
                next = *n;
            }
            EXPECT_EQ(*cur, next.times_omega().plus(SmallOrdinal::finite(static_cast<unsigned long>(it.removed))))
                << a << ": " << cur->text() << " vs " << next.text() << " " << it.removed;
        }
    }
}

TEST(Leading, Examples) {
    const LeadingExponent a = leading_exponent(below("w*2+3"));
    EXPECT_EQ(a.exponent, poly({1}));
    ASSERT_TRUE(a.witness);
    EXPECT_EQ(*a.witness, encode(1, parse_cnf("w")));

    const LeadingExponent b = leading_exponent(level1());
    EXPECT_EQ(b.exponent, poly({0, 1}));
    EXPECT_FALSE(b.witness);

    const LeadingExponent c = leading_exponent(below("1"));
    EXPECT_EQ(c.exponent, Poly{});
    EXPECT_FALSE(c.witness);
}

TEST(Leading, EmptyDomain) {
    PresentationBundle b = below("3");
    b.presentation.set("dom", BottomUpDFA(b.presentation.base(), 0,
                                          std::vector<State>(b.presentation.base().size(), BottomUpDFA::kNone), {}, {}));
    EXPECT_THROW(leading_exponent(b), EmptyDomain);
    EXPECT_EQ(cnf_of(b), OrdCNF{});
}

TEST(Peel, Examples) {
    const PresentationBundle b = below("w*2+3");
    const PresentationBundle once = peel(b, encode(1, parse_cnf("w")));
    for (const auto& x : ordauto::testing::ordinals_below_w3(3))
        EXPECT_EQ(accepts(once.presentation.dom(), encode(1, x)), cmp(x, parse_cnf("w+3")) < 0) << render(x);
    EXPECT_EQ(decoded(peel(below("5"), encode(1, parse_cnf("1"))).presentation.dom()).size(), 4u);
    const PresentationBundle twice = peel(once, encode(1, parse_cnf("w")));
    EXPECT_EQ(decoded(twice.presentation.dom()), (std::set<std::string>{"0", "1", "2"}));
    EXPECT_THROW(peel(b, encode(1, parse_cnf("w*2+3"))), NotInDomain);
}

TEST(Cnf, Examples) {
    EXPECT_EQ(cnf_of(below("w^2*2+w+4")), parse_cnf("w^2*2+w+4"));
    EXPECT_EQ(cnf_of(level1()), parse_cnf("w^(w)"));
    EXPECT_EQ(cnf_of(level2()), parse_cnf("w^(w^2)"));
    EXPECT_EQ(cnf_of(below("1")), parse_cnf("1"));
    EXPECT_EQ(cnf_of(below("w")), parse_cnf("w"));
}

TEST(Cnf, Level2Samples) {
    for (const char* a : {"w^(w)", "w^(w+1)*2+3", "w^(w*2)+w^(w)*3+w^2"}) {
        EXPECT_EQ(cnf_of(restrict(level2(), parse_cnf(a))), parse_cnf(a)) << a;
    }
}

TEST(Cnf, TraceMonotone) {
    DecoderTrace trace;
    const OrdCNF a = cnf_of(below("w^2*2+w*3+2"), &trace);
    EXPECT_EQ(a, parse_cnf("w^2*2+w*3+2"));
    ASSERT_EQ(trace.peels.size(), 7u);
    std::size_t strict = 0;
    for (std::size_t i = 1; i < trace.peels.size(); ++i) {
        const auto c = cmp_poly(trace.peels[i].exponent, trace.peels[i - 1].exponent);
        EXPECT_TRUE(c <= 0);
        strict += c < 0;
    }
    // one strict step per boundary between CNF terms
    EXPECT_EQ(strict, a.terms().size() - 1);
    EXPECT_NE(trace.text().find("peel 0 exponent 2 witness"), std::string::npos);
}

TEST(Cnf, PeelBudget) {
    DeciderLimits limits;
    limits.max_peels = 2;
    EXPECT_THROW(cnf_of(below("w*2+3"), nullptr, limits), IterationBudgetExceeded);
}

TEST(Iso, Examples) {
    const IsoResult cross = isomorphic(below("w*2"), restrict(level2(), parse_cnf("w*2")));
    EXPECT_TRUE(cross.isomorphic);
    EXPECT_EQ(cross.first, parse_cnf("w*2"));
    EXPECT_EQ(cross.second, parse_cnf("w*2"));
    EXPECT_FALSE(isomorphic(below("w^2"), below("w*2")).isomorphic);
    EXPECT_TRUE(isomorphic(below("w+3"), below("w+3")).isomorphic);
}
