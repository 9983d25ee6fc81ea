#include <gtest/gtest.h>

#include <random>

#include "ordauto/fo_compiler.hpp"
#include "ordauto/presentations.hpp"
#include "test_support.hpp"

using namespace ordauto;
using ordauto::testing::FiniteModel;
using ordauto::testing::FormulaGen;

namespace {

const PresentationBundle& level1() {
    static const PresentationBundle b = build_presentation(1);
    return b;
}

const PresentationBundle& below6() {
    static const PresentationBundle b = restrict(level1(), parse_cnf("6"));
    return b;
}

SigmaTree code(const char* a) { return encode(1, parse_cnf(a)); }

std::vector<SigmaTree> accepted_codes(const TreeAutomaton& a, std::size_t max_nodes = 9) {
    std::vector<SigmaTree> out;
    for (const auto& t : enumerate_trees({"0", "1"}, max_nodes))
        if (accepts(a, t)) out.push_back(t);
    return out;
}

}  // namespace

TEST(Compile, EqualityIsDomain) {
    Compiler c(level1().presentation);
    EXPECT_TRUE(equivalent(c.compile(c.parse("x=x"), {"x"}), level1().presentation.dom()));
}

TEST(Compile, NoMaximumAtLevel1) {
    EXPECT_TRUE(eval_sentence(level1().presentation, "ALL x. EX y. (le(x,y) & ~(x=y))"));
    EXPECT_FALSE(eval_sentence(below6().presentation, "ALL x. EX y. (le(x,y) & ~(x=y))"));
}

TEST(Compile, MaximumOfThree) {
    const PresentationBundle b = restrict(level1(), parse_cnf("3"));
    const auto got = accepted_codes(compile(b.presentation, "ALL y. le(y,x)", {"x"}));
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0], code("2"));
}

TEST(Compile, Totality) {
    const std::string total = "ALL x. ALL y. EX z. add(x,y,z)";
    EXPECT_TRUE(eval_sentence(level1().presentation, total));
    EXPECT_FALSE(eval_sentence(restrict(level1(), parse_cnf("w*2")).presentation, total));
    EXPECT_TRUE(eval_sentence(restrict(level1(), parse_cnf("w")).presentation, total));
}

TEST(Compile, ExistsOverNonemptyDomain) { EXPECT_TRUE(eval_sentence(below6().presentation, "EX x. x=x")); }

TEST(Compile, EmptyDomain) {
    Presentation p = below6().presentation;
    p.relations.insert_or_assign("dom", TreeAutomaton::empty(p.base()));
    p.dfas.erase("dom");
    EXPECT_FALSE(eval_sentence(p, "EX x. x=x"));
    EXPECT_TRUE(eval_sentence(p, "ALL x. ~x=x"));
}

TEST(Compile, Errors) {
    Compiler c(level1().presentation);
    EXPECT_THROW(c.compile(c.parse("le(x,y)"), {"x"}), FreeVarMissing);
    EXPECT_THROW(c.compile(parse_formula("foo(x)"), {"x"}), UnknownRelation);
    EXPECT_THROW(c.eval_sentence(c.parse("le(x,x)")), FreeVarsPresent);
    EXPECT_THROW(c.compile(c.parse("x=x"), {"x", "x"}), DomainError);
}

TEST(Compile, CoordinateOrderFollowsFreeOrder) {
    Compiler c(below6().presentation);
    const TreeAutomaton xy = c.compile(c.parse("le(x,y) & ~x=y"), {"x", "y"});
    const TreeAutomaton yx = c.compile(c.parse("le(x,y) & ~x=y"), {"y", "x"});
    EXPECT_TRUE(accepts(xy, convolve({code("1"), code("4")})));
    EXPECT_FALSE(accepts(yx, convolve({code("1"), code("4")})));
    EXPECT_TRUE(accepts(yx, convolve({code("4"), code("1")})));
    // a variable in the order but not in the formula is a free coordinate over dom
    const TreeAutomaton pad = c.compile(c.parse("le(x,x)"), {"x", "z"});
    EXPECT_TRUE(accepts(pad, convolve({code("1"), code("5")})));
    EXPECT_FALSE(accepts(pad, convolve({code("1"), code("6")})));
}

TEST(BindConstant, Examples) {
    const Presentation& p = below6().presentation;
    const Presentation q = bind_constant(p, "zero", code("0"));
    const auto got = accepted_codes(compile(q, "zero(x)", {"x"}));
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0], code("0"));
    EXPECT_TRUE(eval_sentence(q, "ALL x. ALL y. (zero(x) -> le(x,y))"));
    EXPECT_TRUE(eval_sentence(bind_constant(level1().presentation, "zero", code("0")),
                              "ALL x. ALL y. (zero(x) -> le(x,y))"));
    EXPECT_THROW(bind_constant(p, "big", code("7")), NotInDomain);
    EXPECT_THROW(bind_constant(p, "junk", parse_tree("0(0,0)")), NotInDomain);
}

TEST(Sanity, Level1Passes) {
    for (const auto& item : sanity_check(level1().presentation)) EXPECT_TRUE(item.passed) << item.name;
}

TEST(Sanity, RestrictionPasses) {
    for (const auto& item : sanity_check(restrict(level1(), parse_cnf("w*2+3")).presentation))
        EXPECT_TRUE(item.passed) << item.name;
}

TEST(Sanity, AddWithWrongArityRejected) {
    Presentation p = level1().presentation;
    p.relations.insert_or_assign("add", p.at("le"));
    p.dfas.erase("add");
    EXPECT_THROW(sanity_check(p), FormatError);
}

TEST(Sanity, MissingTripleBreaksIdentityOnly) {
    Presentation p = level1().presentation;
    const SigmaTree gone = convolve({code("0"), code("5"), code("5")});
    const TreeAutomaton hole = complement(TreeAutomaton::singleton(p.at("add").alphabet(), gone));
    p.relations.insert_or_assign("add", intersect(p.at("add"), hole));
    p.dfas.erase("add");
    ASSERT_FALSE(accepts(p.at("add"), gone));
    std::map<std::string, bool> r;
    for (const auto& item : sanity_check(p)) r[item.name] = item.passed;
    EXPECT_TRUE(r.at("add functional"));
    EXPECT_FALSE(r.at("zero is identity"));
}

TEST(Compile, RandomFormulasAgreeWithBruteForce) {
    const Presentation& p = below6().presentation;
    std::vector<SigmaTree> codes;
    for (int i = 0; i < 6; ++i) codes.push_back(encode(1, parse_cnf(std::to_string(i))));
    FiniteModel model(6, {{"le", [](const auto& a) { return a[0] <= a[1]; }},
                          {"add", [](const auto& a) { return a[0] + a[1] == a[2]; }}});
    std::mt19937 rng(11);
    FormulaGen gen(rng);
    Compiler c(p);
    for (int round = 0; round < 20; ++round) {
        const std::string text = gen.make(2, {"x", "y"});
        const FormulaPtr phi = c.parse(text);
        const TreeAutomaton a = c.compile(phi, {"x", "y"});
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) {
                std::map<std::string, std::size_t> env{{"x", i}, {"y", j}};
                EXPECT_EQ(accepts(a, convolve({codes[i], codes[j]})), model.eval(*phi, env))
                    << text << " at " << i << "," << j;
            }
    }
    for (int round = 0; round < 10; ++round) {
        const std::string text = gen.make(2, {});
        const FormulaPtr phi = c.parse(text);
        std::map<std::string, std::size_t> env;
        EXPECT_EQ(c.eval_sentence(phi), model.eval(*phi, env)) << text;
    }
}

TEST(Compile, Relativization) {
    // no accepted tuple leaves the domain, even under negation and quantifiers
    const Presentation& p = below6().presentation;
    Compiler c(p);
    for (const char* text : {"EX y. le(x,y)", "~le(x,x)", "~EX y. add(x,y,y)", "ALL y. ~add(y,y,x)"}) {
        const TreeAutomaton a = c.compile(c.parse(text), {"x"});
        for (const auto& t : enumerate_trees({"0", "1"}, 9))
            if (accepts(a, t)) { EXPECT_TRUE(accepts(p.dom(), t)) << text << " " << t.to_string(); }
    }
}

TEST(Compile, LogicalIdentities) {
    Compiler c(level1().presentation);
    for (const char* text : {"le(x,y)", "EX z. add(x,z,y)", "ALL z. (le(z,x) | le(y,z))"}) {
        const std::string s(text);
        const TreeAutomaton a = c.compile(c.parse(s), {"x", "y"});
        EXPECT_TRUE(equivalent(a, c.compile(c.parse("~~(" + s + ")"), {"x", "y"}))) << text;
        EXPECT_TRUE(equivalent(a, c.compile(c.parse("(" + s + ") & (" + s + ")"), {"x", "y"}))) << text;
    }
}
