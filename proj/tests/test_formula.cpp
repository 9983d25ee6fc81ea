#include <gtest/gtest.h>

#include "ordauto/formula.hpp"

using namespace ordauto;

namespace {

const Signature kSig{{"dom", 1}, {"le", 2}, {"add", 3}, {"lt", 2}};

}  // namespace

TEST(Formula, Atom) {
    const FormulaPtr f = parse_formula("le(x,y)", &kSig);
    EXPECT_EQ(f->kind, Formula::Kind::Atom);
    EXPECT_EQ(f->name, "le");
    EXPECT_EQ(f->vars, (std::vector<std::string>{"x", "y"}));
}

TEST(Formula, ExistsWithFreeVariable) {
    const FormulaPtr f = parse_formula("EX y. lt(x,y)", &kSig);
    EXPECT_EQ(f->kind, Formula::Kind::Exists);
    EXPECT_EQ(free_variables(*f), (std::set<std::string>{"x"}));
}

TEST(Formula, ArityChecked) {
    EXPECT_THROW(parse_formula("add(x,y)", &kSig), ArityError);
    EXPECT_NO_THROW(parse_formula("add(x,y)"));
}

TEST(Formula, SyntaxErrorsCarryPosition) {
    try {
        parse_formula("le(x,y) &");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.position, 9u);
    }
    EXPECT_THROW(parse_formula("EX X. x=x"), SyntaxError);
    EXPECT_THROW(parse_formula("(x=y"), SyntaxError);
    EXPECT_THROW(parse_formula("x=y)"), SyntaxError);
    EXPECT_THROW(parse_formula("x"), SyntaxError);
}

TEST(Formula, Precedence) {
    // ~ > & > | > ->
    const FormulaPtr f = parse_formula("~a=b & c=d | e=f -> g=h");
    ASSERT_EQ(f->kind, Formula::Kind::Implies);
    const auto& lhs = *f->kids[0];
    ASSERT_EQ(lhs.kind, Formula::Kind::Or);
    ASSERT_EQ(lhs.kids[0]->kind, Formula::Kind::And);
    EXPECT_EQ(lhs.kids[0]->kids[0]->kind, Formula::Kind::Not);
}

TEST(Formula, QuantifierExtendsToClosingParenthesis) {
    const FormulaPtr f = parse_formula("(EX y. x=y & y=z) | z=x");
    ASSERT_EQ(f->kind, Formula::Kind::Or);
    ASSERT_EQ(f->kids[0]->kind, Formula::Kind::Exists);
    EXPECT_EQ(f->kids[0]->kids[0]->kind, Formula::Kind::And);
}

TEST(Formula, ShadowingRenamedApart) {
    const FormulaPtr f = parse_formula("EX x. (le(x,y) & EX x. le(y,x))");
    EXPECT_EQ(free_variables(*f), (std::set<std::string>{"y"}));
    ASSERT_EQ(f->kind, Formula::Kind::Exists);
    const auto& inner = *f->kids[0]->kids[1];
    ASSERT_EQ(inner.kind, Formula::Kind::Exists);
    EXPECT_NE(inner.vars[0], f->vars[0]);
    EXPECT_EQ(inner.kids[0]->vars[1], inner.vars[0]);

    // a binder named like a free variable is renamed too
    const FormulaPtr g = parse_formula("le(x,y) & EX y. le(y,x)");
    EXPECT_EQ(free_variables(*g), (std::set<std::string>{"x", "y"}));
    EXPECT_NE(g->kids[1]->vars[0], "y");
}

TEST(Formula, TextRoundTrip) {
    for (const char* s : {"ALL x. EX y. (le(x,y) & ~x=y)", "add(a,b,c) -> (le(a,c) | a=b)", "~~x=x"}) {
        const FormulaPtr f = parse_formula(s);
        const FormulaPtr g = parse_formula(to_text(*f));
        EXPECT_EQ(to_text(*g), to_text(*f)) << s;
    }
}
