#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ordauto/presentations.hpp"
#include "test_support.hpp"

using namespace ordauto;
namespace fs = std::filesystem;

namespace {

const PresentationBundle& level1() {
    static const PresentationBundle b = build_presentation(1);
    return b;
}

std::vector<SigmaTree> dom_codes(const PresentationBundle& b, std::size_t max_nodes = 11) {
    std::vector<SigmaTree> out;
    for (const auto& t : enumerate_trees({"0", "1"}, max_nodes))
        if (accepts(b.presentation.dom(), t)) out.push_back(t);
    return out;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("ordauto_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(Build, MinimumIsZeroCode) {
    Compiler c(level1().presentation);
    const TreeAutomaton least = c.compile(c.parse("ALL y. le(x,y)"), {"x"});
    const auto w = extract_witness(least);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->to_string(), "0");
    EXPECT_FALSE(is_empty(level1().presentation.dom()));
}

TEST(Build, LevelCeiling) {
    EXPECT_THROW(build_presentation(0), DomainError);
    EXPECT_THROW(build_presentation(5), DomainError);
    EXPECT_THROW(build_presentation(3, {}, 2), DomainError);
}

TEST(Build, Level2Sanity) {
    for (const auto& item : sanity_check(build_presentation(2).presentation)) EXPECT_TRUE(item.passed) << item.name;
}

TEST(Build, BudgetExceeded) {
    Limits tight;
    tight.max_states = 3;
    EXPECT_THROW(build_presentation(2, tight), ResourceError);
}

TEST(Restrict, ThreeCodes) {
    const auto codes = dom_codes(restrict(level1(), parse_cnf("3")));
    EXPECT_EQ(codes.size(), 3u);
}

TEST(Restrict, FiniteBoundsHaveExactlyTheSmallerCodes) {
    for (int a = 1; a <= 6; ++a) {
        std::set<std::string> want, got;
        for (int b = 0; b < a; ++b) want.insert(encode(1, parse_cnf(std::to_string(b))).to_string());
        for (const auto& t : dom_codes(restrict(level1(), parse_cnf(std::to_string(a))))) got.insert(t.to_string());
        EXPECT_EQ(got, want) << a;
    }
}

TEST(Restrict, InfiniteBoundMembership) {
    const PresentationBundle b = restrict(level1(), parse_cnf("w^2+w*2"));
    for (const auto& a : ordauto::testing::ordinals_below_w3(3))
        EXPECT_EQ(accepts(b.presentation.dom(), encode(1, a)), cmp(a, parse_cnf("w^2+w*2")) < 0) << render(a);
}

TEST(Restrict, AddTotalExactlyForPowers) {
    const std::string total = "ALL x. ALL y. EX z. add(x,y,z)";
    for (const char* a : {"1", "2", "w", "w+1", "w*2", "w^2", "w^2+w"}) {
        const OrdCNF bound = parse_cnf(a);
        EXPECT_EQ(eval_sentence(restrict(level1(), bound).presentation, total), is_omega_power(bound)) << a;
    }
}

TEST(Restrict, Errors) {
    EXPECT_THROW(restrict(level1(), parse_cnf("0")), OutOfRange);
    EXPECT_THROW(restrict(level1(), parse_cnf("w^(w)")), OutOfRange);
}

TEST(Restrict, NestedKeepsSmallerBound) {
    const PresentationBundle b = restrict(restrict(level1(), parse_cnf("w")), parse_cnf("5"));
    ASSERT_TRUE(b.bound);
    EXPECT_EQ(*b.bound, parse_cnf("5"));
    EXPECT_EQ(dom_codes(b).size(), 5u);
}

TEST(Bundle, SaveLoadRoundTrip) {
    TempDir tmp;
    const PresentationBundle b = restrict(level1(), parse_cnf("w*2+1"));
    save_bundle(b, tmp.path.string());
    for (const char* f : {"meta", "dom.aut", "le.aut", "add.aut"}) EXPECT_TRUE(fs::exists(tmp.path / f)) << f;
    const PresentationBundle c = load_bundle(tmp.path.string());
    EXPECT_EQ(c.level, 1u);
    ASSERT_TRUE(c.bound);
    EXPECT_EQ(*c.bound, parse_cnf("w*2+1"));
    for (const char* r : {"dom", "le", "add"})
        EXPECT_TRUE(equivalent(b.presentation.at(r), c.presentation.at(r))) << r;
}

TEST(Bundle, MetaErrors) {
    TempDir tmp;
    save_bundle(level1(), tmp.path.string());
    auto write_meta = [&](const std::string& text) { std::ofstream(tmp.path / "meta") << text; };
    write_meta("level 1\n");
    EXPECT_NO_THROW(load_bundle(tmp.path.string()));
    write_meta("level x\n");
    EXPECT_THROW(load_bundle(tmp.path.string()), FormatError);
    write_meta("bound 3\n");
    EXPECT_THROW(load_bundle(tmp.path.string()), FormatError);
    write_meta("level 1\ncolor red\n");
    EXPECT_THROW(load_bundle(tmp.path.string()), FormatError);
    write_meta("level 1\nbound w^^2\n");
    EXPECT_THROW(load_bundle(tmp.path.string()), FormatError);
    EXPECT_THROW(load_bundle((tmp.path / "missing").string()), FormatError);
}

TEST(Bundle, WrongArityRejected) {
    TempDir tmp;
    save_bundle(level1(), tmp.path.string());
    fs::copy_file(tmp.path / "le.aut", tmp.path / "add.aut", fs::copy_options::overwrite_existing);
    EXPECT_THROW(load_bundle(tmp.path.string()), FormatError);
}
