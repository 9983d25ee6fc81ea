#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(ORDAUTO_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = fs::temp_directory_path() / ("ordauto_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        ASSERT_EQ(run("build-presentation -n 1 -o " + path("w1")).code, 0);
        ASSERT_EQ(run("restrict -p " + path("w1") + " -a 'w*2+3' -o " + path("r")).code, 0);
    }
    static void TearDownTestSuite() { fs::remove_all(dir_); }
    static std::string path(const std::string& name) { return (dir_ / name).string(); }

    static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, EncodeDecode) {
    Outcome r = run("encode -n 1 'w*2+3'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1(0(0,1),1)\n");
    r = run("decode -n 1 '1(0,1)'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3\n");
}

TEST_F(Cli, FormatAndUsageErrors) {
    EXPECT_EQ(run("decode -n 1 '0(0,0)'").code, 3);
    EXPECT_EQ(run("encode -n 1 'w^^2'").code, 3);
    EXPECT_EQ(run("encode -n 1 'w^(w)'").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("encode 'w'").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("cnf -p " + path("nope")).code, 3);
}

TEST_F(Cli, BundleLayout) {
    for (const char* f : {"meta", "dom.aut", "le.aut", "add.aut"}) EXPECT_TRUE(fs::exists(fs::path(path("r")) / f)) << f;
    std::ifstream meta(fs::path(path("r")) / "meta");
    std::string text((std::istreambuf_iterator<char>(meta)), std::istreambuf_iterator<char>());
    EXPECT_EQ(text, "level 1\nbound w*2+3\n");
}

TEST_F(Cli, MemberAndEmpty) {
    const std::string dom = (fs::path(path("r")) / "dom.aut").string();
    Outcome r = run("member -A " + dom + " '1(0(0,1),0)'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "true\n");
    r = run("member -A " + dom + " '1(0(0,1),1)'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "false\n");
    r = run("empty -A " + dom);
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "nonempty\n");
    EXPECT_EQ(run("empty -A " + path("missing.aut")).code, 3);
}

TEST_F(Cli, Query) {
    Outcome r = run("query -p " + path("w1") + " -f 'ALL x. EX y. (le(x,y) & ~x=y)'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "true\n");
    r = run("query -p " + path("r") + " -f 'ALL x. ALL y. EX z. add(x,y,z)'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "false\n");
    const std::string out = path("max.aut");
    EXPECT_EQ(run("query -p " + path("r") + " -f 'ALL y. le(y,x)' -o " + out).code, 0);
    EXPECT_EQ(run("member -A " + out + " '0(0(0,1),1)'").code, 0);
    EXPECT_EQ(run("member -A " + out + " '1(0(0,1),0)'").code, 1);
    EXPECT_EQ(run("query -p " + path("r") + " -f 'add(x,y)'").code, 3);
    EXPECT_EQ(run("query -p " + path("r") + " -f 'le(x,'").code, 3);
}

TEST_F(Cli, Check) {
    const Outcome r = run("check -p " + path("r"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("ok   le total"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, CnfWithTrace) {
    Outcome r = run("cnf -p " + path("r"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "w*2+3\n");
    r = run("cnf -p " + path("r") + " --trace");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("peel 0 exponent 1 witness", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("\nw*2+3\n"), std::string::npos);
}

TEST_F(Cli, Iso) {
    ASSERT_EQ(run("restrict -p " + path("w1") + " -a 'w*2+3' -o " + path("same")).code, 0);
    ASSERT_EQ(run("restrict -p " + path("w1") + " -a 'w*3' -o " + path("other")).code, 0);
    Outcome r = run("iso -p1 " + path("r") + " -p2 " + path("same"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "isomorphic\nw*2+3\nw*2+3\n");
    r = run("iso -p1 " + path("r") + " -p2 " + path("other"));
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "not-isomorphic\nw*2+3\nw*3\n");
}

TEST_F(Cli, ResourceBudget) {
    EXPECT_EQ(run("build-presentation -n 2 --max-states 5 -o " + path("tiny")).code, 4);
    EXPECT_EQ(run("cnf -p " + path("r") + " --max-peels 1").code, 4);
}
