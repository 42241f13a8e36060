#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "groupoid_lab/groupoid_lab.hpp"

namespace fs = std::filesystem;
using groupoid_lab::Json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("groupoid-lab-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(GROUPOID_LAB_CLI) + " " + args + " > " + out + " 2>&1";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
  }

  std::string example(const std::string& name) const {
    const std::string p = path(name + ".json");
    const Result r = run("example " + name + " --out " + p);
    EXPECT_EQ(r.code, 0) << r.out;
    return p;
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ValidGroupoid) {
  const Result r = run("validate " + example("delooping"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("valid groupoid"), std::string::npos);
}

TEST_F(Cli, BrokenUnitLawIsNamed) {
  const Result r = run("validate " + example("broken-unit-law"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("unit-law"), std::string::npos) << r.out;
}

TEST_F(Cli, EveryExampleParsesAndIsValidExceptTheBrokenOne) {
  for (const std::string name : {"delooping", "identity-functor", "object-embedding", "fold-square"}) {
    EXPECT_EQ(run("validate " + example(name)).code, 0) << name;
  }
}

TEST_F(Cli, MalformedAndMissingInputExitTwo) {
  write("bad.json", "{\"type\": ");
  EXPECT_EQ(run("validate " + path("bad.json")).code, 2);
  EXPECT_EQ(run("validate " + path("absent.json")).code, 2);
  write("unknown.json", R"({"type": "sheaf"})");
  EXPECT_EQ(run("validate " + path("unknown.json")).code, 2);
  write("bad-instance.json", R"({"type": "object", "instance": "FinGrp", "carrier": [0]})");
  EXPECT_EQ(run("validate " + path("bad-instance.json")).code, 2);
}

TEST_F(Cli, NonAdditiveFunctorIsInvalid) {
  Json doc = Json::parse(std::ifstream(example("identity-functor")));
  auto& map = doc.at("F1").at("map");
  std::swap(map[0], map[1]);
  write("broken.json", doc.dump());
  const Result r = run("validate " + path("broken.json"));
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST_F(Cli, ClassifyIdentityFunctor) {
  const Result r = run("classify " + example("identity-functor"));
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  for (const char* flag : {"fully_faithful", "equivalence", "fibration", "split_epi_fibration", "discrete_fibration",
                           "star_fibration", "split_epi_star_fibration"}) {
    EXPECT_TRUE(j.at("flags").at(flag).get<bool>()) << flag;
  }
  EXPECT_TRUE(j.contains("witness_sizes"));
  EXPECT_FALSE(j.contains("witnesses"));
}

TEST_F(Cli, ClassifyObjectEmbedding) {
  const Result r = run("classify " + example("object-embedding"));
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j.at("flags").at("fibration").get<bool>());
  EXPECT_TRUE(j.at("flags").at("essentially_surjective").get<bool>());
  EXPECT_TRUE(j.at("flags").at("faithful").get<bool>());
  EXPECT_FALSE(j.at("flags").at("full").get<bool>());
  EXPECT_EQ(j.at("witness_sizes").at("tau_d").at("dom"), 1);
  EXPECT_EQ(j.at("witness_sizes").at("tau_d").at("cod"), 2);
  EXPECT_TRUE(j.contains("witnesses"));
}

TEST_F(Cli, ClassifyFoldSquare) {
  const Result r = run("classify --kind arrow " + example("fold-square"));
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.at("flags").at("fibration").get<bool>());
  EXPECT_FALSE(j.at("flags").at("star_fibration").get<bool>());
}

TEST_F(Cli, ClassifyTableAndMismatchedKind) {
  const Result table = run("classify --format table " + example("identity-functor"));
  EXPECT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("fully_faithful"), std::string::npos);
  EXPECT_EQ(run("classify --kind arrow " + example("identity-functor")).code, 1);
  EXPECT_EQ(run("classify " + example("broken-unit-law")).code, 1);
}

TEST_F(Cli, VerifyIsDeterministic) {
  const std::string a = path("a.json");
  const std::string b = path("b.json");
  EXPECT_EQ(run("verify --suite hkernel-discrete --cases 20 --seed 5 --out " + a).code, 0);
  EXPECT_EQ(run("verify --suite hkernel-discrete --cases 20 --seed 5 --out " + b).code, 0);
  std::stringstream sa;
  std::stringstream sb;
  sa << std::ifstream(a).rdbuf();
  sb << std::ifstream(b).rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  const Json j = Json::parse(sa.str());
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_EQ(j.at("seed"), 5);
  EXPECT_FALSE(j.at("reports").at(0).contains("elapsed_ms"));
}

TEST_F(Cli, VerifySeedFromEnvironment) {
  const std::string out = path("env.json");
  const int status = std::system(("GROUPOID_LAB_SEED=99 " + std::string(GROUPOID_LAB_CLI) +
                                  " verify --suite hkernel-discrete --cases 3 --out " + out + " > /dev/null")
                                     .c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(Json::parse(std::ifstream(out)).at("seed"), 99);
}

TEST_F(Cli, VerifyTimingAddsElapsed) {
  const std::string out = path("t.json");
  EXPECT_EQ(run("verify --suite hkernel-discrete --instance finab --cases 3 --timing --out " + out).code, 0);
  EXPECT_TRUE(Json::parse(std::ifstream(out)).at("reports").at(0).contains("elapsed_ms"));
}

TEST_F(Cli, VerifyExitCodes) {
  EXPECT_EQ(run("verify --suite no-such-suite").code, 2);
  EXPECT_EQ(run("verify --suite hkernel-discrete --cases 0").code, 2);
  EXPECT_EQ(run("verify --suite hkernel-discrete --instance groups").code, 2);
  EXPECT_EQ(run("verify --suite prop-fibration-T --instance finset --cases 50 --inject-fault").code, 1);
  EXPECT_EQ(run("verify --list").code, 0);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("classify --format xml x.json").code, 2);
  EXPECT_EQ(run("example no-such-example").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
