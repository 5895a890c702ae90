#include <gtest/gtest.h>

#include "coarse/cli/commands.hpp"
#include "coarse/cli/generator.hpp"

using namespace coarse;
using namespace coarse::cli;

namespace {

const std::string kFixture = std::string(FIXTURE_DIR) + "/rotation.scn";

const char* kMinimal = R"({
  "spaces": [{"name": "pt", "points": ["a"], "bounded": true}],
  "groups": [{"name": "one", "elements": ["e"], "table": [[0]]}],
  "systems": [{"name": "s", "space": "pt", "group": "one", "evolution": {"e": ["a"]}}]
})";

CommandOptions onFixture() {
  CommandOptions opt;
  opt.scenario = kFixture;
  return opt;
}

}  // namespace

TEST(Scenario, Minimal) {
  auto s = parseScenario(kMinimal);
  EXPECT_EQ(s.spaces.size(), 1u);
  EXPECT_TRUE(validateCDS(*s.system("s").system).ok());
  EXPECT_THROW(s.space("nope"), ScenarioError);
  EXPECT_THROW(s.system("nope"), ScenarioError);
}

TEST(Scenario, FixtureValidates) {
  auto s = loadScenario(kFixture);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(s.windows.size(), 1u);
  EXPECT_TRUE(s.spaces.count("Z8"));
  EXPECT_FALSE(s.spaces.at("broken").space);
  EXPECT_THROW(s.space("broken"), ScenarioError);
  for (const auto& [name, e] : s.systems) EXPECT_TRUE(validateCDS(*e.system).ok()) << name;
  const auto& c = s.conjugacies.at("rot-to-rotb");
  EXPECT_TRUE(isConjugacy(checkConjugacy(s.system(c.fromSystem).system, s.system(c.toSystem).system, c.f, c.h)));
}

TEST(Scenario, DanglingReference) {
  const char* text = R"({
    "spaces": [{"name": "pt", "points": ["a"], "bounded": true}],
    "maps": [{"name": "m", "from": "pt", "to": "missing", "assign": [["a", "a"]]}]
  })";
  try {
    parseScenario(text);
    FAIL() << "expected ScenarioError";
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("missing"), std::string::npos);
  }
}

TEST(Scenario, ParseErrorHasLine) {
  try {
    parseScenario("{\n  \"spaces\": [\n  oops\n]}", "bad.scn");
    FAIL() << "expected ScenarioError";
  } catch (const ScenarioError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("bad.scn"), std::string::npos);
    EXPECT_NE(what.find("line 3"), std::string::npos) << what;
  }
}

TEST(Commands, CheckSpaceFailsOnInvalidChain) {
  auto r = runCommand("check-space", onFixture());
  EXPECT_FALSE(r.allPass());
  std::size_t failures = 0;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    ++failures;
    EXPECT_EQ(c.input, "broken");
    EXPECT_TRUE(c.details.contains("violation"));
  }
  EXPECT_EQ(failures, 1u);
}

TEST(Commands, FixtureChecksPass) {
  for (const char* cmd : {"check-map", "check-group", "check-cds", "conjugacy", "orbit", "coproduct", "hyperlift"}) {
    auto r = runCommand(cmd, onFixture());
    EXPECT_FALSE(r.checks.empty()) << cmd;
    EXPECT_TRUE(r.allPass()) << cmd << "\n" << renderText(r, false);
    EXPECT_EQ(r.seed, 7u);
  }
}

TEST(Commands, HyperCapFailsRatherThanThrows) {
  auto opt = onFixture();
  opt.hyperCap = 3;
  auto r = runCommand("hyperlift", opt);
  EXPECT_FALSE(r.allPass());
  opt.hyperCap = kHyperCap + 1;
  EXPECT_THROW(runCommand("hyperlift", opt), UsageError);
}

TEST(Commands, UsageErrors) {
  EXPECT_THROW(runCommand("frobnicate", {}), UsageError);
  EXPECT_THROW(runCommand("check-cds", {}), UsageError);
  EXPECT_THROW(runCommand("asdim", onFixture()), UsageError);
  EXPECT_THROW(runCommand("corpus", {}), UsageError);
  EXPECT_THROW(runCommand("zr-demo", {}), UsageError);
}

TEST(Commands, AsdimAndDemo) {
  auto opt = onFixture();
  opt.space = "Z8";
  opt.n = 1;
  auto r = runCommand("asdim", opt);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.checks[0].pass);

  CommandOptions demo;
  demo.halfWidth = 6;
  demo.step = 0.5;
  EXPECT_TRUE(runCommand("zr-demo", demo).allPass());
}

TEST(Generator, DeterministicAndValid) {
  auto a = generateInstance(instanceSeed(0, 0));
  auto b = generateInstance(instanceSeed(0, 0));
  EXPECT_EQ(a.groupName, b.groupName);
  EXPECT_TRUE(sameSystem(*a.a, *b.a));
  EXPECT_TRUE(sameSystem(*a.c, *b.c));
  EXPECT_NE(instanceSeed(0, 0), instanceSeed(0, 1));
  EXPECT_NE(instanceSeed(0, 0), instanceSeed(1, 0));
}

TEST(Generator, CopiesAreConjugate) {
  bool differ = false;
  for (std::size_t i = 0; i < 30; ++i) {
    auto inst = generateInstance(instanceSeed(5, i));
    EXPECT_LE(inst.a->ground().size(), 8u);
    EXPECT_LE(inst.a->time().size(), 6u);
    EXPECT_TRUE(validateCDS(*inst.a).ok());
    EXPECT_TRUE(isConjugacy(checkConjugacy(inst.a, inst.b, inst.ab->f(), inst.ab->h())));
    EXPECT_TRUE(isConjugacy(checkConjugacy(inst.b, inst.c, inst.bc->f(), inst.bc->h())));
    auto other = generateInstance(instanceSeed(6, i));
    differ = differ || !(inst.a->ground() == other.a->ground()) || inst.groupName != other.groupName;
  }
  EXPECT_TRUE(differ);
}

TEST(Report, SortedAndDeterministic) {
  CommandOptions opt;
  opt.seed = 3;
  opt.count = 12;
  auto r1 = runCommand("corpus", opt);
  opt.threads = 1;
  auto r2 = runCommand("corpus", opt);
  EXPECT_EQ(renderJson(r1, false), renderJson(r2, false));
  for (std::size_t i = 1; i < r1.checks.size(); ++i) EXPECT_LT(r1.checks[i - 1].input, r1.checks[i].input);
  auto j = toJson(r1, false);
  EXPECT_EQ(j.at("version"), kReportVersion);
  EXPECT_EQ(j.at("seed"), 3);
  EXPECT_FALSE(j.at("checks")[0].contains("wallMs"));
  EXPECT_TRUE(toJson(r1, true).at("checks")[0].contains("wallMs"));

  opt.instance = 4;
  auto one = runCommand("corpus", opt);
  ASSERT_EQ(one.checks.size(), 1u);
  EXPECT_EQ(toJson(one, false).at("checks")[0], j.at("checks")[4]);
}
