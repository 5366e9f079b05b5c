#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "matord/json_io.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(MATORD_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(MATORD_DATA) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, FlipCone) {
  CliResult s = run("cone " + data("flip.json") + " --kind schatten");
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out, "non-member, min_eig=-1.000000000000\n");
  CliResult m = run("cone " + data("flip.json") + " --kind min");
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(m.out, "member\n");
}

TEST(Cli, MalformedInputExitsOne) {
  EXPECT_EQ(run("cone /nonexistent.json").code, 1);
  EXPECT_EQ(run("cone " + write_temp("broken.json", "{\"space\": ")).code, 1);
  EXPECT_EQ(run("norm " + data("flip.json") + " --kind banana").code, 1);
  EXPECT_EQ(run("norm " + data("flip.json") + " --kind schatten --level 3").code, 1);
  EXPECT_EQ(run("experiment nope").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST(Cli, StrictModeSeparatesUndecided) {
  // an l_1 lattice MIN cone test on a non-member is decided; a custom cone
  // with dependent generators can leave MAX membership open
  const std::string undecided = write_temp(
      "dependent.json",
      R"({"space": {"model": "custom", "p": 2, "dim": 2,
                    "cone_generators": [[[1,0],[0,0]], [[0,0],[1,0]], [[1,0],[1,0]]],
                    "dual_generators": [[[1,0],[0,0]], [[0,0],[1,0]]], "pointed": true},
          "element": {"level": 2, "base_dim": 2,
                      "coeffs": [[[1,0],[1,0]], [[0.5,0],[0,0]], [[0.5,0],[0,0]], [[1,0],[1,0]]]}})");
  CliResult relaxed = run("cone " + undecided + " --kind max");
  CliResult strict = run("cone " + undecided + " --kind max --strict");
  if (relaxed.out == "UNDECIDED\n") {
    EXPECT_EQ(relaxed.code, 0);
    EXPECT_EQ(strict.code, 2);
  } else {
    EXPECT_EQ(strict.code, 0) << relaxed.out;
  }
  EXPECT_EQ(run("cone " + data("flip.json") + " --kind schatten --strict").code, 0);
}

TEST(Cli, JsonOutputRoundTrips) {
  CliResult c = run("cone " + data("flip.json") + " --kind schatten --json");
  ASSERT_EQ(c.code, 0);
  matord::ConeVerdict v = matord::verdict_from_json(nlohmann::json::parse(c.out));
  EXPECT_EQ(v.verdict, matord::Verdict::NonMember);

  CliResult d = run("dual " + data("l1_space.json") + " --kind min --json");
  ASSERT_EQ(d.code, 0);
  nlohmann::json j = nlohmann::json::parse(d.out);
  matord::BaseSpace D = matord::space_from_json(j["space"]);
  EXPECT_EQ(D.p, matord::kInf);
  EXPECT_EQ(j["kind"], "max");

  CliResult n = run("norm " + data("l1_space.json") + " " + data("l1_element.json") + " --kind min --json");
  ASSERT_EQ(n.code, 0);
  nlohmann::json nj = nlohmann::json::parse(n.out);
  EXPECT_LE(matord::real_from_json(nj["lower"]), matord::real_from_json(nj["upper"]));
}

TEST(Cli, SeedFromEnvironmentAndConfig) {
  const std::string base = "regularity " + data("l1_space.json") + " --kind min --level 1 --budget 20 --json";
  CliResult a = run(base + " --seed 7");
  CliResult b = run("--seed 7 " + base);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  CliResult env = run(base, "MATORD_SEED=7");
  EXPECT_EQ(env.out, a.out);
  CliResult flag_wins = run(base + " --seed 7", "MATORD_SEED=8");
  EXPECT_EQ(flag_wins.out, a.out);
  EXPECT_EQ(run(base, "MATORD_SEED=seven").code, 1);
  const std::string cfg = write_temp("matord.toml", "seed = 7\nbudget = 20\n");
  CliResult c = run("--config " + cfg + " regularity " + data("l1_space.json") + " --kind min --level 1 --json");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["normality"]["samples"], 20);
}

TEST(Cli, ExperimentRecord) {
  CliResult r = run("experiment flip_separation");
  EXPECT_EQ(r.code, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["name"], "flip_separation");
  EXPECT_EQ(j["pass"], true);
}
