#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(GEVO_BIN) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

fs::path temp_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("gevo_cli_" + name + "_" + std::to_string(std::random_device{}()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, RejectsOutOfRangeThreshold) {
  const auto out = temp_dir("mj");
  EXPECT_NE(run("track --method sgci --mj 1.5 --out " + out.string()), 0);
  fs::remove_all(out);
}

TEST(Cli, RejectsUnknownFlag) {
  const auto out = temp_dir("flag");
  EXPECT_NE(run("detect --no-such-flag 3 --out " + out.string()), 0);
  EXPECT_NE(run("frobnicate"), 0);
  fs::remove_all(out);
}

TEST(Cli, MissingUpstreamArtifact) {
  const auto out = temp_dir("missing");
  EXPECT_NE(run("detect --out " + out.string()), 0);
  fs::remove_all(out);
}

TEST(Cli, ConstancyScenarioEndToEnd) {
  const auto out = temp_dir("e2e");
  ASSERT_EQ(run("synth --scenario constancy --out " + out.string()), 0);
  ASSERT_EQ(run("pipeline --config " + (out / "run.conf").string() + " --method sgci --out " + out.string()), 0);
  std::ifstream table(out / "report_sgci_tree.csv");
  ASSERT_TRUE(table.good());
  std::string line;
  bool found = false;
  while (std::getline(table, line)) {
    if (line.rfind("constancy,", 0) != 0) continue;
    found = true;
    std::istringstream fields(line);
    std::string f;
    std::vector<std::string> v;
    while (std::getline(fields, f, ',')) v.push_back(f);
    ASSERT_EQ(v.size(), 7u);
    EXPECT_EQ(std::stod(v[5]), 1.0);  // recall
  }
  EXPECT_TRUE(found);
  fs::remove_all(out);
}

TEST(Cli, PipelineIsDeterministic) {
  const auto src = temp_dir("det_src");
  const auto a = temp_dir("det_a");
  const auto b = temp_dir("det_b");
  ASSERT_EQ(run("synth --synth-seed 3 --out " + src.string()), 0);
  const auto config = (src / "run.conf").string();
  ASSERT_EQ(run("pipeline --config " + config + " --out " + a.string()), 0);
  ASSERT_EQ(run("pipeline --config " + config + " --out " + b.string()), 0);
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), a);
    EXPECT_EQ(slurp(e.path()), slurp(b / rel)) << rel;
    ++compared;
  }
  EXPECT_GT(compared, 10u);
  for (const auto& d : {src, a, b}) fs::remove_all(d);
}
