#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "bertrand/io.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using bertrand::Vec3;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("bertrand_cli_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(const std::string& args, const std::string& out = "out") {
    const std::string cmd = "\"" + std::string(BERTRAND_CLI_PATH) + "\" " + args + " --out \"" +
                            (root_ / out).string() + "\" > /dev/null 2> \"" + (root_ / "stderr").string() + "\"";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }

  std::string stderr_text() const { return bertrand::io::read_file((root_ / "stderr").string()); }
  std::string file(const std::string& out, const std::string& name) const {
    return bertrand::io::read_file((root_ / out / name).string());
  }

  // Rows of a numeric CSV with a header line.
  std::vector<std::vector<double>> csv(const std::string& out, const std::string& name) const {
    std::istringstream in(file(out, name));
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
      std::vector<double> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
      rows.push_back(row);
    }
    return rows;
  }

  fs::path root_;
};

}  // namespace

TEST_F(Cli, AnalyzeHelixCurvatures) {
  ASSERT_EQ(run("analyze --curve \"helix(a=1,b=1)\""), 0);
  const auto rows = csv("out", "analyze.csv");
  ASSERT_EQ(rows.size(), 1024u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r[13], 0.5, 1e-12);
    EXPECT_NEAR(r[14], 0.5, 1e-12);
  }
  EXPECT_NE(file("out", "analyze_report.txt").find("bertrand.accepted = true"), std::string::npos);
}

TEST_F(Cli, MateOfHelixIsAxis) {
  ASSERT_EQ(run("mate --curve \"helix(a=1,b=1)\" --field 1,0,0 --lambda0 1"), 0);
  for (const auto& r : csv("out", "mate.csv")) {
    EXPECT_NEAR(r[1], 0.0, 1e-6);
    EXPECT_NEAR(r[2], 0.0, 1e-6);
    EXPECT_NEAR(r[3], r[0] / std::sqrt(2.0), 1e-6);
  }
}

TEST_F(Cli, SurfaceObjMatchesClosedForm) {
  ASSERT_EQ(run("surface --curve \"helix(a=1,b=1)\" --nt 10 --ns 100"), 0);
  std::istringstream in(file("out", "surface.obj"));
  std::vector<Vec3> v;
  int faces = 0;
  std::string tag;
  while (in >> tag) {
    if (tag == "v") {
      Vec3 p;
      in >> p.x() >> p.y() >> p.z();
      v.push_back(p);
    } else {
      int a, b, c;
      in >> a >> b >> c;
      ++faces;
    }
  }
  ASSERT_EQ(v.size(), 1000u);
  EXPECT_EQ(faces, 1782);
  const auto grid = csv("out", "surface.csv");
  ASSERT_EQ(grid.size(), v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    EXPECT_LT((v[k] - fixtures::helix_surface_point(grid[k][0], grid[k][1])).norm(), 1e-6);
  }
}

TEST_F(Cli, Deterministic) {
  const std::string args = "surface --curve \"helix(a=2,b=1)\" --branch minus2 --nt 8 --ns 64";
  ASSERT_EQ(run(args, "a"), 0);
  ASSERT_EQ(run(args, "b"), 0);
  for (const char* f : {"surface.obj", "surface.csv", "surface_report.txt"}) EXPECT_EQ(file("a", f), file("b", f)) << f;
}

TEST_F(Cli, ConfigFileWithOverride) {
  const fs::path cfg = root_ / "job.ini";
  bertrand::io::write_file(cfg.string(),
                           "[job]\ncommand = surface\ncurve = helix(a=1,b=1)\n[params]\nnt = 4\nns = 8\n");
  ASSERT_EQ(run("surface --config \"" + cfg.string() + "\" --ns 12"), 0);
  EXPECT_EQ(csv("out", "surface.csv").size(), 4u * 12u);
  bertrand::io::write_file(cfg.string(), "[job]\ncurve = helix(a=1,b=1)\nwidth = 3\n");
  EXPECT_EQ(run("surface --config \"" + cfg.string() + "\""), 2);
  bertrand::io::write_file(cfg.string(), "[job]\ncommand = analyze\n");
  EXPECT_EQ(run("surface --config \"" + cfg.string() + "\""), 2);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("analyze --curve \"spiral(a=1)\""), 2);
  EXPECT_NE(stderr_text().find("error: "), std::string::npos);
  EXPECT_EQ(run("analyze --curve \"helix(a=1,b=1)\" --bogus 1"), 2);
  EXPECT_EQ(run("analyze --curve \"helix(a=1,b=1)\" --format xml"), 2);
  EXPECT_EQ(run("surface --curve \"helix(a=1,b=1)\" --t0 -3 --t1 0"), 2);
  EXPECT_EQ(run("analyze --curve \"line(dx=0,dy=0,dz=1)\""), 3);
  EXPECT_NE(stderr_text().find("FrameUndefined"), std::string::npos);
  EXPECT_EQ(run("donor --curve \"helix(a=1,b=1)\" --strict true"), 3);
  EXPECT_EQ(run("mate --curve \"helix(a=1,b=1)\" --field 1,0,0 --theta 0.3 --lambda0 1"), 4);
  EXPECT_EQ(run("fbertrand --curve \"helix(a=1,b=1)\" --f 5 --theta 0.7"), 4);
  bertrand::io::write_file((root_ / "blocker").string(), "");
  EXPECT_EQ(run("analyze --curve \"helix(a=1,b=1)\"", "blocker/sub"), 5);
  EXPECT_EQ(run("analyze --curve missing_points.csv"), 5);
}
