#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "vinesim/commands.hpp"

using namespace vinesim;
namespace fs = std::filesystem;

namespace {

class CommandTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vinesim_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    cfg_.output_dir = dir_.string();
    cfg_.scenario.master_seed = 1;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
  }

  fs::path dir_;
  RunConfig cfg_;
};

// "x1 y1" endpoints of every path line plus circle centers, as printed.
std::set<std::pair<std::string, std::string>> path_vertices(const std::string& svg) {
  std::set<std::pair<std::string, std::string>> v;
  const std::regex line(R"re(class="(?:row-pass|headland)" x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)")re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line); it != std::sregex_iterator(); ++it) {
    v.insert({(*it)[1], (*it)[2]});
    v.insert({(*it)[3], (*it)[4]});
  }
  return v;
}

std::vector<std::pair<std::string, std::string>> circles(const std::string& svg) {
  std::vector<std::pair<std::string, std::string>> c;
  const std::regex circle(R"re(<circle class="spot" cx="([^"]+)" cy="([^"]+)")re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it)
    c.push_back({(*it)[1], (*it)[2]});
  return c;
}

}  // namespace

TEST_F(CommandTest, ScanHumanSerpentine) {
  cmd_scan(cfg_, "human", 30);
  const auto svg = read("scan_human.svg");
  EXPECT_EQ(count(svg, "class=\"row-pass\""), 52u);
  EXPECT_EQ(count(svg, "class=\"headland\""), 51u);
  EXPECT_EQ(count(svg, "class=\"spot\""), 30u);
  EXPECT_EQ(count(svg, "class=\"row\""), 52u);
  const auto spots_csv = read("scan_human_spots.csv");
  EXPECT_EQ(count(spots_csv, "\n"), 31u);
  EXPECT_TRUE(read("scan_human.csv").starts_with("agent,phase,spots,"));
}

TEST_F(CommandTest, ScanImmersiveDoublesRowSegments) {
  cmd_scan(cfg_, "immersive", 30);
  const auto svg = read("scan_immersive.svg");
  EXPECT_EQ(count(svg, "class=\"row-pass\""), 104u);
  EXPECT_EQ(count(svg, "class=\"headland\""), 51u);
}

TEST_F(CommandTest, ScanWithoutSpotsHasNoMarkers) {
  cmd_scan(cfg_, "human", 0);
  EXPECT_EQ(count(read("scan_human.svg"), "<circle"), 0u);
}

TEST_F(CommandTest, TreatImmersiveTouchesEveryMarker) {
  cmd_treat(cfg_, "immersive", 20);
  const auto svg = read("treat_immersive.svg");
  const auto markers = circles(svg);
  ASSERT_EQ(markers.size(), 20u);
  const auto vertices = path_vertices(svg);
  for (const auto& m : markers) EXPECT_TRUE(vertices.contains(m)) << m.first << "," << m.second;
  EXPECT_NE(svg.find("x Disease Spots"), std::string::npos);
  EXPECT_NE(svg.find("Path by immersive"), std::string::npos);
  EXPECT_EQ(count(read("treat_immersive_route.csv"), "\n"), 21u);
}

TEST_F(CommandTest, TreatHumanRepeatsSerpentine) {
  cmd_scan(cfg_, "human", 20);
  cmd_treat(cfg_, "human", 20);
  auto strip = [](std::string svg) { return svg.substr(svg.find("<line")); };
  auto scan = strip(read("scan_human.svg"));
  auto treat = strip(read("treat_human.svg"));
  scan = std::regex_replace(scan, std::regex("Path by human"), "");
  treat = std::regex_replace(treat, std::regex("Path by human"), "");
  EXPECT_EQ(scan, treat);
}

TEST_F(CommandTest, TreatFromRecordedFile) {
  cmd_scan(cfg_, "immersive", 12);
  const auto recorded = (dir_ / "scan_immersive_spots.csv").string();
  cmd_treat(cfg_, "immersive", 0, recorded);
  const auto from_file = read("treat_immersive_route.csv");
  cmd_treat(cfg_, "immersive", 12);
  EXPECT_EQ(from_file, read("treat_immersive_route.csv"));
}

TEST_F(CommandTest, TreatRejectsMalformedRecordedFile) {
  fs::create_directories(dir_);
  const auto bad = dir_ / "bad.csv";
  std::ofstream(bad) << "row,x_m,side,difficulty\n1,2.0,left\n";
  EXPECT_THROW(cmd_treat(cfg_, "immersive", 0, bad.string()), InputFormatError);
  std::ofstream(bad) << "row,x_m,side,difficulty\n99,2.0,left,easy\n";
  EXPECT_THROW(cmd_treat(cfg_, "immersive", 0, bad.string()), InputFormatError);
}

TEST_F(CommandTest, ExactPlannerNoLongerThanNearestNeighbor) {
  auto last_cumulative_distance = [&] {
    std::istringstream in(read("treat_immersive_route.csv"));
    double total = 0.0;
    for (const auto& s : read_route_csv(in)) total += s.leg_distance;
    return total;
  };
  cfg_.scenario.planner = Planner::NearestNeighbor;
  cmd_treat(cfg_, "immersive", 8);
  const double nn = last_cumulative_distance();
  cfg_.scenario.planner = Planner::Exact;
  cmd_treat(cfg_, "immersive", 8);
  const double exact = last_cumulative_distance();
  EXPECT_LE(exact, nn + 1e-9);
}

TEST_F(CommandTest, RunWritesTablesWithThreeRows) {
  cfg_.scenario.trials = 5;
  cmd_run(cfg_);
  const auto stats = read("stats.csv");
  EXPECT_TRUE(stats.starts_with("agent,scenario_spots,phase,mean_s,std_s,min_s,max_s,pct_diff_vs_human\n"));
  EXPECT_EQ(count(stats, "\n"), 1u + 3 * 3 * 3);
  EXPECT_EQ(count(read("table_detection.csv"), "\n"), 4u);
  EXPECT_EQ(count(read("table_second_round.csv"), "\n"), 4u);
  EXPECT_EQ(count(read("table_yield_survey.csv"), "\n"), 2u);
  const auto tables = read("tables.txt");
  EXPECT_NE(tables.find("Second-Round Completion Times"), std::string::npos);
  EXPECT_NE(tables.find("\n28\t"), std::string::npos);
}

TEST_F(CommandTest, RunIsByteIdenticalAcrossThreadCounts) {
  cfg_.scenario.trials = 8;
  cmd_run(cfg_);
  const auto a = read("stats.csv");
  cfg_.scenario.threads = 3;
  cmd_run(cfg_);
  EXPECT_EQ(a, read("stats.csv"));
}

TEST_F(CommandTest, YieldSurveySyntheticMap) {
  const auto out = cmd_yield_survey(cfg_);
  std::istringstream in(read("yield_comparison.csv"));
  const auto doc = csv::read(in);
  ASSERT_EQ(doc.records.size(), 2u);
  const auto zc = doc.column("zone_count"), total = doc.column("total_s"), mode = doc.column("mode");
  EXPECT_EQ(doc.records[0][mode], "full_coverage");
  EXPECT_EQ(doc.records[1][mode], "targeted");
  EXPECT_EQ(doc.records[0][zc], "28");
  EXPECT_EQ(doc.records[1][zc], "28");
  EXPECT_LT(std::stod(doc.records[1][total]), std::stod(doc.records[0][total]));
  EXPECT_EQ(count(read("yield_targeted.svg"), "class=\"spot\""), 28u);
  EXPECT_EQ(count(read("yield_zones.csv"), "\n"), 29u);

  // The emitted map reloads to the same zones.
  cfg_.yield_map_path = (dir_ / "yield_map.csv").string();
  cfg_.yield_threshold = 1.0;
  EXPECT_EQ(resolve_yield_input(cfg_).zones.size(), 28u);
}

TEST_F(CommandTest, YieldSurveyTwoZoneMapAndEmptyMap) {
  fs::create_directories(dir_);
  // 26 m cells over the 52 x 227 field: two low cells far from the last row.
  const auto map_path = dir_ / "two.csv";
  {
    std::ofstream f(map_path);
    f << "#cell_size=26\n";
    for (int i = 0; i < 8; ++i) f << (i == 1 ? "0,5,5,5,5,5\n" : i == 6 ? "5,5,0,5,5,5\n" : "5,5,5,5,5,5\n");
  }
  cfg_.yield_map_path = map_path.string();
  cfg_.yield_threshold = 0.0;
  const auto in = resolve_yield_input(cfg_);
  ASSERT_EQ(in.zones.size(), 2u);
  const auto& sc = cfg_.scenario;
  const auto cmp = compare_yield_survey(sc.field, human_profile(), immersive_profile(), in.zones, sc.planner);
  EXPECT_LT(cmp.targeted.total_time, cmp.full_coverage.total_time);

  {
    std::ofstream f(map_path);
    f << "5,5\n5,5\n";
  }
  cmd_yield_survey(cfg_);
  std::istringstream csv_in(read("yield_comparison.csv"));
  const auto doc = csv::read(csv_in);
  EXPECT_EQ(doc.records[1][doc.column("total_s")], "0");
  EXPECT_EQ(doc.records[1][doc.column("zone_count")], "0");
}

TEST_F(CommandTest, UnknownAgentIsConfigError) {
  EXPECT_THROW(cmd_scan(cfg_, "tractor", 3), ConfigError);
}

#ifdef VINESIM_CLI_PATH
TEST_F(CommandTest, CliEndToEnd) {
  fs::create_directories(dir_);
  const auto config = dir_ / "cfg.json";
  std::ofstream(config) << R"({"experiment": {"trials": 3, "spot_counts": [4]}, "planner": {"kind": "exact"}})";
  const std::string cli = VINESIM_CLI_PATH;
  const std::string out = (dir_ / "cli").string();
  auto run = [&](const std::string& args) { return std::system((cli + " -q " + args + " > /dev/null 2>&1").c_str()); };
  EXPECT_EQ(run("run --config " + config.string() + " --seed 5 --out " + out), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "stats.csv"));
  EXPECT_EQ(run("scan --agent non_immersive --spots 3 --preset 75x200 --out " + out), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "scan_non_immersive.svg"));
  EXPECT_EQ(run("treat --agent immersive --recorded " + (fs::path(out) / "scan_non_immersive_spots.csv").string() +
                " --preset 75x200 --out " + out),
            0);
  EXPECT_EQ(run("yield-survey --out " + out), 0);
  EXPECT_NE(run("scan --agent nobody --out " + out), 0);
  EXPECT_NE(run("frobnicate"), 0);
}
#endif
