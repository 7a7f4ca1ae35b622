#include "sdcurve/figure_table.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

namespace sdcurve {
namespace {

std::vector<Column> schema() {
  return {{"t", CellKind::binary64, 53},
          {"n", CellKind::integer, 0},
          {"big", CellKind::extended, 256},
          {"single", CellKind::binary32, 24}};
}

FigureTable random_table(std::uint64_t seed, int rows) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  FigureTable table{"fig-x", schema(), {}};
  for (int i = 0; i < rows; ++i) {
    const double x = std::exp(u(rng));
    table.add_row({x, static_cast<std::int64_t>(rng() % 1000), BigFloat::pi(256) * BigFloat(x, 256),
                   static_cast<float>(-x)});
  }
  return table;
}

std::filesystem::path scratch_dir(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / ("sdcurve_figure_table_" + leaf);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(FigureTable, HeaderAndFormatting) {
  FigureTable table{"fig-x", schema(), {}};
  table.add_row({0.1, std::int64_t{3}, BigFloat(0.5, 256), 0.1f});
  EXPECT_EQ(table.header(), "t,n,big,single");
  EXPECT_EQ(table.to_csv(), "t,n,big,single\n0.1,3,5e-01,0.1\n");
}

TEST(FigureTable, AddRowChecksKinds) {
  FigureTable table{"fig-x", schema(), {}};
  EXPECT_THROW(table.add_row({0.1, std::int64_t{3}, BigFloat(0.5, 256)}), std::invalid_argument);
  EXPECT_THROW(table.add_row({0.1f, std::int64_t{3}, BigFloat(0.5, 256), 0.1f}), std::invalid_argument);
  EXPECT_THROW(table.add_row({0.1, std::int64_t{3}, BigFloat(0.5, 128), 0.1f}), std::invalid_argument);
}

TEST(FigureTable, WriteReadRoundTripIsIdentical) {
  const auto dir = scratch_dir("roundtrip");
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const FigureTable table = random_table(seed, 50);
    const auto file = table.write(dir);
    EXPECT_EQ(file, dir / "fig-x.csv");
    const FigureTable back = FigureTable::read("fig-x", schema(), file);
    EXPECT_TRUE(identical(table, back)) << seed;
  }
  std::filesystem::remove_all(dir);
}

TEST(FigureTable, ParseRejectsMalformedText) {
  EXPECT_THROW(FigureTable::parse("fig-x", schema(), ""), std::invalid_argument);
  EXPECT_THROW(FigureTable::parse("fig-x", schema(), "t,n,big\n"), std::invalid_argument);
  EXPECT_THROW(FigureTable::parse("fig-x", schema(), "t,n,big,single\n1,2,3\n"), std::invalid_argument);
  EXPECT_THROW(FigureTable::parse("fig-x", schema(), "t,n,big,single\n1,2.5,3,4\n"), std::invalid_argument);
  EXPECT_THROW(FigureTable::parse("fig-x", schema(), "t,n,big,single\n1,2,3,4"), std::invalid_argument);
  EXPECT_NO_THROW(FigureTable::parse("fig-x", schema(), "t,n,big,single\n1,2,3,4\n"));
}

TEST(FigureTable, WriteFailureNamesTheFile) {
  const auto dir = scratch_dir("blocked");
  const auto blocker = dir / "plain_file";
  std::ofstream(blocker) << "x";
  const FigureTable table = random_table(3, 2);
  try {
    table.write(blocker / "sub");
    FAIL() << "expected a write failure";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("fig-x.csv"), std::string::npos) << e.what();
  }
  std::filesystem::remove_all(dir);
}

TEST(Cell, IdenticalDistinguishesSignedZeroAndKind) {
  EXPECT_FALSE(identical(Cell{0.0}, Cell{-0.0}));
  EXPECT_FALSE(identical(Cell{1.0}, Cell{1.0f}));
  EXPECT_TRUE(identical(Cell{BigFloat(1, 256)}, Cell{BigFloat(1, 256)}));
  EXPECT_FALSE(identical(Cell{BigFloat(1, 256)}, Cell{BigFloat(1, 512)}));
}

}  // namespace
}  // namespace sdcurve
