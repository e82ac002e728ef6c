// Copyright 2026 The paqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "paqc/harness.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

namespace paqc {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(StatsTest, GeometricMean) {
  EXPECT_DOUBLE_EQ(geomean({100, 400}), 200.0);
  EXPECT_DOUBLE_EQ(geomean({100, 400, 0}), 200.0);
  EXPECT_DOUBLE_EQ(geomean({}), 0.0);
}

TEST(StatsTest, Gap) {
  EXPECT_NEAR(gap({100, 66}), 0.34, 1e-12);
  EXPECT_DOUBLE_EQ(gap({5, 5, 5}), 0.0);
  EXPECT_DOUBLE_EQ(gap({}), 0.0);
}

TEST(StatsTest, MeanAndPopulationStd) {
  const auto [m, s] = mean_std({2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_DOUBLE_EQ(m, 5.0);
  EXPECT_DOUBLE_EQ(s, 2.0);
}

TEST(MatrixTest, Sizes) {
  EXPECT_EQ(default_matrix(10).size(), 8u * 3u * 4u * 3u);
  const auto scaling = scaling_matrix(10);
  EXPECT_EQ(scaling.size(), 2u * 6u * 3u * 4u * 2u);
  std::set<Int> ns;
  for (const auto& c : scaling) ns.insert(c.binding.at("N"));
  EXPECT_EQ(ns, (std::set<Int>{2, 4, 6, 8, 10, 12}));
}

TEST(HarnessTest, SingleRepHasZeroStd) {
  const auto results =
      run_matrix({{"cnt", {}, "grid6x6", TransformKind::Base, Allocator::WpmLite, 1, 0}});
  ASSERT_EQ(results.size(), 1u);
  const auto& r = results[0];
  ASSERT_TRUE(r.ok()) << r.error;
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_TRUE(r.records[0].verified);
  EXPECT_DOUBLE_EQ(r.std_depth, 0.0);
  EXPECT_DOUBLE_EQ(r.mean_depth, static_cast<double>(r.records[0].metrics.depth));
  EXPECT_GE(r.records[0].metrics.depth, r.records[0].logical_depth);
}

TEST(HarnessTest, RepsUseConsecutiveSeeds) {
  const auto results =
      run_matrix({{"cuccaro", {}, "tiled36", TransformKind::Base, Allocator::SabreLite, 3, 40}});
  ASSERT_EQ(results[0].records.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(results[0].records[k].seed, 40u + k);
}

TEST(HarnessTest, BindingOverrideChangesTheCircuit) {
  const auto* b = find_benchmark("cheung");
  const auto small = compile_benchmark(*b, TransformKind::PlutoMax, {{"N", 2}});
  const auto large = compile_benchmark(*b, TransformKind::PlutoMax, {{"N", 12}});
  EXPECT_LT(small.ops.size(), large.ops.size());
}

TEST(HarnessTest, FailuresAreRecordedNotThrown) {
  HarnessOptions opt;
  opt.timeout_seconds = 0.0;
  const auto results = run_matrix(
      {{"nope", {}, "grid6x6", TransformKind::Base, Allocator::Trivial, 1, 0},
       {"cuccaro", {}, "grid6x6", TransformKind::Base, Allocator::SabreLite, 2, 0}},
      opt);
  EXPECT_FALSE(results[0].ok());
  EXPECT_TRUE(results[0].records.empty());
  EXPECT_FALSE(results[1].ok());
  ASSERT_EQ(results[1].records.size(), 2u);
  EXPECT_EQ(results[1].records[0].status, "timeout");

  std::ostringstream os;
  write_csv(os, results);
  const auto ls = lines(os.str());
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[1], "cuccaro,grid6x6,base,sabre_lite,0,0,timeout,,,,,");
}

TEST(ExportTest, EmptyCsvIsHeaderOnly) {
  std::ostringstream os;
  write_csv(os, {});
  EXPECT_EQ(os.str(), std::string(kCsvHeader) + "\n");
}

TEST(ExportTest, OneRecordCsv) {
  const auto results =
      run_matrix({{"cnt", {}, "grid6x6", TransformKind::Base, Allocator::Trivial, 1, 0}});
  std::ostringstream os;
  write_csv(os, results, {false});
  const auto ls = lines(os.str());
  ASSERT_EQ(ls.size(), 2u);
  const auto& m = results[0].records[0].metrics;
  EXPECT_EQ(ls[1], "cnt,grid6x6,base,trivial,0,0," + std::to_string(m.depth) + "," +
                       std::to_string(m.size) + "," + std::to_string(m.added_gates) + "," +
                       std::to_string(m.swaps) + ",0,");
}

TEST(ExportTest, BindingIsShownInBenchmarkColumn) {
  const auto results = run_matrix(
      {{"cheung", {{"N", 4}}, "grid6x6", TransformKind::Base, Allocator::Trivial, 1, 0}});
  std::ostringstream os;
  write_csv(os, results);
  EXPECT_EQ(lines(os.str())[1].rfind("cheung[N=4],grid6x6,", 0), 0u);
}

TEST(ExportTest, OutputIndependentOfThreadCount) {
  std::vector<RunConfig> configs;
  for (const auto& c : default_matrix(2, 5)) {
    if (c.benchmark == "cheung" || c.benchmark == "cnt") configs.push_back(c);
  }
  auto render = [&](unsigned threads) {
    HarnessOptions opt;
    opt.threads = threads;
    std::ostringstream csv, json;
    const auto results = run_matrix(configs, opt);
    write_csv(csv, results, {false});
    write_json(json, results, {false});
    return csv.str() + json.str();
  };
  EXPECT_EQ(render(1), render(4));
}

TEST(ExportTest, JsonHasOneObjectPerRecord) {
  const auto results =
      run_matrix({{"cnt", {}, "tiled36", TransformKind::PlutoMin, Allocator::SabreLite, 3, 0}});
  const auto j = to_json(results);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[2]["rep"], 2);
  EXPECT_EQ(j[0]["status"], "ok");
  EXPECT_TRUE(j[0].contains("alloc_time"));
  EXPECT_FALSE(to_json(results, {false})[0].contains("alloc_time"));
}

TEST(SummaryTest, GroupsAndGaps) {
  std::vector<RunConfig> configs;
  for (TransformKind t : all_transforms()) {
    configs.push_back({"cnt", {}, "grid6x6", t, Allocator::Trivial, 1, 0});
  }
  const auto results = run_matrix(configs);
  const auto table = summarize(results);
  EXPECT_EQ(table.rows.size(), all_transforms().size());
  ASSERT_EQ(table.gaps.size(), 1u);
  std::vector<double> depths;
  for (const auto& r : results) depths.push_back(r.mean_depth);
  EXPECT_DOUBLE_EQ(table.gaps[0].gap, gap(depths));
}

}  // namespace
}  // namespace paqc
