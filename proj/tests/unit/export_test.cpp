// Copyright 2026 The revpulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "revpulse/error.hpp"
#include "revpulse/export.hpp"
#include "revpulse/runner.hpp"
#include "revpulse/scenario.hpp"

namespace revpulse {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<double> split_numbers(const std::string& row) {
  std::vector<double> out;
  std::istringstream in(row);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

const ResultBundle& fig3_bundle() {
  static const ResultBundle b = run_scenario(preset("fig3"));
  return b;
}

TEST(Csv, HeaderAndOneRowPerSample) {
  const ResultBundle& b = fig3_bundle();
  const auto ls = lines(csv_text(b));
  ASSERT_EQ(ls.size(), b.config.window.samples + 2);
  EXPECT_EQ(ls[0].rfind("# revpulse-csv v1 scenario=fig3 picture=lindblad spec=", 0), 0u);
  EXPECT_EQ(ls[1], kCsvHeader);
  const auto first = split_numbers(ls[2]);
  ASSERT_EQ(first.size(), 11u);
  EXPECT_DOUBLE_EQ(first[0], -300.0);
  EXPECT_DOUBLE_EQ(split_numbers(ls.back())[0], 300.0);
}

TEST(Csv, PauliColumnsFollowTheBlochMap) {
  const ResultBundle& b = fig3_bundle();
  const auto ls = lines(csv_text(b));
  const auto& sim = b.pictures[0].sim.states;
  for (std::size_t i = 0; i < sim.size(); i += 50) {
    const auto row = split_numbers(ls[i + 2]);
    const BlochVector r = bloch_from_density(sim[i]);
    EXPECT_DOUBLE_EQ(row[4], -r.u + 0.0);
    EXPECT_DOUBLE_EQ(row[5], r.v);
    EXPECT_DOUBLE_EQ(row[6], r.w);
  }
}

TEST(Csv, ValuesRoundTripAtFullPrecision) {
  const ResultBundle& b = fig3_bundle();
  const auto ls = lines(csv_text(b));
  const auto row = split_numbers(ls[2 + 123]);
  EXPECT_EQ(row[1], b.pulse.target.points[123].u);
  EXPECT_EQ(row[3], b.pulse.target.points[123].w);
}

TEST(Csv, EmptyPictureListGivesHeaderOnly) {
  ScenarioConfig c = preset("fig1_L1");
  c.pictures.clear();
  const ResultBundle b = run_scenario(c);
  const auto ls = lines(csv_text(b));
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[1], kCsvHeader);
}

TEST(Csv, RerunIsByteIdentical) {
  ScenarioConfig c = preset("fig1_L5");
  c.pictures = {PictureKind::EffectiveBloch};
  EXPECT_EQ(csv_text(run_scenario(c)), csv_text(run_scenario(c)));
}

TEST(Csv, ExportCreatesParentDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "revpulse_export_test" / "a" / "b";
  std::filesystem::remove_all(dir.parent_path().parent_path());
  export_csv(fig3_bundle(), dir / "fig3.csv");
  std::ifstream in(dir / "fig3.csv", std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), csv_text(fig3_bundle()));
}

void expect_well_formed(const std::string& svg) {
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  ASSERT_GE(svg.size(), 7u);
  const auto end = svg.find_last_not_of(" \n");
  EXPECT_EQ(svg.substr(end - 5, 6), "</svg>");
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

TEST(Svg, AllKindsAreWellFormed) {
  for (SvgKind k : {SvgKind::Pulse, SvgKind::Populations, SvgKind::Bloch3d}) {
    expect_well_formed(svg_text(fig3_bundle(), k));
  }
}

TEST(Svg, Fig1PulseWithSingularSamplesStaysFinite) {
  ScenarioConfig c = preset("fig1_L5");
  c.pictures = {PictureKind::EffectiveBloch};
  const ResultBundle b = run_scenario(c);
  ASSERT_FALSE(b.pulse.field.realizable());
  expect_well_formed(svg_text(b, SvgKind::Pulse));
}

TEST(Svg, PopulationsStartInTheGroundState) {
  const ResultBundle& b = fig3_bundle();
  const auto& rho = b.pictures[0].sim.states.front();
  EXPECT_NEAR(rho.population_ground(), 1.0, 0.01);
  EXPECT_NEAR(rho.population_excited(), 0.0, 0.01);
  const std::string svg = svg_text(b, SvgKind::Populations);
  EXPECT_NE(svg.find("P_g"), std::string::npos);
  EXPECT_NE(svg.find("P_e"), std::string::npos);
}

TEST(Svg, BlochPlotDrawsPrescribedAndSimulatedPaths) {
  const std::string svg = svg_text(fig3_bundle(), SvgKind::Bloch3d);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  std::size_t polylines = 0;
  for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) {
    ++polylines;
  }
  EXPECT_GE(polylines, 3u);
}

TEST(Svg, EmptyBundleIsRejected) {
  ScenarioConfig c = preset("fig1_L1");
  c.pictures.clear();
  const ResultBundle b = run_scenario(c);
  EXPECT_THROW(svg_text(b, SvgKind::Populations), ValidationError);
}

TEST(Summary, MentionsEveryPicture) {
  const std::string s = summary_text(fig3_bundle());
  EXPECT_NE(s.find("lindblad"), std::string::npos);
  EXPECT_NE(s.find("effective-bloch"), std::string::npos);
}

}  // namespace
}  // namespace revpulse
