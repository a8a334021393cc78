//===- tests/test_correlate.cpp - Site grouping and hotness tests --------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#include "simdadv/correlate.hpp"

#include "testutil/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace simdadv;

namespace {

Remark make_remark(std::string function, std::optional<SourceLoc> loc,
                   std::optional<std::uint64_t> hotness = std::nullopt) {
  Remark remark;
  remark.kind = RemarkKind::Missed;
  remark.pass = "loop-vectorize";
  remark.name = "MissedDetails";
  remark.function = std::move(function);
  remark.loc = std::move(loc);
  remark.hotness = hotness;
  return remark;
}

} // namespace

TEST_CASE("group_by_loc: empty input") {
  const auto result = group_by_loc({});
  CHECK(result.sites.empty());
  CHECK(result.unlocated.empty());
}

TEST_CASE("group_by_loc: groups by (file, line) and keeps residue") {
  std::vector<Remark> remarks;
  remarks.push_back(make_remark("doSweep", SourceLoc{"walker.cpp", 88, 9}));
  remarks.push_back(make_remark("rebuild", SourceLoc{"basis.cpp", 57, 5}));
  remarks.push_back(make_remark("doSweep", SourceLoc{"walker.cpp", 88, 21}));
  remarks.push_back(make_remark("parse", std::nullopt));

  const auto result = group_by_loc(remarks);
  REQUIRE(result.sites.size() == 2);
  REQUIRE(result.unlocated.size() == 1);
  CHECK(result.unlocated[0].function == "parse");

  // Sorted by (file, line): basis.cpp before walker.cpp.
  CHECK(result.sites[0].loc.file == "basis.cpp");
  CHECK(result.sites[0].remarks.size() == 1);
  CHECK(result.sites[1].loc.file == "walker.cpp");
  CHECK(result.sites[1].loc.line == 88);
  REQUIRE(result.sites[1].remarks.size() == 2);

  // The site column comes from the first remark seen there, and remark
  // order within a site is input order.
  CHECK(result.sites[1].loc.column == 9);
  CHECK(result.sites[1].remarks[0].loc->column == 9);
  CHECK(result.sites[1].remarks[1].loc->column == 21);
}

TEST_CASE("group_by_loc: partitions the input") {
  testutil::Rng rng(0x5eed0011);
  for (int round = 0; round < 200; ++round) {
    const auto remarks = testutil::rand_remarks(rng, 12);
    const auto result = group_by_loc(remarks);

    std::size_t grouped = 0;
    for (const auto& site : result.sites) {
      CHECK(!site.remarks.empty());
      for (const auto& remark : site.remarks) {
        REQUIRE(remark.loc.has_value());
        CHECK(remark.loc->file == site.loc.file);
        CHECK(remark.loc->line == site.loc.line);
      }
      grouped += site.remarks.size();
    }
    CHECK(grouped + result.unlocated.size() == remarks.size());

    const bool sorted = std::is_sorted(
        result.sites.begin(), result.sites.end(),
        [](const LoopSite& a, const LoopSite& b) {
          return std::make_pair(std::cref(a.loc.file), a.loc.line) <
                 std::make_pair(std::cref(b.loc.file), b.loc.line);
        });
    CHECK(sorted);
  }
}

TEST_CASE("attach_hotness: no remark hotness and no profile") {
  std::vector<LoopSite> sites = {
      {SourceLoc{"a.cpp", 1, 0}, "f", {make_remark("f", SourceLoc{"a.cpp", 1, 0})}}};
  attach_hotness(sites);
  CHECK(!sites[0].hotness_percent.has_value());
  CHECK(sites[0].hotness_source == HotnessSource::none);
}

TEST_CASE("attach_hotness: exact profile symbol match") {
  std::vector<LoopSite> sites = {
      {SourceLoc{"w.cpp", 88, 0}, "qmc::Walker::applyInverse", {}}};
  Profile profile;
  profile.samples = {{"qmc::Walker::applyInverse", "dca_main", 12.34},
                     {"dgemm_", "libarmpl.so", 31.0}};
  attach_hotness(sites, &profile);
  REQUIRE(sites[0].hotness_percent.has_value());
  CHECK(*sites[0].hotness_percent == 12.34);
  CHECK(sites[0].hotness_source == HotnessSource::profile);
}

TEST_CASE("attach_hotness: exact matches sum over duplicate symbols") {
  std::vector<LoopSite> sites = {{SourceLoc{"w.cpp", 88, 0}, "work", {}}};
  Profile profile;
  profile.samples = {{"work", "a.so", 10.0}, {"work", "b.so", 5.0}};
  attach_hotness(sites, &profile);
  REQUIRE(sites[0].hotness_percent.has_value());
  CHECK(*sites[0].hotness_percent == 15.0);
}

TEST_CASE("attach_hotness: embedded counts are normalized across sites") {
  std::vector<LoopSite> sites = {
      {SourceLoc{"a.cpp", 1, 0},
       "f",
       {make_remark("f", SourceLoc{"a.cpp", 1, 0}, 300),
        make_remark("f", SourceLoc{"a.cpp", 1, 0}, 200)}},
      {SourceLoc{"b.cpp", 2, 0},
       "g",
       {make_remark("g", SourceLoc{"b.cpp", 2, 0}, 100)}}};
  attach_hotness(sites);
  REQUIRE(sites[0].hotness_percent.has_value());
  REQUIRE(sites[1].hotness_percent.has_value());
  CHECK(*sites[0].hotness_percent == 75.0);
  CHECK(*sites[1].hotness_percent == 25.0);
  CHECK(sites[0].hotness_source == HotnessSource::embedded);
  CHECK(sites[1].hotness_source == HotnessSource::embedded);
}

TEST_CASE("attach_hotness: all-zero embedded counts give 0 percent") {
  std::vector<LoopSite> sites = {
      {SourceLoc{"a.cpp", 1, 0},
       "f",
       {make_remark("f", SourceLoc{"a.cpp", 1, 0}, 0)}}};
  attach_hotness(sites);
  REQUIRE(sites[0].hotness_percent.has_value());
  CHECK(*sites[0].hotness_percent == 0.0);
  CHECK(sites[0].hotness_source == HotnessSource::embedded);
}

TEST_CASE("attach_hotness: profile match beats embedded hotness") {
  std::vector<LoopSite> sites = {
      {SourceLoc{"a.cpp", 1, 0},
       "hot_loop",
       {make_remark("hot_loop", SourceLoc{"a.cpp", 1, 0}, 900)}}};
  Profile profile;
  profile.samples = {{"hot_loop", "m", 40.0}};
  attach_hotness(sites, &profile);
  CHECK(*sites[0].hotness_percent == 40.0);
  CHECK(sites[0].hotness_source == HotnessSource::profile);
}

TEST_CASE("attach_hotness: unambiguous suffix match") {
  std::vector<LoopSite> sites = {
      {SourceLoc{"g.cpp", 142, 0}, "qmc::GammaUpdater::update(int)", {}}};
  Profile profile;
  profile.samples = {{"qmc::GammaUpdater::update", "dca_main", 23.1},
                     {"dgemm_", "libarmpl.so", 31.0}};
  attach_hotness(sites, &profile);
  REQUIRE(sites[0].hotness_percent.has_value());
  CHECK(*sites[0].hotness_percent == 23.1);
  CHECK(sites[0].hotness_source == HotnessSource::profile);
}

TEST_CASE("attach_hotness: ambiguous suffix match warns and attaches nothing") {
  std::vector<LoopSite> sites = {{SourceLoc{"g.cpp", 1, 0}, "ns::update", {}}};
  Profile profile;
  profile.samples = {{"qmc::GammaUpdater::update", "m", 10.0},
                     {"qmc::ConfigUpdater::update", "m", 5.0}};
  Diagnostics diag;
  attach_hotness(sites, &profile, &diag);
  CHECK(!sites[0].hotness_percent.has_value());
  CHECK(sites[0].hotness_source == HotnessSource::none);
  REQUIRE(diag.warnings.size() == 1);
  CHECK(diag.warnings[0].find("multiple profile symbols") != std::string::npos);
}

TEST_CASE("attach_hotness: does not change remarks or site identity") {
  testutil::Rng rng(0x5eed0012);
  for (int round = 0; round < 100; ++round) {
    auto remarks = testutil::rand_remarks(rng, 10);
    auto grouped = group_by_loc(remarks);
    const auto before = grouped.sites;
    const auto profile = testutil::rand_profile(rng);
    attach_hotness(grouped.sites, &profile);
    REQUIRE(grouped.sites.size() == before.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(grouped.sites[i].loc == before[i].loc);
      CHECK(grouped.sites[i].function == before[i].function);
      CHECK(grouped.sites[i].remarks == before[i].remarks);
    }
  }
}

namespace {

std::vector<LoopSite> three_sites() {
  std::vector<LoopSite> sites(3);
  sites[0].loc = {"a.cpp", 10, 0};
  sites[0].hotness_percent = 12.34;
  sites[0].hotness_source = HotnessSource::profile;
  sites[1].loc = {"b.cpp", 20, 0};
  sites[1].hotness_percent = 0.4;
  sites[1].hotness_source = HotnessSource::embedded;
  sites[2].loc = {"c.cpp", 30, 0};
  return sites;
}

} // namespace

TEST_CASE("filter_hot: strict threshold with and without keep_unknown") {
  const auto sites = three_sites();

  const auto kept = filter_hot(sites, 1.0, /*keep_unknown=*/false);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].loc.file == "a.cpp");

  const auto with_unknown = filter_hot(sites, 1.0, /*keep_unknown=*/true);
  REQUIRE(with_unknown.size() == 2);
  CHECK(with_unknown[0].loc.file == "a.cpp");
  CHECK(with_unknown[1].loc.file == "c.cpp");

  // Threshold 100 drops every known site: percents cannot exceed 100.
  CHECK(filter_hot(sites, 100.0, false).empty());

  // Threshold 0 keeps every positive-hotness site.
  const auto positive = filter_hot(sites, 0.0, false);
  REQUIRE(positive.size() == 2);
  CHECK(positive[1].loc.file == "b.cpp");
}

TEST_CASE("filter_hot: output is a subsequence and shrinks with threshold") {
  testutil::Rng rng(0x5eed0013);
  for (int round = 0; round < 200; ++round) {
    std::vector<LoopSite> sites;
    const int count = testutil::rand_int(rng, 0, 10);
    for (int i = 0; i < count; ++i)
      sites.push_back(testutil::rand_site(rng));
    const bool keep_unknown = testutil::rand_bool(rng);
    double lo = testutil::rand_double(rng, 0.0, 100.0);
    double hi = testutil::rand_double(rng, 0.0, 100.0);
    if (lo > hi)
      std::swap(lo, hi);

    const auto loose = filter_hot(sites, lo, keep_unknown);
    const auto tight = filter_hot(sites, hi, keep_unknown);
    CHECK(tight.size() <= loose.size());

    // Every kept site appears in the input, in order (subsequence).
    std::size_t cursor = 0;
    for (const auto& site : loose) {
      while (cursor < sites.size() && !(sites[cursor] == site))
        ++cursor;
      REQUIRE(cursor < sites.size());
      ++cursor;
    }

    // And the tighter result is a subsequence of the looser one.
    cursor = 0;
    for (const auto& site : tight) {
      while (cursor < loose.size() && !(loose[cursor] == site))
        ++cursor;
      REQUIRE(cursor < loose.size());
      ++cursor;
    }
  }
}
