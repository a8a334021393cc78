//===- tests/testutil/generators.hpp - Seeded random test data -----------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/simdadv.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double rand_double(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool rand_bool(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

/// Printable identifier-ish string biased toward short names.
inline std::string rand_name(Rng& rng, int max_len = 12) {
  static const char alphabet[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_:<>().";
  const int len = rand_int(rng, 1, max_len);
  std::string name;
  for (int i = 0; i < len; ++i)
    name.push_back(alphabet[rand_int(rng, 0, sizeof(alphabet) - 2)]);
  return name;
}

/// Arbitrary printable text, including characters that need quoting in the
/// producer format (quotes, colons, hashes, braces).
inline std::string rand_text(Rng& rng, int max_len = 40) {
  static const char alphabet[] =
      "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
      " .,;:'\"#-{}[]()*&%!/\\<>=+";
  const int len = rand_int(rng, 0, max_len);
  std::string text;
  for (int i = 0; i < len; ++i)
    text.push_back(alphabet[rand_int(rng, 0, sizeof(alphabet) - 2)]);
  return text;
}

inline simdadv::SourceLoc rand_loc(Rng& rng) {
  simdadv::SourceLoc loc;
  loc.file = "src/" + rand_name(rng, 8) + ".cpp";
  loc.line = static_cast<std::uint32_t>(rand_int(rng, 1, 5000));
  loc.column = static_cast<std::uint32_t>(rand_int(rng, 0, 120));
  return loc;
}

inline simdadv::Remark rand_remark(Rng& rng) {
  simdadv::Remark remark;
  switch (rand_int(rng, 0, 2)) {
  case 0:
    remark.kind = simdadv::RemarkKind::Passed;
    break;
  case 1:
    remark.kind = simdadv::RemarkKind::Missed;
    break;
  default:
    remark.kind = simdadv::RemarkKind::Analysis;
    break;
  }
  remark.pass = rand_bool(rng) ? "loop-vectorize" : rand_name(rng, 10);
  if (remark.pass.empty())
    remark.pass = "p";
  remark.name = rand_name(rng, 10);
  remark.function = rand_name(rng, 16);
  if (rand_bool(rng, 0.8))
    remark.loc = rand_loc(rng);
  if (rand_bool(rng, 0.5))
    remark.hotness = static_cast<std::uint64_t>(
        std::uniform_int_distribution<std::uint64_t>(
            0, std::uint64_t(1) << 62)(rng));
  const int nargs = rand_int(rng, 0, 4);
  for (int i = 0; i < nargs; ++i) {
    simdadv::RemarkArg arg;
    arg.key = rand_name(rng, 10);
    arg.value = rand_text(rng);
    if (rand_bool(rng, 0.2))
      arg.loc = rand_loc(rng);
    remark.args.push_back(std::move(arg));
  }
  return remark;
}

inline std::vector<simdadv::Remark> rand_remarks(Rng& rng, int max_count = 8) {
  std::vector<simdadv::Remark> remarks;
  const int count = rand_int(rng, 0, max_count);
  for (int i = 0; i < count; ++i)
    remarks.push_back(rand_remark(rng));
  return remarks;
}

inline simdadv::LoopSite rand_site(Rng& rng) {
  simdadv::LoopSite site;
  site.loc = rand_loc(rng);
  site.function = rand_name(rng, 16);
  const int count = rand_int(rng, 1, 3);
  for (int i = 0; i < count; ++i) {
    auto remark = rand_remark(rng);
    remark.loc = site.loc;
    site.remarks.push_back(std::move(remark));
  }
  if (rand_bool(rng, 0.7)) {
    site.hotness_percent = rand_double(rng, 0.0, 100.0);
    site.hotness_source = rand_bool(rng) ? simdadv::HotnessSource::profile
                                         : simdadv::HotnessSource::embedded;
  }
  return site;
}

inline simdadv::AdviceEntry rand_entry(Rng& rng) {
  auto entry = simdadv::advise(rand_site(rng));
  if (!entry.categories.empty() && rand_bool(rng, 0.5))
    entry.benefit_estimate = rand_double(rng, 1.0, 16.0);
  return entry;
}

inline simdadv::AdviceReport rand_report(Rng& rng, int max_entries = 6) {
  simdadv::AdviceReport report;
  report.metadata.tool_version = simdadv::kVersion;
  const int ninputs = rand_int(rng, 0, 3);
  for (int i = 0; i < ninputs; ++i)
    report.metadata.inputs.push_back(rand_name(rng, 10) + ".opt.yaml");
  report.metadata.threshold_percent = rand_double(rng, 0.0, 10.0);
  report.metadata.keep_unknown = rand_bool(rng);
  if (rand_bool(rng)) {
    report.metadata.arch = rand_bool(rng) ? "sve512" : "neon128";
    report.metadata.element_bits = 8 << rand_int(rng, 0, 3);
  }
  const int nentries = rand_int(rng, 0, max_entries);
  for (int i = 0; i < nentries; ++i)
    report.entries.push_back(rand_entry(rng));
  report.entries = simdadv::rank(std::move(report.entries));
  const int nunlocated = rand_int(rng, 0, 3);
  for (int i = 0; i < nunlocated; ++i) {
    auto remark = rand_remark(rng);
    remark.loc = std::nullopt;
    report.unlocated_remarks.push_back(std::move(remark));
  }
  return report;
}

/// Profile whose percents are drawn so the total stays within 100.
inline simdadv::Profile rand_profile(Rng& rng, int max_samples = 40) {
  simdadv::Profile profile;
  const int count = rand_int(rng, 0, max_samples);
  double budget = 100.0;
  for (int i = 0; i < count && budget > 0; ++i) {
    simdadv::ProfileSample sample;
    sample.symbol = rand_name(rng, 14);
    sample.module = rand_name(rng, 10);
    sample.percent = rand_double(rng, 0.0, budget / 2);
    budget -= sample.percent;
    profile.samples.push_back(std::move(sample));
  }
  return profile;
}

} // namespace testutil
