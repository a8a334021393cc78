//===- simdadv/pipeline.hpp - End-to-end advise pipeline -----------------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/classify.hpp"
#include "simdadv/correlate.hpp"
#include "simdadv/profile.hpp"
#include "simdadv/remark.hpp"
#include "simdadv/report.hpp"
#include "simdadv/version.hpp"

#include <optional>
#include <string>
#include <vector>

namespace simdadv {

struct AdviseOptions {
  double threshold_percent = 1.0;
  bool keep_unknown = true;
  std::optional<ArchModel> arch;
  int element_bits = 64;
  std::optional<std::size_t> top;
  RuleTable rules = default_rule_table();
  RemedyTable remedy_table = default_remedy_table();
  BenefitDiscounts discounts;
};

/// The whole advise flow: group remarks into sites, attach hotness (profile
/// first, embedded counts second), drop cold sites, classify and advise the
/// rest, estimate benefit when an arch model was given, rank, truncate.
inline AdviceReport build_advice_report(const std::vector<Remark>& remarks,
                                        const Profile* profile,
                                        const AdviseOptions& options,
                                        std::vector<std::string> input_names,
                                        Diagnostics* diag = nullptr) {
  AdviceReport report;
  report.metadata.tool_version = kVersion;
  report.metadata.inputs = std::move(input_names);
  report.metadata.threshold_percent = options.threshold_percent;
  report.metadata.keep_unknown = options.keep_unknown;
  if (options.arch) {
    report.metadata.arch = options.arch->name;
    report.metadata.element_bits = options.element_bits;
  }

  GroupResult grouped = group_by_loc(remarks);
  report.unlocated_remarks = std::move(grouped.unlocated);
  attach_hotness(grouped.sites, profile, diag);
  const std::vector<LoopSite> hot =
      filter_hot(grouped.sites, options.threshold_percent,
                 options.keep_unknown);

  for (const auto& site : hot) {
    AdviceEntry entry = advise(site, options.rules, options.remedy_table);
    if (options.arch && !entry.categories.empty())
      entry.benefit_estimate =
          estimate_benefit(entry.categories, options.element_bits,
                           *options.arch, options.discounts);
    report.entries.push_back(std::move(entry));
  }

  report.entries = rank(std::move(report.entries));
  if (options.top && report.entries.size() > *options.top)
    report.entries.resize(*options.top);
  return report;
}

} // namespace simdadv
