//===- simdadv/correlate.hpp - Loop sites and hotness attachment ---------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/detail/text.hpp"
#include "simdadv/errors.hpp"
#include "simdadv/profile.hpp"
#include "simdadv/remark.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace simdadv {

enum class HotnessSource { embedded, profile, none };

inline std::string_view to_string(HotnessSource source) {
  switch (source) {
  case HotnessSource::embedded:
    return "embedded";
  case HotnessSource::profile:
    return "profile";
  case HotnessSource::none:
    return "none";
  }
  return "none";
}

/// All remarks that share a (file, line) source location. The column is
/// taken from the first remark seen at the site; columns differ between
/// remarks for the same loop, so they do not take part in the key.
struct LoopSite {
  SourceLoc loc;
  std::string function;
  std::vector<Remark> remarks;
  std::optional<double> hotness_percent;
  HotnessSource hotness_source = HotnessSource::none;

  friend bool operator==(const LoopSite&, const LoopSite&) = default;
};

struct GroupResult {
  std::vector<LoopSite> sites;
  std::vector<Remark> unlocated;
};

/// Groups remarks by (file, line). Remarks without a usable DebugLoc land
/// in unlocated. Sites come out sorted by (file, line); remarks within a
/// site keep input order.
inline GroupResult group_by_loc(const std::vector<Remark>& remarks) {
  GroupResult result;
  std::map<std::pair<std::string, std::uint32_t>, std::size_t> index;
  for (const auto& remark : remarks) {
    if (!remark.loc) {
      result.unlocated.push_back(remark);
      continue;
    }
    const auto key = std::make_pair(remark.loc->file, remark.loc->line);
    const auto [it, inserted] = index.emplace(key, result.sites.size());
    if (inserted) {
      LoopSite site;
      site.loc = *remark.loc;
      site.function = remark.function;
      result.sites.push_back(std::move(site));
    }
    result.sites[it->second].remarks.push_back(remark);
  }
  std::sort(result.sites.begin(), result.sites.end(),
            [](const LoopSite& a, const LoopSite& b) {
              return std::make_pair(std::cref(a.loc.file), a.loc.line) <
                     std::make_pair(std::cref(b.loc.file), b.loc.line);
            });
  return result;
}

namespace detail {

inline std::optional<double> profile_percent_for(const std::string& function,
                                                 const Profile& profile,
                                                 Diagnostics* diag) {
  // Exact symbol match first.
  double total = 0;
  bool found = false;
  for (const auto& sample : profile.samples) {
    if (sample.symbol == function) {
      total += sample.percent;
      found = true;
    }
  }
  if (found)
    return total;

  // Fall back to matching the unqualified remark function name against the
  // unqualified profile symbols; only an unambiguous match counts.
  const std::string wanted{unqualified_name(function)};
  if (wanted.empty())
    return std::nullopt;
  std::string matched_symbol;
  total = 0;
  for (const auto& sample : profile.samples) {
    if (unqualified_name(sample.symbol) != wanted)
      continue;
    if (!matched_symbol.empty() && matched_symbol != sample.symbol) {
      warn_to(diag, "function '" + function +
                        "' matches multiple profile symbols ('" +
                        matched_symbol + "', '" + sample.symbol +
                        "'), profile hotness not attached");
      return std::nullopt;
    }
    matched_symbol = sample.symbol;
    total += sample.percent;
    found = true;
  }
  if (found)
    return total;
  return std::nullopt;
}

inline std::optional<std::uint64_t> site_max_hotness(const LoopSite& site) {
  std::optional<std::uint64_t> max;
  for (const auto& remark : site.remarks)
    if (remark.hotness && (!max || *remark.hotness > *max))
      max = *remark.hotness;
  return max;
}

} // namespace detail

/// Attaches a hotness percent to each site. A profile symbol match (exact,
/// then unambiguous unqualified-name match) takes precedence; otherwise the
/// embedded remark hotness is normalized across sites: each site's maximum
/// count divided by the sum of all site maxima, times 100. Sites with
/// neither stay at none.
inline void attach_hotness(std::vector<LoopSite>& sites,
                           const Profile* profile = nullptr,
                           Diagnostics* diag = nullptr) {
  std::vector<std::optional<std::uint64_t>> embedded(sites.size());
  double embedded_sum = 0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    embedded[i] = detail::site_max_hotness(sites[i]);
    if (embedded[i])
      embedded_sum += static_cast<double>(*embedded[i]);
  }

  for (std::size_t i = 0; i < sites.size(); ++i) {
    auto& site = sites[i];
    if (profile) {
      if (const auto percent =
              detail::profile_percent_for(site.function, *profile, diag)) {
        site.hotness_percent = *percent;
        site.hotness_source = HotnessSource::profile;
        continue;
      }
    }
    if (embedded[i]) {
      site.hotness_percent =
          embedded_sum == 0
              ? 0.0
              : static_cast<double>(*embedded[i]) / embedded_sum * 100.0;
      site.hotness_source = HotnessSource::embedded;
      continue;
    }
    site.hotness_percent = std::nullopt;
    site.hotness_source = HotnessSource::none;
  }
}

/// Keeps sites hotter than threshold_percent. Sites with unknown hotness
/// are kept only when keep_unknown is set.
inline std::vector<LoopSite> filter_hot(const std::vector<LoopSite>& sites,
                                        double threshold_percent,
                                        bool keep_unknown = true) {
  std::vector<LoopSite> result;
  for (const auto& site : sites) {
    if (site.hotness_percent) {
      if (*site.hotness_percent > threshold_percent)
        result.push_back(site);
    } else if (keep_unknown) {
      result.push_back(site);
    }
  }
  return result;
}

} // namespace simdadv
