//===- simdadv/profile.hpp - Flat profiles and category breakdown --------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/detail/text.hpp"
#include "simdadv/errors.hpp"

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace simdadv {

/// One line of a flat profile. percent is the fraction of total run time,
/// in percent (0-100).
struct ProfileSample {
  std::string symbol;
  std::string module;
  double percent = 0;

  friend bool operator==(const ProfileSample&, const ProfileSample&) = default;
};

struct Profile {
  std::vector<ProfileSample> samples;
  std::string source_label;

  double total_percent() const {
    double total = 0;
    for (const auto& sample : samples)
      total += sample.percent;
    return total;
  }

  friend bool operator==(const Profile&, const Profile&) = default;
};

enum class Category { application, scientific_libraries, runtime, other };

inline constexpr Category kAllCategories[] = {
    Category::application, Category::scientific_libraries, Category::runtime,
    Category::other};

inline std::string_view to_string(Category category) {
  switch (category) {
  case Category::application:
    return "application";
  case Category::scientific_libraries:
    return "scientific_libraries";
  case Category::runtime:
    return "runtime";
  case Category::other:
    return "other";
  }
  return "other";
}

inline std::optional<Category> category_from(std::string_view name) {
  for (const auto category : kAllCategories)
    if (name == to_string(category))
      return category;
  return std::nullopt;
}

/// Ordered rule: the first matching pattern decides the category. Patterns
/// are anchored globs ('*' only) matched against "module:symbol".
struct CategoryRule {
  std::string pattern;
  Category category = Category::other;

  friend bool operator==(const CategoryRule&, const CategoryRule&) = default;
};

/// Four-way percent totals plus the residual mass of samples at or under the
/// hotness threshold. The residual is reported inside the "other activities"
/// line, but is kept separate so the conservation invariant stays checkable.
struct Breakdown {
  double application = 0;
  double scientific_libraries = 0;
  double runtime = 0;
  double other = 0;
  double below_threshold_percent = 0;

  double category_total(Category category) const {
    switch (category) {
    case Category::application:
      return application;
    case Category::scientific_libraries:
      return scientific_libraries;
    case Category::runtime:
      return runtime;
    case Category::other:
      return other;
    }
    return 0;
  }

  /// What the report prints as "other activities".
  double other_activities_percent() const {
    return other + below_threshold_percent;
  }

  double total() const {
    return application + scientific_libraries + runtime + other +
           below_threshold_percent;
  }
};

namespace detail {

inline void check_profile_sum(const Profile& profile) {
  if (profile.total_percent() > 100.0 + 0.5)
    throw InvalidProfile("sample percents sum to " +
                         format_fixed(profile.total_percent(), 2) +
                         ", above the 100.5 rounding allowance");
}

} // namespace detail

/// Parses the normalized profile CSV (header "symbol,module,percent").
inline Profile parse_profile_csv(std::istream& input,
                                 ParseMode mode = ParseMode::strict,
                                 Diagnostics* diag = nullptr,
                                 std::string source_label = {}) {
  Profile profile;
  profile.source_label = std::move(source_label);

  std::string line;
  if (!std::getline(input, line))
    throw BadHeader("empty profile CSV, expected 'symbol,module,percent'");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  {
    const auto header = detail::csv_split(line);
    if (header.size() != 3 ||
        detail::trim(header[0]) != "symbol" ||
        detail::trim(header[1]) != "module" ||
        detail::trim(header[2]) != "percent")
      throw BadHeader("expected header 'symbol,module,percent', got '" +
                      line + "'");
  }

  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (detail::trim(line).empty())
      continue;
    try {
      const auto fields = detail::csv_split(line);
      if (fields.size() != 3)
        throw BadRow(line_number, "expected 3 fields, got " +
                                      std::to_string(fields.size()));
      ProfileSample sample;
      sample.symbol = std::string(detail::trim(fields[0]));
      sample.module = std::string(detail::trim(fields[1]));
      if (sample.symbol.empty())
        throw BadRow(line_number, "empty symbol");
      const auto percent = detail::parse_double(fields[2]);
      if (!percent)
        throw BadRow(line_number, "unparsable percent '" + fields[2] + "'");
      if (*percent < 0.0 || *percent > 100.0)
        throw BadRow(line_number, "percent " + fields[2] +
                                      " outside [0, 100]");
      sample.percent = *percent;
      profile.samples.push_back(std::move(sample));
    } catch (const BadRow& e) {
      if (mode == ParseMode::strict)
        throw;
      warn_to(diag, std::string(e.what()) + ", row skipped");
    }
  }
  detail::check_profile_sum(profile);
  return profile;
}

/// Parses perf-report flat-profile text. Matching lines look like
///   "  12.34%  command  module  [.] symbol"
/// with variable whitespace; the [.] / [k] marker may be missing. Comment
/// lines start with '#'. Non-matching lines are skipped with a warning.
inline Profile parse_perf_report(std::istream& input,
                                 ParseMode mode = ParseMode::strict,
                                 Diagnostics* diag = nullptr,
                                 std::string source_label = {}) {
  Profile profile;
  profile.source_label = std::move(source_label);

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#')
      continue;

    const auto skip = [&](std::string_view why) {
      warn_to(diag, "perf line " + std::to_string(line_number) + ": " +
                        std::string(why) + ", skipped");
    };

    // percent token
    std::size_t pos = trimmed.find_first_of(" \t");
    const std::string_view pct_token = trimmed.substr(0, pos);
    if (pct_token.empty() || pct_token.back() != '%') {
      skip("no percent column");
      continue;
    }
    const auto percent =
        detail::parse_double(pct_token.substr(0, pct_token.size() - 1));
    if (!percent || *percent < 0.0 || *percent > 100.0) {
      skip("unparsable percent");
      continue;
    }

    const auto next_token = [&](std::string_view& token) {
      if (pos == std::string_view::npos)
        return false;
      pos = trimmed.find_first_not_of(" \t", pos);
      if (pos == std::string_view::npos)
        return false;
      const auto end = trimmed.find_first_of(" \t", pos);
      token = trimmed.substr(pos, end == std::string_view::npos
                                      ? std::string_view::npos
                                      : end - pos);
      pos = end;
      return true;
    };

    std::string_view command, module;
    if (!next_token(command) || !next_token(module)) {
      skip("missing command or module column");
      continue;
    }

    // Optional "[.]"-style marker, then the symbol (which may itself
    // contain spaces).
    std::string_view rest = pos == std::string_view::npos
                                ? std::string_view{}
                                : detail::trim(trimmed.substr(pos));
    if (rest.size() >= 3 && rest[0] == '[' && rest[2] == ']')
      rest = detail::trim(rest.substr(3));
    if (rest.empty()) {
      skip("missing symbol column");
      continue;
    }

    profile.samples.push_back(ProfileSample{std::string(rest),
                                            std::string(module), *percent});
  }

  if (profile.samples.empty() && mode == ParseMode::strict)
    throw NoSamples("no sample lines matched the perf report format");
  detail::check_profile_sum(profile);
  return profile;
}

/// First-match categorization of one sample over "module:symbol".
inline Category categorize(const ProfileSample& sample,
                           const std::vector<CategoryRule>& rules) {
  const std::string subject = sample.module + ":" + sample.symbol;
  for (const auto& rule : rules)
    if (detail::glob_match(rule.pattern, subject))
      return rule.category;
  return Category::other;
}

/// The default rules: well-known BLAS/LAPACK/FFTW and runtime prefixes, a
/// kernel bucket, and an application catch-all. Best-effort; callers can
/// replace them with a rule file.
inline std::vector<CategoryRule> default_category_rules() {
  return {
      {"*:dgemm*", Category::scientific_libraries},
      {"*:zgemm*", Category::scientific_libraries},
      {"*:LAPACKE_*", Category::scientific_libraries},
      {"*:fftw_*", Category::scientific_libraries},
      {"libarmpl*:*", Category::scientific_libraries},
      {"libblas*:*", Category::scientific_libraries},
      {"liblapack*:*", Category::scientific_libraries},
      {"libfftw*:*", Category::scientific_libraries},
      {"libm.so*:*", Category::scientific_libraries},
      {"*:hpx::*", Category::runtime},
      {"libhpx*:*", Category::runtime},
      {"*:__kmp*", Category::runtime},
      {"*:GOMP_*", Category::runtime},
      {"libgomp*:*", Category::runtime},
      {"libomp*:*", Category::runtime},
      {"[kernel*:*", Category::other},
      {"*", Category::application},
  };
}

/// Rule file: ordered lines "pattern,category". The split is at the last
/// comma, so patterns may contain commas. '#' lines are comments.
inline std::vector<CategoryRule> parse_rule_file(std::istream& input) {
  std::vector<CategoryRule> rules;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#')
      continue;
    const auto comma = trimmed.rfind(',');
    if (comma == std::string_view::npos)
      throw ConfigError("rule file line " + std::to_string(line_number) +
                        ": expected 'pattern,category'");
    const auto pattern = detail::trim(trimmed.substr(0, comma));
    const auto category = category_from(detail::trim(trimmed.substr(comma + 1)));
    if (pattern.empty() || !category)
      throw ConfigError("rule file line " + std::to_string(line_number) +
                        ": bad pattern or unknown category");
    rules.push_back(CategoryRule{std::string(pattern), *category});
  }
  return rules;
}

/// Splits a profile into the four category totals. Samples with percent
/// strictly above the threshold go to their first matching rule's category
/// (no match: other); the rest accumulate into below_threshold_percent.
inline Breakdown breakdown(const Profile& profile,
                           const std::vector<CategoryRule>& rules,
                           double threshold_percent = 1.0) {
  Breakdown result;
  for (const auto& sample : profile.samples) {
    if (sample.percent <= threshold_percent) {
      result.below_threshold_percent += sample.percent;
      continue;
    }
    switch (categorize(sample, rules)) {
    case Category::application:
      result.application += sample.percent;
      break;
    case Category::scientific_libraries:
      result.scientific_libraries += sample.percent;
      break;
    case Category::runtime:
      result.runtime += sample.percent;
      break;
    case Category::other:
      result.other += sample.percent;
      break;
    }
  }
  return result;
}

} // namespace simdadv
