//===- simdadv/config.hpp - Advisor configuration file -------------------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/classify.hpp"
#include "simdadv/errors.hpp"

#include "json.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace simdadv {

/// Knobs loadable from a JSON config file. Classification rules are
/// prepended to the built-in table (so user rules win) unless
/// replace_default_rules is set; remedy overrides replace whole per-category
/// lists.
struct AdvisorConfig {
  std::vector<ClassifyRule> classify_rules;
  bool replace_default_rules = false;
  RemedyTable remedy_overrides;
  double bounds_discount = 0.5;
  double fp_reorder_discount = 0.5;
  double unchanged_band = 0.10;

  RuleTable rule_table() const {
    RuleTable table = classify_rules;
    if (!replace_default_rules) {
      const RuleTable defaults = default_rule_table();
      table.insert(table.end(), defaults.begin(), defaults.end());
    }
    return table;
  }

  RemedyTable remedy_table() const {
    RemedyTable table = default_remedy_table();
    for (const auto& [category, remedies] : remedy_overrides)
      table[category] = remedies;
    return table;
  }

  BenefitDiscounts discounts() const {
    return BenefitDiscounts{bounds_discount, fp_reorder_discount};
  }
};

namespace detail {

inline Remedy remedy_from_config(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("text") ||
      !j.contains("rationale"))
    throw ConfigError("remedy override needs kind, text, and rationale");
  Remedy remedy;
  const auto kind = remedy_kind_from(j.at("kind").get<std::string>());
  if (!kind)
    throw ConfigError("unknown remedy kind '" +
                      j.at("kind").get<std::string>() + "'");
  remedy.kind = *kind;
  remedy.text = j.at("text").get<std::string>();
  remedy.rationale = j.at("rationale").get<std::string>();
  if (remedy.text.empty())
    throw ConfigError("remedy override with empty text");
  if (j.contains("correctness_note") && !j.at("correctness_note").is_null())
    remedy.correctness_note = j.at("correctness_note").get<std::string>();
  return remedy;
}

} // namespace detail

inline AdvisorConfig load_advisor_config(std::istream& input) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(input);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ConfigError("config root must be an object");

  AdvisorConfig config;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "classify_rules") {
        for (const auto& rule : value) {
          if (!rule.is_object() || !rule.contains("substring") ||
              !rule.contains("category"))
            throw ConfigError("classify rule needs substring and category");
          const auto category =
              blocker_category_from(rule.at("category").get<std::string>());
          if (!category)
            throw ConfigError("unknown category '" +
                              rule.at("category").get<std::string>() + "'");
          const auto substring = rule.at("substring").get<std::string>();
          if (substring.empty())
            throw ConfigError("classify rule with empty substring");
          config.classify_rules.push_back(ClassifyRule{substring, *category});
        }
      } else if (key == "replace_default_rules") {
        config.replace_default_rules = value.get<bool>();
      } else if (key == "remedy_overrides") {
        if (!value.is_object())
          throw ConfigError("remedy_overrides must map category to a list");
        for (const auto& [name, list] : value.items()) {
          const auto category = blocker_category_from(name);
          if (!category)
            throw ConfigError("unknown category '" + name + "'");
          if (*category == BlockerCategory::VECTORIZED)
            throw ConfigError("VECTORIZED cannot carry remedies");
          std::vector<Remedy> remedies;
          for (const auto& r : list)
            remedies.push_back(detail::remedy_from_config(r));
          config.remedy_overrides[*category] = std::move(remedies);
        }
      } else if (key == "bounds_discount") {
        config.bounds_discount = value.get<double>();
      } else if (key == "fp_reorder_discount") {
        config.fp_reorder_discount = value.get<double>();
      } else if (key == "unchanged_band") {
        config.unchanged_band = value.get<double>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  if (config.bounds_discount <= 0 || config.fp_reorder_discount <= 0)
    throw ConfigError("discounts must be positive");
  if (config.unchanged_band < 0)
    throw ConfigError("unchanged_band must be non-negative");
  return config;
}

} // namespace simdadv
