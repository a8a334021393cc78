//===- simdadv/classify.hpp - Blocker taxonomy and remedies --------------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/correlate.hpp"
#include "simdadv/errors.hpp"
#include "simdadv/remark.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace simdadv {

/// Why a loop did not vectorize. Enum order is meaningful: remedy lists for
/// multi-category sites concatenate in this order.
enum class BlockerCategory {
  FP_REORDER,
  UNKNOWN_BOUNDS,
  LIBCALL,
  NORETURN_EXIT,
  CF_SELECT,
  UNIDENTIFIED_BOUNDS,
  VECTORIZED,
  UNKNOWN,
};

inline constexpr BlockerCategory kAllBlockerCategories[] = {
    BlockerCategory::FP_REORDER,    BlockerCategory::UNKNOWN_BOUNDS,
    BlockerCategory::LIBCALL,       BlockerCategory::NORETURN_EXIT,
    BlockerCategory::CF_SELECT,     BlockerCategory::UNIDENTIFIED_BOUNDS,
    BlockerCategory::VECTORIZED,    BlockerCategory::UNKNOWN,
};

inline std::string_view to_string(BlockerCategory category) {
  switch (category) {
  case BlockerCategory::FP_REORDER:
    return "FP_REORDER";
  case BlockerCategory::UNKNOWN_BOUNDS:
    return "UNKNOWN_BOUNDS";
  case BlockerCategory::LIBCALL:
    return "LIBCALL";
  case BlockerCategory::NORETURN_EXIT:
    return "NORETURN_EXIT";
  case BlockerCategory::CF_SELECT:
    return "CF_SELECT";
  case BlockerCategory::UNIDENTIFIED_BOUNDS:
    return "UNIDENTIFIED_BOUNDS";
  case BlockerCategory::VECTORIZED:
    return "VECTORIZED";
  case BlockerCategory::UNKNOWN:
    return "UNKNOWN";
  }
  return "UNKNOWN";
}

inline std::optional<BlockerCategory>
blocker_category_from(std::string_view name) {
  for (const auto category : kAllBlockerCategories)
    if (name == to_string(category))
      return category;
  return std::nullopt;
}

enum class RemedyKind { directive, flag, transformation, caution };

inline constexpr RemedyKind kAllRemedyKinds[] = {
    RemedyKind::directive, RemedyKind::flag, RemedyKind::transformation,
    RemedyKind::caution};

inline std::string_view to_string(RemedyKind kind) {
  switch (kind) {
  case RemedyKind::directive:
    return "directive";
  case RemedyKind::flag:
    return "flag";
  case RemedyKind::transformation:
    return "transformation";
  case RemedyKind::caution:
    return "caution";
  }
  return "caution";
}

inline std::optional<RemedyKind> remedy_kind_from(std::string_view name) {
  for (const auto kind : kAllRemedyKinds)
    if (name == to_string(kind))
      return kind;
  return std::nullopt;
}

/// One actionable suggestion. Texts use placeholder tokens (<op>, <var>,
/// <ptrs>, <bytes>, <expr>) where the right value is not recoverable from
/// the remark; reports print them verbatim. correctness_note is set for
/// remedies whose application can change program semantics.
struct Remedy {
  RemedyKind kind = RemedyKind::caution;
  std::string text;
  std::string rationale;
  std::optional<std::string> correctness_note;

  friend bool operator==(const Remedy&, const Remedy&) = default;
};

/// Ordered substring rule: first match over the remark message wins.
struct ClassifyRule {
  std::string substring;
  BlockerCategory category = BlockerCategory::UNKNOWN;

  friend bool operator==(const ClassifyRule&, const ClassifyRule&) = default;
};

using RuleTable = std::vector<ClassifyRule>;

inline RuleTable default_rule_table() {
  return {
      {"safe to reorder floating-point operations",
       BlockerCategory::FP_REORDER},
      {"Unknown array bounds", BlockerCategory::UNKNOWN_BOUNDS},
      {"library call cannot be vectorized", BlockerCategory::LIBCALL},
      {"control flow that does not return", BlockerCategory::NORETURN_EXIT},
      {"cannot be substituted for a select", BlockerCategory::CF_SELECT},
      {"cannot identify array bounds", BlockerCategory::UNIDENTIFIED_BOUNDS},
  };
}

/// Case-sensitive first-match over the rule table; UNKNOWN when nothing
/// matches.
inline BlockerCategory classify_message(std::string_view message,
                                        const RuleTable& table) {
  for (const auto& rule : table)
    if (message.find(rule.substring) != std::string_view::npos)
      return rule.category;
  return BlockerCategory::UNKNOWN;
}

inline BlockerCategory classify_message(std::string_view message) {
  const static RuleTable table = default_rule_table();
  return classify_message(message, table);
}

inline bool is_vectorization_pass(std::string_view pass) {
  return pass.find("vectorize") != std::string_view::npos;
}

/// Passed remarks from a vectorization pass are VECTORIZED before the rule
/// table is consulted; everything else classifies by message.
inline BlockerCategory classify(const Remark& remark, const RuleTable& table) {
  if (remark.kind == RemarkKind::Passed && is_vectorization_pass(remark.pass))
    return BlockerCategory::VECTORIZED;
  return classify_message(remark_message(remark), table);
}

inline BlockerCategory classify(const Remark& remark) {
  const static RuleTable table = default_rule_table();
  return classify(remark, table);
}

using RemedyTable = std::map<BlockerCategory, std::vector<Remedy>>;

namespace detail {

inline Remedy omp_simd_remedy() {
  return Remedy{
      RemedyKind::directive,
      "#pragma omp simd",
      "Instructs the compiler to vectorize the loop even though it cannot "
      "prove the accesses independent itself.",
      "Asserts no aliasing between the loop's memory accesses. Care must be "
      "taken to ensure that no aliasing actually occurs, otherwise this "
      "will result in incorrect results.",
  };
}

inline Remedy interchange_remedy() {
  return Remedy{
      RemedyKind::transformation,
      "Apply loop interchange (transpose the loop nest) so the inner loop "
      "walks the storage-major dimension.",
      "Iterating across a row of column-major storage makes every access a "
      "gather; after the interchange the inner loop is unit-stride.",
      std::nullopt,
  };
}

} // namespace detail

/// The built-in remedy lists. Remedy texts within a category are ordered
/// from most targeted to most sweeping.
inline RemedyTable default_remedy_table() {
  RemedyTable table;

  table[BlockerCategory::FP_REORDER] = {
      {RemedyKind::directive,
       "#pragma omp simd reduction(<op>:<var>)",
       "Makes the parallel reduction explicit so the compiler may reorder "
       "the floating-point accumulation; when pointer alignment is known, "
       "add aligned(<ptrs> : <bytes>) as well (64 is typical for "
       "cache-line-aligned allocations).",
       "Vectorizing the reduction reorders floating-point additions, so "
       "results can differ from the scalar loop in the low bits."},
      {RemedyKind::flag,
       "-ffast-math",
       "Licenses floating-point reassociation for the whole translation "
       "unit, so reductions vectorize without source changes.",
       "Abandons strict IEEE 754 semantics everywhere the flag applies; "
       "results may change."},
      {RemedyKind::directive,
       "#pragma clang loop vectorize(enable)",
       "Narrows the reordering license to this one loop instead of the "
       "whole translation unit.",
       "Still permits floating-point reordering within the loop; verify "
       "the numerical tolerance of consumers."},
      {RemedyKind::caution,
       "Reassociation changes the order of floating-point operations; IEEE "
       "754 evaluation order is not preserved and results may differ.",
       "Applies to every reordering-based remedy above.",
       std::nullopt},
  };

  table[BlockerCategory::UNKNOWN_BOUNDS] = {
      detail::omp_simd_remedy(),
      {RemedyKind::caution,
       "The directive form asserts that iterations are independent; if any "
       "aliasing actually occurs the vectorized loop is wrong.",
       "The compiler could not prove independence, so the assertion rests "
       "entirely on the author.",
       std::nullopt},
  };

  table[BlockerCategory::LIBCALL] = {
      {RemedyKind::flag,
       "-fsimdmath (ARM compiler) or -fveclib=<library>",
       "Routes math calls to a vector math library so calls inside the "
       "loop no longer block vectorization.",
       "Vector math implementations will disturb the precision of the "
       "result relative to scalar libm."},
      {RemedyKind::flag,
       "-fno-math-errno or -ffast-math",
       "Without a vector library, lets the compiler widen per-lane math "
       "calls by dropping errno bookkeeping.",
       "Math functions stop reporting errors through errno; -ffast-math "
       "additionally relaxes IEEE conformance."},
      {RemedyKind::caution,
       "Vector math routines trade accuracy for throughput and will "
       "disturb the precision of the result.",
       "Re-validate numerical output after switching math libraries.",
       std::nullopt},
  };

  table[BlockerCategory::NORETURN_EXIT] = {
      {RemedyKind::flag,
       "-DNDEBUG",
       "Compiles assertions out, removing the non-returning exit path "
       "from the loop body.",
       "Disables assert() everywhere; this is the usual tension between "
       "'debug' and 'release' builds."},
      {RemedyKind::caution,
       "Removing assertions removes the checks themselves; keep a checked "
       "build in routine use.",
       "The same build cannot keep the assertion and vectorize this loop.",
       std::nullopt},
  };

  table[BlockerCategory::CF_SELECT] = {
      detail::interchange_remedy(),
      {RemedyKind::transformation,
       "Hoist conditional updates that change once per outer iteration out "
       "of the inner loop.",
       "With the branch hoisted, the remaining inner-loop control flow can "
       "be converted to selects.",
       std::nullopt},
      {RemedyKind::directive,
       "#pragma omp assume holds(<expr>)",
       "Asserts the guarded condition (for example, a nonzero divisor) "
       "always holds, so the guard branch need not survive vectorization.",
       "The assumption is unchecked: if it is ever false, behavior is "
       "undefined."},
      detail::omp_simd_remedy(),
  };

  table[BlockerCategory::UNIDENTIFIED_BOUNDS] =
      table[BlockerCategory::UNKNOWN_BOUNDS];
  table[BlockerCategory::UNIDENTIFIED_BOUNDS].push_back(
      detail::interchange_remedy());

  table[BlockerCategory::UNKNOWN] = {
      {RemedyKind::caution,
       "Unrecognized vectorization blocker; inspect the remark text "
       "directly.",
       "No rule in the classification table matched this remark message.",
       std::nullopt},
  };

  return table;
}

/// Remedy list for one category. VECTORIZED has no remedies by definition.
inline const std::vector<Remedy>& remedies(BlockerCategory category,
                                           const RemedyTable& table) {
  if (category == BlockerCategory::VECTORIZED)
    throw InvalidCategory("VECTORIZED loops need no remedy");
  const auto it = table.find(category);
  if (it == table.end()) {
    static const std::vector<Remedy> empty;
    return empty;
  }
  return it->second;
}

inline const std::vector<Remedy>& remedies(BlockerCategory category) {
  const static RemedyTable table = default_remedy_table();
  return remedies(category, table);
}

/// One site's worth of advice. categories excludes VECTORIZED; a site whose
/// remarks were all vectorization successes ends up with an empty set.
struct AdviceEntry {
  LoopSite site;
  std::set<BlockerCategory> categories;
  std::vector<Remedy> remedies;
  std::optional<double> benefit_estimate;

  bool already_vectorized() const { return categories.empty(); }

  friend bool operator==(const AdviceEntry&, const AdviceEntry&) = default;
};

/// Classifies every remark at the site and concatenates the per-category
/// remedy lists in enum order, deduplicating by (kind, text) with first
/// occurrence kept.
inline AdviceEntry advise(const LoopSite& site, const RuleTable& rules,
                          const RemedyTable& remedy_table) {
  AdviceEntry entry;
  entry.site = site;
  for (const auto& remark : site.remarks) {
    const auto category = classify(remark, rules);
    if (category != BlockerCategory::VECTORIZED)
      entry.categories.insert(category);
  }
  const auto seen = [&entry](const Remedy& candidate) {
    for (const auto& existing : entry.remedies)
      if (existing.kind == candidate.kind && existing.text == candidate.text)
        return true;
    return false;
  };
  for (const auto category : kAllBlockerCategories) {
    if (!entry.categories.count(category))
      continue;
    for (const auto& remedy : remedies(category, remedy_table))
      if (!seen(remedy))
        entry.remedies.push_back(remedy);
  }
  return entry;
}

inline AdviceEntry advise(const LoopSite& site) {
  const static RuleTable rules = default_rule_table();
  const static RemedyTable remedy_table = default_remedy_table();
  return advise(site, rules, remedy_table);
}

/// Target description for the benefit heuristic.
struct ArchModel {
  std::string name;
  int vector_bits = 128;
  bool supports_gather = false;

  friend bool operator==(const ArchModel&, const ArchModel&) = default;
};

inline std::optional<ArchModel> arch_from_name(std::string_view name) {
  if (name == "sve512")
    return ArchModel{"sve512", 512, true};
  if (name == "neon128")
    return ArchModel{"neon128", 128, false};
  return std::nullopt;
}

/// Multipliers applied to the lane count when a blocker family limits the
/// achievable speedup even after remediation.
struct BenefitDiscounts {
  double bounds = 0.5;
  double fp_reorder = 0.5;
};

inline bool has_bounds_category(const std::set<BlockerCategory>& categories) {
  return categories.count(BlockerCategory::UNKNOWN_BOUNDS) ||
         categories.count(BlockerCategory::UNIDENTIFIED_BOUNDS);
}

/// Heuristic upper bound on the speedup from vectorizing the loop: the lane
/// count for element_bits-wide elements, discounted for gather-bound and
/// reduction-tail blockers, floored at 1.0. Absent when the target has no
/// gather support but the loop needs gathers.
inline std::optional<double>
estimate_benefit(const std::set<BlockerCategory>& categories,
                 int element_bits, const ArchModel& arch,
                 const BenefitDiscounts& discounts = {}) {
  if (element_bits != 8 && element_bits != 16 && element_bits != 32 &&
      element_bits != 64)
    throw BadElementWidth(element_bits);
  const bool bounds = has_bounds_category(categories);
  if (bounds && !arch.supports_gather)
    return std::nullopt;
  double benefit = static_cast<double>(arch.vector_bits) /
                   static_cast<double>(element_bits);
  if (bounds)
    benefit *= discounts.bounds;
  if (categories.count(BlockerCategory::FP_REORDER))
    benefit *= discounts.fp_reorder;
  return benefit < 1.0 ? 1.0 : benefit;
}

} // namespace simdadv
