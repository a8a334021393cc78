//===- simdadv/remark.hpp - Optimization remark records -------*- C++ -*-===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simdadv {

/// Source position carried by a remark. line is 1-based, column may be 0
/// (producers emit 0 when the column is unknown).
struct SourceLoc {
  std::string file;
  std::uint32_t line = 1;
  std::uint32_t column = 0;

  friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

enum class RemarkKind { Passed, Missed, Analysis };

inline std::string_view to_string(RemarkKind kind) {
  switch (kind) {
  case RemarkKind::Passed:
    return "Passed";
  case RemarkKind::Missed:
    return "Missed";
  case RemarkKind::Analysis:
    return "Analysis";
  }
  return "Missed";
}

inline std::optional<RemarkKind> remark_kind_from(std::string_view name) {
  if (name == "Passed")
    return RemarkKind::Passed;
  if (name == "Missed")
    return RemarkKind::Missed;
  if (name == "Analysis")
    return RemarkKind::Analysis;
  return std::nullopt;
}

/// One entry of a remark's argument list. Non-string scalar values are
/// stored as their canonical decimal text, so concatenation is always
/// defined. An argument may carry its own location; it is stored but plays
/// no role in grouping.
struct RemarkArg {
  std::string key;
  std::string value;
  std::optional<SourceLoc> loc;

  friend bool operator==(const RemarkArg&, const RemarkArg&) = default;
};

/// One compiler diagnostic record. hotness absent means "no PGO data";
/// hotness 0 means "never sampled".
struct Remark {
  RemarkKind kind = RemarkKind::Missed;
  std::string pass;
  std::string name;
  std::string function;
  std::optional<SourceLoc> loc;
  std::optional<std::uint64_t> hotness;
  std::vector<RemarkArg> args;

  friend bool operator==(const Remark&, const Remark&) = default;
};

/// The human-readable message: argument values concatenated in order, with
/// no separators inserted.
inline std::string remark_message(const Remark& remark) {
  std::string message;
  for (const auto& arg : remark.args)
    message += arg.value;
  return message;
}

} // namespace simdadv
