//===- simdadv/detail/text.hpp - Small text helpers -----------*- C++ -*-===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simdadv::detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

/// Strict full-field decimal parse, locale-independent.
inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty())
    return std::nullopt;
  double value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    return std::nullopt;
  return value;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty())
    return std::nullopt;
  std::int64_t value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    return std::nullopt;
  return value;
}

/// Splits one CSV record. Fields may be double-quoted; a doubled quote
/// inside a quoted field is a literal quote.
inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

/// Splits text into lines; tolerates \r\n endings and a missing final newline.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size())
        lines.push_back(text.substr(start));
      break;
    }
    auto line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

/// Anchored glob match where '*' matches any (possibly empty) substring and
/// every other character matches itself.
inline bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*')
    ++p;
  return p == pattern.size();
}

/// Trailing unqualified identifier of a symbol: strips a trailing argument
/// list and template arguments, then everything up to the last "::".
/// "ns::Walker<double>::doSweep(int)" -> "doSweep".
inline std::string_view unqualified_name(std::string_view symbol) {
  symbol = trim(symbol);
  // Strip one trailing balanced (...) group.
  if (!symbol.empty() && symbol.back() == ')') {
    int depth = 0;
    for (std::size_t i = symbol.size(); i-- > 0;) {
      if (symbol[i] == ')')
        ++depth;
      else if (symbol[i] == '(' && --depth == 0) {
        symbol = symbol.substr(0, i);
        break;
      }
    }
  }
  // Strip one trailing balanced <...> group.
  if (!symbol.empty() && symbol.back() == '>') {
    int depth = 0;
    for (std::size_t i = symbol.size(); i-- > 0;) {
      if (symbol[i] == '>')
        ++depth;
      else if (symbol[i] == '<' && --depth == 0) {
        symbol = symbol.substr(0, i);
        break;
      }
    }
  }
  const auto sep = symbol.rfind("::");
  if (sep != std::string_view::npos)
    symbol = symbol.substr(sep + 2);
  return symbol;
}

inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

} // namespace simdadv::detail
