//===- simdadv/errors.hpp - Error types and diagnostics -------*- C++ -*-===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simdadv {

/// Base class for every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// A remark document violated the external format.
class MalformedDocument : public Error {
public:
  MalformedDocument(std::size_t document_index, const std::string& reason)
      : Error("document " + std::to_string(document_index) + ": " + reason),
        document_index(document_index), reason(reason) {}

  std::size_t document_index;
  std::string reason;
};

class BadHeader : public Error {
public:
  using Error::Error;
};

class BadRow : public Error {
public:
  BadRow(std::size_t line_number, const std::string& reason)
      : Error("line " + std::to_string(line_number) + ": " + reason),
        line_number(line_number) {}

  std::size_t line_number;
};

/// A flat profile violated its type invariants (e.g. percents sum past 100).
class InvalidProfile : public Error {
public:
  using Error::Error;
};

class NoSamples : public Error {
public:
  using Error::Error;
};

class NegativeValue : public Error {
public:
  NegativeValue(std::size_t line_number, const std::string& reason)
      : Error("line " + std::to_string(line_number) + ": " + reason),
        line_number(line_number) {}

  std::size_t line_number;
};

class NoSharedCounters : public Error {
public:
  using Error::Error;
};

class MissingTimePercent : public Error {
public:
  explicit MissingTimePercent(const std::string& label)
      : Error("counter set '" + label + "' carries no TIME_PERCENT"),
        label(label) {}

  std::string label;
};

class NoSharedMetric : public Error {
public:
  using Error::Error;
};

class InvalidCategory : public Error {
public:
  using Error::Error;
};

class BadElementWidth : public Error {
public:
  explicit BadElementWidth(int element_bits)
      : Error("element width must be 8, 16, 32 or 64 bits, got " +
              std::to_string(element_bits)),
        element_bits(element_bits) {}

  int element_bits;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// A structured report could not be parsed back into an AdviceReport.
class ReportParseError : public Error {
public:
  using Error::Error;
};

/// Strictness of the ingest functions. Strict aborts on the first structural
/// violation; lenient skips the offending record and records a warning.
enum class ParseMode { strict, lenient };

/// Collects non-fatal warnings from parsing and correlation. Callers that do
/// not care pass nullptr.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

inline void warn_to(Diagnostics* diag, std::string message) {
  if (diag)
    diag->warn(std::move(message));
}

} // namespace simdadv
