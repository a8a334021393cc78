//===- simdadv/remark_yaml.hpp - Remark stream parsing --------*- C++ -*-===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Consumes the multi-document YAML streams written by compilers under a
// "save optimization record" flag (clang: -fsave-optimization-record,
// files named *.opt.yaml) and turns them into Remark values. A companion
// serializer writes the same format back out; parse(serialize(r)) is the
// identity on the modeled fields.
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/errors.hpp"
#include "simdadv/remark.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace simdadv {

/// File extension the producer uses for serialized remark records.
inline constexpr std::string_view kRemarkFileExtension = ".opt.yaml";

namespace detail {

// Splits a multi-document stream at "---" document-start markers so that a
// malformed document can be skipped without poisoning its neighbours.
inline std::vector<std::string> split_yaml_documents(std::string_view text) {
  std::vector<std::string> docs;
  std::string current;
  bool current_has_content = false;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    const bool last = nl == std::string_view::npos;
    std::string_view line =
        last ? text.substr(start) : text.substr(start, nl - start);

    const bool doc_start =
        line.size() >= 3 && line.substr(0, 3) == "---" &&
        (line.size() == 3 || line[3] == ' ' || line[3] == '\t' ||
         line[3] == '\r');
    if (doc_start) {
      if (current_has_content)
        docs.push_back(std::move(current));
      current.clear();
      current_has_content = true;
    }
    current.append(line);
    current.push_back('\n');
    if (!current_has_content &&
        line.find_first_not_of(" \t\r") != std::string_view::npos)
      current_has_content = true; // content before the first marker
    if (last)
      break;
    start = nl + 1;
  }
  if (current_has_content)
    docs.push_back(std::move(current));
  return docs;
}

inline std::optional<SourceLoc> parse_debug_loc(const YAML::Node& node,
                                                std::size_t doc_index,
                                                Diagnostics* diag) {
  if (!node.IsMap())
    throw MalformedDocument(doc_index, "DebugLoc is not a mapping");
  const auto file = node["File"];
  const auto line = node["Line"];
  if (!file || !line)
    throw MalformedDocument(doc_index, "DebugLoc lacks File or Line");
  if (!file.IsScalar() || !line.IsScalar())
    throw MalformedDocument(doc_index, "DebugLoc fields must be scalars");

  std::int64_t line_value = 0;
  std::int64_t column_value = 0;
  try {
    line_value = line.as<std::int64_t>();
    if (const auto column = node["Column"])
      column_value = column.as<std::int64_t>();
  } catch (const YAML::Exception&) {
    throw MalformedDocument(doc_index, "DebugLoc Line/Column not integers");
  }

  SourceLoc loc;
  loc.file = file.Scalar();
  // A producer may emit Line 0 or an empty File for compiler-generated
  // code; such a remark is kept but cannot be located.
  if (loc.file.empty() || line_value < 1 || column_value < 0) {
    warn_to(diag, "document " + std::to_string(doc_index) +
                      ": unlocatable DebugLoc (file='" + loc.file +
                      "', line=" + std::to_string(line_value) +
                      "), remark kept without location");
    return std::nullopt;
  }
  loc.line = static_cast<std::uint32_t>(line_value);
  loc.column = static_cast<std::uint32_t>(column_value);
  return loc;
}

inline std::string require_scalar(const YAML::Node& node, const char* field,
                                  std::size_t doc_index) {
  if (!node)
    throw MalformedDocument(doc_index, std::string("missing ") + field);
  if (!node.IsScalar())
    throw MalformedDocument(doc_index,
                            std::string(field) + " is not a scalar");
  return node.Scalar();
}

inline Remark parse_remark_document(const YAML::Node& doc, RemarkKind kind,
                                    std::size_t doc_index,
                                    Diagnostics* diag) {
  if (!doc.IsMap())
    throw MalformedDocument(doc_index, "document is not a mapping");

  Remark remark;
  remark.kind = kind;
  remark.pass = require_scalar(doc["Pass"], "Pass", doc_index);
  remark.name = require_scalar(doc["Name"], "Name", doc_index);
  remark.function = require_scalar(doc["Function"], "Function", doc_index);
  if (remark.pass.empty())
    throw MalformedDocument(doc_index, "Pass is empty");
  if (remark.name.empty())
    throw MalformedDocument(doc_index, "Name is empty");

  if (const auto loc = doc["DebugLoc"])
    remark.loc = parse_debug_loc(loc, doc_index, diag);

  if (const auto hotness = doc["Hotness"]) {
    if (!hotness.IsScalar())
      throw MalformedDocument(doc_index, "Hotness is not a scalar");
    std::int64_t value = 0;
    try {
      value = hotness.as<std::int64_t>();
    } catch (const YAML::Exception&) {
      throw MalformedDocument(doc_index, "Hotness is not an integer");
    }
    if (value < 0)
      throw MalformedDocument(doc_index, "Hotness is negative");
    remark.hotness = static_cast<std::uint64_t>(value);
  }

  if (const auto args = doc["Args"]) {
    if (!args.IsSequence())
      throw MalformedDocument(doc_index, "Args is not a sequence");
    for (const auto& item : args) {
      if (!item.IsMap())
        throw MalformedDocument(doc_index, "Args entry is not a mapping");
      RemarkArg arg;
      bool have_payload = false;
      for (const auto& kv : item) {
        const std::string key = kv.first.Scalar();
        if (key == "DebugLoc") {
          arg.loc = parse_debug_loc(kv.second, doc_index, diag);
          continue;
        }
        if (have_payload)
          throw MalformedDocument(doc_index,
                                  "Args entry has more than one value");
        if (!kv.second.IsScalar())
          throw MalformedDocument(doc_index,
                                  "Args value for '" + key +
                                      "' is not a scalar");
        arg.key = key;
        arg.value = kv.second.Scalar();
        have_payload = true;
      }
      if (!have_payload)
        throw MalformedDocument(doc_index, "Args entry has no value");
      remark.args.push_back(std::move(arg));
    }
  }
  return remark;
}

// Single-quotes printable scalars; falls back to double quoting with escapes
// when the value contains control characters.
inline std::string quote_scalar(std::string_view value) {
  const bool needs_escapes =
      std::any_of(value.begin(), value.end(), [](unsigned char c) {
        return c < 0x20 || c == 0x7f;
      });
  std::string out;
  if (!needs_escapes) {
    out.push_back('\'');
    for (const char c : value) {
      out.push_back(c);
      if (c == '\'')
        out.push_back('\'');
    }
    out.push_back('\'');
    return out;
  }
  out.push_back('"');
  for (const unsigned char c : value) {
    switch (c) {
    case '\\':
      out += "\\\\";
      break;
    case '"':
      out += "\\\"";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    case '\r':
      out += "\\r";
      break;
    default:
      if (c < 0x20 || c == 0x7f) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "\\x%02X", c);
        out += buf;
      } else {
        out.push_back(static_cast<char>(c));
      }
    }
  }
  out.push_back('"');
  return out;
}

inline std::string emit_key(std::string_view key) {
  const bool plain =
      !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
      });
  return plain ? std::string(key) : quote_scalar(key);
}

inline void emit_debug_loc(std::string& out, const SourceLoc& loc) {
  out += "{ File: ";
  out += quote_scalar(loc.file);
  out += ", Line: " + std::to_string(loc.line);
  out += ", Column: " + std::to_string(loc.column) + " }";
}

inline void emit_field(std::string& out, std::string_view key,
                       std::string_view rendered) {
  out.append(key);
  out.push_back(':');
  const std::size_t pad = key.size() + 1 < 16 ? 16 - (key.size() + 1) : 1;
  out.append(pad, ' ');
  out.append(rendered);
  out.push_back('\n');
}

} // namespace detail

/// Parses a multi-document remark stream. Unknown document tags are skipped
/// with a warning in both modes; structural violations raise
/// MalformedDocument in strict mode and are skipped with a warning in
/// lenient mode.
inline std::vector<Remark> parse_remark_stream(std::string_view text,
                                               ParseMode mode = ParseMode::strict,
                                               Diagnostics* diag = nullptr) {
  std::vector<Remark> remarks;
  const auto documents = detail::split_yaml_documents(text);
  for (std::size_t index = 0; index < documents.size(); ++index) {
    try {
      YAML::Node doc;
      try {
        doc = YAML::Load(documents[index]);
      } catch (const YAML::Exception& e) {
        throw MalformedDocument(index, std::string("YAML error: ") + e.what());
      }
      if (doc.IsNull())
        throw MalformedDocument(index, "document is empty");
      const std::string tag = doc.Tag();
      const auto kind =
          tag.size() > 1 && tag.front() == '!'
              ? remark_kind_from(std::string_view(tag).substr(1))
              : std::nullopt;
      if (!kind) {
        warn_to(diag, "document " + std::to_string(index) +
                          ": unknown document tag '" + tag + "', skipped");
        continue;
      }
      remarks.push_back(
          detail::parse_remark_document(doc, *kind, index, diag));
    } catch (const MalformedDocument& e) {
      if (mode == ParseMode::strict)
        throw;
      warn_to(diag, std::string(e.what()) + ", skipped");
    }
  }
  return remarks;
}

inline std::vector<Remark> parse_remark_stream(std::istream& input,
                                               ParseMode mode = ParseMode::strict,
                                               Diagnostics* diag = nullptr) {
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return parse_remark_stream(buffer.str(), mode, diag);
}

/// Writes remarks back in the producer's format. Deterministic: equal inputs
/// yield byte-equal output.
inline std::string serialize_remark_stream(const std::vector<Remark>& remarks) {
  std::string out;
  for (const auto& remark : remarks) {
    out += "--- !";
    out += to_string(remark.kind);
    out.push_back('\n');
    detail::emit_field(out, "Pass", detail::quote_scalar(remark.pass));
    detail::emit_field(out, "Name", detail::quote_scalar(remark.name));
    if (remark.loc) {
      std::string loc;
      detail::emit_debug_loc(loc, *remark.loc);
      detail::emit_field(out, "DebugLoc", loc);
    }
    detail::emit_field(out, "Function", detail::quote_scalar(remark.function));
    if (remark.hotness)
      detail::emit_field(out, "Hotness", std::to_string(*remark.hotness));
    if (remark.args.empty()) {
      detail::emit_field(out, "Args", "[]");
    } else {
      out += "Args:\n";
      for (const auto& arg : remark.args) {
        const std::string key = detail::emit_key(arg.key);
        out += "  - ";
        out += key;
        out.push_back(':');
        const std::size_t width = 4 + key.size() + 1;
        out.append(width < 20 ? 20 - width : 1, ' ');
        out += detail::quote_scalar(arg.value);
        out.push_back('\n');
        if (arg.loc) {
          out += "    DebugLoc:        ";
          detail::emit_debug_loc(out, *arg.loc);
          out.push_back('\n');
        }
      }
    }
    out += "...\n";
  }
  return out;
}

/// Loads remark files given as paths. A directory is scanned (recursively)
/// for the producer's record-file extension; matches are parsed in sorted
/// path order. "-" reads the standard input stream. Results concatenate in
/// argument order.
inline std::vector<Remark>
load_remark_files(const std::vector<std::string>& paths,
                  ParseMode mode = ParseMode::strict,
                  Diagnostics* diag = nullptr) {
  namespace fs = std::filesystem;
  std::vector<Remark> remarks;

  const auto parse_file = [&](const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input)
      throw IoError("cannot open remark file: " + path);
    auto parsed = parse_remark_stream(input, mode, diag);
    remarks.insert(remarks.end(), std::make_move_iterator(parsed.begin()),
                   std::make_move_iterator(parsed.end()));
  };

  for (const auto& path : paths) {
    if (path == "-") {
      auto parsed = parse_remark_stream(std::cin, mode, diag);
      remarks.insert(remarks.end(), std::make_move_iterator(parsed.begin()),
                     std::make_move_iterator(parsed.end()));
      continue;
    }
    if (fs::is_directory(path)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (!entry.is_regular_file())
          continue;
        const auto& file = entry.path().native();
        if (file.size() >= kRemarkFileExtension.size() &&
            file.compare(file.size() - kRemarkFileExtension.size(),
                         kRemarkFileExtension.size(),
                         kRemarkFileExtension) == 0)
          found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      if (found.empty())
        warn_to(diag, "directory contains no " +
                          std::string(kRemarkFileExtension) +
                          " files: " + path);
      for (const auto& file : found)
        parse_file(file);
      continue;
    }
    parse_file(path);
  }
  return remarks;
}

} // namespace simdadv
