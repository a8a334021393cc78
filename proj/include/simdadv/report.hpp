//===- simdadv/report.hpp - Ranking, rendering, run comparison -----------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/classify.hpp"
#include "simdadv/correlate.hpp"
#include "simdadv/counters.hpp"
#include "simdadv/detail/text.hpp"
#include "simdadv/errors.hpp"
#include "simdadv/profile.hpp"
#include "simdadv/remark.hpp"

#include "json.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace simdadv {

inline constexpr int kSchemaVersion = 1;

struct ReportMetadata {
  std::string tool_version;
  std::vector<std::string> inputs;
  double threshold_percent = 1.0;
  bool keep_unknown = true;
  std::optional<std::string> arch;
  std::optional<int> element_bits;

  friend bool operator==(const ReportMetadata&,
                         const ReportMetadata&) = default;
};

/// The advise pipeline's product: ranked entries plus the remarks that had
/// no usable source location.
struct AdviceReport {
  ReportMetadata metadata;
  std::vector<AdviceEntry> entries;
  std::vector<Remark> unlocated_remarks;

  friend bool operator==(const AdviceReport&, const AdviceReport&) = default;
};

namespace detail {

inline bool rank_less(const AdviceEntry& a, const AdviceEntry& b) {
  const bool a_known = a.site.hotness_percent.has_value();
  const bool b_known = b.site.hotness_percent.has_value();
  if (a_known != b_known)
    return a_known;
  if (a_known && *a.site.hotness_percent != *b.site.hotness_percent)
    return *a.site.hotness_percent > *b.site.hotness_percent;
  return std::tie(a.site.loc.file, a.site.loc.line) <
         std::tie(b.site.loc.file, b.site.loc.line);
}

} // namespace detail

/// Hotness descending, unknown hotness after known, ties by (file, line)
/// ascending. Returns a sorted copy.
inline std::vector<AdviceEntry> rank(std::vector<AdviceEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(), detail::rank_less);
  return entries;
}

/// One run's headline numbers; at least one metric must be present.
struct RunSummary {
  std::string label;
  std::optional<double> wall_seconds;
  std::optional<double> gflops;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// time_speedup is baseline seconds ÷ other seconds (how much faster the
/// other run finished); gflops_ratio is other ÷ baseline (how much more
/// throughput the other run achieved). Both orientations make numbers > 1
/// mean "the other run is better".
struct RunComparison {
  std::string baseline_label;
  std::string other_label;
  std::optional<double> time_speedup;
  std::optional<double> gflops_ratio;

  friend bool operator==(const RunComparison&, const RunComparison&) = default;
};

inline RunComparison compare_runs(const RunSummary& baseline,
                                  const RunSummary& other) {
  RunComparison result;
  result.baseline_label = baseline.label;
  result.other_label = other.label;
  if (baseline.wall_seconds && other.wall_seconds)
    result.time_speedup = *baseline.wall_seconds / *other.wall_seconds;
  if (baseline.gflops && other.gflops)
    result.gflops_ratio = *other.gflops / *baseline.gflops;
  if (!result.time_speedup && !result.gflops_ratio)
    throw NoSharedMetric("runs '" + baseline.label + "' and '" + other.label +
                         "' share no metric");
  return result;
}

/// Run-summary CSV: header "label,wall_seconds,gflops"; empty cells mark
/// absent metrics, but each row needs at least one.
inline std::vector<RunSummary> parse_run_csv(std::istream& input) {
  std::string line;
  if (!std::getline(input, line))
    throw BadHeader("empty run CSV, expected 'label,wall_seconds,gflops'");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  {
    const auto header = detail::csv_split(line);
    if (header.size() != 3 ||
        detail::trim(header[0]) != "label" ||
        detail::trim(header[1]) != "wall_seconds" ||
        detail::trim(header[2]) != "gflops")
      throw BadHeader("expected header 'label,wall_seconds,gflops', got '" +
                      line + "'");
  }

  std::vector<RunSummary> runs;
  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (detail::trim(line).empty())
      continue;
    const auto fields = detail::csv_split(line);
    if (fields.size() != 3)
      throw BadRow(line_number, "expected 3 fields, got " +
                                    std::to_string(fields.size()));
    RunSummary run;
    run.label = std::string(detail::trim(fields[0]));
    if (run.label.empty())
      throw BadRow(line_number, "empty label");
    const auto read_metric = [&](const std::string& field,
                                 const char* what) -> std::optional<double> {
      if (detail::trim(field).empty())
        return std::nullopt;
      const auto value = detail::parse_double(field);
      if (!value || *value <= 0)
        throw BadRow(line_number, std::string(what) + " '" + field +
                                      "' is not a positive number");
      return value;
    };
    run.wall_seconds = read_metric(fields[1], "wall_seconds");
    run.gflops = read_metric(fields[2], "gflops");
    if (!run.wall_seconds && !run.gflops)
      throw BadRow(line_number, "row has neither wall_seconds nor gflops");
    runs.push_back(std::move(run));
  }
  return runs;
}

namespace detail {

inline std::string format_ratio(double value) {
  if (value == std::numeric_limits<double>::infinity())
    return "inf";
  return format_fixed(value, 2);
}

} // namespace detail

/// Human-readable advice report. Stable for equal inputs but not an
/// automation contract; scripts should consume the structured rendering.
inline std::string render_text(const AdviceReport& report) {
  std::string out;
  out += "simd-advisor advice report (tool version " +
         report.metadata.tool_version + ")\n";
  out += "inputs:";
  for (const auto& input : report.metadata.inputs)
    out += " " + input;
  if (report.metadata.inputs.empty())
    out += " (none)";
  out += "\n";
  out += "threshold: " +
         detail::format_fixed(report.metadata.threshold_percent, 2) + "% (" +
         (report.metadata.keep_unknown ? "keeping" : "dropping") +
         " unknown-hotness sites)\n";
  if (report.metadata.arch) {
    out += "arch: " + *report.metadata.arch;
    if (report.metadata.element_bits)
      out += ", element bits: " + std::to_string(*report.metadata.element_bits);
    out += "\n";
  }
  out += "\n";

  if (report.entries.empty())
    out += "no advice entries\n";

  std::size_t index = 0;
  for (const auto& entry : report.entries) {
    ++index;
    out += "[" + std::to_string(index) + "] " + entry.site.loc.file + ":" +
           std::to_string(entry.site.loc.line) + " in function '" +
           entry.site.function + "'\n";
    if (entry.site.hotness_percent)
      out += "    hotness: " +
             detail::format_fixed(*entry.site.hotness_percent, 2) + "% (" +
             std::string(to_string(entry.site.hotness_source)) + ")\n";
    else
      out += "    hotness unknown\n";

    if (entry.already_vectorized()) {
      out += "    already vectorized, no remedies\n\n";
      continue;
    }

    out += "    categories:";
    for (const auto category : entry.categories)
      out += " " + std::string(to_string(category));
    out += "\n";
    if (entry.benefit_estimate)
      out += "    estimated benefit: up to " +
             detail::format_fixed(*entry.benefit_estimate, 2) +
             "x (heuristic upper bound)\n";

    for (const auto kind : kAllRemedyKinds) {
      bool any = false;
      for (const auto& remedy : entry.remedies) {
        if (remedy.kind != kind)
          continue;
        if (!any) {
          out += "    " + std::string(to_string(kind)) + " remedies:\n";
          any = true;
        }
        out += "      * " + remedy.text + "\n";
        out += "        " + remedy.rationale + "\n";
        if (remedy.correctness_note)
          out += "        CAUTION: " + *remedy.correctness_note + "\n";
      }
    }
    out += "\n";
  }

  if (!report.unlocated_remarks.empty()) {
    out += "unlocated remarks: " +
           std::to_string(report.unlocated_remarks.size()) + "\n";
    for (const auto& remark : report.unlocated_remarks)
      out += "  - " + std::string(to_string(remark.kind)) + " " + remark.pass +
             "/" + remark.name + " in '" + remark.function +
             "': " + remark_message(remark) + "\n";
  }
  return out;
}

inline std::string render_breakdown(const Breakdown& breakdown,
                                    double threshold_percent) {
  std::string out;
  out += "profile category breakdown (threshold " +
         detail::format_fixed(threshold_percent, 2) + "%)\n";
  out += "  application:          " +
         detail::format_fixed(breakdown.application, 2) + "%\n";
  out += "  scientific libraries: " +
         detail::format_fixed(breakdown.scientific_libraries, 2) + "%\n";
  out += "  runtime:              " +
         detail::format_fixed(breakdown.runtime, 2) + "%\n";
  out += "  other activities:     " +
         detail::format_fixed(breakdown.other_activities_percent(), 2) +
         "% (includes " +
         detail::format_fixed(breakdown.below_threshold_percent, 2) +
         "% below threshold)\n";
  return out;
}

inline std::string
render_counter_observations(const std::string& baseline_label,
                            const std::string& other_label,
                            const std::vector<CounterObservation>& obs) {
  std::string out;
  out += "counter ratios, " + baseline_label + " / " + other_label + ":\n";
  for (const auto& o : obs)
    out += "  " + o.counter + ": " + detail::format_ratio(o.ratio) + "x (" +
           std::string(to_string(o.verdict)) + ")\n";
  return out;
}

inline std::string render_run_comparison(const RunComparison& cmp) {
  std::string out;
  out += "run comparison, baseline '" + cmp.baseline_label + "' vs '" +
         cmp.other_label + "':\n";
  if (cmp.time_speedup)
    out += "  time speedup (baseline seconds / other seconds): " +
           detail::format_fixed(*cmp.time_speedup, 2) + "x\n";
  if (cmp.gflops_ratio)
    out += "  gflops ratio (other / baseline): " +
           detail::format_fixed(*cmp.gflops_ratio, 2) + "x\n";
  return out;
}

//===---------------------------------------------------------------------===//
// Structured rendering. This is the automation contract; the JSON schema
// shipped in schema/advice_report.schema.json fixes the field names. The
// rendering is lossless: parse_structured(render_structured(r)) == r.
//===---------------------------------------------------------------------===//

namespace detail {

using json = nlohmann::ordered_json;

inline json loc_to_json(const SourceLoc& loc) {
  return json{{"file", loc.file}, {"line", loc.line}, {"column", loc.column}};
}

inline json remark_to_json(const Remark& remark) {
  json j;
  j["kind"] = std::string(to_string(remark.kind));
  j["pass"] = remark.pass;
  j["name"] = remark.name;
  j["function"] = remark.function;
  j["loc"] = remark.loc ? loc_to_json(*remark.loc) : json(nullptr);
  if (remark.hotness)
    j["hotness"] = *remark.hotness;
  else
    j["hotness"] = nullptr;
  json args = json::array();
  for (const auto& arg : remark.args) {
    json a;
    a["key"] = arg.key;
    a["value"] = arg.value;
    a["loc"] = arg.loc ? loc_to_json(*arg.loc) : json(nullptr);
    args.push_back(std::move(a));
  }
  j["args"] = std::move(args);
  j["message"] = remark_message(remark);
  return j;
}

inline json entry_to_json(const AdviceEntry& entry) {
  json j;
  j["file"] = entry.site.loc.file;
  j["line"] = entry.site.loc.line;
  j["column"] = entry.site.loc.column;
  j["function"] = entry.site.function;
  if (entry.site.hotness_percent)
    j["hotness_percent"] = *entry.site.hotness_percent;
  else
    j["hotness_percent"] = nullptr;
  j["hotness_source"] = std::string(to_string(entry.site.hotness_source));
  j["already_vectorized"] = entry.already_vectorized();
  json categories = json::array();
  for (const auto category : entry.categories)
    categories.push_back(std::string(to_string(category)));
  j["categories"] = std::move(categories);
  json remedies = json::array();
  for (const auto& remedy : entry.remedies) {
    json r;
    r["kind"] = std::string(to_string(remedy.kind));
    r["text"] = remedy.text;
    r["rationale"] = remedy.rationale;
    r["correctness_note"] =
        remedy.correctness_note ? json(*remedy.correctness_note)
                                : json(nullptr);
    remedies.push_back(std::move(r));
  }
  j["remedies"] = std::move(remedies);
  if (entry.benefit_estimate)
    j["benefit_estimate"] = *entry.benefit_estimate;
  else
    j["benefit_estimate"] = nullptr;
  json remarks = json::array();
  for (const auto& remark : entry.site.remarks)
    remarks.push_back(remark_to_json(remark));
  j["remarks"] = std::move(remarks);
  return j;
}

} // namespace detail

inline std::string render_structured(const AdviceReport& report) {
  detail::json j;
  j["schema_version"] = kSchemaVersion;
  detail::json metadata;
  metadata["tool_version"] = report.metadata.tool_version;
  metadata["inputs"] = report.metadata.inputs;
  metadata["threshold_percent"] = report.metadata.threshold_percent;
  metadata["keep_unknown"] = report.metadata.keep_unknown;
  metadata["arch"] =
      report.metadata.arch ? detail::json(*report.metadata.arch)
                           : detail::json(nullptr);
  metadata["element_bits"] =
      report.metadata.element_bits ? detail::json(*report.metadata.element_bits)
                                   : detail::json(nullptr);
  j["metadata"] = std::move(metadata);
  detail::json entries = detail::json::array();
  for (const auto& entry : report.entries)
    entries.push_back(detail::entry_to_json(entry));
  j["entries"] = std::move(entries);
  detail::json unlocated = detail::json::array();
  for (const auto& remark : report.unlocated_remarks)
    unlocated.push_back(detail::remark_to_json(remark));
  j["unlocated"] = std::move(unlocated);
  return j.dump(2) + "\n";
}

namespace detail {

inline ReportParseError bad_report(const std::string& what) {
  return ReportParseError("structured report: " + what);
}

inline SourceLoc loc_from_json(const json& j) {
  if (!j.is_object() || !j.contains("file") || !j.contains("line") ||
      !j.contains("column"))
    throw bad_report("bad location object");
  SourceLoc loc;
  loc.file = j.at("file").get<std::string>();
  loc.line = j.at("line").get<std::uint32_t>();
  loc.column = j.at("column").get<std::uint32_t>();
  return loc;
}

inline Remark remark_from_json(const json& j) {
  Remark remark;
  const auto kind = remark_kind_from(j.at("kind").get<std::string>());
  if (!kind)
    throw bad_report("unknown remark kind '" +
                     j.at("kind").get<std::string>() + "'");
  remark.kind = *kind;
  remark.pass = j.at("pass").get<std::string>();
  remark.name = j.at("name").get<std::string>();
  remark.function = j.at("function").get<std::string>();
  if (!j.at("loc").is_null())
    remark.loc = loc_from_json(j.at("loc"));
  if (!j.at("hotness").is_null())
    remark.hotness = j.at("hotness").get<std::uint64_t>();
  for (const auto& a : j.at("args")) {
    RemarkArg arg;
    arg.key = a.at("key").get<std::string>();
    arg.value = a.at("value").get<std::string>();
    if (!a.at("loc").is_null())
      arg.loc = loc_from_json(a.at("loc"));
    remark.args.push_back(std::move(arg));
  }
  return remark;
}

inline AdviceEntry entry_from_json(const json& j) {
  AdviceEntry entry;
  entry.site.loc.file = j.at("file").get<std::string>();
  entry.site.loc.line = j.at("line").get<std::uint32_t>();
  entry.site.loc.column = j.at("column").get<std::uint32_t>();
  entry.site.function = j.at("function").get<std::string>();
  if (!j.at("hotness_percent").is_null())
    entry.site.hotness_percent = j.at("hotness_percent").get<double>();
  const std::string source = j.at("hotness_source").get<std::string>();
  if (source == "embedded")
    entry.site.hotness_source = HotnessSource::embedded;
  else if (source == "profile")
    entry.site.hotness_source = HotnessSource::profile;
  else if (source == "none")
    entry.site.hotness_source = HotnessSource::none;
  else
    throw bad_report("unknown hotness source '" + source + "'");
  for (const auto& c : j.at("categories")) {
    const auto category = blocker_category_from(c.get<std::string>());
    if (!category)
      throw bad_report("unknown category '" + c.get<std::string>() + "'");
    entry.categories.insert(*category);
  }
  for (const auto& r : j.at("remedies")) {
    Remedy remedy;
    const auto kind = remedy_kind_from(r.at("kind").get<std::string>());
    if (!kind)
      throw bad_report("unknown remedy kind '" +
                       r.at("kind").get<std::string>() + "'");
    remedy.kind = *kind;
    remedy.text = r.at("text").get<std::string>();
    remedy.rationale = r.at("rationale").get<std::string>();
    if (!r.at("correctness_note").is_null())
      remedy.correctness_note = r.at("correctness_note").get<std::string>();
    entry.remedies.push_back(std::move(remedy));
  }
  if (!j.at("benefit_estimate").is_null())
    entry.benefit_estimate = j.at("benefit_estimate").get<double>();
  for (const auto& r : j.at("remarks"))
    entry.site.remarks.push_back(remark_from_json(r));
  return entry;
}

} // namespace detail

/// Inverse of render_structured; throws ReportParseError on malformed or
/// differently-versioned input.
inline AdviceReport parse_structured(std::string_view text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw detail::bad_report(e.what());
  }
  try {
    if (!j.is_object() || !j.contains("schema_version"))
      throw detail::bad_report("missing schema_version");
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw detail::bad_report("unsupported schema_version");
    AdviceReport report;
    const auto& metadata = j.at("metadata");
    report.metadata.tool_version =
        metadata.at("tool_version").get<std::string>();
    report.metadata.inputs =
        metadata.at("inputs").get<std::vector<std::string>>();
    report.metadata.threshold_percent =
        metadata.at("threshold_percent").get<double>();
    report.metadata.keep_unknown = metadata.at("keep_unknown").get<bool>();
    if (!metadata.at("arch").is_null())
      report.metadata.arch = metadata.at("arch").get<std::string>();
    if (!metadata.at("element_bits").is_null())
      report.metadata.element_bits = metadata.at("element_bits").get<int>();
    for (const auto& e : j.at("entries"))
      report.entries.push_back(detail::entry_from_json(e));
    for (const auto& r : j.at("unlocated"))
      report.unlocated_remarks.push_back(detail::remark_from_json(r));
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw detail::bad_report(e.what());
  }
}

} // namespace simdadv
