//===- simdadv/counters.hpp - Hardware-counter ingestion and ratios ------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/detail/text.hpp"
#include "simdadv/errors.hpp"

#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace simdadv {

/// One task's counter readings, e.g. label "sve-disabled/walker" with
/// VEC_INC/TOT_CYC/FP_INS/L2_DCM entries. time_percent is the task's share
/// of total run time when the profiler reported one.
struct CounterSet {
  std::string label;
  std::map<std::string, double> counters;
  std::optional<double> time_percent;

  friend bool operator==(const CounterSet&, const CounterSet&) = default;
};

enum class Verdict { higher, lower, unchanged };

inline std::string_view to_string(Verdict verdict) {
  switch (verdict) {
  case Verdict::higher:
    return "higher";
  case Verdict::lower:
    return "lower";
  case Verdict::unchanged:
    return "unchanged";
  }
  return "unchanged";
}

/// ratio is baseline ÷ other; the unchanged band is [1/(1+tol), 1+tol].
struct CounterObservation {
  std::string counter;
  double ratio = 1.0;
  Verdict verdict = Verdict::unchanged;

  friend bool operator==(const CounterObservation&,
                         const CounterObservation&) = default;
};

/// Parses counter CSV with header "label,counter,value". The pseudo-counter
/// name TIME_PERCENT sets the set's time share instead of a counter entry.
/// Sets come out in first-appearance order of their labels.
inline std::vector<CounterSet> parse_counters(std::istream& input) {
  std::string line;
  if (!std::getline(input, line))
    throw BadHeader("empty counter CSV, expected 'label,counter,value'");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  {
    const auto header = detail::csv_split(line);
    if (header.size() != 3 ||
        detail::trim(header[0]) != "label" ||
        detail::trim(header[1]) != "counter" ||
        detail::trim(header[2]) != "value")
      throw BadHeader("expected header 'label,counter,value', got '" + line +
                      "'");
  }

  std::vector<CounterSet> sets;
  std::map<std::string, std::size_t> index;
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
    const std::string label(detail::trim(fields[0]));
    const std::string counter(detail::trim(fields[1]));
    if (label.empty() || counter.empty())
      throw BadRow(line_number, "empty label or counter name");
    const auto value = detail::parse_double(fields[2]);
    if (!value)
      throw BadRow(line_number, "unparsable value '" + fields[2] + "'");
    if (*value < 0)
      throw NegativeValue(line_number, counter + " = " + fields[2]);

    const auto [it, inserted] = index.emplace(label, sets.size());
    if (inserted)
      sets.push_back(CounterSet{label, {}, std::nullopt});
    CounterSet& set = sets[it->second];
    if (counter == "TIME_PERCENT")
      set.time_percent = *value;
    else
      set.counters[counter] = *value;
  }
  return sets;
}

/// Per-counter baseline ÷ other ratios over the shared counter names, with
/// an unchanged/higher/lower verdict against the tolerance band. A zero
/// other value with nonzero baseline reports an infinite ratio (higher);
/// zero on both sides reports 1.0 (unchanged). Observations are sorted by
/// counter name.
inline std::vector<CounterObservation>
compare_counters(const CounterSet& baseline, const CounterSet& other,
                 double tolerance = 0.10) {
  std::vector<CounterObservation> observations;
  for (const auto& [counter, baseline_value] : baseline.counters) {
    const auto it = other.counters.find(counter);
    if (it == other.counters.end())
      continue;
    const double other_value = it->second;

    CounterObservation obs;
    obs.counter = counter;
    if (other_value == 0 && baseline_value == 0) {
      obs.ratio = 1.0;
      obs.verdict = Verdict::unchanged;
    } else if (other_value == 0) {
      obs.ratio = std::numeric_limits<double>::infinity();
      obs.verdict = Verdict::higher;
    } else {
      obs.ratio = baseline_value / other_value;
      const double upper = 1.0 + tolerance;
      const double lower = 1.0 / upper;
      if (obs.ratio >= lower && obs.ratio <= upper)
        obs.verdict = Verdict::unchanged;
      else
        obs.verdict = obs.ratio > 1.0 ? Verdict::higher : Verdict::lower;
    }
    observations.push_back(std::move(obs));
  }
  if (observations.empty())
    throw NoSharedCounters("the two sets share no counter names");
  return observations;
}

/// Per-label time shares plus the group total.
struct TimeShare {
  std::map<std::string, double> shares;
  double total = 0;

  friend bool operator==(const TimeShare&, const TimeShare&) = default;
};

inline TimeShare task_time_share(const std::vector<CounterSet>& sets) {
  TimeShare result;
  for (const auto& set : sets) {
    if (!set.time_percent)
      throw MissingTimePercent(set.label);
    result.shares[set.label] = *set.time_percent;
    result.total += *set.time_percent;
  }
  return result;
}

} // namespace simdadv
