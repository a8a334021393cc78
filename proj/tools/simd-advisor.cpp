//===- tools/simd-advisor.cpp - Command-line front end --------------------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Subcommands: advise, breakdown, counters, compare, classify. Exit codes:
// 0 success, 1 usage error, 2 input error, 3 findings under
// --fail-on-findings.
//
//===---------------------------------------------------------------------===//

#include "simdadv/simdadv.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitFindings = 3;

/// Reads a whole input ("-" means stdin) into a string.
std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream input(path, std::ios::binary);
  if (!input)
    throw simdadv::IoError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return buffer.str();
}

/// Every referenced path must exist before any work begins.
void require_paths(const std::vector<std::string>& paths) {
  for (const auto& path : paths) {
    if (path == "-")
      continue;
    if (!std::filesystem::exists(path))
      throw simdadv::IoError("no such file: " + path);
  }
}

/// The normalized profile CSV announces itself with its header; anything
/// else is treated as perf-report text.
simdadv::Profile load_profile(const std::string& path,
                              simdadv::ParseMode mode,
                              simdadv::Diagnostics* diag) {
  const std::string content = slurp(path);
  std::istringstream stream(content);
  std::string first_line;
  while (std::getline(stream, first_line)) {
    if (!simdadv::detail::trim(first_line).empty())
      break;
  }
  std::istringstream again(content);
  if (simdadv::detail::trim(first_line) == "symbol,module,percent")
    return simdadv::parse_profile_csv(again, mode, diag, path);
  return simdadv::parse_perf_report(again, mode, diag, path);
}

simdadv::AdvisorConfig load_config(const std::string& path) {
  const std::string content = slurp(path);
  std::istringstream stream(content);
  return simdadv::load_advisor_config(stream);
}

void print_warnings(const simdadv::Diagnostics& diag) {
  for (const auto& warning : diag.warnings)
    std::cerr << "warning: " << warning << "\n";
}

struct AdviseArgs {
  std::vector<std::string> remarks;
  std::string profile;
  double threshold = 1.0;
  bool keep_unknown = true;
  std::string format = "text";
  std::string arch = "sve512";
  int element_bits = 64;
  std::optional<std::size_t> top;
  bool fail_on_findings = false;
  std::string config;
  bool lenient = false;
};

int run_advise(const AdviseArgs& args) {
  simdadv::Diagnostics diag;
  const auto mode =
      args.lenient ? simdadv::ParseMode::lenient : simdadv::ParseMode::strict;

  require_paths(args.remarks);
  if (!args.profile.empty())
    require_paths({args.profile});
  if (!args.config.empty())
    require_paths({args.config});

  simdadv::AdviseOptions options;
  options.threshold_percent = args.threshold;
  options.keep_unknown = args.keep_unknown;
  options.arch = simdadv::arch_from_name(args.arch);
  options.element_bits = args.element_bits;
  options.top = args.top;
  if (!args.config.empty()) {
    const auto config = load_config(args.config);
    options.rules = config.rule_table();
    options.remedy_table = config.remedy_table();
    options.discounts = config.discounts();
  }

  const auto remarks = simdadv::load_remark_files(args.remarks, mode, &diag);

  simdadv::Profile profile;
  const bool have_profile = !args.profile.empty();
  if (have_profile)
    profile = load_profile(args.profile, mode, &diag);

  std::vector<std::string> inputs = args.remarks;
  if (have_profile)
    inputs.push_back(args.profile);
  const auto report = simdadv::build_advice_report(
      remarks, have_profile ? &profile : nullptr, options, inputs, &diag);

  print_warnings(diag);
  if (args.format == "structured")
    std::cout << simdadv::render_structured(report);
  else
    std::cout << simdadv::render_text(report);

  if (args.fail_on_findings) {
    for (const auto& entry : report.entries)
      if (!entry.categories.empty())
        return kExitFindings;
  }
  return kExitOk;
}

int run_breakdown(const std::string& profile_path,
                  const std::string& rules_path, double threshold,
                  bool lenient) {
  simdadv::Diagnostics diag;
  const auto mode =
      lenient ? simdadv::ParseMode::lenient : simdadv::ParseMode::strict;

  std::string rules_file = rules_path;
  if (rules_file.empty()) {
    if (const char* env = std::getenv("SIMD_ADVISOR_RULES"))
      rules_file = env;
  }
  require_paths({profile_path});
  if (!rules_file.empty())
    require_paths({rules_file});

  auto rules = simdadv::default_category_rules();
  if (!rules_file.empty()) {
    const std::string content = slurp(rules_file);
    std::istringstream stream(content);
    rules = simdadv::parse_rule_file(stream);
  }

  const auto profile = load_profile(profile_path, mode, &diag);
  const auto result = simdadv::breakdown(profile, rules, threshold);
  print_warnings(diag);
  std::cout << simdadv::render_breakdown(result, threshold);
  return kExitOk;
}

int run_counters(const std::string& baseline_path,
                 const std::string& other_path, double tolerance) {
  require_paths({baseline_path, other_path});
  const auto load = [](const std::string& path) {
    const std::string content = slurp(path);
    std::istringstream stream(content);
    return simdadv::parse_counters(stream);
  };
  const auto baseline_sets = load(baseline_path);
  const auto other_sets = load(other_path);
  if (baseline_sets.empty() || other_sets.empty())
    throw simdadv::NoSharedCounters("one of the inputs has no counter sets");

  // Single set on each side compares directly; otherwise sets pair by label.
  std::vector<std::pair<const simdadv::CounterSet*, const simdadv::CounterSet*>>
      pairs;
  if (baseline_sets.size() == 1 && other_sets.size() == 1) {
    pairs.emplace_back(&baseline_sets[0], &other_sets[0]);
  } else {
    for (const auto& baseline : baseline_sets)
      for (const auto& other : other_sets)
        if (baseline.label == other.label)
          pairs.emplace_back(&baseline, &other);
    if (pairs.empty())
      throw simdadv::NoSharedCounters(
          "the two inputs share no counter-set labels");
  }

  for (const auto& [baseline, other] : pairs) {
    const auto observations =
        simdadv::compare_counters(*baseline, *other, tolerance);
    std::cout << simdadv::render_counter_observations(
        baseline->label + " (" + baseline_path + ")",
        other->label + " (" + other_path + ")", observations);
    if (baseline->time_percent && other->time_percent)
      std::cout << "  time share: "
                << simdadv::detail::format_fixed(*baseline->time_percent, 2)
                << "% to "
                << simdadv::detail::format_fixed(*other->time_percent, 2)
                << "%\n";
  }

  const auto print_total = [&](const std::vector<simdadv::CounterSet>& sets,
                               const std::string& path) {
    for (const auto& set : sets)
      if (!set.time_percent)
        return;
    const auto share = simdadv::task_time_share(sets);
    std::cout << "total tracked time in " << path << ": "
              << simdadv::detail::format_fixed(share.total, 2) << "%\n";
  };
  print_total(baseline_sets, baseline_path);
  print_total(other_sets, other_path);
  return kExitOk;
}

int run_compare(const std::string& baseline_path,
                const std::string& other_path) {
  require_paths({baseline_path, other_path});
  const auto load_first = [](const std::string& path) {
    const std::string content = slurp(path);
    std::istringstream stream(content);
    const auto runs = simdadv::parse_run_csv(stream);
    if (runs.empty())
      throw simdadv::BadRow(1, "run CSV has no data rows: " + path);
    return runs.front();
  };
  const auto comparison =
      simdadv::compare_runs(load_first(baseline_path), load_first(other_path));
  std::cout << simdadv::render_run_comparison(comparison);
  return kExitOk;
}

int run_classify(const std::string& message, const std::string& config_path) {
  simdadv::RuleTable rules = simdadv::default_rule_table();
  if (!config_path.empty()) {
    require_paths({config_path});
    rules = load_config(config_path).rule_table();
  }
  std::cout << simdadv::to_string(simdadv::classify_message(message, rules))
            << "\n";
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"simd-advisor: triage compiler vectorization feedback"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(simdadv::kVersion));

  AdviseArgs advise_args;
  std::size_t top_value = 0;
  auto* advise =
      app.add_subcommand("advise", "rank hot non-vectorized loops and "
                                   "suggest remedies");
  advise
      ->add_option("--remarks", advise_args.remarks,
                   "remark files, directories, or - for stdin")
      ->required()
      ->expected(-1);
  advise->add_option("--profile", advise_args.profile,
                     "flat profile (perf text or symbol,module,percent CSV)");
  advise->add_option("--threshold", advise_args.threshold,
                     "hotness percent below which sites are dropped")
      ->capture_default_str();
  advise->add_flag("--keep-unknown,!--no-keep-unknown",
                   advise_args.keep_unknown,
                   "keep sites with unknown hotness (default on)");
  advise->add_option("--format", advise_args.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  advise->add_option("--arch", advise_args.arch,
                     "target model for the benefit estimate")
      ->check(CLI::IsMember({"sve512", "neon128"}))
      ->capture_default_str();
  advise->add_option("--element-bits", advise_args.element_bits,
                     "element width for the benefit estimate")
      ->check(CLI::IsMember({8, 16, 32, 64}))
      ->capture_default_str();
  auto* top_opt =
      advise->add_option("--top", top_value, "emit only the N hottest sites");
  advise->add_flag("--fail-on-findings", advise_args.fail_on_findings,
                   "exit 3 when any hot non-vectorized loop is reported");
  advise->add_option("--config", advise_args.config,
                     "advisor config JSON (rules, remedies, discounts)");
  advise->add_flag("--lenient", advise_args.lenient,
                   "skip malformed inputs with a warning instead of failing");

  std::string breakdown_profile, breakdown_rules;
  double breakdown_threshold = 1.0;
  bool breakdown_lenient = false;
  auto* breakdown_cmd = app.add_subcommand(
      "breakdown", "split profile time into activity categories");
  breakdown_cmd->add_option("--profile", breakdown_profile, "flat profile")
      ->required();
  breakdown_cmd->add_option(
      "--rules", breakdown_rules,
      "category rule file (default: $SIMD_ADVISOR_RULES or built-ins)");
  breakdown_cmd
      ->add_option("--threshold", breakdown_threshold,
                   "percent at or below which samples count as residual")
      ->capture_default_str();
  breakdown_cmd->add_flag("--lenient", breakdown_lenient,
                          "skip malformed profile rows with a warning");

  std::string counters_baseline, counters_other;
  double counters_tolerance = 0.10;
  auto* counters_cmd = app.add_subcommand(
      "counters", "compare hardware-counter sets between two runs");
  counters_cmd->add_option("--baseline", counters_baseline, "counter CSV")
      ->required();
  counters_cmd->add_option("--other", counters_other, "counter CSV")
      ->required();
  counters_cmd
      ->add_option("--tolerance", counters_tolerance,
                   "half-width of the unchanged ratio band")
      ->capture_default_str();

  std::string compare_baseline, compare_other;
  auto* compare_cmd =
      app.add_subcommand("compare", "compare two run summaries");
  compare_cmd->add_option("--baseline", compare_baseline, "run CSV")
      ->required();
  compare_cmd->add_option("--other", compare_other, "run CSV")->required();

  std::string classify_message, classify_config;
  auto* classify_cmd = app.add_subcommand(
      "classify", "look up the blocker category for one remark message");
  classify_cmd->add_option("--message", classify_message, "remark text")
      ->required();
  classify_cmd->add_option("--config", classify_config,
                           "advisor config JSON with extra rules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return kExitUsage;
  }

  try {
    if (advise->parsed()) {
      if (*top_opt)
        advise_args.top = top_value;
      return run_advise(advise_args);
    }
    if (breakdown_cmd->parsed())
      return run_breakdown(breakdown_profile, breakdown_rules,
                           breakdown_threshold, breakdown_lenient);
    if (counters_cmd->parsed())
      return run_counters(counters_baseline, counters_other,
                          counters_tolerance);
    if (compare_cmd->parsed())
      return run_compare(compare_baseline, compare_other);
    if (classify_cmd->parsed())
      return run_classify(classify_message, classify_config);
  } catch (const simdadv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
