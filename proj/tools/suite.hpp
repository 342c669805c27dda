#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "workspace.hpp"

namespace skew::cli {

enum class Suite { laws, idempotent, monad, convolution, s_construction, all };
std::optional<Suite> parse_suite(std::string_view name);

enum class Outcome { holds, fails, skipped, error };

struct CheckRecord {
  std::string id;
  /// Which family of laws the check belongs to.
  std::string tag;
  Outcome outcome = Outcome::holds;
  std::optional<Witness> witness;
  /// Counts, error messages and preconditions that were not met.
  std::string detail;
  bool sampled = false;
};

struct SuiteReport {
  std::vector<CheckRecord> records;

  /// 0 when everything holds, 1 on a counterexample, 2 on an error.
  int exit_code() const;
};

/// Runs the checks in a fixed order, so equal inputs give equal reports.
SuiteReport run_suite(const Workspace& ws, Suite suite, Budget budget);

std::string render_text(const SuiteReport& report);
/// One JSON object per line with check-id, law-ref, verdict and witness.
std::string render_records(const SuiteReport& report);

}  // namespace skew::cli
