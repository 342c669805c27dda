#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skew {

/// A concrete counterexample. `items` holds the offending arguments in the
/// order the law quantifies over them, rendered by name so a witness can be
/// fed back to the library.
struct Witness {
  std::vector<std::string> items;
  std::string note;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
  /// Set when the verdict rests on a sample rather than the full grid.
  bool sampled = false;

  static Verdict ok() { return {}; }
  static Verdict fail(Witness w) { return Verdict{false, std::move(w), false}; }

  explicit operator bool() const { return holds; }
};

std::string render(const Witness& w);

}  // namespace skew
