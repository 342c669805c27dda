#pragma once

#include <random>

#include "skew/functional.hpp"

namespace skew::detail {

/// Runs probe(i) over 0..total-1, or over budget.limit seeded draws when the
/// grid is larger.
template <class Probe>
Verdict over_grid(std::size_t total, const Budget& budget, Probe&& probe) {
  if (total <= budget.limit) {
    for (std::size_t i = 0; i < total; ++i)
      if (auto w = probe(i)) return Verdict::fail(std::move(*w));
    return Verdict::ok();
  }
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<std::size_t> pick(0, total - 1);
  Verdict v = Verdict::ok();
  for (std::size_t i = 0; i < budget.limit; ++i)
    if (auto w = probe(pick(rng))) {
      v = Verdict::fail(std::move(*w));
      break;
    }
  v.sampled = true;
  return v;
}

}  // namespace skew::detail
