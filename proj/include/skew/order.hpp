#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skew/verdict.hpp"

namespace skew {

/// Index of an element in a finite carrier.
using Elem = std::uint32_t;

/// A total binary operation on a carrier of `size()` elements.
class BinaryTable {
 public:
  BinaryTable() = default;
  explicit BinaryTable(std::size_t n) : n_(n), cells_(n * n, 0) {}
  BinaryTable(std::size_t n, std::vector<Elem> cells);

  template <class F>
  static BinaryTable from(std::size_t n, F&& f) {
    BinaryTable t(n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) t.set(a, b, static_cast<Elem>(f(a, b)));
    return t;
  }

  std::size_t size() const { return n_; }
  Elem operator()(Elem a, Elem b) const { return cells_[a * n_ + b]; }
  void set(Elem a, Elem b, Elem v) { cells_[a * n_ + b] = v; }

  bool operator==(const BinaryTable&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Elem> cells_;
};

/// An order on a finite carrier, stored as the full relation matrix so that
/// every axiom check is exhaustive and every failure has a witness.
class OrderRelation {
 public:
  OrderRelation() = default;
  /// Takes the relation exactly as given; no closure is applied.
  OrderRelation(std::vector<std::string> names,
                const std::vector<std::pair<Elem, Elem>>& leq_pairs);

  /// names[0] < names[1] < ... < names[n-1]
  static OrderRelation chain(std::vector<std::string> names);
  /// Reflexive pairs only.
  static OrderRelation discrete(std::vector<std::string> names);
  /// Reflexive-transitive closure of the given pairs.
  static OrderRelation closure_of(std::vector<std::string> names,
                                  const std::vector<std::pair<Elem, Elem>>& pairs);
  /// Pairs given by name; unknown names raise InputError.
  static OrderRelation from_named_pairs(
      std::vector<std::string> names,
      const std::vector<std::pair<std::string, std::string>>& pairs, bool close);
  /// Componentwise order on the cartesian product, elements encoded a*|b|+b.
  static OrderRelation product(const OrderRelation& a, const OrderRelation& b);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Elem e) const { return names_.at(e); }
  /// Throws InputError for unknown names.
  Elem index(const std::string& name) const;
  std::optional<Elem> find(const std::string& name) const;

  bool leq(Elem a, Elem b) const { return leq_[a * size() + b] != 0; }
  bool less(Elem a, Elem b) const { return a != b && leq(a, b); }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }

 private:
  std::vector<std::string> names_;
  std::vector<char> leq_;
};

enum class OrderMode { directed, linear, well };

/// Checks the reflexive/transitive/upper-bound axioms (directed), adds
/// antisymmetry and comparability (linear), and least elements of every
/// non-empty subset (well). Returns the first violated instance.
Verdict check_order_axioms(const OrderRelation& order, OrderMode mode);

/// a <= c and b <= d with all four in a common chain implies
/// op(a,b) <= op(c,d).
Verdict check_op_monotone(const BinaryTable& op, const OrderRelation& order);

/// Same check for an operation evaluated outside a table, e.g. on a window
/// of ordinals whose sums leave the window. `leq` must accept op results.
template <class T, class Op, class Leq, class Name>
Verdict check_op_monotone(std::span<const T> elems, Op&& op, Leq&& leq, Name&& name) {
  auto chained = [&](const T& x, const T& y) { return leq(x, y) || leq(y, x); };
  for (const T& a : elems)
    for (const T& c : elems) {
      if (!leq(a, c)) continue;
      for (const T& b : elems)
        for (const T& d : elems) {
          if (!leq(b, d)) continue;
          if (!(chained(a, b) && chained(a, d) && chained(c, b) && chained(c, d)))
            continue;
          if (!leq(op(a, b), op(c, d)))
            return Verdict::fail({{name(a), name(b), name(c), name(d)},
                                  "op(a,b) is not below op(c,d)"});
        }
    }
  return Verdict::ok();
}

/// Least upper bound of a non-empty subset, if the carrier has one.
/// Throws InputError on an empty subset.
std::optional<Elem> sup_over(std::span<const Elem> subset, const OrderRelation& order);
std::optional<Elem> inf_over(std::span<const Elem> subset, const OrderRelation& order);

/// The "every chain extends to a well-ordered subset" condition. Any chain in
/// a finite carrier is itself well-ordered, so this holds for every relation
/// representable here.
constexpr bool chains_extend_to_well_orders(const OrderRelation&) { return true; }

}  // namespace skew
