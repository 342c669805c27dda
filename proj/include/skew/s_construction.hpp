#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skew/structure.hpp"
#include "skew/verdict.hpp"

namespace skew {

/// Operation slots of the product construction: addition and multiplication.
enum class Op { add = 0, mul = 1 };

/// An index map on the integers: a translation j -> j + offset, or an explicit
/// table over the window (indices outside the table are translated by 0).
struct IndexMap {
  int offset = 0;
  std::map<int, int> table;

  static IndexMap shift(int offset) { return {offset, {}}; }
  bool is_identity() const;
  int operator()(int j) const;
  /// All i with map(i) = j.
  std::vector<int> preimage(int j) const;
};

/// Element of the finite-support product: index -> nonzero component value.
/// Indices that are not stored hold zero.
struct SuppElement {
  std::map<int, Elem> entries;

  Elem at(int j, Elem zero) const;
  bool operator==(const SuppElement&) const = default;
};

/// Every index carries a copy of `component`. The window [lo, hi] bounds the
/// supports that may occur; a result that would land outside it raises
/// CapacityError instead of wrapping.
struct IndexScheme {
  FinStruct component;
  int lo = 0;
  int hi = 3;
  IndexMap psi[2];
  IndexMap phi[2];
  /// The embedding applied to z_{phi(j)} before it meets y_j. Empty means
  /// identity.
  std::vector<Elem> embed;

  /// Monotone injective shifts with psi(j) <= j <= phi(j) on the window, an
  /// embedding that preserves the operations and the order.
  void validate() const;
  Elem embedded(Elem x) const { return embed.empty() ? x : embed.at(x); }
  std::string render(const SuppElement& y) const;
  SuppElement canonical(const std::map<int, Elem>& raw) const;
};

/// q_{psi(j)} = mu(y_j, t(z_{phi(j)})) over every j touching either support.
SuppElement s_mu(Op op, const SuppElement& y, const SuppElement& z, const IndexScheme& scheme);

/// Constant x on [lo, hi], zero elsewhere.
SuppElement theta(Elem x, int lo, int hi, const FinStruct& component);

/// Lexicographic comparison at the least differing index. Throws InputError
/// when the component order is not linear.
std::strong_ordering lex_compare(const SuppElement& y, const SuppElement& z,
                                 const IndexScheme& scheme);

/// Every canonical element with support in the window. Throws CapacityError
/// past `limit` elements.
std::vector<SuppElement> enumerate_window(const IndexScheme& scheme, std::size_t limit = 4096);

/// Random element with support in the window, each index zero with
/// probability about one half.
template <class Rng>
SuppElement random_element(const IndexScheme& scheme, Rng& rng) {
  SuppElement y;
  const auto n = scheme.component.size();
  for (int j = scheme.lo; j <= scheme.hi; ++j) {
    if (rng() & 1u) continue;
    const auto v = static_cast<Elem>(rng() % n);
    if (v != scheme.component.zero) y.entries[j] = v;
  }
  return y;
}

struct NonAssocResult {
  bool found = false;
  std::size_t tried = 0;
  SuppElement a, b, c;
  SuppElement left;   // (ab)c
  SuppElement right;  // a(bc)
  int index = 0;      // least index where left and right differ
};

/// Samples triples until (ab)c != a(bc). Requires j < phi(j) on the window,
/// otherwise PreconditionError.
NonAssocResult find_nonassoc_witness(Op op, const IndexScheme& scheme, std::size_t budget,
                                     std::uint64_t seed);

/// Both sides of a(b+c) = ab+ac (left) or (b+c)a = ba+ca (right) on sampled
/// triples. Requires psi and phi of the addition to be the identity.
Verdict check_dist_transfer(const IndexScheme& scheme, Law side, std::size_t samples,
                            std::uint64_t seed);

/// Lexicographic order on the window: irreflexive, transitive, total.
Verdict check_lex_order(const IndexScheme& scheme);

/// a < c and b <= d, or a <= c and b < d, imply mu(a,b) < mu(c,d) in the
/// component order.
Verdict check_strict_monotone(const BinaryTable& op, const OrderRelation& order);

/// Lexicographic monotonicity of s_mu over all quadruples in the window.
/// Strict mode demands mu(a,b) < mu(c,d) whenever one side is strict;
/// otherwise mu(a,b) <= mu(c,d) for a <= c, b <= d.
Verdict check_lex_monotone(Op op, const IndexScheme& scheme, bool strict);

}  // namespace skew
