#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skew/structure.hpp"
#include "skew/verdict.hpp"

namespace skew {

struct OrdTerm;

/// An ordinal below epsilon_0 in Cantor normal form:
/// w^e1*c1 + w^e2*c2 + ... with e1 > e2 > ... and every ci >= 1.
/// Exponents nest at most four levels; deeper values raise CapacityError.
class Ordinal {
 public:
  static constexpr int kMaxDepth = 4;

  Ordinal() = default;
  /// Non-canonical term lists raise InputError.
  explicit Ordinal(std::vector<OrdTerm> terms);

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  /// w^e * c
  static Ordinal power(const Ordinal& e, std::uint64_t c = 1);

  const std::vector<OrdTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// 0 has depth 0, a positive integer depth 1, w depth 2.
  int depth() const;
  std::string str() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdTerm> terms_;
};

struct OrdTerm {
  Ordinal exponent;
  std::uint64_t coeff = 1;

  bool operator==(const OrdTerm&) const = default;
};

Ordinal ord_add(const Ordinal& a, const Ordinal& b);
Ordinal ord_mul(const Ordinal& a, const Ordinal& b);
std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b);
/// Throws InputError on an empty set.
Ordinal ord_sup(std::span<const Ordinal> set);

/// Parses sums of terms such as "w^2*3 + w + 5" or "w^(w+1)". Non-canonical
/// sums are normalized by ordinal addition, so "1 + w" reads as "w".
Ordinal parse_ordinal(std::string_view text);

enum class OrdAddition { ordinal, max };

/// Exhaustive check of `law` over `window`, with multiplication the ordinal
/// product and addition either ordinal sum or max. Results may leave the
/// window; both sides are computed exactly.
Verdict check_ordinal_law(std::span<const Ordinal> window, OrdAddition addition, Law law);

/// The max-addition reduct on a finite window of ordinals.
struct MaxReduct {
  std::vector<Ordinal> elems;
  /// Pairs (a,b) whose product a*b is not in the window.
  std::vector<std::pair<Ordinal, Ordinal>> escapes;

  bool closed() const { return escapes.empty(); }
  /// The table form. Throws CapacityError naming the first escaping pair.
  FinStruct to_struct() const;
};

/// Sorts and deduplicates the window. The window must contain 0 and 1.
MaxReduct max_reduct(std::vector<Ordinal> window);

/// Value algebra of ordinals with ordinal sum.
struct OrdinalArithmetic {
  using value_type = Ordinal;
  static Ordinal add(const Ordinal& a, const Ordinal& b) { return ord_add(a, b); }
  static Ordinal mul(const Ordinal& a, const Ordinal& b) { return ord_mul(a, b); }
  static bool leq(const Ordinal& a, const Ordinal& b) { return a <= b; }
  static Ordinal zero() { return {}; }
  static Ordinal one() { return Ordinal::finite(1); }
  static std::string name(const Ordinal& a) { return a.str(); }
};

/// Value algebra of ordinals with max as addition.
struct OrdinalMax : OrdinalArithmetic {
  static Ordinal add(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }
};

}  // namespace skew
