#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skew/order.hpp"
#include "skew/verdict.hpp"

namespace skew {

enum class Law {
  assoc_add,
  assoc_mul,
  comm_add,
  comm_mul,
  left_dist,
  right_dist,
  neutral,
  absorb,
  quasi_solvable,
};

std::string_view law_name(Law law);
/// Accepts the dashed spelling used on the command line, e.g. "left-dist".
std::optional<Law> parse_law(std::string_view name);
const std::vector<Law>& all_laws();

/// A finite carrier with an addition, a multiplication, distinguished zero
/// and one, an order and a set of declared laws. Construction does not
/// validate the laws; see check_declared.
struct FinStruct {
  std::string label;
  OrderRelation order;
  BinaryTable add;
  BinaryTable mul;
  Elem zero = 0;
  Elem one = 0;
  std::set<Law> flags;

  std::size_t size() const { return order.size(); }
  const std::vector<std::string>& names() const { return order.names(); }
  const std::string& name(Elem e) const { return order.name(e); }
  Elem index(const std::string& n) const { return order.index(n); }

  /// Throws InputError when the tables, order and distinguished elements do
  /// not share one carrier.
  void validate_shape() const;
};

/// Exhaustive check of one law. a(b+c) = ab+ac is left-dist.
Verdict check_law(const FinStruct& s, Law law);

/// Zero is additively neutral and multiplicatively absorbing, one is a
/// multiplicative unit off zero, and every declared flag holds.
Verdict check_declared(const FinStruct& s);

using ElemSet = std::vector<Elem>;

/// Two-sided ideals: subsets containing zero, closed under add, with
/// AK and KA inside A. Throws CapacityError above 16 elements.
std::vector<ElemSet> enumerate_ideals(const FinStruct& s);
bool is_simple(const FinStruct& s);
/// Some element is neutral for neither operation.
bool is_nontrivial(const FinStruct& s);

struct Homomorphism {
  FinStruct source;
  FinStruct target;
  std::vector<Elem> map;
  /// Exact chains need maps such as x -> 0, which fix zero but not one.
  bool preserve_one = true;

  Elem operator()(Elem x) const { return map.at(x); }
};

Homomorphism identity_hom(const FinStruct& s);
Homomorphism zero_hom(const FinStruct& source, const FinStruct& target);

Verdict check_homomorphism(const Homomorphism& h);
ElemSet kernel(const Homomorphism& h);
ElemSet image(const Homomorphism& h);
/// image(h_n) = kernel(h_{n+1}) at every interior position. The witness
/// names the position and the first element in the symmetric difference.
Verdict check_exact_chain(const std::vector<Homomorphism>& chain);

namespace builtin {

/// {0,1} with or/and.
FinStruct boolean();
/// {bot, 0, 1, ..., cap}: add = max, mul = + saturating at cap, bot absorbing.
FinStruct max_plus(unsigned cap);
/// {0..n-1} with max/min.
FinStruct chain_lattice(unsigned n);
/// Componentwise operations; elements named "(a,b)".
FinStruct product(const FinStruct& a, const FinStruct& b);
/// The one-element structure {0}.
FinStruct trivial();
/// A 4-chain with add = max that is right- but not left-distributive.
FinStruct right_dist_only();

/// Resolves "boolean", "max-plus:<cap>", "chain:<n>", "trivial",
/// "right-dist-only". Throws InputError otherwise.
FinStruct by_name(std::string_view spec);

}  // namespace builtin

}  // namespace skew
