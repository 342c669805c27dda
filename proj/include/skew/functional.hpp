#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skew/function_space.hpp"
#include "skew/structure.hpp"
#include "skew/verdict.hpp"

namespace skew {

/// A K-valued functional on a function space. Functionals are compared
/// extensionally; the kind is kept for reporting only.
class Functional {
 public:
  enum class Kind { dirac, sup_over, combo, pushforward, table, extension, pointwise, convolution, custom };
  static constexpr Elem kUndefined = std::numeric_limits<Elem>::max();

  using EvalFn = std::function<Elem(const Fn&)>;
  using DomainFn = std::function<bool(const Fn&)>;

  /// `defined` may be empty for a total functional.
  Functional(SpacePtr space, Kind kind, std::string label, EvalFn eval, DomainFn defined = {});

  const FunctionSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  /// Throws InputError when f lies outside the domain.
  Elem eval(const Fn& f) const;
  bool defined_at(const Fn& f) const;
  /// Values on space().functions(), kUndefined outside the domain. Cached.
  const std::vector<Elem>& table() const;

 private:
  struct Cache;
  SpacePtr space_;
  Kind kind_;
  std::string label_;
  EvalFn eval_;
  DomainFn defined_;
  std::shared_ptr<Cache> cache_;
};

Functional dirac(SpacePtr space, std::size_t x);
/// f -> sup of f over E. E must be non-empty; a missing sup raises
/// CapacityError at evaluation.
Functional sup_over(SpacePtr space, PointSet e);
/// Values aligned with space->functions(); kUndefined marks a partial domain.
Functional from_table(SpacePtr space, std::vector<Elem> values, std::string label = "table");
/// g^c -> c on constants only.
Functional normalization_on_constants(SpacePtr space);

/// left: f -> c1 v1(f) + ... + cn vn(f); right: f -> v1(f) c1 + ... + vn(f) cn.
/// Needs every ci > 0, c1 + ... + cn = 1 and K distributive on both sides,
/// otherwise PreconditionError.
Functional weighted_combo(Side side, const std::vector<Elem>& coeffs,
                          const std::vector<Functional>& parts);

enum class Joint { add, join, meet };
/// (a op b)(f) = a(f) op b(f). Join and meet throw InputError on
/// incomparable values.
Functional combine(Joint op, const Functional& a, const Functional& b);

/// The functional f -> u(v(g1 o f)) on C(Y,K2), where g1 is the preimage of g
/// under u picked by `section` (smallest preimage when empty). Defined on the
/// functions whose values all lie in the image of u. Throws InputError when
/// u is not a homomorphism or the spaces do not match.
Functional pushforward(SpacePtr target, const std::vector<std::size_t>& point_map,
                       const Homomorphism& u, const Functional& inner,
                       std::vector<Elem> section = {});

/// Same values wherever both are defined, and the same domain.
bool extensionally_equal(const Functional& a, const Functional& b);

/// Named verdicts, one per axiom.
struct AxiomReport {
  std::vector<std::pair<std::string, Verdict>> entries;

  bool holds() const;
  bool sampled() const;
  /// Throws InputError for an unknown name.
  const Verdict& at(std::string_view name) const;
};

/// Quantifier grids larger than `limit` instances are sampled with `seed`
/// and the verdict is flagged as sampled.
struct Budget {
  std::size_t limit = 1'000'000;
  std::uint64_t seed = 1;
};

/// normalization, left-translation, right-translation, join-preserving,
/// meet-preserving. Join and meet are checked on pairs that are comparable
/// at every point.
AxiomReport check_idempotent(const Functional& nu, Budget budget = {});
/// order-preserving, left-homogeneous, right-homogeneous.
AxiomReport check_order_and_homogeneity(const Functional& nu, Budget budget = {});
/// weakly-additive, order-preserving, normalized, non-expanding, and
/// weak-implication: the first two together imply non-expanding.
AxiomReport check_weak_properties(const Functional& nu, Budget budget = {});
/// v(g^c) = c for one c.
Verdict check_normalized_at(const Functional& nu, Elem c);

enum class ExtensionVariant { inf, sup };

/// Extends `base` from its domain L to the closure M of L and g under c+f,
/// f+c, and pointwise max and min of comparable pairs. Values on L are kept;
/// a new m gets the inf (or sup) of base(h) over h in L with h <= m.
/// L must hold every constant and be closed (PreconditionError). An empty
/// minorant set raises InputError, a missing inf or sup CapacityError.
Functional extend_inf(const Functional& base, const Fn& g, ExtensionVariant variant);
/// Extends one function at a time, in code order, until the domain is the
/// whole space.
Functional extend_iterated(const Functional& base, ExtensionVariant variant);

/// The functional g o f -> v(g) on the pullback of C(Y,K) along a surjection
/// f: X -> Y, extended to all of C(X,K).
Functional lift_along(SpacePtr source, const std::vector<std::size_t>& point_map,
                      const Functional& nu, ExtensionVariant variant);

/// v(f) = 0 for every f vanishing on E.
Verdict supported_on(const Functional& nu, PointSet e, Budget budget = {});
/// Intersection of all sets v is supported on; nullopt when there is none.
std::optional<PointSet> support_of(const Functional& nu, Budget budget = {});
/// v(f) = v(g) whenever f and g agree on E.
Verdict depends_only_on(const Functional& nu, PointSet e, Budget budget = {});
/// Intersection of all sets v depends only on.
PointSet dependence_support(const Functional& nu, Budget budget = {});

enum class Family {
  all,
  /// Order preserving and weakly additive.
  order_weak,
  /// The five idempotency axioms.
  idempotent,
};

/// Every table functional on the space in the family. Throws CapacityError
/// when |K|^|C(X,K)| exceeds `limit`.
std::vector<Functional> enumerate_family(SpacePtr space, Family family,
                                         std::size_t limit = std::size_t{1} << 21);

struct MonadReport {
  /// |X|, |I(X)|, |I(I(X))|, |I(I(I(X)))|
  std::vector<std::size_t> level_sizes;
  Verdict closure;
  Verdict left_unit;   // xi o eta_T = id
  Verdict right_unit;  // xi o T(eta) = id
  Verdict associativity;
  Verdict bar_constant;
  Verdict bar_join;
  Verdict bar_meet;
  /// Some level has fewer than two functionals, so the laws say nothing.
  bool inconclusive = false;

  bool holds() const;
};

/// The monad of idempotent functionals on the points of `space` with values
/// in its K, checked on three levels of iterated I(-, K).
MonadReport monad_check(const FunctionSpace& space, std::size_t limit = std::size_t{1} << 21);

/// For K0 -s0-> K1 -s1-> K2 exact at K1, compares on C(X,K1) the functionals
/// that agree on s0(C(X,K0)) with some pushed-forward functional on
/// C(X,K0), against those sending s0(C(X,K0)) into the kernel of s1.
Verdict check_exact_transport(const Homomorphism& s0, const Homomorphism& s1,
                              const std::vector<std::string>& points, Family family);

}  // namespace skew
