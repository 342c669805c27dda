#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skew/functional.hpp"

namespace skew {

/// Which hypotheses the ideal check may rely on.
enum class Regime {
  undeclared,
  /// rho is identically one.
  trivial_cocycle,
  /// Multiplication in K is commutative and associative.
  commutative_associative,
};

/// A finite groupoid G with unit acting on a finite set X, with a cocycle
/// rho into L minus zero. Actions compose left to right: v_h(v_g(x)) is
/// v_{gh}(x), so the right-regular action x -> xg is an action.
struct ActionSystem {
  std::vector<std::string> group;
  BinaryTable op;
  Elem unit = 0;
  std::vector<std::string> points;
  /// action[g][x] = v_g(x)
  std::vector<std::vector<Elem>> action;
  FinStruct K;
  /// Elements of K forming the designated associative part.
  std::vector<Elem> L;
  /// rho[g][x]
  std::vector<std::vector<Elem>> rho;
  Regime regime = Regime::undeclared;

  /// Table shapes, name uniqueness, 0 and 1 in L, rho inside L minus zero.
  /// Throws InputError.
  void validate() const;
  Elem mul(Elem g, Elem h) const { return op(g, h); }
  /// rho(g, x) = 1 everywhere.
  bool unit_cocycle() const;
};

/// G acting on itself by x -> xg with rho = 1 and L = {0, 1}.
ActionSystem right_regular(std::vector<std::string> group, BinaryTable op, Elem unit, FinStruct K,
                           Regime regime = Regime::trivial_cocycle);

/// v_e = id, v_h v_g = v_{gh}, a(bc) = (ab)c for a, b in L, the cocycle
/// identity and rho(e, x) = 1. Witnesses name group elements first.
Verdict check_action(const ActionSystem& sys);

/// x -> rho(g, x) f(v_g(x))
Fn apply_T(const ActionSystem& sys, Elem g, const Fn& f);

/// C(G, K) for an action of G on itself.
SpacePtr group_space(const ActionSystem& sys);

/// f -> nu(g -> lambda(T_g f)). Both functionals live on C(G, K) and X = G.
Functional convolve(const Functional& nu, const Functional& lambda,
                    std::shared_ptr<const ActionSystem> sys);

enum class ConvKind { add, join, meet };

/// nu(f + g) = nu(f) + nu(g) for add (K addition must be commutative and
/// associative, otherwise PreconditionError), or preservation of max / min
/// on pairs comparable at every point.
Verdict check_kind(const Functional& nu, ConvKind kind, Budget budget = {});
/// nu(T_g f) = nu(f) for every g and f.
Verdict check_invariant(const Functional& nu, const ActionSystem& sys, Budget budget = {});

/// The sum of a kind: pointwise +, max or min of values.
Functional kind_sum(ConvKind kind, const Functional& a, const Functional& b);

/// All table functionals on the space passing check_kind.
std::vector<Functional> kind_family(SpacePtr space, ConvKind kind,
                                    std::size_t limit = std::size_t{1} << 21);

struct SupportBounds {
  /// X, T(X), T(T(X)), ... until it repeats.
  std::vector<PointSet> t_chain;
  /// X, P(X), P(P(X)), ... until it repeats.
  std::vector<PointSet> p_chain;
  PointSet t_limit = 0;
  PointSet p_limit = 0;
  /// Vanishing support; nullopt when no set supports the functional.
  std::optional<PointSet> support;
  /// Support (X when there is none) inside both limits.
  bool contained = false;
  bool no_zero_divisors = false;
  /// v_g maps the support into itself for every g. Only meaningful when K
  /// has no zero divisors.
  Verdict g_stable;
};

/// Requires nu invariant (PreconditionError otherwise).
SupportBounds support_bounds(const Functional& nu, const ActionSystem& sys, Budget budget = {});

bool has_zero_divisors(const FinStruct& K);

/// A family of functionals on C(G, K) of one kind, closed under the kind's
/// sum and convolution as far as the budget allowed.
struct ConvAlgebra {
  std::shared_ptr<const ActionSystem> sys;
  ConvKind kind = ConvKind::join;
  std::vector<Functional> members;
  /// False when the member budget stopped the closure.
  bool saturated = false;
  std::size_t rounds = 0;
  std::size_t budget = 0;

  /// Position of a functional among the members, compared extensionally.
  std::optional<std::size_t> find(const Functional& nu) const;
};

/// Closes `generators` under kind_sum and convolve, dropping extensional
/// duplicates, until nothing new appears or `budget` members exist.
ConvAlgebra saturate(std::shared_ptr<const ActionSystem> sys, ConvKind kind,
                     std::vector<Functional> generators, std::size_t budget = 4096);

/// closure-sum, closure-product, kind, left-distributive, right-distributive,
/// unit, and associative (only reported when G is associative).
AxiomReport check_quasiring(const ConvAlgebra& alg);

/// Members of the algebra invariant under the action.
std::vector<Functional> invariant_members(const ConvAlgebra& alg);

/// closure-sum, left-ideal (S * H in H), right-ideal (H * S in H), and
/// invariant. Needs a declared regime whose hypothesis holds, otherwise
/// PreconditionError.
AxiomReport check_ideal(const std::vector<Functional>& H, const ConvAlgebra& alg);

}  // namespace skew
