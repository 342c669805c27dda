#include <algorithm>

#include "doctest.h"
#include "skew/convolution.hpp"
#include "skew/error.hpp"

using namespace skew;

namespace {

using Names = std::vector<std::string>;

std::shared_ptr<const ActionSystem> z2(FinStruct k, Regime regime = Regime::trivial_cocycle) {
  auto op = BinaryTable::from(2, [](Elem a, Elem b) { return a ^ b; });
  return std::make_shared<const ActionSystem>(right_regular({"e", "a"}, op, 0, std::move(k), regime));
}

// {e, z} with z z = z; x -> xz sends everything to z.
std::shared_ptr<const ActionSystem> collapsing(FinStruct k) {
  auto op = BinaryTable::from(2, [](Elem a, Elem b) { return a | b; });
  return std::make_shared<const ActionSystem>(right_regular({"e", "z"}, op, 0, std::move(k)));
}

// {e, p, q} with xy = x for x, y in {p, q}.
std::shared_ptr<const ActionSystem> left_zero(FinStruct k) {
  auto op = BinaryTable::from(3, [](Elem a, Elem b) { return a == 0 ? b : a; });
  return std::make_shared<const ActionSystem>(right_regular({"e", "p", "q"}, op, 0, std::move(k)));
}

// Monoid {0..3} under min(a + b, 3) shifting the chain {0, 1, 2} with
// truncation, max-plus values and rho(g, x) = g.
ActionSystem truncated_shift() {
  ActionSystem s;
  s.group = {"0", "1", "2", "3"};
  s.op = BinaryTable::from(4, [](Elem a, Elem b) { return std::min<Elem>(a + b, 3); });
  s.unit = 0;
  s.points = {"0", "1", "2"};
  s.K = builtin::max_plus(3);
  for (Elem a = 0; a < s.K.size(); ++a) s.L.push_back(a);
  for (Elem g = 0; g < 4; ++g) {
    s.action.emplace_back();
    s.rho.emplace_back();
    for (Elem x = 0; x < 3; ++x) {
      s.action[g].push_back(std::min<Elem>(x + g, 2));
      s.rho[g].push_back(s.K.index(std::to_string(g)));
    }
  }
  s.regime = Regime::commutative_associative;
  return s;
}

// {0, 1, 2} with saturating + as addition and min as multiplication.
FinStruct saturating_chain() {
  FinStruct s;
  s.label = "saturating";
  s.order = OrderRelation::chain({"0", "1", "2"});
  s.add = BinaryTable::from(3, [](Elem a, Elem b) { return std::min<Elem>(a + b, 2); });
  s.mul = BinaryTable::from(3, [](Elem a, Elem b) { return std::min(a, b); });
  s.zero = 0;
  s.one = 2;
  return s;
}

Fn fn(const FinStruct& k, Names values) {
  Fn f;
  for (const auto& v : values) f.values.push_back(k.index(v));
  return f;
}

bool same(const Functional& a, const Functional& b) { return a.table() == b.table(); }

}  // namespace

TEST_CASE("action conditions") {
  CHECK(check_action(*z2(builtin::boolean())));
  CHECK(check_action(*left_zero(builtin::chain_lattice(3))));
  CHECK(check_action(truncated_shift()));

  auto trivial = *z2(builtin::boolean());
  trivial.action = {{0, 1}, {0, 1}};
  CHECK(check_action(trivial));

  auto broken = *z2(builtin::boolean());
  broken.action[1] = {0, 0};
  auto v = check_action(broken);
  REQUIRE_FALSE(v);
  CHECK(v.witness->items == Names{"a", "a"});

  // rho(a, x) = 1 in max-plus numbers: 1 + 1 != rho(e, x) = 0.
  auto s = *z2(builtin::max_plus(2));
  s.L = {0, 1, 2, 3};
  s.rho[1] = {s.K.index("1"), s.K.index("1")};
  v = check_action(s);
  REQUIRE_FALSE(v);
  CHECK(v.witness->items == Names{"a", "a", "e"});
}

TEST_CASE("action validation") {
  auto s = *z2(builtin::boolean());
  s.rho[1][0] = 0;
  CHECK_THROWS_AS(s.validate(), InputError);
  CHECK_THROWS_AS(check_action(s), InputError);

  s = *z2(builtin::boolean());
  s.L = {0};
  CHECK_THROWS_AS(s.validate(), InputError);

  s = *z2(builtin::boolean());
  s.action[1] = {0, 2};
  CHECK_THROWS_AS(s.validate(), InputError);
}

TEST_CASE("representation T_g") {
  auto s = truncated_shift();
  const auto& K = s.K;
  const Fn f = fn(K, {"0", "1", "2"});
  CHECK(apply_T(s, 1, f) == fn(K, {"2", "3", "3"}));
  CHECK(apply_T(s, 0, f) == f);
  CHECK(apply_T(s, 2, fn(K, {"bot", "0", "0"})) == fn(K, {"2", "2", "2"}));

  FunctionSpace sp(s.points, K);
  for (const auto& h : sp.functions())
    for (Elem a = 0; a < 4; ++a)
      for (Elem b = 0; b < 4; ++b) CHECK(apply_T(s, b, apply_T(s, a, h)) == apply_T(s, s.mul(a, b), h));

  auto r = *z2(builtin::boolean());
  CHECK(apply_T(r, 1, fn(r.K, {"1", "0"})) == fn(r.K, {"0", "1"}));
}

TEST_CASE("convolution of Dirac functionals") {
  auto sys = left_zero(builtin::boolean());
  auto sp = group_space(*sys);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b)
      CHECK(same(convolve(dirac(sp, a), dirac(sp, b), sys), dirac(sp, sys->mul(b, a))));
  // p q = p but q p = q, so the order of the factors shows.
  CHECK(same(convolve(dirac(sp, 1), dirac(sp, 2), sys), dirac(sp, 2)));
  CHECK(convolve(dirac(sp, 1), dirac(sp, 2), sys).label() == "(dirac p * dirac q)");

  auto z = z2(builtin::boolean());
  auto zs = group_space(*z);
  CHECK(same(convolve(dirac(zs, 1), dirac(zs, 1), z), dirac(zs, 0)));

  auto shift = std::make_shared<const ActionSystem>(truncated_shift());
  CHECK_THROWS_AS(group_space(*shift), InputError);
}

TEST_CASE("unit and associativity") {
  for (auto sys : {z2(builtin::boolean()), collapsing(builtin::boolean()), left_zero(builtin::boolean())}) {
    auto sp = group_space(*sys);
    const auto all = enumerate_family(sp, Family::all);
    const auto e = dirac(sp, sys->unit);
    for (const auto& nu : all) {
      CHECK(same(convolve(nu, e, sys), nu));
      CHECK(same(convolve(e, nu, sys), nu));
    }
    if (sp->dim() == 2)
      for (const auto& a : all)
        for (const auto& b : all)
          for (const auto& c : all)
            CHECK(same(convolve(convolve(a, b, sys), c, sys), convolve(a, convolve(b, c, sys), sys)));
  }
}

TEST_CASE("kinds") {
  auto sp = group_space(*z2(builtin::boolean()));
  for (auto kind : {ConvKind::add, ConvKind::join, ConvKind::meet}) CHECK(check_kind(dirac(sp, 0), kind));
  CHECK(check_kind(sup_over(sp, 0b11), ConvKind::join));
  CHECK(check_kind(sup_over(sp, 0b11), ConvKind::add));
  CHECK_FALSE(check_kind(sup_over(sp, 0b11), ConvKind::meet));

  auto chain = std::make_shared<const FunctionSpace>(Names{"x1", "x2"}, builtin::chain_lattice(3));
  CHECK(check_kind(sup_over(chain, 0b11), ConvKind::join));

  auto sat = std::make_shared<const FunctionSpace>(Names{"x1", "x2"}, saturating_chain());
  auto v = check_kind(sup_over(sat, 0b11), ConvKind::add);
  REQUIRE_FALSE(v);
  CHECK(v.witness->items == Names{"{x1: 1, x2: 0}", "{x1: 0, x2: 1}"});
  CHECK(v.witness->note == "v(f + g) = 1 but v(f) + v(g) = 2");

  auto rdo = std::make_shared<const FunctionSpace>(Names{"x1"}, builtin::right_dist_only());
  if (!check_law(rdo->K(), Law::comm_add) || !check_law(rdo->K(), Law::assoc_add))
    CHECK_THROWS_AS(check_kind(dirac(rdo, 0), ConvKind::add), PreconditionError);

  CHECK(kind_family(sp, ConvKind::join).size() == 5);
  CHECK(kind_family(sp, ConvKind::meet).size() == 5);
}

TEST_CASE("invariance") {
  auto sys = z2(builtin::boolean());
  auto sp = group_space(*sys);
  CHECK(check_invariant(sup_over(sp, 0b11), *sys));
  auto v = check_invariant(dirac(sp, 0), *sys);
  REQUIRE_FALSE(v);
  CHECK(v.witness->items == Names{"a", "{e: 1, a: 0}"});

  auto trivial = *sys;
  trivial.action = {{0, 1}, {0, 1}};
  for (const auto& nu : enumerate_family(sp, Family::all)) CHECK(check_invariant(nu, trivial));

  auto shift = truncated_shift();
  auto xs = std::make_shared<const FunctionSpace>(shift.points, shift.K);
  CHECK_FALSE(check_invariant(dirac(xs, 0), shift));
}

TEST_CASE("support bounds") {
  auto sys = z2(builtin::boolean());
  auto sp = group_space(*sys);
  auto b = support_bounds(sup_over(sp, 0b11), *sys);
  CHECK(b.t_limit == 0b11);
  CHECK(b.p_limit == 0b11);
  CHECK(b.contained);
  CHECK(b.no_zero_divisors);
  CHECK(b.g_stable);
  CHECK_THROWS_AS(support_bounds(dirac(sp, 0), *sys), PreconditionError);

  // v_e = id keeps every point in P(X) and T(X), so the limits stay at X,
  // yet each invariant functional is supported on {z}.
  auto col = collapsing(builtin::boolean());
  auto cs = group_space(*col);
  std::size_t invariant = 0;
  for (const auto& nu : enumerate_family(cs, Family::all)) {
    if (!check_invariant(nu, *col)) continue;
    ++invariant;
    auto r = support_bounds(nu, *col);
    CHECK(r.t_chain == std::vector<PointSet>{0b11});
    CHECK(r.p_limit == 0b11);
    CHECK(r.contained);
    CHECK(r.g_stable);
    if (r.support) CHECK((*r.support & ~PointSet{0b10}) == 0);
  }
  CHECK(invariant == 4);
  auto dz = support_bounds(dirac(cs, 1), *col);
  CHECK(dz.support == PointSet{0b10});

  CHECK(has_zero_divisors(builtin::product(builtin::boolean(), builtin::boolean())));
  CHECK_FALSE(has_zero_divisors(builtin::max_plus(2)));
}

TEST_CASE("quasiring of join functionals on Z2") {
  auto sys = z2(builtin::boolean());
  auto sp = group_space(*sys);

  auto from_idempotent = saturate(sys, ConvKind::join, enumerate_family(sp, Family::idempotent));
  CHECK(from_idempotent.saturated);
  CHECK(from_idempotent.members.size() == 3);
  auto r = check_quasiring(from_idempotent);
  CHECK(r.holds());
  CHECK(r.entries.size() == 7);

  auto alg = saturate(sys, ConvKind::join, kind_family(sp, ConvKind::join));
  CHECK(alg.saturated);
  CHECK(alg.members.size() == 5);
  CHECK(check_quasiring(alg).holds());

  auto H = invariant_members(alg);
  CHECK(H.size() == 3);
  auto ideal = check_ideal(H, alg);
  CHECK(ideal.holds());

  auto not_ideal = check_ideal({dirac(sp, 0)}, alg);
  CHECK_FALSE(not_ideal.at("invariant"));
  CHECK_FALSE(not_ideal.at("left-ideal"));

  auto undeclared = std::make_shared<const ActionSystem>(*z2(builtin::boolean(), Regime::undeclared));
  auto u = saturate(undeclared, ConvKind::join, {dirac(sp, 0)});
  CHECK_THROWS_AS(check_ideal(H, u), PreconditionError);
}

TEST_CASE("quasiring on monoids") {
  for (auto sys : {collapsing(builtin::boolean()), left_zero(builtin::boolean())}) {
    auto sp = group_space(*sys);
    for (auto kind : {ConvKind::join, ConvKind::meet, ConvKind::add}) {
      auto alg = saturate(sys, kind, kind_family(sp, kind));
      CHECK(alg.saturated);
      auto r = check_quasiring(alg);
      CHECK(r.holds());
      CHECK(check_ideal(invariant_members(alg), alg).holds());
    }
  }
}

TEST_CASE("saturation budget") {
  auto sys = left_zero(builtin::chain_lattice(3));
  auto sp = group_space(*sys);
  auto alg = saturate(sys, ConvKind::join, {dirac(sp, 1), dirac(sp, 2), sup_over(sp, 0b110)}, 2);
  CHECK_FALSE(alg.saturated);
  CHECK(alg.budget == 2);
}

TEST_CASE("homogeneity of convolutions") {
  for (auto sys : {z2(builtin::chain_lattice(3)), left_zero(builtin::boolean())}) {
    auto sp = group_space(*sys);
    auto members = enumerate_family(sp, Family::idempotent);
    for (const auto& a : members)
      for (const auto& b : members) {
        auto r = check_order_and_homogeneity(convolve(a, b, sys));
        CHECK(r.at("left-homogeneous"));
        CHECK(r.at("right-homogeneous"));
      }
  }
}
