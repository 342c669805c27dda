#include <random>

#include "doctest.h"
#include "skew/error.hpp"
#include "skew/s_construction.hpp"

using namespace skew;

namespace {

IndexScheme scheme_over(FinStruct k, int lo, int hi) {
  IndexScheme s;
  s.component = std::move(k);
  s.lo = lo;
  s.hi = hi;
  return s;
}

SuppElement el(const IndexScheme& s, std::map<int, Elem> raw) { return s.canonical(raw); }

}  // namespace

TEST_CASE("zero and the degenerate product") {
  auto s = scheme_over(builtin::max_plus(2), 0, 3);
  s.validate();
  SuppElement zero;
  CHECK(s_mu(Op::add, zero, zero, s) == zero);
  CHECK(s_mu(Op::mul, zero, zero, s) == zero);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto y = random_element(s, rng), z = random_element(s, rng);
    auto q = s_mu(Op::mul, y, z, s);
    for (int j = s.lo; j <= s.hi; ++j)
      CHECK(q.at(j, 0) == s.component.mul(y.at(j, 0), z.at(j, 0)));
  }
}

TEST_CASE("shifted multiplication on boolean components") {
  auto s = scheme_over(builtin::boolean(), 0, 3);
  s.phi[1] = IndexMap::shift(1);
  s.validate();
  auto q = s_mu(Op::mul, el(s, {{0, 1}}), el(s, {{1, 1}}), s);
  CHECK(q == el(s, {{0, 1}}));
  CHECK(s_mu(Op::mul, el(s, {{0, 1}}), el(s, {{0, 1}}), s) == SuppElement{});
}

TEST_CASE("window escapes are capacity errors") {
  auto s = scheme_over(builtin::boolean(), 0, 3);
  s.phi[0] = IndexMap::shift(1);
  // y = 0 at index -1 meets z_0 = 1 under addition.
  CHECK_THROWS_AS(s_mu(Op::add, SuppElement{}, el(s, {{0, 1}}), s), CapacityError);
  auto t = scheme_over(builtin::boolean(), 0, 3);
  t.psi[1] = IndexMap::shift(-1);
  CHECK_THROWS_WITH_AS(s_mu(Op::mul, el(t, {{0, 1}}), el(t, {{0, 1}}), t),
                       doctest::Contains("index 0"), CapacityError);
  CHECK(s_mu(Op::mul, el(t, {{1, 1}}), el(t, {{1, 1}}), t) == el(t, {{0, 1}}));
}

TEST_CASE("scheme validation") {
  auto s = scheme_over(builtin::boolean(), 0, 3);
  s.psi[0] = IndexMap::shift(1);
  CHECK_THROWS_AS(s.validate(), InputError);
  s.psi[0] = IndexMap{0, {{0, 0}, {1, 0}}};
  CHECK_THROWS_AS(s.validate(), InputError);
  s.psi[0] = {};
  s.phi[1] = IndexMap::shift(-1);
  CHECK_THROWS_AS(s.validate(), InputError);
  s.phi[1] = {};
  s.embed = {0, 0};
  CHECK_THROWS_AS(s.validate(), InputError);
  s.embed = {0, 1};
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("theta") {
  auto k = builtin::boolean();
  CHECK(theta(0, 0, 3, k) == SuppElement{});
  CHECK(theta(1, 0, 3, k).entries == std::map<int, Elem>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  auto s = scheme_over(k, 0, 3);
  for (Elem x = 0; x < 2; ++x)
    for (Elem z = 0; z < 2; ++z) {
      CHECK(theta(k.add(x, z), 0, 3, k) == s_mu(Op::add, theta(x, 0, 3, k), theta(z, 0, 3, k), s));
      CHECK(theta(k.mul(x, z), 0, 3, k) == s_mu(Op::mul, theta(x, 0, 3, k), theta(z, 0, 3, k), s));
    }
}

TEST_CASE("lexicographic comparison") {
  auto s = scheme_over(builtin::chain_lattice(6), 0, 3);
  auto y = el(s, {{0, 1}}), z = el(s, {{1, 5}});
  CHECK(lex_compare(y, y, s) == std::strong_ordering::equal);
  CHECK(lex_compare(y, z, s) == std::strong_ordering::greater);
  CHECK(lex_compare(z, y, s) == std::strong_ordering::less);

  auto d = scheme_over(builtin::product(builtin::boolean(), builtin::boolean()), 0, 1);
  CHECK_THROWS_AS(lex_compare(el(d, {{0, 1}}), el(d, {{0, 2}}), d), InputError);
}

TEST_CASE("non-associativity witness") {
  auto s = scheme_over(builtin::boolean(), 0, 3);
  s.phi[1] = IndexMap::shift(1);
  auto a = el(s, {{0, 1}}), b = el(s, {{1, 1}}), c = el(s, {{1, 1}});
  auto left = s_mu(Op::mul, s_mu(Op::mul, a, b, s), c, s);
  auto right = s_mu(Op::mul, a, s_mu(Op::mul, b, c, s), s);
  CHECK(left == el(s, {{0, 1}}));
  CHECK(right == SuppElement{});

  auto r = find_nonassoc_witness(Op::mul, s, 1000, 1);
  REQUIRE(r.found);
  CHECK(r.left != r.right);
  CHECK(s_mu(Op::mul, s_mu(Op::mul, r.a, r.b, s), r.c, s) == r.left);
  CHECK(r.left.at(r.index, 0) != r.right.at(r.index, 0));

  auto id = scheme_over(builtin::boolean(), 0, 3);
  CHECK_THROWS_AS(find_nonassoc_witness(Op::mul, id, 1000, 1), PreconditionError);

  SuppElement zero;
  CHECK(s_mu(Op::mul, s_mu(Op::mul, zero, zero, s), zero, s) ==
        s_mu(Op::mul, zero, s_mu(Op::mul, zero, zero, s), s));
}

TEST_CASE("identity shifts keep associative components associative") {
  auto s = scheme_over(builtin::max_plus(1), 0, 2);
  auto all = enumerate_window(s);
  CHECK(all.size() == 27);
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        CHECK(s_mu(Op::mul, s_mu(Op::mul, a, b, s), c, s) == s_mu(Op::mul, a, s_mu(Op::mul, b, c, s), s));
}

TEST_CASE("distributivity transfers through identity additive shifts") {
  for (auto k : {builtin::boolean(), builtin::max_plus(1)}) {
    auto s = scheme_over(k, 0, 3);
    s.phi[1] = IndexMap::shift(1);
    CHECK(check_dist_transfer(s, Law::left_dist, 500, 3).holds);
    CHECK(check_dist_transfer(s, Law::right_dist, 500, 3).holds);
  }
  auto r = scheme_over(builtin::right_dist_only(), 0, 3);
  r.phi[1] = IndexMap::shift(1);
  CHECK(check_dist_transfer(r, Law::right_dist, 500, 3).holds);
  CHECK_FALSE(check_dist_transfer(r, Law::left_dist, 500, 3).holds);

  r.phi[0] = IndexMap::shift(1);
  CHECK_THROWS_AS(check_dist_transfer(r, Law::right_dist, 10, 3), PreconditionError);
}

TEST_CASE("componentwise order is directed and preserved") {
  auto s = scheme_over(builtin::max_plus(1), 0, 2);
  auto all = enumerate_window(s);
  const auto& K = s.component;
  auto leq = [&](const SuppElement& y, const SuppElement& z) {
    for (int j = s.lo; j <= s.hi; ++j)
      if (!K.order.leq(y.at(j, 0), z.at(j, 0))) return false;
    return true;
  };
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto& a = all[rng() % all.size()];
    const auto& b = all[rng() % all.size()];
    auto top = s_mu(Op::add, a, b, s);
    CHECK(leq(a, top));
    CHECK(leq(b, top));
    const auto& c = all[rng() % all.size()];
    if (leq(a, b)) {
      CHECK(leq(s_mu(Op::add, a, c, s), s_mu(Op::add, b, c, s)));
      CHECK(leq(s_mu(Op::mul, a, c, s), s_mu(Op::mul, b, c, s)));
    }
  }
}

TEST_CASE("lexicographic order on a three index window") {
  auto s = scheme_over(builtin::chain_lattice(3), 0, 2);
  CHECK(check_lex_order(s).holds);
  // No operation on a three element chain is strictly monotone in both
  // arguments, and max is not even weakly monotone for the lexicographic
  // order of the product.
  CHECK_FALSE(check_strict_monotone(s.component.add, s.component.order).holds);
  auto weak = check_lex_monotone(Op::add, s, false);
  REQUIRE_FALSE(weak.holds);
  CHECK(weak.witness->items ==
        std::vector<std::string>{"{2:1}", "{1:1}", "{1:1}", "{1:1}"});
  // {2:1} < {1:1}, yet max with {1:1} gives {1:1, 2:1} > {1:1}.
}
