#include <algorithm>

#include "doctest.h"
#include "oracle/order_type.hpp"
#include "skew/error.hpp"
#include "skew/ordinal.hpp"

using namespace skew;

namespace {

Ordinal w() { return Ordinal::omega(); }
Ordinal n(std::uint64_t k) { return Ordinal::finite(k); }
Ordinal P(const char* s) { return parse_ordinal(s); }

std::vector<Ordinal> window(std::initializer_list<const char*> xs) {
  std::vector<Ordinal> out;
  for (const char* x : xs) out.push_back(P(x));
  return out;
}

}  // namespace

TEST_CASE("units and non-commutativity") {
  for (const auto& x : window({"0", "3", "w", "w^2*2 + 1"})) {
    CHECK(ord_add(Ordinal{}, x) == x);
    CHECK(ord_add(x, Ordinal{}) == x);
    CHECK(ord_mul(n(1), x) == x);
    CHECK(ord_mul(x, n(1)) == x);
  }
  CHECK(ord_add(n(1), w()) == w());
  CHECK(ord_add(w(), n(1)) == P("w + 1"));
  CHECK(ord_mul(w(), n(2)) == P("w*2"));
  CHECK(ord_mul(n(2), w()) == w());
}

TEST_CASE("the oracle agrees on the small examples") {
  using namespace oracle;
  CHECK(order_type(sum(build(0, 0, 1), build(0, 1, 0))) == Type{1});
  CHECK(order_type(sum(build(0, 1, 0), build(0, 0, 1))) == Type{1, 0});
  CHECK(order_type(product(build(0, 1, 0), build(0, 0, 2))) == Type{1, 1});
  CHECK(order_type(product(build(0, 0, 2), build(0, 1, 0))) == Type{1});
  CHECK(order_type(product(build(0, 1, 0), build(0, 1, 0))) == Type{2});
}

TEST_CASE("parse and print") {
  CHECK(P("w^2*3 + w*1 + 5").str() == "w^2*3 + w + 5");
  CHECK(P("w^(w+1)").str() == "w^(w + 1)");
  CHECK(P("w^w").str() == "w^(w)");
  CHECK(P("1 + w").str() == "w");
  CHECK(P("w + w").str() == "w*2");
  CHECK(P("0").is_zero());
  CHECK_THROWS_AS(P("w^"), InputError);
  CHECK_THROWS_AS(P("w + x"), InputError);
  CHECK_THROWS_AS(P(""), InputError);
  for (const auto& o : window({"w^(w^2 + 3)*4 + w^7 + 2", "w^(w^(w)) + w", "12"}))
    CHECK(P(o.str().c_str()) == o);
}

TEST_CASE("canonical form is enforced") {
  CHECK_THROWS_AS(Ordinal({OrdTerm{n(1), 1}, OrdTerm{n(2), 1}}), InputError);
  CHECK_THROWS_AS(Ordinal({OrdTerm{n(1), 0}}), InputError);
  CHECK_NOTHROW(P("w^(w^(w))"));
  CHECK_THROWS_AS(P("w^(w^(w^(w)))"), CapacityError);
  CHECK_THROWS_AS(ord_mul(P("18446744073709551615"), n(2)), CapacityError);
}

TEST_CASE("comparison and sup") {
  CHECK(ord_cmp(P("w^2"), P("w*7 + 4")) == std::strong_ordering::greater);
  CHECK(ord_cmp(P("w*2"), P("w + 9")) == std::strong_ordering::greater);
  CHECK(ord_cmp(P("w + 1"), P("w + 1")) == std::strong_ordering::equal);
  auto s1 = window({"5"});
  CHECK(ord_sup(s1) == n(5));
  auto s2 = window({"3", "w", "w*2"});
  CHECK(ord_sup(s2) == P("w*2"));
  auto s3 = window({"w^2", "w*7 + 4"});
  CHECK(ord_sup(s3) == P("w^2"));
  CHECK_THROWS_AS(ord_sup({}), InputError);
}

TEST_CASE("laws on a window") {
  auto win = window({"0", "1", "2", "w", "w + 1", "w*2", "w^2", "w^2 + w"});
  for (Law law : {Law::assoc_add, Law::assoc_mul, Law::left_dist, Law::neutral, Law::absorb})
    CHECK(check_ordinal_law(win, OrdAddition::ordinal, law).holds);

  // Only one side distributes over ordinal sum.
  auto right = check_ordinal_law(win, OrdAddition::ordinal, Law::right_dist);
  REQUIRE_FALSE(right.holds);
  CHECK(right.witness->items == std::vector<std::string>{"2", "w", "1"});
  CHECK(ord_mul(ord_add(w(), n(1)), n(2)) == P("w*2 + 1"));
  CHECK(ord_add(ord_mul(w(), n(2)), ord_mul(n(1), n(2))) == P("w*2 + 2"));

  CHECK_FALSE(check_ordinal_law(win, OrdAddition::ordinal, Law::comm_add).holds);
  CHECK_FALSE(check_ordinal_law(win, OrdAddition::ordinal, Law::comm_mul).holds);

  for (Law law : {Law::assoc_add, Law::comm_add, Law::assoc_mul, Law::left_dist, Law::right_dist})
    CHECK(check_ordinal_law(win, OrdAddition::max, law).holds);
}

TEST_CASE("max reduct") {
  CHECK(OrdinalMax::add(w(), w()) == w());
  auto c = w(), a = w(), b = n(2);
  CHECK(ord_mul(c, OrdinalMax::add(a, b)) == P("w^2"));
  CHECK(OrdinalMax::add(ord_mul(c, a), ord_mul(c, b)) == P("w^2"));
  auto a2 = n(1), b2 = w(), c2 = n(2);
  CHECK(ord_mul(OrdinalMax::add(a2, b2), c2) == P("w*2"));
  CHECK(OrdinalMax::add(ord_mul(a2, c2), ord_mul(b2, c2)) == P("w*2"));

  auto open = max_reduct(window({"w", "0", "1", "2"}));
  CHECK(open.elems.front().is_zero());
  REQUIRE_FALSE(open.closed());
  CHECK(open.escapes.front() == std::pair{n(2), n(2)});
  CHECK_THROWS_AS(open.to_struct(), CapacityError);

  auto closed = max_reduct(window({"0", "1", "w", "w^2", "w^3"}));
  CHECK_FALSE(closed.closed());
  auto fin = max_reduct(window({"0", "1"}));
  REQUIRE(fin.closed());
  auto s = fin.to_struct();
  CHECK(check_declared(s).holds);
  CHECK_THROWS_AS(max_reduct(window({"w"})), InputError);
}

TEST_CASE("monotonicity of ordinal addition") {
  auto win = window({"0", "1", "w", "w + 1"});
  auto leq = [](const Ordinal& x, const Ordinal& y) { return x <= y; };
  auto name = [](const Ordinal& x) { return x.str(); };
  CHECK(check_op_monotone(std::span<const Ordinal>(win), ord_add, leq, name).holds);
  CHECK(check_op_monotone(std::span<const Ordinal>(win), ord_mul, leq, name).holds);
  // Strictness is lost on the left: 1 < 2 but 1 + w = 2 + w.
  CHECK(ord_add(n(1), w()) == ord_add(n(2), w()));
}

TEST_CASE("value algebra on ordinals") {
  CHECK(OrdinalArithmetic::add(n(1), w()) == w());
  CHECK(OrdinalMax::add(n(1), w()) == w());
  CHECK(OrdinalMax::add(w(), n(1)) == w());
  CHECK(OrdinalArithmetic::add(w(), n(1)) == P("w + 1"));
}

TEST_CASE("CNF arithmetic matches explicit order types below w^3") {
  struct Entry {
    Ordinal cnf;
    oracle::PatternSet set;
  };
  std::vector<Entry> all;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c) {
        auto cnf = ord_add(ord_add(Ordinal::power(n(2), a), Ordinal::power(n(1), b)), n(c));
        all.push_back({cnf, oracle::build(a, b, c)});
      }
  int mismatches = 0;
  for (const auto& x : all) {
    CHECK(oracle::as_type(x.cnf) == oracle::order_type(x.set));
    for (const auto& y : all) {
      const auto tx = oracle::order_type(x.set), ty = oracle::order_type(y.set);
      if (oracle::as_type(ord_add(x.cnf, y.cnf)) != oracle::order_type(oracle::sum(x.set, y.set)))
        ++mismatches;
      if (oracle::as_type(ord_mul(x.cnf, y.cnf)) != oracle::order_type(oracle::product(x.set, y.set)))
        ++mismatches;
      if ((x.cnf < y.cnf) != oracle::type_less(tx, ty)) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}
