#include "skew/structure.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "skew/error.hpp"

namespace skew {

namespace {

constexpr std::array<std::pair<Law, std::string_view>, 9> kLawNames{{
    {Law::assoc_add, "assoc-add"},
    {Law::assoc_mul, "assoc-mul"},
    {Law::comm_add, "comm-add"},
    {Law::comm_mul, "comm-mul"},
    {Law::left_dist, "left-dist"},
    {Law::right_dist, "right-dist"},
    {Law::neutral, "neutral"},
    {Law::absorb, "absorb"},
    {Law::quasi_solvable, "quasi-solvable"},
}};

std::vector<std::string> chain_names(unsigned n) {
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

Witness named(const FinStruct& s, std::initializer_list<Elem> xs, std::string note) {
  Witness w{{}, std::move(note)};
  for (Elem x : xs) w.items.push_back(s.name(x));
  return w;
}

bool same_structure(const FinStruct& a, const FinStruct& b) {
  return a.names() == b.names() && a.add == b.add && a.mul == b.mul && a.zero == b.zero &&
         a.one == b.one;
}

}  // namespace

std::string_view law_name(Law law) {
  for (auto [l, n] : kLawNames)
    if (l == law) return n;
  return "?";
}

std::optional<Law> parse_law(std::string_view name) {
  for (auto [l, n] : kLawNames)
    if (n == name) return l;
  return std::nullopt;
}

const std::vector<Law>& all_laws() {
  static const std::vector<Law> laws = [] {
    std::vector<Law> v;
    for (auto [l, n] : kLawNames) v.push_back(l);
    return v;
  }();
  return laws;
}

void FinStruct::validate_shape() const {
  const auto n = size();
  if (n == 0) throw InputError("structure '" + label + "' has an empty carrier");
  if (add.size() != n || mul.size() != n)
    throw InputError("structure '" + label + "': table size differs from the carrier");
  if (zero >= n || one >= n)
    throw InputError("structure '" + label + "': zero or one outside the carrier");
}

Verdict check_law(const FinStruct& s, Law law) {
  s.validate_shape();
  const auto n = static_cast<Elem>(s.size());
  const auto& A = s.add;
  const auto& M = s.mul;
  switch (law) {
    case Law::assoc_add:
    case Law::assoc_mul: {
      const auto& T = law == Law::assoc_add ? A : M;
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c)
            if (T(T(a, b), c) != T(a, T(b, c)))
              return Verdict::fail(named(s, {a, b, c}, "(ab)c != a(bc)"));
      return Verdict::ok();
    }
    case Law::comm_add:
    case Law::comm_mul: {
      const auto& T = law == Law::comm_add ? A : M;
      for (Elem a = 0; a < n; ++a)
        for (Elem b = a + 1; b < n; ++b)
          if (T(a, b) != T(b, a)) return Verdict::fail(named(s, {a, b}, "ab != ba"));
      return Verdict::ok();
    }
    case Law::left_dist:
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c)
            if (M(a, A(b, c)) != A(M(a, b), M(a, c)))
              return Verdict::fail(named(s, {a, b, c}, "a(b+c) != ab+ac"));
      return Verdict::ok();
    case Law::right_dist:
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c)
            if (M(A(b, c), a) != A(M(b, a), M(c, a)))
              return Verdict::fail(named(s, {a, b, c}, "(b+c)a != ba+ca"));
      return Verdict::ok();
    case Law::neutral:
      for (Elem a = 0; a < n; ++a) {
        if (A(s.zero, a) != a || A(a, s.zero) != a)
          return Verdict::fail(named(s, {a}, "zero is not additively neutral at a"));
        if (a != s.zero && (M(s.one, a) != a || M(a, s.one) != a))
          return Verdict::fail(named(s, {a}, "one is not a multiplicative unit at a"));
      }
      return Verdict::ok();
    case Law::absorb:
      for (Elem a = 0; a < n; ++a)
        if (M(a, s.zero) != s.zero || M(s.zero, a) != s.zero)
          return Verdict::fail(named(s, {a}, "a0 or 0a is not zero"));
      return Verdict::ok();
    case Law::quasi_solvable:
      for (Elem a = 0; a < n; ++a) {
        if (a == s.zero) continue;
        for (Elem b = 0; b < n; ++b) {
          if (b == s.zero) continue;
          bool right = false, left = false;
          for (Elem x = 0; x < n; ++x) {
            right = right || M(a, x) == b;
            left = left || M(x, a) == b;
          }
          if (!right) return Verdict::fail(named(s, {a, b}, "ax = b has no solution"));
          if (!left) return Verdict::fail(named(s, {a, b}, "xa = b has no solution"));
        }
      }
      return Verdict::ok();
  }
  return Verdict::ok();
}

Verdict check_declared(const FinStruct& s) {
  for (Law law : {Law::neutral, Law::absorb})
    if (auto v = check_law(s, law); !v) return v;
  for (Law law : s.flags)
    if (auto v = check_law(s, law); !v) {
      v.witness->note = std::string(law_name(law)) + ": " + v.witness->note;
      return v;
    }
  return Verdict::ok();
}

std::vector<ElemSet> enumerate_ideals(const FinStruct& s) {
  s.validate_shape();
  const auto n = static_cast<Elem>(s.size());
  if (n > 16)
    throw CapacityError("ideal enumeration is limited to 16 elements, '" + s.label + "' has " +
                        std::to_string(n));
  std::vector<ElemSet> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s.zero & 1u)) continue;
    auto in = [&](Elem x) { return (mask >> x & 1u) != 0; };
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) {
      if (!in(a)) continue;
      for (Elem k = 0; k < n && ok; ++k) {
        if (in(k) && !in(s.add(a, k))) ok = false;
        if (!in(s.mul(a, k)) || !in(s.mul(k, a))) ok = false;
      }
    }
    if (!ok) continue;
    ElemSet ideal;
    for (Elem a = 0; a < n; ++a)
      if (in(a)) ideal.push_back(a);
    out.push_back(std::move(ideal));
  }
  return out;
}

bool is_simple(const FinStruct& s) {
  return s.size() > 1 && enumerate_ideals(s).size() == 2;
}

bool is_nontrivial(const FinStruct& s) {
  s.validate_shape();
  const auto n = static_cast<Elem>(s.size());
  auto neutral_for = [n](const BinaryTable& t, Elem e) {
    for (Elem a = 0; a < n; ++a)
      if (t(e, a) != a || t(a, e) != a) return false;
    return true;
  };
  for (Elem e = 0; e < n; ++e)
    if (!neutral_for(s.add, e) && !neutral_for(s.mul, e)) return true;
  return false;
}

Homomorphism identity_hom(const FinStruct& s) {
  std::vector<Elem> map(s.size());
  for (Elem i = 0; i < map.size(); ++i) map[i] = i;
  return {s, s, std::move(map), true};
}

Homomorphism zero_hom(const FinStruct& source, const FinStruct& target) {
  return {source, target, std::vector<Elem>(source.size(), target.zero), false};
}

Verdict check_homomorphism(const Homomorphism& h) {
  const auto& S = h.source;
  const auto& T = h.target;
  if (h.map.size() != S.size()) throw InputError("homomorphism is not total on its source");
  for (Elem v : h.map)
    if (v >= T.size()) throw InputError("homomorphism value outside the target carrier");
  const auto n = static_cast<Elem>(S.size());
  if (h(S.zero) != T.zero) return Verdict::fail({{S.name(S.zero)}, "zero is not preserved"});
  if (h.preserve_one && h(S.one) != T.one)
    return Verdict::fail({{S.name(S.one)}, "one is not preserved"});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (h(S.add(a, b)) != T.add(h(a), h(b)))
        return Verdict::fail({{S.name(a), S.name(b)}, "h(a+b) != h(a)+h(b)"});
      if (h(S.mul(a, b)) != T.mul(h(a), h(b)))
        return Verdict::fail({{S.name(a), S.name(b)}, "h(ab) != h(a)h(b)"});
      if (S.order.leq(a, b) && !T.order.leq(h(a), h(b)))
        return Verdict::fail({{S.name(a), S.name(b)}, "order is not preserved"});
    }
  return Verdict::ok();
}

ElemSet kernel(const Homomorphism& h) {
  ElemSet out;
  for (Elem a = 0; a < h.map.size(); ++a)
    if (h(a) == h.target.zero) out.push_back(a);
  return out;
}

ElemSet image(const Homomorphism& h) {
  ElemSet out(h.map.begin(), h.map.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Verdict check_exact_chain(const std::vector<Homomorphism>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!same_structure(chain[i].target, chain[i + 1].source))
      throw InputError("chain is not composable at position " + std::to_string(i + 1));
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto im = image(chain[i]);
    const auto ker = kernel(chain[i + 1]);
    if (im == ker) continue;
    const auto& mid = chain[i].target;
    ElemSet diff;
    std::set_symmetric_difference(im.begin(), im.end(), ker.begin(), ker.end(),
                                  std::back_inserter(diff));
    const bool in_image = std::binary_search(im.begin(), im.end(), diff.front());
    return Verdict::fail({{std::to_string(i + 1), mid.name(diff.front())},
                          in_image ? "in the image but not in the kernel"
                                   : "in the kernel but not in the image"});
  }
  return Verdict::ok();
}

namespace builtin {

FinStruct boolean() {
  FinStruct s;
  s.label = "boolean";
  s.order = OrderRelation::chain({"0", "1"});
  s.add = BinaryTable::from(2, [](Elem a, Elem b) { return a | b; });
  s.mul = BinaryTable::from(2, [](Elem a, Elem b) { return a & b; });
  s.zero = 0;
  s.one = 1;
  s.flags = {Law::assoc_add, Law::assoc_mul, Law::comm_add, Law::comm_mul, Law::left_dist,
             Law::right_dist, Law::quasi_solvable};
  return s;
}

FinStruct max_plus(unsigned cap) {
  std::vector<std::string> names{"bot"};
  for (unsigned i = 0; i <= cap; ++i) names.push_back(std::to_string(i));
  const auto n = static_cast<std::size_t>(cap) + 2;
  FinStruct s;
  s.label = "max-plus:" + std::to_string(cap);
  s.order = OrderRelation::chain(std::move(names));
  s.add = BinaryTable::from(n, [](Elem a, Elem b) { return std::max(a, b); });
  s.mul = BinaryTable::from(n, [cap](Elem a, Elem b) -> Elem {
    if (a == 0 || b == 0) return 0;
    return std::min(a - 1 + b - 1, cap) + 1;
  });
  s.zero = 0;
  s.one = 1;
  s.flags = {Law::assoc_add, Law::assoc_mul, Law::comm_add, Law::comm_mul, Law::left_dist,
             Law::right_dist};
  return s;
}

FinStruct chain_lattice(unsigned n) {
  if (n < 1) throw InputError("chain lattice needs at least one element");
  FinStruct s;
  s.label = "chain:" + std::to_string(n);
  s.order = OrderRelation::chain(chain_names(n));
  s.add = BinaryTable::from(n, [](Elem a, Elem b) { return std::max(a, b); });
  s.mul = BinaryTable::from(n, [](Elem a, Elem b) { return std::min(a, b); });
  s.zero = 0;
  s.one = n - 1;
  s.flags = {Law::assoc_add, Law::assoc_mul, Law::comm_add, Law::comm_mul, Law::left_dist,
             Law::right_dist};
  return s;
}

FinStruct product(const FinStruct& a, const FinStruct& b) {
  const auto nb = static_cast<Elem>(b.size());
  const auto n = a.size() * b.size();
  auto lift = [&](const BinaryTable& ta, const BinaryTable& tb) {
    return BinaryTable::from(n, [&](Elem x, Elem y) {
      return ta(x / nb, y / nb) * nb + tb(x % nb, y % nb);
    });
  };
  FinStruct s;
  s.label = a.label + "*" + b.label;
  s.order = OrderRelation::product(a.order, b.order);
  s.add = lift(a.add, b.add);
  s.mul = lift(a.mul, b.mul);
  s.zero = a.zero * nb + b.zero;
  s.one = a.one * nb + b.one;
  std::set_intersection(a.flags.begin(), a.flags.end(), b.flags.begin(), b.flags.end(),
                        std::inserter(s.flags, s.flags.end()));
  s.flags.erase(Law::quasi_solvable);
  return s;
}

FinStruct trivial() {
  FinStruct s;
  s.label = "trivial";
  s.order = OrderRelation::chain({"0"});
  s.add = BinaryTable(1);
  s.mul = BinaryTable(1);
  s.flags = {Law::assoc_add, Law::assoc_mul, Law::comm_add, Law::comm_mul, Law::left_dist,
             Law::right_dist};
  return s;
}

FinStruct right_dist_only() {
  // 0 absorbing, 1 the unit, and x*y = y on {2,3}.
  FinStruct s;
  s.label = "right-dist-only";
  s.order = OrderRelation::chain(chain_names(4));
  s.add = BinaryTable::from(4, [](Elem a, Elem b) { return std::max(a, b); });
  s.mul = BinaryTable::from(4, [](Elem a, Elem b) -> Elem {
    if (a == 0 || b == 0) return 0;
    if (a == 1) return b;
    if (b == 1) return a;
    return b;
  });
  s.zero = 0;
  s.one = 1;
  s.flags = {Law::assoc_add, Law::assoc_mul, Law::comm_add, Law::right_dist};
  return s;
}

FinStruct by_name(std::string_view spec) {
  auto param = [&](std::string_view prefix) -> std::optional<unsigned> {
    if (spec.substr(0, prefix.size()) != prefix) return std::nullopt;
    const std::string digits(spec.substr(prefix.size()));
    if (digits.empty() || digits.size() > 2 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InputError("bad parameter in builtin '" + std::string(spec) + "'");
    return static_cast<unsigned>(std::stoul(digits));
  };
  if (spec == "boolean") return boolean();
  if (spec == "trivial") return trivial();
  if (spec == "right-dist-only") return right_dist_only();
  if (auto cap = param("max-plus:")) return max_plus(*cap);
  if (auto n = param("chain:")) return chain_lattice(*n);
  throw InputError("unknown builtin structure '" + std::string(spec) + "'");
}

}  // namespace builtin

}  // namespace skew
