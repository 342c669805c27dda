#include "skew/s_construction.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "skew/error.hpp"

namespace skew {

bool IndexMap::is_identity() const {
  if (offset != 0) return false;
  return std::all_of(table.begin(), table.end(), [](auto& kv) { return kv.first == kv.second; });
}

int IndexMap::operator()(int j) const {
  if (auto it = table.find(j); it != table.end()) return it->second;
  return j + offset;
}

std::vector<int> IndexMap::preimage(int j) const {
  std::vector<int> out;
  for (auto [from, to] : table)
    if (to == j) out.push_back(from);
  if (!table.count(j - offset)) out.push_back(j - offset);
  return out;
}

Elem SuppElement::at(int j, Elem zero) const {
  auto it = entries.find(j);
  return it == entries.end() ? zero : it->second;
}

void IndexScheme::validate() const {
  component.validate_shape();
  if (lo > hi) throw InputError("index window is empty");
  const char* op_names[2] = {"add", "mul"};
  for (int p = 0; p < 2; ++p) {
    for (int j = lo; j <= hi; ++j) {
      if (psi[p](j) > j)
        throw InputError(std::string("psi for ") + op_names[p] + " exceeds j at " + std::to_string(j));
      if (phi[p](j) < j)
        throw InputError(std::string("phi for ") + op_names[p] + " is below j at " + std::to_string(j));
      if (j < hi && (psi[p](j) >= psi[p](j + 1) || phi[p](j) >= phi[p](j + 1)))
        throw InputError(std::string("shift maps for ") + op_names[p] +
                         " are not strictly monotone at " + std::to_string(j));
    }
  }
  if (!embed.empty()) {
    Homomorphism t{component, component, embed, true};
    if (auto v = check_homomorphism(t); !v)
      throw InputError("embedding is not a homomorphism: " + skew::render(*v.witness));
    for (Elem a = 0; a < embed.size(); ++a)
      for (Elem b = a + 1; b < embed.size(); ++b)
        if (embed[a] == embed[b]) throw InputError("embedding is not injective");
  }
}

std::string IndexScheme::render(const SuppElement& y) const {
  std::string out = "{";
  for (auto [j, v] : y.entries) {
    if (out.size() > 1) out += ", ";
    out += std::to_string(j) + ":" + component.name(v);
  }
  return out + "}";
}

SuppElement IndexScheme::canonical(const std::map<int, Elem>& raw) const {
  SuppElement y;
  for (auto [j, v] : raw) {
    if (v >= component.size()) throw InputError("component value outside the carrier");
    if (j < lo || j > hi) throw CapacityError("index " + std::to_string(j) + " outside the window");
    if (v != component.zero) y.entries[j] = v;
  }
  return y;
}

SuppElement s_mu(Op op, const SuppElement& y, const SuppElement& z, const IndexScheme& scheme) {
  const auto p = static_cast<int>(op);
  const auto& K = scheme.component;
  const auto& table = op == Op::add ? K.add : K.mul;
  std::set<int> js;
  for (auto [j, v] : y.entries) js.insert(j);
  for (auto [k, v] : z.entries)
    for (int j : scheme.phi[p].preimage(k)) js.insert(j);

  SuppElement q;
  for (int j : js) {
    const Elem v = table(y.at(j, K.zero), scheme.embedded(z.at(scheme.phi[p](j), K.zero)));
    if (v == K.zero) continue;
    const int target = scheme.psi[p](j);
    if (j < scheme.lo || j > scheme.hi || target < scheme.lo || target > scheme.hi)
      throw CapacityError("index " + std::to_string(j) + " leaves the window [" +
                          std::to_string(scheme.lo) + ", " + std::to_string(scheme.hi) + "]");
    q.entries[target] = v;
  }
  return q;
}

SuppElement theta(Elem x, int lo, int hi, const FinStruct& component) {
  if (x >= component.size()) throw InputError("theta of an element outside the carrier");
  SuppElement y;
  if (x != component.zero)
    for (int j = lo; j <= hi; ++j) y.entries[j] = x;
  return y;
}

std::strong_ordering lex_compare(const SuppElement& y, const SuppElement& z,
                                 const IndexScheme& scheme) {
  const auto& K = scheme.component;
  std::set<int> js;
  for (auto [j, v] : y.entries) js.insert(j);
  for (auto [j, v] : z.entries) js.insert(j);
  for (int j : js) {
    const Elem a = y.at(j, K.zero);
    const Elem b = z.at(j, K.zero);
    if (a == b) continue;
    if (K.order.less(a, b)) return std::strong_ordering::less;
    if (K.order.less(b, a)) return std::strong_ordering::greater;
    throw InputError("components " + K.name(a) + " and " + K.name(b) + " at index " +
                     std::to_string(j) + " are incomparable");
  }
  return std::strong_ordering::equal;
}

std::vector<SuppElement> enumerate_window(const IndexScheme& scheme, std::size_t limit) {
  const auto n = scheme.component.size();
  const int width = scheme.hi - scheme.lo + 1;
  std::size_t count = 1;
  for (int i = 0; i < width; ++i) {
    count *= n;
    if (count > limit)
      throw CapacityError("window holds more than " + std::to_string(limit) + " elements");
  }
  std::vector<SuppElement> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    std::map<int, Elem> raw;
    auto c = code;
    for (int j = scheme.hi; j >= scheme.lo; --j) {
      raw[j] = static_cast<Elem>(c % n);
      c /= n;
    }
    out.push_back(scheme.canonical(raw));
  }
  return out;
}

NonAssocResult find_nonassoc_witness(Op op, const IndexScheme& scheme, std::size_t budget,
                                     std::uint64_t seed) {
  const auto p = static_cast<int>(op);
  for (int j = scheme.lo; j <= scheme.hi; ++j)
    if (!(j < scheme.phi[p](j)))
      throw PreconditionError("witness search needs j < phi(j); fails at j = " + std::to_string(j));

  std::mt19937_64 rng(seed);
  NonAssocResult r;
  for (; r.tried < budget;) {
    ++r.tried;
    auto a = random_element(scheme, rng);
    auto b = random_element(scheme, rng);
    auto c = random_element(scheme, rng);
    SuppElement left, right;
    try {
      left = s_mu(op, s_mu(op, a, b, scheme), c, scheme);
      right = s_mu(op, a, s_mu(op, b, c, scheme), scheme);
    } catch (const CapacityError&) {
      continue;
    }
    if (left == right) continue;
    const auto zero = scheme.component.zero;
    std::set<int> js;
    for (auto [j, v] : left.entries) js.insert(j);
    for (auto [j, v] : right.entries) js.insert(j);
    for (int j : js)
      if (left.at(j, zero) != right.at(j, zero)) {
        r.index = j;
        break;
      }
    r.found = true;
    r.a = std::move(a);
    r.b = std::move(b);
    r.c = std::move(c);
    r.left = std::move(left);
    r.right = std::move(right);
    return r;
  }
  return r;
}

Verdict check_dist_transfer(const IndexScheme& scheme, Law side, std::size_t samples,
                            std::uint64_t seed) {
  if (side != Law::left_dist && side != Law::right_dist)
    throw InputError("distributivity transfer needs left-dist or right-dist");
  if (!scheme.psi[0].is_identity() || !scheme.phi[0].is_identity())
    throw PreconditionError("distributivity transfer needs identity shifts for the addition");
  std::mt19937_64 rng(seed);
  auto add = [&](const SuppElement& x, const SuppElement& y) { return s_mu(Op::add, x, y, scheme); };
  auto mul = [&](const SuppElement& x, const SuppElement& y) { return s_mu(Op::mul, x, y, scheme); };
  for (std::size_t i = 0; i < samples; ++i) {
    auto a = random_element(scheme, rng);
    auto b = random_element(scheme, rng);
    auto c = random_element(scheme, rng);
    const bool left = side == Law::left_dist;
    auto lhs = left ? mul(a, add(b, c)) : mul(add(b, c), a);
    auto rhs = left ? add(mul(a, b), mul(a, c)) : add(mul(b, a), mul(c, a));
    if (lhs != rhs)
      return Verdict::fail({{scheme.render(a), scheme.render(b), scheme.render(c)},
                            "sides differ: " + scheme.render(lhs) + " vs " + scheme.render(rhs)});
  }
  Verdict v = Verdict::ok();
  v.sampled = true;
  return v;
}

Verdict check_lex_order(const IndexScheme& scheme) {
  const auto elems = enumerate_window(scheme);
  for (const auto& y : elems) {
    if (lex_compare(y, y, scheme) != 0)
      return Verdict::fail({{scheme.render(y)}, "y < y"});
    for (const auto& z : elems) {
      const auto yz = lex_compare(y, z, scheme);
      if (y != z && yz == 0)
        return Verdict::fail({{scheme.render(y), scheme.render(z)}, "distinct elements compare equal"});
      if (yz != 0 && (lex_compare(z, y, scheme) < 0) == (yz < 0))
        return Verdict::fail({{scheme.render(y), scheme.render(z)}, "comparison is not antisymmetric"});
    }
  }
  for (const auto& x : elems)
    for (const auto& y : elems) {
      if (lex_compare(x, y, scheme) >= 0) continue;
      for (const auto& z : elems)
        if (lex_compare(y, z, scheme) < 0 && lex_compare(x, z, scheme) >= 0)
          return Verdict::fail({{scheme.render(x), scheme.render(y), scheme.render(z)},
                                "x < y < z but not x < z"});
    }
  return Verdict::ok();
}

Verdict check_strict_monotone(const BinaryTable& op, const OrderRelation& order) {
  const auto n = static_cast<Elem>(order.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem c = 0; c < n; ++c) {
      if (!order.leq(a, c)) continue;
      for (Elem b = 0; b < n; ++b)
        for (Elem d = 0; d < n; ++d) {
          if (!order.leq(b, d) || (a == c && b == d)) continue;
          if (!order.less(op(a, b), op(c, d)))
            return Verdict::fail({{order.name(a), order.name(b), order.name(c), order.name(d)},
                                  "op(a,b) is not strictly below op(c,d)"});
        }
    }
  return Verdict::ok();
}

Verdict check_lex_monotone(Op op, const IndexScheme& scheme, bool strict) {
  auto elems = enumerate_window(scheme);
  std::sort(elems.begin(), elems.end(),
            [&](const auto& x, const auto& y) { return lex_compare(x, y, scheme) < 0; });
  const auto n = elems.size();
  std::vector<SuppElement> prod(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) prod[i * n + k] = s_mu(op, elems[i], elems[k], scheme);
  // Sorted, so index order is the lexicographic order.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a; c < n; ++c)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t d = b; d < n; ++d) {
          if (strict && a == c && b == d) continue;
          const auto cmp = lex_compare(prod[a * n + b], prod[c * n + d], scheme);
          if (strict ? cmp < 0 : cmp <= 0) continue;
          return Verdict::fail(
              {{scheme.render(elems[a]), scheme.render(elems[b]), scheme.render(elems[c]),
                scheme.render(elems[d])},
               std::string(strict ? "mu(a,b) is not below mu(c,d): "
                                  : "mu(a,b) is above mu(c,d): ") +
                   scheme.render(prod[a * n + b]) + " vs " + scheme.render(prod[c * n + d])});
        }
  return Verdict::ok();
}

}  // namespace skew
