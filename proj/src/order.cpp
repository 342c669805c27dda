#include "skew/order.hpp"

#include <algorithm>
#include <numeric>

#include "skew/error.hpp"

namespace skew {

std::string render(const Witness& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.items.size(); ++i) {
    if (i) out += ", ";
    out += w.items[i];
  }
  out += ")";
  if (!w.note.empty()) out += ": " + w.note;
  return out;
}

BinaryTable::BinaryTable(std::size_t n, std::vector<Elem> cells) : n_(n), cells_(std::move(cells)) {
  if (cells_.size() != n * n) throw InputError("operation table is not total");
  for (Elem v : cells_)
    if (v >= n) throw InputError("operation table value outside the carrier");
}

OrderRelation::OrderRelation(std::vector<std::string> names,
                             const std::vector<std::pair<Elem, Elem>>& leq_pairs)
    : names_(std::move(names)), leq_(names_.size() * names_.size(), 0) {
  for (auto [a, b] : leq_pairs) {
    if (a >= size() || b >= size()) throw InputError("order pair outside the carrier");
    leq_[a * size() + b] = 1;
  }
}

OrderRelation OrderRelation::chain(std::vector<std::string> names) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < names.size(); ++a)
    for (Elem b = a; b < names.size(); ++b) pairs.emplace_back(a, b);
  return OrderRelation(std::move(names), pairs);
}

OrderRelation OrderRelation::discrete(std::vector<std::string> names) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < names.size(); ++a) pairs.emplace_back(a, a);
  return OrderRelation(std::move(names), pairs);
}

OrderRelation OrderRelation::closure_of(std::vector<std::string> names,
                                        const std::vector<std::pair<Elem, Elem>>& pairs) {
  OrderRelation r(std::move(names), pairs);
  const std::size_t n = r.size();
  for (std::size_t a = 0; a < n; ++a) r.leq_[a * n + a] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r.leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (r.leq_[k * n + j]) r.leq_[i * n + j] = 1;
  return r;
}

OrderRelation OrderRelation::from_named_pairs(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& pairs, bool close) {
  OrderRelation probe(names, {});
  std::vector<std::pair<Elem, Elem>> idx;
  for (const auto& [a, b] : pairs) idx.emplace_back(probe.index(a), probe.index(b));
  return close ? closure_of(std::move(names), idx) : OrderRelation(std::move(names), idx);
}

OrderRelation OrderRelation::product(const OrderRelation& a, const OrderRelation& b) {
  std::vector<std::string> names;
  for (const auto& x : a.names())
    for (const auto& y : b.names()) names.push_back("(" + x + "," + y + ")");
  std::vector<std::pair<Elem, Elem>> pairs;
  const auto nb = static_cast<Elem>(b.size());
  for (Elem x1 = 0; x1 < a.size(); ++x1)
    for (Elem y1 = 0; y1 < nb; ++y1)
      for (Elem x2 = 0; x2 < a.size(); ++x2)
        for (Elem y2 = 0; y2 < nb; ++y2)
          if (a.leq(x1, x2) && b.leq(y1, y2)) pairs.emplace_back(x1 * nb + y1, x2 * nb + y2);
  return OrderRelation(std::move(names), pairs);
}

std::optional<Elem> OrderRelation::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Elem>(it - names_.begin());
}

Elem OrderRelation::index(const std::string& name) const {
  if (auto e = find(name)) return *e;
  throw InputError("unknown element '" + name + "'");
}

namespace {

Verdict check_preorder(const OrderRelation& r) {
  const auto n = static_cast<Elem>(r.size());
  for (Elem x = 0; x < n; ++x)
    if (!r.leq(x, x)) return Verdict::fail({{r.name(x)}, "reflexivity fails"});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (!r.leq(x, y)) continue;
      for (Elem z = 0; z < n; ++z)
        if (r.leq(y, z) && !r.leq(x, z))
          return Verdict::fail({{r.name(x), r.name(y), r.name(z)}, "transitivity fails"});
    }
  return Verdict::ok();
}

}  // namespace

Verdict check_order_axioms(const OrderRelation& r, OrderMode mode) {
  if (r.size() == 0) throw InputError("order axioms need a non-empty carrier");
  if (auto v = check_preorder(r); !v) return v;
  const auto n = static_cast<Elem>(r.size());

  if (mode == OrderMode::directed) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = x + 1; y < n; ++y) {
        bool bounded = false;
        for (Elem z = 0; z < n && !bounded; ++z) bounded = r.leq(x, z) && r.leq(y, z);
        if (!bounded) return Verdict::fail({{r.name(x), r.name(y)}, "no common upper bound"});
      }
    return Verdict::ok();
  }

  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (x != y && r.leq(x, y) && r.leq(y, x))
        return Verdict::fail({{r.name(x), r.name(y)}, "x < y and y < x"});
      if (x != y && !r.comparable(x, y))
        return Verdict::fail({{r.name(x), r.name(y)}, "incomparable distinct elements"});
    }
  if (mode == OrderMode::linear) return Verdict::ok();

  // Least elements of subsets. Exhaustive up to 16 elements; past that a
  // finite linear order is already well-ordered.
  if (n <= 16) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      bool found = false;
      for (Elem m = 0; m < n && !found; ++m) {
        if (!(mask >> m & 1u)) continue;
        bool least = true;
        for (Elem o = 0; o < n && least; ++o)
          if ((mask >> o & 1u) && !r.leq(m, o)) least = false;
        found = least;
      }
      if (!found) {
        Witness w{{}, "subset without a least element"};
        for (Elem m = 0; m < n; ++m)
          if (mask >> m & 1u) w.items.push_back(r.name(m));
        return Verdict::fail(std::move(w));
      }
    }
  }
  return Verdict::ok();
}

Verdict check_op_monotone(const BinaryTable& op, const OrderRelation& order) {
  if (op.size() != order.size()) throw InputError("operation and order have different carriers");
  std::vector<Elem> elems(order.size());
  std::iota(elems.begin(), elems.end(), Elem{0});
  return check_op_monotone(
      std::span<const Elem>(elems), [&](Elem a, Elem b) { return op(a, b); },
      [&](Elem a, Elem b) { return order.leq(a, b); },
      [&](Elem a) { return order.name(a); });
}

namespace {

std::optional<Elem> bound_over(std::span<const Elem> subset, const OrderRelation& r, bool upper) {
  if (subset.empty()) throw InputError("bound of an empty subset");
  for (Elem s : subset)
    if (s >= r.size()) throw InputError("subset element outside the carrier");
  auto below = [&](Elem a, Elem b) { return upper ? r.leq(a, b) : r.leq(b, a); };
  std::vector<Elem> bounds;
  for (Elem u = 0; u < r.size(); ++u)
    if (std::all_of(subset.begin(), subset.end(), [&](Elem s) { return below(s, u); }))
      bounds.push_back(u);
  for (Elem u : bounds)
    if (std::all_of(bounds.begin(), bounds.end(), [&](Elem v) { return below(u, v); }))
      return u;
  return std::nullopt;
}

}  // namespace

std::optional<Elem> sup_over(std::span<const Elem> subset, const OrderRelation& order) {
  return bound_over(subset, order, true);
}

std::optional<Elem> inf_over(std::span<const Elem> subset, const OrderRelation& order) {
  return bound_over(subset, order, false);
}

}  // namespace skew
