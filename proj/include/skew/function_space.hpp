#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skew/error.hpp"
#include "skew/structure.hpp"

namespace skew {

/// What a function space needs from its value semiring.
template <class V>
concept ValueAlgebra = requires(const V& v, const typename V::value_type& a) {
  { v.add(a, a) } -> std::convertible_to<typename V::value_type>;
  { v.mul(a, a) } -> std::convertible_to<typename V::value_type>;
  { v.leq(a, a) } -> std::convertible_to<bool>;
  { v.zero() } -> std::convertible_to<typename V::value_type>;
  { v.one() } -> std::convertible_to<typename V::value_type>;
  { v.name(a) } -> std::convertible_to<std::string>;
};

/// A finite structure seen as a value algebra.
class FiniteAlgebra {
 public:
  using value_type = Elem;
  explicit FiniteAlgebra(const FinStruct& k) : k_(&k) {}
  Elem add(Elem a, Elem b) const { return k_->add(a, b); }
  Elem mul(Elem a, Elem b) const { return k_->mul(a, b); }
  bool leq(Elem a, Elem b) const { return k_->order.leq(a, b); }
  Elem zero() const { return k_->zero; }
  Elem one() const { return k_->one; }
  std::string name(Elem a) const { return k_->name(a); }
  const FinStruct& structure() const { return *k_; }

 private:
  const FinStruct* k_;
};

/// A total map from points 0..n-1 into K.
template <class T>
struct KFunction {
  std::vector<T> values;

  std::size_t size() const { return values.size(); }
  const T& operator[](std::size_t x) const { return values[x]; }
  bool operator==(const KFunction&) const = default;
};

using Fn = KFunction<Elem>;
/// Subsets of the point set as bit masks; point i is bit i.
using PointSet = std::uint64_t;

enum class PointwiseOp { add, mul };
enum class Side { left, right };

template <ValueAlgebra V>
KFunction<typename V::value_type> constant(const V& v, const typename V::value_type& c,
                                           std::size_t n) {
  return {std::vector<typename V::value_type>(n, c)};
}

template <ValueAlgebra V>
KFunction<typename V::value_type> pointwise(const V& v, PointwiseOp op,
                                            const KFunction<typename V::value_type>& f,
                                            const KFunction<typename V::value_type>& g) {
  if (f.size() != g.size()) throw InputError("functions have different domains");
  KFunction<typename V::value_type> out;
  out.values.reserve(f.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    out.values.push_back(op == PointwiseOp::add ? v.add(f[x], g[x]) : v.mul(f[x], g[x]));
  return out;
}

/// left: x -> c + f(x); right: x -> f(x) + c.
template <ValueAlgebra V>
KFunction<typename V::value_type> odot(const V& v, const typename V::value_type& c,
                                       const KFunction<typename V::value_type>& f, Side side) {
  KFunction<typename V::value_type> out;
  out.values.reserve(f.size());
  for (const auto& y : f.values) out.values.push_back(side == Side::left ? v.add(c, y) : v.add(y, c));
  return out;
}

/// Pointwise max or min, refused at the first point where the values are
/// incomparable.
template <class T>
struct Guarded {
  std::optional<KFunction<T>> value;
  std::size_t refused_at = 0;

  explicit operator bool() const { return value.has_value(); }
};

template <ValueAlgebra V>
Guarded<typename V::value_type> vee(const V& v, const KFunction<typename V::value_type>& f,
                                    const KFunction<typename V::value_type>& g, bool join = true) {
  if (f.size() != g.size()) throw InputError("functions have different domains");
  KFunction<typename V::value_type> out;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const bool fg = v.leq(f[x], g[x]), gf = v.leq(g[x], f[x]);
    if (!fg && !gf) return {std::nullopt, x};
    out.values.push_back(fg == join ? g[x] : f[x]);
  }
  return {std::move(out), 0};
}

template <ValueAlgebra V>
Guarded<typename V::value_type> wedge(const V& v, const KFunction<typename V::value_type>& f,
                                      const KFunction<typename V::value_type>& g) {
  return vee(v, f, g, false);
}

/// f(x) <= g(x) at every point.
template <ValueAlgebra V>
bool pointwise_leq(const V& v, const KFunction<typename V::value_type>& f,
                   const KFunction<typename V::value_type>& g) {
  if (f.size() != g.size()) throw InputError("functions have different domains");
  for (std::size_t x = 0; x < f.size(); ++x)
    if (!v.leq(f[x], g[x])) return false;
  return true;
}

template <ValueAlgebra V>
PointSet support(const V& v, const KFunction<typename V::value_type>& f) {
  if (f.size() > 64) throw CapacityError("supports are limited to 64 points");
  PointSet s = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (!(f[x] == v.zero())) s |= PointSet{1} << x;
  return s;
}

inline void check_subset(PointSet e, std::size_t n) {
  if (n < 64 && (e >> n) != 0) throw InputError("subset is not contained in the point set");
}

/// supp(f) is inside E.
template <ValueAlgebra V>
bool in_support_ideal(const V& v, const KFunction<typename V::value_type>& f, PointSet e) {
  check_subset(e, f.size());
  return (support(v, f) & ~e) == 0;
}

/// Extends a function on the points of E (listed in increasing order) by zero.
template <ValueAlgebra V>
KFunction<typename V::value_type> zero_extend(const V& v, const KFunction<typename V::value_type>& f,
                                              PointSet e, std::size_t n) {
  check_subset(e, n);
  KFunction<typename V::value_type> out = constant(v, v.zero(), n);
  std::size_t k = 0;
  for (std::size_t x = 0; x < n; ++x)
    if (e >> x & 1u) {
      if (k >= f.size()) throw InputError("function on E has too few values");
      out.values[x] = f[k++];
    }
  if (k != f.size()) throw InputError("function on E has too many values");
  return out;
}

enum class Monotone { none, nondecreasing, nonincreasing };

/// x <= y in the point order implies f(x) <= f(y) (or >= for nonincreasing).
template <ValueAlgebra V>
bool is_monotone(const V& v, const KFunction<typename V::value_type>& f,
                 const OrderRelation& points, Monotone tag) {
  if (tag == Monotone::none) return true;
  if (points.size() != f.size()) throw InputError("point order does not match the domain");
  for (Elem x = 0; x < f.size(); ++x)
    for (Elem y = 0; y < f.size(); ++y) {
      if (!points.leq(x, y)) continue;
      const bool ok = tag == Monotone::nondecreasing ? v.leq(f[x], f[y]) : v.leq(f[y], f[x]);
      if (!ok) return false;
    }
  return true;
}

/// C(X,K), or its monotone part, for a finite K. Members are enumerated once
/// at construction; codes are base-|K| numbers with point 0 least
/// significant.
class FunctionSpace {
 public:
  static constexpr std::size_t kMaxFunctions = std::size_t{1} << 16;

  /// Throws InputError when two values of K have no sup (so some image of a
  /// map X -> K would lack one), when a monotone tag comes without a point
  /// order, or when point names repeat.
  FunctionSpace(std::vector<std::string> points, FinStruct k, Monotone tag = Monotone::none,
                std::optional<OrderRelation> point_order = std::nullopt);

  std::size_t dim() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  std::size_t point_index(const std::string& name) const;
  const FinStruct& K() const { return k_; }
  FiniteAlgebra algebra() const { return FiniteAlgebra(k_); }
  Monotone tag() const { return tag_; }
  const std::optional<OrderRelation>& point_order() const { return order_; }

  /// All members. Throws CapacityError past kMaxFunctions.
  const std::vector<Fn>& functions() const;
  std::size_t raw_count() const { return raw_count_; }
  std::uint64_t code(const Fn& f) const;
  Fn decode(std::uint64_t code) const;
  Fn constant(Elem c) const { return {std::vector<Elem>(dim(), c)}; }
  bool contains(const Fn& f) const;
  /// Index of f in functions(), or nullopt when f is not a member.
  std::optional<std::size_t> position(const Fn& f) const;

  /// "{x1: 1, x2: 0}"
  std::string render(const Fn& f) const;
  std::string render(PointSet e) const;
  /// Parses "{x1, x3}" into a point set.
  PointSet parse_points(const std::string& text) const;

 private:
  std::vector<std::string> points_;
  FinStruct k_;
  Monotone tag_;
  std::optional<OrderRelation> order_;
  std::size_t raw_count_ = 0;
  std::vector<Fn> members_;
  std::vector<std::uint64_t> codes_;
};

using SpacePtr = std::shared_ptr<const FunctionSpace>;

/// C(X,K) as a finite structure with pointwise operations and order.
/// Throws CapacityError past 256 functions.
FinStruct induced_struct(const FunctionSpace& space);

}  // namespace skew
