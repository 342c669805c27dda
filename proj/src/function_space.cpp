#include "skew/function_space.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace skew {

FunctionSpace::FunctionSpace(std::vector<std::string> points, FinStruct k, Monotone tag,
                             std::optional<OrderRelation> point_order)
    : points_(std::move(points)), k_(std::move(k)), tag_(tag), order_(std::move(point_order)) {
  k_.validate_shape();
  if (points_.empty()) throw InputError("a function space needs at least one point");
  if (points_.size() > 64) throw CapacityError("function spaces are limited to 64 points");
  if (std::set<std::string>(points_.begin(), points_.end()).size() != points_.size())
    throw InputError("point names repeat");
  if (tag_ != Monotone::none && !order_) throw InputError("a monotone space needs a point order");
  if (order_ && order_->names() != points_) throw InputError("point order names other points");

  if (points_.size() >= 2) {
    const auto n = static_cast<Elem>(k_.size());
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b) {
        const Elem pair[2] = {a, b};
        if (!sup_over(pair, k_.order))
          throw InputError("values " + k_.name(a) + " and " + k_.name(b) + " have no sup in " +
                           k_.label);
      }
  }

  raw_count_ = 1;
  bool too_many = false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (raw_count_ > kMaxFunctions / k_.size()) too_many = true;
    raw_count_ = too_many ? kMaxFunctions + 1 : raw_count_ * k_.size();
  }
  if (too_many) return;
  const auto alg = algebra();
  for (std::uint64_t c = 0; c < raw_count_; ++c) {
    Fn f = decode(c);
    if (order_ && !is_monotone(alg, f, *order_, tag_)) continue;
    members_.push_back(std::move(f));
    codes_.push_back(c);
  }
}

std::size_t FunctionSpace::point_index(const std::string& name) const {
  auto it = std::find(points_.begin(), points_.end(), name);
  if (it == points_.end()) throw InputError("unknown point '" + name + "'");
  return static_cast<std::size_t>(it - points_.begin());
}

const std::vector<Fn>& FunctionSpace::functions() const {
  if (raw_count_ > kMaxFunctions)
    throw CapacityError("C(X,K) has more than " + std::to_string(kMaxFunctions) + " functions");
  return members_;
}

std::uint64_t FunctionSpace::code(const Fn& f) const {
  if (f.size() != dim()) throw InputError("function has the wrong number of points");
  std::uint64_t c = 0;
  for (std::size_t i = dim(); i-- > 0;) {
    if (f[i] >= k_.size()) throw InputError("function value outside K");
    c = c * k_.size() + f[i];
  }
  return c;
}

Fn FunctionSpace::decode(std::uint64_t code) const {
  Fn f;
  f.values.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    f.values.push_back(static_cast<Elem>(code % k_.size()));
    code /= k_.size();
  }
  return f;
}

bool FunctionSpace::contains(const Fn& f) const {
  if (f.size() != dim()) return false;
  for (auto v : f.values)
    if (v >= k_.size()) return false;
  return !order_ || is_monotone(algebra(), f, *order_, tag_);
}

std::optional<std::size_t> FunctionSpace::position(const Fn& f) const {
  if (f.size() != dim()) return std::nullopt;
  for (auto v : f.values)
    if (v >= k_.size()) return std::nullopt;
  const auto c = code(f);
  auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
  if (it == codes_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

std::string FunctionSpace::render(const Fn& f) const {
  std::string out = "{";
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (x) out += ", ";
    out += (x < dim() ? points_[x] : "?") + ": " + k_.name(f[x]);
  }
  return out + "}";
}

std::string FunctionSpace::render(PointSet e) const {
  std::string out = "{";
  for (std::size_t x = 0; x < dim(); ++x)
    if (e >> x & 1u) {
      if (out.size() > 1) out += ", ";
      out += points_[x];
    }
  return out + "}";
}

PointSet FunctionSpace::parse_points(const std::string& text) const {
  auto trim = [](std::string s) {
    auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
    return s;
  };
  std::string body = trim(text);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw InputError("point set '" + text + "' must be written {x, y, ...}");
  body = trim(body.substr(1, body.size() - 2));
  PointSet e = 0;
  if (body.empty()) return e;
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    e |= PointSet{1} << point_index(trim(body.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return e;
}

FinStruct induced_struct(const FunctionSpace& space) {
  const auto& fs = space.functions();
  if (fs.size() > 256) throw CapacityError("induced structure is limited to 256 functions");
  std::vector<std::string> names;
  for (const auto& f : fs) names.push_back(space.render(f));
  auto index_of = [&](const Fn& f) {
    auto it = std::find(fs.begin(), fs.end(), f);
    if (it == fs.end()) throw InputError("operation leaves the function space");
    return static_cast<Elem>(it - fs.begin());
  };
  const auto n = fs.size();
  const auto alg = space.algebra();
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (pointwise_leq(alg, fs[a], fs[b])) pairs.emplace_back(a, b);

  FinStruct s;
  s.label = "C(X," + space.K().label + ")";
  s.order = OrderRelation(std::move(names), pairs);
  s.add = BinaryTable::from(n, [&](Elem a, Elem b) {
    return index_of(pointwise(alg, PointwiseOp::add, fs[a], fs[b]));
  });
  s.mul = BinaryTable::from(n, [&](Elem a, Elem b) {
    return index_of(pointwise(alg, PointwiseOp::mul, fs[a], fs[b]));
  });
  s.zero = index_of(space.constant(space.K().zero));
  s.one = index_of(space.constant(space.K().one));
  s.flags = space.K().flags;
  s.flags.erase(Law::quasi_solvable);
  return s;
}

}  // namespace skew
