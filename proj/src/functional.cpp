#include "skew/functional.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>

#include "grid.hpp"
#include "skew/error.hpp"

namespace skew {

struct Functional::Cache {
  std::once_flag once;
  std::vector<Elem> values;
};

Functional::Functional(SpacePtr space, Kind kind, std::string label, EvalFn eval, DomainFn defined)
    : space_(std::move(space)),
      kind_(kind),
      label_(std::move(label)),
      eval_(std::move(eval)),
      defined_(std::move(defined)),
      cache_(std::make_shared<Cache>()) {
  if (!space_) throw InputError("functional without a function space");
}

Elem Functional::eval(const Fn& f) const {
  if (f.size() != space_->dim()) throw InputError("function has the wrong number of points");
  if (!defined_at(f)) throw InputError(label_ + " is not defined at " + space_->render(f));
  return eval_(f);
}

bool Functional::defined_at(const Fn& f) const {
  if (f.size() != space_->dim()) return false;
  return !defined_ || defined_(f);
}

const std::vector<Elem>& Functional::table() const {
  std::call_once(cache_->once, [this] {
    const auto& fs = space_->functions();
    cache_->values.reserve(fs.size());
    for (const auto& f : fs) cache_->values.push_back(defined_at(f) ? eval_(f) : kUndefined);
  });
  return cache_->values;
}

Functional dirac(SpacePtr space, std::size_t x) {
  if (x >= space->dim()) throw InputError("dirac point outside the space");
  auto label = "dirac " + space->points()[x];
  return Functional(std::move(space), Functional::Kind::dirac, std::move(label),
                    [x](const Fn& f) { return f[x]; });
}

Functional sup_over(SpacePtr space, PointSet e) {
  check_subset(e, space->dim());
  if (e == 0) throw InputError("sup over an empty set of points");
  auto label = "sup_over " + space->render(e);
  const FunctionSpace* sp = space.get();
  return Functional(std::move(space), Functional::Kind::sup_over, std::move(label),
                    [sp, e](const Fn& f) {
                      std::vector<Elem> vals;
                      for (std::size_t x = 0; x < f.size(); ++x)
                        if (e >> x & 1u) vals.push_back(f[x]);
                      auto s = sup_over(vals, sp->K().order);
                      if (!s) throw CapacityError("no sup of " + sp->render(f) + " in " + sp->K().label);
                      return *s;
                    });
}

Functional from_table(SpacePtr space, std::vector<Elem> values, std::string label) {
  const auto& fs = space->functions();
  if (values.size() != fs.size()) throw InputError("table size does not match the space");
  for (Elem v : values)
    if (v != Functional::kUndefined && v >= space->K().size())
      throw InputError("table value outside K");
  auto shared = std::make_shared<const std::vector<Elem>>(std::move(values));
  const FunctionSpace* sp = space.get();
  auto lookup = [sp, shared](const Fn& f) -> Elem {
    auto p = sp->position(f);
    return p ? (*shared)[*p] : Functional::kUndefined;
  };
  return Functional(std::move(space), Functional::Kind::table, std::move(label), lookup,
                    [lookup](const Fn& f) { return lookup(f) != Functional::kUndefined; });
}

Functional normalization_on_constants(SpacePtr space) {
  std::vector<Elem> values(space->functions().size(), Functional::kUndefined);
  for (Elem c = 0; c < space->K().size(); ++c)
    if (auto p = space->position(space->constant(c))) values[*p] = c;
  return from_table(std::move(space), std::move(values), "constants");
}

Functional weighted_combo(Side side, const std::vector<Elem>& coeffs,
                          const std::vector<Functional>& parts) {
  if (parts.empty() || coeffs.size() != parts.size())
    throw InputError("a combination needs one coefficient per part");
  const auto space = parts[0].space_ptr();
  for (const auto& p : parts)
    if (p.space().points() != space->points() || p.space().K().names() != space->K().names())
      throw InputError("combined functionals live on different spaces");
  const auto& K = space->K();
  Elem sum = K.zero;
  for (Elem c : coeffs) {
    if (c >= K.size()) throw InputError("coefficient outside K");
    if (!K.order.less(K.zero, c))
      throw PreconditionError("coefficient " + K.name(c) + " is not above zero");
    sum = K.add(sum, c);
  }
  if (sum != K.one)
    throw PreconditionError("coefficients sum to " + K.name(sum) + ", not " + K.name(K.one));
  for (Law law : {Law::left_dist, Law::right_dist})
    if (auto v = check_law(K, law); !v)
      throw PreconditionError(K.label + " is not " + std::string(law_name(law)) + ": " +
                              render(*v.witness));

  std::string label = std::string("combo ") + (side == Side::left ? "left" : "right") + " [";
  for (std::size_t i = 0; i < coeffs.size(); ++i) label += (i ? ", " : "") + K.name(coeffs[i]);
  label += "] [";
  for (std::size_t i = 0; i < parts.size(); ++i) label += (i ? ", " : "") + parts[i].label();
  label += "]";
  const FinStruct* k = &space->K();
  return Functional(
      space, Functional::Kind::combo, std::move(label),
      [=](const Fn& f) {
        Elem acc = k->zero;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          const Elem v = parts[i].eval(f);
          acc = k->add(acc, side == Side::left ? k->mul(coeffs[i], v) : k->mul(v, coeffs[i]));
        }
        return acc;
      },
      [parts](const Fn& f) {
        return std::all_of(parts.begin(), parts.end(), [&](const auto& p) { return p.defined_at(f); });
      });
}

namespace {

std::optional<Elem> value_join(const FinStruct& K, Elem a, Elem b, bool join) {
  if (K.order.leq(a, b)) return join ? b : a;
  if (K.order.leq(b, a)) return join ? a : b;
  return std::nullopt;
}

}  // namespace

Functional combine(Joint op, const Functional& a, const Functional& b) {
  if (a.space().points() != b.space().points() || a.space().K().names() != b.space().K().names())
    throw InputError("combined functionals live on different spaces");
  static const char* names[] = {"+", "v", "^"};
  auto label = "(" + a.label() + " " + names[static_cast<int>(op)] + " " + b.label() + ")";
  const FinStruct* k = &a.space().K();
  return Functional(
      a.space_ptr(), Functional::Kind::pointwise, std::move(label),
      [=](const Fn& f) {
        const Elem x = a.eval(f), y = b.eval(f);
        if (op == Joint::add) return k->add(x, y);
        auto r = value_join(*k, x, y, op == Joint::join);
        if (!r) throw InputError("values " + k->name(x) + " and " + k->name(y) + " are incomparable");
        return *r;
      },
      [=](const Fn& f) { return a.defined_at(f) && b.defined_at(f); });
}

Functional pushforward(SpacePtr target, const std::vector<std::size_t>& point_map,
                       const Homomorphism& u, const Functional& inner, std::vector<Elem> section) {
  if (auto v = check_homomorphism(u); !v)
    throw InputError("pushforward along a map that is not a homomorphism: " + render(*v.witness));
  if (inner.space().K().names() != u.source.names())
    throw InputError("homomorphism source does not match the functional's values");
  if (target->K().names() != u.target.names())
    throw InputError("homomorphism target does not match the target space");
  if (point_map.size() != inner.space().dim()) throw InputError("point map has the wrong length");
  for (auto y : point_map)
    if (y >= target->dim()) throw InputError("point map leaves the target points");

  const auto n2 = u.target.size();
  if (section.empty()) {
    section.assign(n2, Functional::kUndefined);
    for (Elem s = static_cast<Elem>(u.source.size()); s-- > 0;) section[u(s)] = s;
  } else {
    if (section.size() != n2) throw InputError("section has the wrong length");
    for (Elem t = 0; t < n2; ++t) {
      const bool hit = std::find(u.map.begin(), u.map.end(), t) != u.map.end();
      if (!hit) {
        section[t] = Functional::kUndefined;
      } else if (section[t] >= u.source.size() || u(section[t]) != t) {
        throw InputError("section does not pick a preimage of " + u.target.name(t));
      }
    }
  }

  auto pull = [section, point_map](const Fn& g) -> std::optional<Fn> {
    Fn h;
    h.values.reserve(point_map.size());
    for (auto y : point_map) {
      const Elem s = section[g[y]];
      if (s == Functional::kUndefined) return std::nullopt;
      h.values.push_back(s);
    }
    return h;
  };
  auto label = "push(" + inner.label() + ")";
  return Functional(
      std::move(target), Functional::Kind::pushforward, std::move(label),
      [=](const Fn& g) { return u(inner.eval(*pull(g))); },
      [=](const Fn& g) {
        auto h = pull(g);
        return h && inner.defined_at(*h);
      });
}

bool extensionally_equal(const Functional& a, const Functional& b) {
  return a.space().points() == b.space().points() && a.space().K().names() == b.space().K().names() &&
         a.space().functions() == b.space().functions() && a.table() == b.table();
}

bool AxiomReport::holds() const {
  return std::all_of(entries.begin(), entries.end(), [](auto& e) { return e.second.holds; });
}

bool AxiomReport::sampled() const {
  return std::any_of(entries.begin(), entries.end(), [](auto& e) { return e.second.sampled; });
}

const Verdict& AxiomReport::at(std::string_view name) const {
  for (const auto& [n, v] : entries)
    if (n == name) return v;
  throw InputError("no axiom named '" + std::string(name) + "' in the report");
}

namespace {

/// Runs `probe` over instance indices 0..total-1, or over `limit` sampled
/// ones when the grid is larger.
using detail::over_grid;

/// Evaluation against the cached table, with members outside the space or
/// the domain reported as nullopt.
struct Probe {
  const Functional& nu;
  const FunctionSpace& sp;
  const FinStruct& K;
  const std::vector<Fn>& fs;
  const std::vector<Elem>& t;
  FiniteAlgebra alg;

  explicit Probe(const Functional& v)
      : nu(v), sp(v.space()), K(sp.K()), fs(sp.functions()), t(v.table()), alg(K) {}

  std::optional<Elem> at(std::size_t i) const {
    return t[i] == Functional::kUndefined ? std::nullopt : std::optional<Elem>(t[i]);
  }
  std::optional<Elem> operator()(const Fn& f) const {
    auto p = sp.position(f);
    return p ? at(*p) : std::nullopt;
  }
  std::string fn(const Fn& f) const { return sp.render(f); }
  std::string el(Elem e) const { return K.name(e); }
};

using MaybeWitness = std::optional<Witness>;

Verdict normalization(const Probe& p, const Budget& b) {
  return over_grid(p.K.size(), b, [&](std::size_t i) -> MaybeWitness {
    const Elem c = static_cast<Elem>(i);
    auto v = p(p.sp.constant(c));
    if (!v || *v == c) return std::nullopt;
    return Witness{{p.el(c)}, "v(g^c) = " + p.el(*v)};
  });
}

Verdict translation(const Probe& p, const Budget& b, Side side) {
  const auto n = p.fs.size();
  return over_grid(p.K.size() * n, b, [&](std::size_t i) -> MaybeWitness {
    const Elem c = static_cast<Elem>(i / n);
    const auto& f = p.fs[i % n];
    auto vf = p.at(i % n);
    auto shifted = odot(p.alg, c, f, side);
    auto vs = p(shifted);
    if (!vf || !vs) return std::nullopt;
    const Elem rhs = side == Side::left ? p.K.add(c, *vf) : p.K.add(*vf, c);
    if (*vs == rhs) return std::nullopt;
    const bool left = side == Side::left;
    return Witness{{p.el(c), p.fn(f)},
                   std::string(left ? "v(c+f) = " : "v(f+c) = ") + p.el(*vs) +
                       (left ? " but c+v(f) = " : " but v(f)+c = ") + p.el(rhs)};
  });
}

Verdict lattice(const Probe& p, const Budget& b, bool join) {
  const auto n = p.fs.size();
  return over_grid(n * n, b, [&](std::size_t i) -> MaybeWitness {
    const auto &f = p.fs[i / n], &g = p.fs[i % n];
    auto r = join ? vee(p.alg, f, g) : wedge(p.alg, f, g);
    if (!r) return std::nullopt;
    auto vf = p.at(i / n), vg = p.at(i % n), vr = p(*r.value);
    if (!vf || !vg || !vr) return std::nullopt;
    auto rhs = value_join(p.K, *vf, *vg, join);
    const char* op = join ? "max" : "min";
    if (!rhs)
      return Witness{{p.fn(f), p.fn(g)}, "v(f) = " + p.el(*vf) + " and v(g) = " + p.el(*vg) +
                                             " are incomparable"};
    if (*vr == *rhs) return std::nullopt;
    return Witness{{p.fn(f), p.fn(g)}, std::string("v(") + op + "(f,g)) = " + p.el(*vr) + " but " +
                                           op + "(v(f),v(g)) = " + p.el(*rhs)};
  });
}

Verdict order_preserving(const Probe& p, const Budget& b) {
  const auto n = p.fs.size();
  return over_grid(n * n, b, [&](std::size_t i) -> MaybeWitness {
    const auto &f = p.fs[i / n], &g = p.fs[i % n];
    if (!pointwise_leq(p.alg, f, g)) return std::nullopt;
    auto vf = p.at(i / n), vg = p.at(i % n);
    if (!vf || !vg || p.K.order.leq(*vf, *vg)) return std::nullopt;
    return Witness{{p.fn(f), p.fn(g)}, "f <= g but v(f) = " + p.el(*vf) + ", v(g) = " + p.el(*vg)};
  });
}

Verdict homogeneous(const Probe& p, const Budget& b, Side side) {
  const auto n = p.fs.size();
  return over_grid(p.K.size() * n, b, [&](std::size_t i) -> MaybeWitness {
    const Elem c = static_cast<Elem>(i / n);
    const auto& f = p.fs[i % n];
    const auto bc = p.sp.constant(c);
    auto scaled = side == Side::left ? pointwise(p.alg, PointwiseOp::mul, bc, f)
                                     : pointwise(p.alg, PointwiseOp::mul, f, bc);
    auto vf = p.at(i % n), vs = p(scaled);
    if (!vf || !vs) return std::nullopt;
    const Elem rhs = side == Side::left ? p.K.mul(c, *vf) : p.K.mul(*vf, c);
    if (*vs == rhs) return std::nullopt;
    const bool left = side == Side::left;
    return Witness{{p.el(c), p.fn(f)},
                   std::string(left ? "v(bf) = " : "v(fb) = ") + p.el(*vs) +
                       (left ? " but b v(f) = " : " but v(f) b = ") + p.el(rhs)};
  });
}

Verdict non_expanding(const Probe& p, const Budget& b) {
  const auto n = p.fs.size();
  const auto k = p.K.size();
  return over_grid(n * n * k, b, [&](std::size_t i) -> MaybeWitness {
    const Elem c = static_cast<Elem>(i % k);
    const auto& f = p.fs[i / k / n];
    const auto& h = p.fs[i / k % n];
    auto vf = p.at(i / k / n), vh = p.at(i / k % n);
    if (!vf || !vh) return std::nullopt;
    for (Side side : {Side::right, Side::left}) {
      if (!pointwise_leq(p.alg, f, odot(p.alg, c, h, side))) continue;
      const Elem bound = side == Side::right ? p.K.add(*vh, c) : p.K.add(c, *vh);
      if (p.K.order.leq(*vf, bound)) continue;
      return Witness{{p.fn(f), p.fn(h), p.el(c)},
                     std::string(side == Side::right ? "f <= h+c but v(f) = " : "f <= c+h but v(f) = ") +
                         p.el(*vf) + " exceeds " + p.el(bound)};
    }
    return std::nullopt;
  });
}

Verdict both(Verdict a, Verdict b) {
  Verdict out = a.holds ? std::move(b) : std::move(a);
  out.sampled = a.sampled || b.sampled;
  return out;
}

}  // namespace

AxiomReport check_idempotent(const Functional& nu, Budget budget) {
  Probe p(nu);
  AxiomReport r;
  r.entries.emplace_back("normalization", normalization(p, budget));
  r.entries.emplace_back("left-translation", translation(p, budget, Side::left));
  r.entries.emplace_back("right-translation", translation(p, budget, Side::right));
  r.entries.emplace_back("join-preserving", lattice(p, budget, true));
  r.entries.emplace_back("meet-preserving", lattice(p, budget, false));
  return r;
}

AxiomReport check_order_and_homogeneity(const Functional& nu, Budget budget) {
  Probe p(nu);
  AxiomReport r;
  r.entries.emplace_back("order-preserving", order_preserving(p, budget));
  r.entries.emplace_back("left-homogeneous", homogeneous(p, budget, Side::left));
  r.entries.emplace_back("right-homogeneous", homogeneous(p, budget, Side::right));
  return r;
}

AxiomReport check_weak_properties(const Functional& nu, Budget budget) {
  Probe p(nu);
  AxiomReport r;
  auto additive = both(translation(p, budget, Side::right), translation(p, budget, Side::left));
  auto order = order_preserving(p, budget);
  auto expand = non_expanding(p, budget);
  Verdict implication = Verdict::ok();
  if (additive.holds && order.holds && !expand.holds) {
    implication = Verdict::fail(*expand.witness);
    implication.witness->note = "weakly additive and order preserving, yet " + implication.witness->note;
  }
  implication.sampled = additive.sampled || order.sampled || expand.sampled;
  r.entries.emplace_back("weakly-additive", std::move(additive));
  r.entries.emplace_back("order-preserving", std::move(order));
  r.entries.emplace_back("normalized", normalization(p, budget));
  r.entries.emplace_back("non-expanding", std::move(expand));
  r.entries.emplace_back("weak-implication", std::move(implication));
  return r;
}

Verdict check_normalized_at(const Functional& nu, Elem c) {
  if (c >= nu.space().K().size()) throw InputError("constant outside K");
  const auto g = nu.space().constant(c);
  if (!nu.defined_at(g)) throw InputError(nu.label() + " is not defined on the constant");
  const Elem v = nu.eval(g);
  if (v == c) return Verdict::ok();
  return Verdict::fail({{nu.space().K().name(c)}, "v(g^c) = " + nu.space().K().name(v)});
}

namespace {

void require_closed_domain(const Functional& base) {
  const auto& sp = base.space();
  const auto& fs = sp.functions();
  const auto& t = base.table();
  const auto alg = sp.algebra();
  auto in_domain = [&](const Fn& f) {
    auto p = sp.position(f);
    return p && t[*p] != Functional::kUndefined;
  };
  for (Elem c = 0; c < sp.K().size(); ++c)
    if (!in_domain(sp.constant(c)))
      throw PreconditionError("extension base misses the constant " + sp.K().name(c));
  std::vector<std::size_t> dom;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (t[i] != Functional::kUndefined) dom.push_back(i);
  for (auto i : dom) {
    for (Elem c = 0; c < sp.K().size(); ++c)
      for (Side s : {Side::left, Side::right})
        if (auto m = odot(alg, c, fs[i], s); sp.position(m) && !in_domain(m))
          throw PreconditionError("extension base is not closed: misses " + sp.render(m));
    for (auto j : dom)
      for (bool join : {true, false})
        if (auto r = vee(alg, fs[i], fs[j], join); r && !in_domain(*r.value))
          throw PreconditionError("extension base is not closed: misses " + sp.render(*r.value));
  }
}

}  // namespace

Functional extend_inf(const Functional& base, const Fn& g, ExtensionVariant variant) {
  const auto& sp = base.space();
  const auto& fs = sp.functions();
  const auto alg = sp.algebra();
  const auto& K = sp.K();
  auto gp = sp.position(g);
  if (!gp) throw InputError("extension target " + sp.render(g) + " is not in the space");
  require_closed_domain(base);
  const auto& t = base.table();
  if (t[*gp] != Functional::kUndefined) return base;

  std::vector<char> in_m(fs.size(), 0);
  std::vector<std::size_t> members, queue;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (t[i] != Functional::kUndefined) {
      in_m[i] = 1;
      members.push_back(i);
    }
  auto add = [&](const Fn& f) {
    auto p = sp.position(f);
    if (!p || in_m[*p]) return;
    in_m[*p] = 1;
    members.push_back(*p);
    queue.push_back(*p);
  };
  add(g);
  while (!queue.empty()) {
    const auto i = queue.back();
    queue.pop_back();
    for (Elem c = 0; c < K.size(); ++c)
      for (Side s : {Side::left, Side::right}) add(odot(alg, c, fs[i], s));
    for (std::size_t k = 0; k < members.size(); ++k)
      for (bool join : {true, false})
        if (auto r = vee(alg, fs[i], fs[members[k]], join)) add(*r.value);
  }

  std::vector<Elem> values = t;
  for (auto m : members) {
    if (t[m] != Functional::kUndefined) continue;
    std::vector<Elem> minorants;
    for (std::size_t h = 0; h < fs.size(); ++h)
      if (t[h] != Functional::kUndefined && pointwise_leq(alg, fs[h], fs[m])) minorants.push_back(t[h]);
    if (minorants.empty())
      throw InputError("no function of the base domain lies below " + sp.render(fs[m]));
    auto v = variant == ExtensionVariant::inf ? inf_over(minorants, K.order) : sup_over(minorants, K.order);
    if (!v)
      throw CapacityError(std::string("the minorant values of ") + sp.render(fs[m]) + " have no " +
                          (variant == ExtensionVariant::inf ? "inf" : "sup"));
    values[m] = *v;
  }
  auto label = base.kind() == Functional::Kind::extension ? base.label()
                                                          : base.label() + " extended by " +
                                                                (variant == ExtensionVariant::inf ? "inf" : "sup");
  Functional out = from_table(base.space_ptr(), std::move(values), std::move(label));
  return Functional(out.space_ptr(), Functional::Kind::extension, out.label(),
                    [out](const Fn& f) { return out.eval(f); },
                    [out](const Fn& f) { return out.defined_at(f); });
}

Functional extend_iterated(const Functional& base, ExtensionVariant variant) {
  Functional cur = base;
  const auto& fs = base.space().functions();
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (cur.table()[i] == Functional::kUndefined) cur = extend_inf(cur, fs[i], variant);
  return cur;
}

Functional lift_along(SpacePtr source, const std::vector<std::size_t>& point_map,
                      const Functional& nu, ExtensionVariant variant) {
  const auto& target = nu.space();
  if (point_map.size() != source->dim()) throw InputError("point map has the wrong length");
  if (source->K().names() != target.K().names()) throw InputError("spaces have different values");
  std::vector<char> hit(target.dim(), 0);
  for (auto y : point_map) {
    if (y >= target.dim()) throw InputError("point map leaves the target points");
    hit[y] = 1;
  }
  if (std::count(hit.begin(), hit.end(), 0))
    throw PreconditionError("lifting needs a surjective point map");

  std::vector<Elem> values(source->functions().size(), Functional::kUndefined);
  for (const auto& g : target.functions()) {
    if (!nu.defined_at(g)) continue;
    Fn h;
    for (auto y : point_map) h.values.push_back(g[y]);
    if (auto p = source->position(h)) values[*p] = nu.eval(g);
  }
  return extend_iterated(from_table(source, std::move(values), "lift(" + nu.label() + ")"), variant);
}

Verdict supported_on(const Functional& nu, PointSet e, Budget budget) {
  Probe p(nu);
  check_subset(e, p.sp.dim());
  return over_grid(p.fs.size(), budget, [&](std::size_t i) -> MaybeWitness {
    const auto& f = p.fs[i];
    for (std::size_t x = 0; x < f.size(); ++x)
      if ((e >> x & 1u) && f[x] != p.K.zero) return std::nullopt;
    auto v = p.at(i);
    if (!v || *v == p.K.zero) return std::nullopt;
    return Witness{{p.fn(f)}, "vanishes on " + p.sp.render(e) + " but v(f) = " + p.el(*v)};
  });
}

namespace {

std::size_t subset_count(std::size_t n) {
  if (n > 16) throw CapacityError("support search is limited to 16 points");
  return std::size_t{1} << n;
}

}  // namespace

std::optional<PointSet> support_of(const Functional& nu, Budget budget) {
  const auto total = subset_count(nu.space().dim());
  std::optional<PointSet> acc;
  for (PointSet e = 0; e < total; ++e)
    if (supported_on(nu, e, budget)) acc = acc ? (*acc & e) : e;
  return acc;
}

Verdict depends_only_on(const Functional& nu, PointSet e, Budget budget) {
  Probe p(nu);
  check_subset(e, p.sp.dim());
  std::map<std::vector<Elem>, std::size_t> seen;
  return over_grid(p.fs.size(), budget, [&](std::size_t i) -> MaybeWitness {
    auto v = p.at(i);
    if (!v) return std::nullopt;
    std::vector<Elem> key;
    for (std::size_t x = 0; x < p.sp.dim(); ++x)
      if (e >> x & 1u) key.push_back(p.fs[i][x]);
    auto [it, fresh] = seen.emplace(std::move(key), i);
    if (fresh || p.t[it->second] == *v) return std::nullopt;
    return Witness{{p.fn(p.fs[it->second]), p.fn(p.fs[i])},
                   "agree on " + p.sp.render(e) + " but v = " + p.el(p.t[it->second]) + ", " + p.el(*v)};
  });
}

PointSet dependence_support(const Functional& nu, Budget budget) {
  const auto total = subset_count(nu.space().dim());
  PointSet acc = total - 1;
  for (PointSet e = 0; e < total; ++e)
    if (depends_only_on(nu, e, budget)) acc &= e;
  return acc;
}

namespace {

bool in_family(const Functional& nu, Family family) {
  if (family == Family::all) return true;
  Probe p(nu);
  const Budget exhaustive{std::numeric_limits<std::size_t>::max(), 1};
  if (family == Family::order_weak)
    return translation(p, exhaustive, Side::right).holds && translation(p, exhaustive, Side::left).holds &&
           order_preserving(p, exhaustive).holds;
  return normalization(p, exhaustive).holds && translation(p, exhaustive, Side::left).holds &&
         translation(p, exhaustive, Side::right).holds && lattice(p, exhaustive, true).holds &&
         lattice(p, exhaustive, false).holds;
}

}  // namespace

std::vector<Functional> enumerate_family(SpacePtr space, Family family, std::size_t limit) {
  const auto n = space->functions().size();
  const auto k = space->K().size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > limit / k) throw CapacityError("more than " + std::to_string(limit) + " functionals");
    count *= k;
  }
  std::vector<Functional> out;
  std::vector<Elem> values(n, 0);
  for (std::size_t c = 0; c < count; ++c) {
    auto nu = from_table(space, values, "t" + std::to_string(c));
    if (in_family(nu, family)) out.push_back(std::move(nu));
    for (std::size_t i = 0; i < n && ++values[i] == k; ++i) values[i] = 0;
  }
  return out;
}

bool MonadReport::holds() const {
  return !inconclusive && closure && left_unit && right_unit && associativity && bar_constant &&
         bar_join && bar_meet;
}

namespace {

/// One level of the iterated construction: points and the idempotent
/// functionals on C(points, K), which become the points of the next level.
struct Level {
  SpacePtr space;
  std::vector<Functional> members;
  std::map<std::vector<Elem>, std::size_t> index;
};

class Tower {
 public:
  Tower(const FunctionSpace& base, std::size_t limit) : K_(base.K()) {
    auto sp = std::make_shared<const FunctionSpace>(base.points(), base.K());
    for (int k = 0; k < 3; ++k) {
      Level lv;
      lv.space = sp;
      lv.members = enumerate_family(sp, Family::idempotent, limit);
      std::vector<std::string> names;
      for (std::size_t i = 0; i < lv.members.size(); ++i) {
        lv.index.emplace(lv.members[i].table(), i);
        names.push_back("t" + std::to_string(k + 1) + "." + std::to_string(i));
      }
      levels_.push_back(std::move(lv));
      if (names.empty() || k == 2) break;
      sp = std::make_shared<const FunctionSpace>(std::move(names), base.K());
    }
  }

  std::size_t levels() const { return levels_.size(); }
  /// Points of level k: the base points for k = 0, else members of level k-1.
  std::size_t points(std::size_t k) const { return levels_[k].space->dim(); }
  const Level& level(std::size_t k) const { return levels_[k]; }

  /// Looks a table over C(P_k, K) up among the members of level k.
  std::optional<std::size_t> find(std::size_t k, const std::vector<Elem>& table) const {
    auto it = levels_[k].index.find(table);
    if (it == levels_[k].index.end()) return std::nullopt;
    return it->second;
  }

  /// eta: P_k -> P_{k+1}, a -> dirac a.
  std::optional<std::size_t> eta(std::size_t k, std::size_t a) const {
    std::vector<Elem> t;
    for (const auto& g : levels_[k].space->functions()) t.push_back(g[a]);
    return find(k, t);
  }

  /// g-bar on P_{k+1}: nu -> nu(g) for g in C(P_k, K).
  Fn bar(std::size_t k, std::size_t g) const {
    Fn out;
    for (const auto& nu : levels_[k].members) out.values.push_back(nu.table()[g]);
    return out;
  }

  /// xi: P_{k+2} -> P_{k+1}, lambda -> (g -> lambda(g-bar)).
  std::optional<std::size_t> xi(std::size_t k, std::size_t lambda) const {
    const auto& lam = levels_[k + 1].members[lambda];
    const auto& sp_next = *levels_[k + 1].space;
    std::vector<Elem> t;
    for (std::size_t g = 0; g < levels_[k].space->functions().size(); ++g)
      t.push_back(lam.table()[*sp_next.position(bar(k, g))]);
    return find(k, t);
  }

  /// T(phi): P_{a+1} -> P_{b+1} for phi: P_a -> P_b, nu -> (g -> nu(g o phi)).
  std::optional<std::size_t> lift(std::size_t a, std::size_t b, const std::vector<std::size_t>& phi,
                                  std::size_t nu) const {
    const auto& m = levels_[a].members[nu];
    std::vector<Elem> t;
    for (const auto& g : levels_[b].space->functions()) {
      Fn h;
      for (auto x : phi) h.values.push_back(g[x]);
      t.push_back(m.table()[*levels_[a].space->position(h)]);
    }
    return find(b, t);
  }

  const FinStruct& K() const { return K_; }

 private:
  FinStruct K_;
  std::vector<Level> levels_;
};

std::string at_point(const Tower& tw, std::size_t k, std::size_t i) {
  return tw.level(k).space->points().at(i);
}

}  // namespace

MonadReport monad_check(const FunctionSpace& space, std::size_t limit) {
  Tower tw(space, limit);
  MonadReport r;
  r.level_sizes.push_back(space.dim());
  for (std::size_t k = 0; k < tw.levels(); ++k) r.level_sizes.push_back(tw.level(k).members.size());
  r.inconclusive = tw.levels() < 3 ||
                   std::any_of(r.level_sizes.begin() + 1, r.level_sizes.end(), [](auto n) { return n < 2; });
  if (tw.levels() < 3) {
    const Witness w{{}, "a level of idempotent functionals is empty"};
    r.closure = r.left_unit = r.right_unit = r.associativity = Verdict::fail(w);
    r.bar_constant = r.bar_join = r.bar_meet = Verdict::fail(w);
    return r;
  }

  const auto& K = tw.K();
  auto missing = [&](std::string what, std::string where) {
    return Verdict::fail({{std::move(where)}, std::move(what) + " is not idempotent"});
  };

  // Maps used by the laws, as index tables.
  std::vector<std::size_t> eta0, eta1, xi0;
  for (std::size_t a = 0; a < tw.points(0) && r.closure; ++a) {
    if (auto e = tw.eta(0, a)) eta0.push_back(*e);
    else r.closure = missing("dirac", at_point(tw, 0, a));
  }
  for (std::size_t a = 0; a < tw.points(1) && r.closure; ++a) {
    if (auto e = tw.eta(1, a)) eta1.push_back(*e);
    else r.closure = missing("dirac", at_point(tw, 1, a));
  }
  for (std::size_t l = 0; l < tw.points(2) && r.closure; ++l) {
    if (auto x = tw.xi(0, l)) xi0.push_back(*x);
    else r.closure = missing("xi", at_point(tw, 2, l));
  }
  if (!r.closure) {
    r.left_unit = r.right_unit = r.associativity = r.closure;
  } else {
    for (std::size_t nu = 0; nu < tw.points(1) && r.left_unit && r.right_unit; ++nu) {
      const auto name = at_point(tw, 1, nu);
      if (xi0[eta1[nu]] != nu) r.left_unit = Verdict::fail({{name}, "xi(eta_T(v)) != v"});
      if (auto t = tw.lift(0, 1, eta0, nu); !t) {
        r.closure = r.right_unit = missing("T(eta)", name);
      } else if (xi0[*t] != nu) {
        r.right_unit = Verdict::fail({{name}, "xi(T(eta)(v)) != v"});
      }
    }
    for (std::size_t big = 0; big < tw.level(2).members.size() && r.associativity; ++big) {
      const auto name = "T3#" + std::to_string(big);
      auto a = tw.xi(1, big);
      auto b = tw.lift(2, 1, xi0, big);
      if (!a || !b) {
        r.closure = r.associativity = missing(!a ? "xi_T" : "T(xi)", name);
      } else if (xi0[*a] != xi0[*b]) {
        r.associativity = Verdict::fail({{name}, "xi(xi_T(L)) = " + at_point(tw, 1, xi0[*a]) +
                                                     " but xi(T(xi)(L)) = " + at_point(tw, 1, xi0[*b])});
      }
    }
  }

  // The bar map on the first two levels.
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& sp = *tw.level(k).space;
    const auto& fs = sp.functions();
    const auto& next = *tw.level(k + 1).space;
    const auto alg = FiniteAlgebra(K);
    for (Elem b = 0; b < K.size() && r.bar_constant; ++b)
      if (tw.bar(k, *sp.position(sp.constant(b))) != next.constant(b))
        r.bar_constant = Verdict::fail({{K.name(b)}, "bar of the constant is not constant"});
    for (std::size_t g = 0; g < fs.size(); ++g)
      for (std::size_t h = 0; h < fs.size(); ++h)
        for (bool join : {true, false}) {
          auto& verdict = join ? r.bar_join : r.bar_meet;
          if (!verdict) continue;
          auto gh = vee(alg, fs[g], fs[h], join);
          if (!gh) continue;
          auto lhs = tw.bar(k, *sp.position(*gh.value));
          auto rhs = vee(alg, tw.bar(k, g), tw.bar(k, h), join);
          if (!rhs || lhs != *rhs.value)
            verdict = Verdict::fail({{sp.render(fs[g]), sp.render(fs[h])},
                                     std::string("bar does not commute with ") + (join ? "max" : "min")});
        }
  }
  return r;
}

Verdict check_exact_transport(const Homomorphism& s0, const Homomorphism& s1,
                              const std::vector<std::string>& points, Family family) {
  if (s0.target.names() != s1.source.names())
    throw InputError("homomorphisms are not composable");
  auto sp0 = std::make_shared<const FunctionSpace>(points, s0.source);
  auto sp1 = std::make_shared<const FunctionSpace>(points, s0.target);
  const auto& K2 = s1.target;
  std::vector<std::size_t> id(points.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;

  // The image module s0(C(X,K0)) inside C(X,K1), by position.
  std::vector<std::size_t> module;
  for (const auto& h : sp0->functions()) {
    Fn g;
    for (auto v : h.values) g.values.push_back(s0(v));
    module.push_back(*sp1->position(g));
  }
  std::sort(module.begin(), module.end());
  module.erase(std::unique(module.begin(), module.end()), module.end());

  auto restrict_to_module = [&](const std::vector<Elem>& t) {
    std::vector<Elem> out;
    for (auto i : module) out.push_back(t[i]);
    return out;
  };
  std::set<std::vector<Elem>> images;
  for (const auto& lam : enumerate_family(sp0, family))
    images.insert(restrict_to_module(pushforward(sp1, id, s0, lam).table()));

  const auto& fs = sp1->functions();
  for (const auto& nu : enumerate_family(sp1, family)) {
    const auto t = nu.table();
    const bool in_image = images.count(restrict_to_module(t)) > 0;
    bool in_kernel = true;
    for (auto i : module) in_kernel = in_kernel && s1(t[i]) == K2.zero;
    if (in_image == in_kernel) continue;
    std::string values = "{";
    for (auto i : module) {
      if (values.size() > 1) values += ", ";
      values += sp1->render(fs[i]) + " -> " + s0.target.name(t[i]);
    }
    values += "}";
    return Verdict::fail({{values}, in_image ? "a pushed-forward functional outside the kernel"
                                             : "a kernel functional that is no pushforward"});
  }
  return Verdict::ok();
}

}  // namespace skew
