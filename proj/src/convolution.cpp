#include "skew/convolution.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "grid.hpp"
#include "skew/error.hpp"

namespace skew {

void ActionSystem::validate() const {
  K.validate_shape();
  const auto ng = group.size(), nx = points.size();
  if (ng == 0 || nx == 0) throw InputError("action system needs a group and points");
  if (op.size() != ng) throw InputError("group table does not match the group");
  if (unit >= ng) throw InputError("unit outside the group");
  if (std::set<std::string>(group.begin(), group.end()).size() != ng)
    throw InputError("group element names repeat");
  if (std::set<std::string>(points.begin(), points.end()).size() != nx)
    throw InputError("point names repeat");
  if (action.size() != ng || rho.size() != ng) throw InputError("action or cocycle misses a group element");
  for (Elem g = 0; g < ng; ++g) {
    if (action[g].size() != nx || rho[g].size() != nx)
      throw InputError("action or cocycle row for " + group[g] + " has the wrong length");
    for (Elem x = 0; x < nx; ++x) {
      if (action[g][x] >= nx) throw InputError("v_" + group[g] + " leaves the points");
      if (rho[g][x] >= K.size()) throw InputError("cocycle value outside K");
    }
  }
  auto in_L = [&](Elem a) { return std::find(L.begin(), L.end(), a) != L.end(); };
  for (Elem a : L)
    if (a >= K.size()) throw InputError("L names an element outside K");
  if (!in_L(K.zero) || !in_L(K.one)) throw InputError("L must contain 0 and 1");
  for (Elem g = 0; g < ng; ++g)
    for (Elem x = 0; x < nx; ++x) {
      const Elem r = rho[g][x];
      if (r == K.zero)
        throw InputError("cocycle vanishes at (" + group[g] + ", " + points[x] + ")");
      if (!in_L(r))
        throw InputError("cocycle value " + K.name(r) + " at (" + group[g] + ", " + points[x] +
                         ") is outside L");
    }
}

bool ActionSystem::unit_cocycle() const {
  for (const auto& row : rho)
    for (Elem r : row)
      if (r != K.one) return false;
  return true;
}

ActionSystem right_regular(std::vector<std::string> group, BinaryTable op, Elem unit, FinStruct K,
                           Regime regime) {
  ActionSystem s;
  const auto n = group.size();
  s.points = group;
  s.group = std::move(group);
  s.op = std::move(op);
  s.unit = unit;
  s.action.assign(n, std::vector<Elem>(n));
  for (Elem g = 0; g < n; ++g)
    for (Elem x = 0; x < n; ++x) s.action[g][x] = s.op(x, g);
  s.rho.assign(n, std::vector<Elem>(n, K.one));
  s.L = {K.zero};
  if (K.one != K.zero) s.L.push_back(K.one);
  s.K = std::move(K);
  s.regime = regime;
  return s;
}

Verdict check_action(const ActionSystem& sys) {
  sys.validate();
  const auto ng = static_cast<Elem>(sys.group.size());
  const auto nx = static_cast<Elem>(sys.points.size());
  const auto& K = sys.K;
  const auto& G = sys.group;
  const auto& X = sys.points;
  for (Elem x = 0; x < nx; ++x)
    if (sys.action[sys.unit][x] != x)
      return Verdict::fail({{G[sys.unit], X[x]}, "v_e moves the point"});
  for (Elem g = 0; g < ng; ++g)
    for (Elem h = 0; h < ng; ++h)
      for (Elem x = 0; x < nx; ++x) {
        const Elem lhs = sys.action[h][sys.action[g][x]];
        const Elem rhs = sys.action[sys.mul(g, h)][x];
        if (lhs != rhs)
          return Verdict::fail({{G[g], G[h]}, "v_h(v_g(" + X[x] + ")) = " + X[lhs] + " but v_gh(" + X[x] +
                                                  ") = " + X[rhs]});
      }
  for (Elem a : sys.L)
    for (Elem b : sys.L)
      for (Elem c = 0; c < K.size(); ++c)
        if (K.mul(a, K.mul(b, c)) != K.mul(K.mul(a, b), c))
          return Verdict::fail({{K.name(a), K.name(b), K.name(c)}, "a(bc) != (ab)c with a, b in L"});
  for (Elem g = 0; g < ng; ++g)
    for (Elem h = 0; h < ng; ++h)
      for (Elem x = 0; x < nx; ++x) {
        const Elem lhs = K.mul(sys.rho[g][x], sys.rho[h][sys.action[g][x]]);
        const Elem rhs = sys.rho[sys.mul(g, h)][x];
        if (lhs != rhs)
          return Verdict::fail({{G[g], G[h], X[x]}, "rho(g,x) rho(h,v_g x) = " + K.name(lhs) +
                                                        " but rho(gh,x) = " + K.name(rhs)});
      }
  for (Elem x = 0; x < nx; ++x)
    if (sys.rho[sys.unit][x] != K.one)
      return Verdict::fail({{G[sys.unit], X[x]}, "rho(e,x) is not one"});
  return Verdict::ok();
}

Fn apply_T(const ActionSystem& sys, Elem g, const Fn& f) {
  if (g >= sys.group.size()) throw InputError("group element outside the group");
  if (f.size() != sys.points.size()) throw InputError("function has the wrong number of points");
  Fn out;
  out.values.reserve(f.size());
  for (Elem x = 0; x < f.size(); ++x) out.values.push_back(sys.K.mul(sys.rho[g][x], f[sys.action[g][x]]));
  return out;
}

SpacePtr group_space(const ActionSystem& sys) {
  if (sys.points != sys.group) throw InputError("convolution needs the group acting on itself");
  return std::make_shared<const FunctionSpace>(sys.group, sys.K);
}

namespace {

void require_group_space(const Functional& nu, const ActionSystem& sys) {
  if (nu.space().points() != sys.group || nu.space().K().names() != sys.K.names())
    throw InputError(nu.label() + " does not live on C(G, K)");
}

}  // namespace

Functional convolve(const Functional& nu, const Functional& lambda, std::shared_ptr<const ActionSystem> sys) {
  if (sys->points != sys->group) throw InputError("convolution needs the group acting on itself");
  require_group_space(nu, *sys);
  require_group_space(lambda, *sys);
  auto inner = [=](const Fn& f) -> std::optional<Fn> {
    Fn h;
    for (Elem g = 0; g < sys->group.size(); ++g) {
      auto tf = apply_T(*sys, g, f);
      if (!lambda.defined_at(tf)) return std::nullopt;
      h.values.push_back(lambda.eval(tf));
    }
    return h;
  };
  return Functional(
      nu.space_ptr(), Functional::Kind::convolution, "(" + nu.label() + " * " + lambda.label() + ")",
      [=](const Fn& f) { return nu.eval(*inner(f)); },
      [=](const Fn& f) {
        auto h = inner(f);
        return h && nu.defined_at(*h);
      });
}

namespace {

const char* kind_name(ConvKind kind) {
  switch (kind) {
    case ConvKind::add: return "+";
    case ConvKind::join: return "max";
    case ConvKind::meet: return "min";
  }
  return "?";
}

}  // namespace

Verdict check_kind(const Functional& nu, ConvKind kind, Budget budget) {
  const auto& sp = nu.space();
  const auto& K = sp.K();
  if (kind == ConvKind::add)
    for (Law law : {Law::comm_add, Law::assoc_add})
      if (!check_law(K, law))
        throw PreconditionError("additive kind needs " + std::string(law_name(law)) + " in " + K.label);
  const auto& fs = sp.functions();
  const auto& t = nu.table();
  const auto alg = sp.algebra();
  const auto n = fs.size();
  return detail::over_grid(n * n, budget, [&](std::size_t i) -> std::optional<Witness> {
    const auto &f = fs[i / n], &g = fs[i % n];
    const Elem vf = t[i / n], vg = t[i % n];
    if (vf == Functional::kUndefined || vg == Functional::kUndefined) return std::nullopt;
    Fn s;
    Elem rhs;
    if (kind == ConvKind::add) {
      s = pointwise(alg, PointwiseOp::add, f, g);
      rhs = K.add(vf, vg);
    } else {
      auto r = vee(alg, f, g, kind == ConvKind::join);
      if (!r) return std::nullopt;
      s = *r.value;
      const bool up = K.order.leq(vf, vg), down = K.order.leq(vg, vf);
      if (!up && !down)
        return Witness{{sp.render(f), sp.render(g)}, "v(f) and v(g) are incomparable"};
      rhs = (up == (kind == ConvKind::join)) ? vg : vf;
    }
    auto p = sp.position(s);
    if (!p || t[*p] == Functional::kUndefined || t[*p] == rhs) return std::nullopt;
    const std::string op = kind_name(kind);
    return Witness{{sp.render(f), sp.render(g)}, "v(f " + op + " g) = " + K.name(t[*p]) + " but v(f) " + op +
                                                     " v(g) = " + K.name(rhs)};
  });
}

Verdict check_invariant(const Functional& nu, const ActionSystem& sys, Budget budget) {
  const auto& sp = nu.space();
  if (sp.points() != sys.points || sp.K().names() != sys.K.names())
    throw InputError(nu.label() + " does not live on C(X, K) of the action");
  const auto& fs = sp.functions();
  const auto ng = sys.group.size();
  return detail::over_grid(ng * fs.size(), budget, [&](std::size_t i) -> std::optional<Witness> {
    const Elem g = static_cast<Elem>(i % ng);
    const auto& f = fs[i / ng];
    const auto tf = apply_T(sys, g, f);
    if (!nu.defined_at(f) || !nu.defined_at(tf)) return std::nullopt;
    const Elem a = nu.eval(tf), b = nu.eval(f);
    if (a == b) return std::nullopt;
    return Witness{{sys.group[g], sp.render(f)},
                   "v(T_g f) = " + sp.K().name(a) + " but v(f) = " + sp.K().name(b)};
  });
}

Functional kind_sum(ConvKind kind, const Functional& a, const Functional& b) {
  switch (kind) {
    case ConvKind::add: return combine(Joint::add, a, b);
    case ConvKind::join: return combine(Joint::join, a, b);
    case ConvKind::meet: return combine(Joint::meet, a, b);
  }
  throw InputError("unknown kind");
}

std::vector<Functional> kind_family(SpacePtr space, ConvKind kind, std::size_t limit) {
  std::vector<Functional> out;
  const Budget exhaustive{std::numeric_limits<std::size_t>::max(), 1};
  for (auto& nu : enumerate_family(std::move(space), Family::all, limit))
    if (check_kind(nu, kind, exhaustive)) out.push_back(std::move(nu));
  return out;
}

bool has_zero_divisors(const FinStruct& K) {
  for (Elem a = 0; a < K.size(); ++a)
    for (Elem b = 0; b < K.size(); ++b)
      if (a != K.zero && b != K.zero && K.mul(a, b) == K.zero) return true;
  return false;
}

SupportBounds support_bounds(const Functional& nu, const ActionSystem& sys, Budget budget) {
  if (auto v = check_invariant(nu, sys, budget); !v)
    throw PreconditionError(nu.label() + " is not invariant: " + render(*v.witness));
  const auto nx = sys.points.size();
  if (nx > 64) throw CapacityError("support bounds are limited to 64 points");
  const PointSet all = nx == 64 ? ~PointSet{0} : (PointSet{1} << nx) - 1;
  const auto& K = sys.K;

  // T(A): union over g of supp(x -> rho(g,x) chi_A(v_g x)).
  auto T = [&](PointSet a) {
    PointSet out = 0;
    for (Elem g = 0; g < sys.group.size(); ++g)
      for (Elem x = 0; x < nx; ++x) {
        const Elem chi = (a >> sys.action[g][x] & 1u) ? K.one : K.zero;
        if (K.mul(sys.rho[g][x], chi) != K.zero) out |= PointSet{1} << x;
      }
    return out;
  };
  // P(A): union over g of v_g(A).
  auto P = [&](PointSet a) {
    PointSet out = 0;
    for (Elem g = 0; g < sys.group.size(); ++g)
      for (Elem x = 0; x < nx; ++x)
        if (a >> x & 1u) out |= PointSet{1} << sys.action[g][x];
    return out;
  };
  auto iterate = [](auto&& step, PointSet start, std::vector<PointSet>& chain) {
    chain = {start};
    while (true) {
      const PointSet next = step(chain.back());
      if (std::find(chain.begin(), chain.end(), next) != chain.end()) return next;
      chain.push_back(next);
    }
  };

  SupportBounds b;
  b.t_limit = iterate(T, all, b.t_chain);
  b.p_limit = iterate(P, all, b.p_chain);
  b.support = support_of(nu, budget);
  const PointSet s = b.support.value_or(all);
  b.contained = (s & ~b.t_limit) == 0 && (s & ~b.p_limit) == 0;
  b.no_zero_divisors = !has_zero_divisors(K);
  b.g_stable = Verdict::ok();
  for (Elem g = 0; g < sys.group.size() && b.g_stable; ++g)
    for (Elem x = 0; x < nx; ++x)
      if ((s >> x & 1u) && !(s >> sys.action[g][x] & 1u)) {
        b.g_stable = Verdict::fail({{sys.group[g], sys.points[x]}, "v_g moves a support point out of the support"});
        break;
      }
  return b;
}

std::optional<std::size_t> ConvAlgebra::find(const Functional& nu) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].table() == nu.table()) return i;
  return std::nullopt;
}

ConvAlgebra saturate(std::shared_ptr<const ActionSystem> sys, ConvKind kind, std::vector<Functional> generators,
                     std::size_t budget) {
  ConvAlgebra alg;
  alg.sys = sys;
  alg.kind = kind;
  alg.budget = budget;
  std::map<std::vector<Elem>, std::size_t> seen;
  auto admit = [&](Functional nu) {
    if (seen.emplace(nu.table(), alg.members.size()).second) alg.members.push_back(std::move(nu));
  };
  for (auto& g : generators) {
    require_group_space(g, *sys);
    admit(std::move(g));
  }
  std::size_t done = 0;
  while (done < alg.members.size()) {
    ++alg.rounds;
    const auto end = alg.members.size();
    for (std::size_t i = 0; i < end; ++i)
      for (std::size_t j = (i < done ? done : 0); j < end; ++j) {
        if (alg.members.size() >= budget) return alg;
        admit(kind_sum(kind, alg.members[i], alg.members[j]));
        admit(convolve(alg.members[i], alg.members[j], sys));
        admit(convolve(alg.members[j], alg.members[i], sys));
      }
    done = end;
  }
  alg.saturated = true;
  return alg;
}

namespace {

std::string pair_name(const ConvAlgebra& alg, std::size_t i) { return alg.members[i].label(); }

bool group_associative(const ActionSystem& sys) {
  const auto n = static_cast<Elem>(sys.group.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (sys.mul(sys.mul(a, b), c) != sys.mul(a, sys.mul(b, c))) return false;
  return true;
}

}  // namespace

AxiomReport check_quasiring(const ConvAlgebra& alg) {
  const auto& m = alg.members;
  const auto n = m.size();
  const auto& sys = alg.sys;
  std::vector<std::vector<Functional>> sum, prod;
  sum.reserve(n);
  prod.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sum.emplace_back();
    prod.emplace_back();
    for (std::size_t j = 0; j < n; ++j) {
      sum[i].push_back(kind_sum(alg.kind, m[i], m[j]));
      prod[i].push_back(convolve(m[i], m[j], sys));
    }
  }
  auto same = [](const Functional& a, const Functional& b) { return a.table() == b.table(); };

  AxiomReport r;
  Verdict closure_sum = Verdict::ok(), closure_prod = Verdict::ok(), kind = Verdict::ok();
  for (std::size_t i = 0; i < n && (closure_sum || closure_prod); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (closure_sum && !alg.find(sum[i][j]))
        closure_sum = Verdict::fail({{pair_name(alg, i), pair_name(alg, j)}, "sum leaves the family"});
      if (closure_prod && !alg.find(prod[i][j]))
        closure_prod = Verdict::fail({{pair_name(alg, i), pair_name(alg, j)}, "product leaves the family"});
    }
  for (std::size_t i = 0; i < n && kind; ++i)
    if (auto v = check_kind(m[i], alg.kind); !v)
      kind = Verdict::fail({{pair_name(alg, i)}, "not of the algebra's kind: " + render(*v.witness)});

  Verdict left = Verdict::ok(), right = Verdict::ok();
  for (std::size_t i = 0; i < n && (left || right); ++i)
    for (std::size_t j = 0; j < n && (left || right); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // (m_i + m_j) * m_k = m_i * m_k + m_j * m_k
        if (left && !same(convolve(sum[i][j], m[k], sys), kind_sum(alg.kind, prod[i][k], prod[j][k])))
          left = Verdict::fail({{pair_name(alg, i), pair_name(alg, j), pair_name(alg, k)},
                                "(a + b) * c != a * c + b * c"});
        // m_k * (m_i + m_j) = m_k * m_i + m_k * m_j
        if (right && !same(convolve(m[k], sum[i][j], sys), kind_sum(alg.kind, prod[k][i], prod[k][j])))
          right = Verdict::fail({{pair_name(alg, k), pair_name(alg, i), pair_name(alg, j)},
                                 "c * (a + b) != c * a + c * b"});
      }

  Verdict unit = Verdict::ok();
  auto sp = m.empty() ? group_space(*sys) : m[0].space_ptr();
  const auto delta = dirac(sp, sys->unit);
  for (std::size_t i = 0; i < n && unit; ++i) {
    if (!same(convolve(m[i], delta, sys), m[i]))
      unit = Verdict::fail({{pair_name(alg, i)}, "v * dirac e != v"});
    else if (!same(convolve(delta, m[i], sys), m[i]))
      unit = Verdict::fail({{pair_name(alg, i)}, "dirac e * v != v"});
  }

  r.entries.emplace_back("closure-sum", std::move(closure_sum));
  r.entries.emplace_back("closure-product", std::move(closure_prod));
  r.entries.emplace_back("kind", std::move(kind));
  r.entries.emplace_back("left-distributive", std::move(left));
  r.entries.emplace_back("right-distributive", std::move(right));
  r.entries.emplace_back("unit", std::move(unit));
  if (group_associative(*sys)) {
    Verdict assoc = Verdict::ok();
    for (std::size_t i = 0; i < n && assoc; ++i)
      for (std::size_t j = 0; j < n && assoc; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!same(convolve(prod[i][j], m[k], sys), convolve(m[i], prod[j][k], sys))) {
            assoc = Verdict::fail({{pair_name(alg, i), pair_name(alg, j), pair_name(alg, k)},
                                   "(a * b) * c != a * (b * c)"});
            break;
          }
    r.entries.emplace_back("associative", std::move(assoc));
  }
  return r;
}

std::vector<Functional> invariant_members(const ConvAlgebra& alg) {
  std::vector<Functional> out;
  for (const auto& nu : alg.members)
    if (check_invariant(nu, *alg.sys)) out.push_back(nu);
  return out;
}

AxiomReport check_ideal(const std::vector<Functional>& H, const ConvAlgebra& alg) {
  const auto& sys = alg.sys;
  switch (sys->regime) {
    case Regime::undeclared:
      throw PreconditionError("the ideal check needs a declared regime");
    case Regime::trivial_cocycle:
      if (!sys->unit_cocycle()) throw PreconditionError("regime declares rho = 1 but the cocycle differs");
      break;
    case Regime::commutative_associative:
      for (Law law : {Law::comm_mul, Law::assoc_mul})
        if (!check_law(sys->K, law))
          throw PreconditionError("regime needs " + std::string(law_name(law)) + " in " + sys->K.label);
      break;
  }
  std::set<std::vector<Elem>> members;
  for (const auto& h : H) members.insert(h.table());
  auto in_H = [&](const Functional& nu) { return members.count(nu.table()) > 0; };

  AxiomReport r;
  Verdict invariant = Verdict::ok();
  for (const auto& h : H)
    if (auto v = check_invariant(h, *sys); !v) {
      invariant = Verdict::fail({{h.label()}, "not invariant: " + render(*v.witness)});
      break;
    }
  Verdict sum = Verdict::ok(), left = Verdict::ok(), right = Verdict::ok();
  for (const auto& a : H)
    for (const auto& b : H)
      if (sum && !in_H(kind_sum(alg.kind, a, b)))
        sum = Verdict::fail({{a.label(), b.label()}, "sum leaves H"});
  for (const auto& s : alg.members)
    for (const auto& h : H) {
      if (left && !in_H(convolve(s, h, sys)))
        left = Verdict::fail({{s.label(), h.label()}, "s * h leaves H"});
      if (right && !in_H(convolve(h, s, sys)))
        right = Verdict::fail({{h.label(), s.label()}, "h * s leaves H"});
    }
  r.entries.emplace_back("invariant", std::move(invariant));
  r.entries.emplace_back("closure-sum", std::move(sum));
  r.entries.emplace_back("left-ideal", std::move(left));
  r.entries.emplace_back("right-ideal", std::move(right));
  return r;
}

}  // namespace skew
