#include "workspace.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "skew/error.hpp"

namespace skew::cli {

using json = nlohmann::ordered_json;

std::size_t Workspace::entity_count() const {
  return structures.size() + spaces.size() + functionals.size() + actions.size() + schemes.size();
}

namespace {

std::string child(const std::string& at, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return at + "/" + k;
}
std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& at, const std::string& msg) {
  throw InputError((at.empty() ? "/" : at) + ": " + msg);
}

// Runs f and prefixes any InputError with the location.
template <class F>
auto located(const std::string& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    fail(at, e.what());
  }
}

const json& field(const json& obj, const std::string& at, const std::string& key) {
  if (!obj.is_object()) fail(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(at, "missing field '" + key + "'");
  return *it;
}

std::string text(const json& j, const std::string& at) {
  if (!j.is_string()) fail(at, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> texts(const json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], child(at, i)));
  return out;
}

long long integer(const json& j, const std::string& at) {
  if (!j.is_number_integer()) fail(at, "expected an integer");
  return j.get<long long>();
}

void only_keys(const json& obj, const std::string& at, std::initializer_list<const char*> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(child(at, it.key()), "unknown field");
  }
}

Elem element(const OrderRelation& order, const json& j, const std::string& at) {
  const auto name = text(j, at);
  auto e = order.find(name);
  if (!e) fail(at, "unknown element '" + name + "'");
  return *e;
}

BinaryTable table(const OrderRelation& order, const json& j, const std::string& at) {
  const auto n = order.size();
  if (!j.is_array() || j.size() != n) fail(at, "table needs " + std::to_string(n) + " rows");
  BinaryTable t(n);
  for (Elem a = 0; a < n; ++a) {
    const auto row_at = child(at, a);
    if (!j[a].is_array() || j[a].size() != n) fail(row_at, "row needs " + std::to_string(n) + " entries");
    for (Elem b = 0; b < n; ++b) t.set(a, b, element(order, j[a][b], child(row_at, b)));
  }
  return t;
}

std::vector<std::pair<std::string, std::string>> pairs(const json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array of [lower, upper] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = texts(j[i], child(at, i));
    if (p.size() != 2) fail(child(at, i), "expected [lower, upper]");
    out.emplace_back(p[0], p[1]);
  }
  return out;
}

FinStruct parse_structure(const std::string& name, const json& j, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  FinStruct s;
  if (j.contains("builtin")) {
    only_keys(j, at, {"builtin"});
    const auto spec = text(j["builtin"], child(at, "builtin"));
    s = located(child(at, "builtin"), [&] { return builtin::by_name(spec); });
  } else {
    only_keys(j, at, {"elements", "order", "add", "mul", "zero", "one", "flags"});
    auto names = texts(field(j, at, "elements"), child(at, "elements"));
    if (names.empty()) fail(child(at, "elements"), "a structure needs at least one element");
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
      fail(child(at, "elements"), "element names repeat");
    const auto order_at = child(at, "order");
    const json order = j.value("order", json("chain"));
    if (order == "chain") s.order = OrderRelation::chain(names);
    else if (order == "discrete") s.order = OrderRelation::discrete(names);
    else s.order = located(order_at, [&] { return OrderRelation::from_named_pairs(names, pairs(order, order_at), true); });
    s.add = table(s.order, field(j, at, "add"), child(at, "add"));
    s.mul = table(s.order, field(j, at, "mul"), child(at, "mul"));
    s.zero = element(s.order, field(j, at, "zero"), child(at, "zero"));
    s.one = element(s.order, field(j, at, "one"), child(at, "one"));
    if (j.contains("flags")) {
      const auto flags_at = child(at, "flags");
      const auto flags = texts(j["flags"], flags_at);
      for (std::size_t i = 0; i < flags.size(); ++i) {
        auto law = parse_law(flags[i]);
        if (!law) fail(child(flags_at, i), "unknown law '" + flags[i] + "'");
        s.flags.insert(*law);
      }
    }
  }
  s.label = name;
  located(at, [&] { s.validate_shape(); });
  if (auto v = check_declared(s); !v) fail(child(at, "flags"), "declared law fails at " + render(*v.witness));
  return s;
}

SpacePtr parse_space(const Workspace& ws, const json& j, const std::string& at, std::string& values) {
  only_keys(j, at, {"points", "values", "monotone", "order"});
  auto points = texts(field(j, at, "points"), child(at, "points"));
  values = text(field(j, at, "values"), child(at, "values"));
  auto k = ws.structures.find(values);
  if (k == ws.structures.end()) fail(child(at, "values"), "unknown structure '" + values + "'");
  Monotone tag = Monotone::none;
  if (j.contains("monotone")) {
    const auto m = text(j["monotone"], child(at, "monotone"));
    if (m == "nondecreasing") tag = Monotone::nondecreasing;
    else if (m == "nonincreasing") tag = Monotone::nonincreasing;
    else if (m != "none") fail(child(at, "monotone"), "expected nondecreasing, nonincreasing or none");
  }
  std::optional<OrderRelation> order;
  if (j.contains("order"))
    order = located(child(at, "order"),
                    [&] { return OrderRelation::from_named_pairs(points, pairs(j["order"], child(at, "order")), true); });
  else if (tag != Monotone::none)
    order = OrderRelation::chain(points);
  return located(at, [&] {
    return std::make_shared<const FunctionSpace>(std::move(points), k->second, tag, std::move(order));
  });
}

std::optional<Regime> parse_regime(const std::string& s) {
  if (s == "undeclared") return Regime::undeclared;
  if (s == "trivial-cocycle") return Regime::trivial_cocycle;
  if (s == "commutative-associative") return Regime::commutative_associative;
  return std::nullopt;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::undeclared: return "undeclared";
    case Regime::trivial_cocycle: return "trivial-cocycle";
    case Regime::commutative_associative: return "commutative-associative";
  }
  return "undeclared";
}

std::shared_ptr<const ActionSystem> parse_action(const Workspace& ws, const json& j, const std::string& at,
                                                 std::string& values) {
  only_keys(j, at, {"group", "op", "unit", "points", "action", "values", "L", "rho", "regime"});
  ActionSystem s;
  s.group = texts(field(j, at, "group"), child(at, "group"));
  const auto gorder = located(child(at, "group"), [&] { return OrderRelation::discrete(s.group); });
  s.op = table(gorder, field(j, at, "op"), child(at, "op"));
  s.unit = element(gorder, field(j, at, "unit"), child(at, "unit"));
  values = text(field(j, at, "values"), child(at, "values"));
  auto k = ws.structures.find(values);
  if (k == ws.structures.end()) fail(child(at, "values"), "unknown structure '" + values + "'");
  s.K = k->second;
  const auto& K = s.K;

  const json action = j.value("action", json("right-regular"));
  const auto action_at = child(at, "action");
  if (action == "right-regular") {
    if (j.contains("points")) fail(child(at, "points"), "a right-regular action acts on the group itself");
    s.points = s.group;
    for (Elem g = 0; g < s.group.size(); ++g) {
      s.action.emplace_back();
      for (Elem x = 0; x < s.group.size(); ++x) s.action[g].push_back(s.op(x, g));
    }
  } else {
    s.points = texts(field(j, at, "points"), child(at, "points"));
    const auto porder = located(child(at, "points"), [&] { return OrderRelation::discrete(s.points); });
    if (!action.is_object()) fail(action_at, "expected \"right-regular\" or an object of rows");
    for (const auto& g : s.group) {
      const auto row_at = child(action_at, g);
      const auto& row = field(action, action_at, g);
      if (!row.is_array() || row.size() != s.points.size())
        fail(row_at, "row needs " + std::to_string(s.points.size()) + " points");
      s.action.emplace_back();
      for (std::size_t x = 0; x < row.size(); ++x) s.action.back().push_back(element(porder, row[x], child(row_at, x)));
    }
    if (action.size() != s.group.size()) fail(action_at, "rows must name group elements only");
  }

  if (j.contains("L")) {
    const auto L_at = child(at, "L");
    if (!j["L"].is_array()) fail(L_at, "expected an array of elements");
    for (std::size_t i = 0; i < j["L"].size(); ++i) s.L.push_back(element(K.order, j["L"][i], child(L_at, i)));
  } else {
    s.L = {K.zero};
    if (K.one != K.zero) s.L.push_back(K.one);
  }
  s.rho.assign(s.group.size(), std::vector<Elem>(s.points.size(), K.one));
  if (j.contains("rho")) {
    const auto rho_at = child(at, "rho");
    const auto& rho = j["rho"];
    if (!rho.is_object()) fail(rho_at, "expected an object of rows");
    for (auto it = rho.begin(); it != rho.end(); ++it) {
      const auto row_at = child(rho_at, it.key());
      auto g = gorder.find(it.key());
      if (!g) fail(row_at, "unknown group element '" + it.key() + "'");
      if (!it->is_array() || it->size() != s.points.size())
        fail(row_at, "row needs " + std::to_string(s.points.size()) + " values");
      for (std::size_t x = 0; x < it->size(); ++x) s.rho[*g][x] = element(K.order, (*it)[x], child(row_at, x));
    }
  }
  if (j.contains("regime")) {
    const auto r = text(j["regime"], child(at, "regime"));
    auto regime = parse_regime(r);
    if (!regime) fail(child(at, "regime"), "unknown regime '" + r + "'");
    s.regime = *regime;
  }
  located(at, [&] { s.validate(); });
  if (s.regime == Regime::trivial_cocycle && !s.unit_cocycle())
    fail(child(at, "regime"), "declared trivial-cocycle but rho is not one everywhere");
  if (s.regime == Regime::commutative_associative)
    for (Law law : {Law::comm_mul, Law::assoc_mul})
      if (auto v = check_law(K, law); !v)
        fail(child(at, "regime"), "declared commutative-associative but " + std::string(law_name(law)) +
                                      " fails at " + render(*v.witness));
  return std::make_shared<const ActionSystem>(std::move(s));
}

IndexMap parse_index_map(const json& j, const std::string& at) {
  if (j.is_number_integer()) return IndexMap::shift(static_cast<int>(j.get<long long>()));
  if (!j.is_object()) fail(at, "expected an offset or {offset, table}");
  only_keys(j, at, {"offset", "table"});
  IndexMap m;
  if (j.contains("offset")) m.offset = static_cast<int>(integer(j["offset"], child(at, "offset")));
  if (j.contains("table")) {
    const auto t_at = child(at, "table");
    if (!j["table"].is_array()) fail(t_at, "expected [[from, to], ...]");
    for (std::size_t i = 0; i < j["table"].size(); ++i) {
      const auto& p = j["table"][i];
      if (!p.is_array() || p.size() != 2) fail(child(t_at, i), "expected [from, to]");
      m.table[static_cast<int>(integer(p[0], child(child(t_at, i), 0)))] =
          static_cast<int>(integer(p[1], child(child(t_at, i), 1)));
    }
  }
  return m;
}

IndexScheme parse_scheme(const Workspace& ws, const json& j, const std::string& at, std::string& component) {
  only_keys(j, at, {"component", "window", "psi", "phi", "embed"});
  IndexScheme s;
  component = text(field(j, at, "component"), child(at, "component"));
  auto k = ws.structures.find(component);
  if (k == ws.structures.end()) fail(child(at, "component"), "unknown structure '" + component + "'");
  s.component = k->second;
  const auto& w = field(j, at, "window");
  if (!w.is_array() || w.size() != 2) fail(child(at, "window"), "expected [lo, hi]");
  s.lo = static_cast<int>(integer(w[0], child(child(at, "window"), 0)));
  s.hi = static_cast<int>(integer(w[1], child(child(at, "window"), 1)));
  for (const char* key : {"psi", "phi"}) {
    if (!j.contains(key)) continue;
    const auto m_at = child(at, key);
    const auto& m = j[key];
    only_keys(m, m_at, {"add", "mul"});
    IndexMap* slot = std::string(key) == "psi" ? s.psi : s.phi;
    if (m.contains("add")) slot[0] = parse_index_map(m["add"], child(m_at, "add"));
    if (m.contains("mul")) slot[1] = parse_index_map(m["mul"], child(m_at, "mul"));
  }
  if (j.contains("embed")) {
    const auto e_at = child(at, "embed");
    const auto& e = j["embed"];
    if (!e.is_array() || e.size() != s.component.size())
      fail(e_at, "embedding needs " + std::to_string(s.component.size()) + " values");
    for (std::size_t i = 0; i < e.size(); ++i) s.embed.push_back(element(s.component.order, e[i], child(e_at, i)));
  }
  located(at, [&] { s.validate(); });
  return s;
}

// Words, with [...] and {...} groups kept whole.
std::vector<std::string> tokenize(const std::string& s, const std::string& at) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (s[i] == '[' || s[i] == '{') {
      const char close = s[i] == '[' ? ']' : '}';
      j = s.find(close, i);
      if (j == std::string::npos) fail(at, std::string("unclosed '") + s[i] + "'");
      ++j;
    } else {
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    }
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> list_items(const std::string& tok, const std::string& at) {
  if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']') fail(at, "expected [a, b, ...], got '" + tok + "'");
  std::vector<std::string> out;
  std::stringstream ss(tok.substr(1, tok.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) fail(at, "empty list item in '" + tok + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Elem value_of(const FinStruct& K, const std::string& name, const std::string& at) {
  auto e = K.order.find(name);
  if (!e) fail(at, "unknown element '" + name + "' of " + K.label);
  return *e;
}

class FunctionalResolver {
 public:
  FunctionalResolver(Workspace& ws, const json& section, const std::string& at)
      : ws_(ws), section_(section), at_(at) {}

  const Functional& resolve(const std::string& name, const std::string& from) {
    if (auto it = ws_.functionals.find(name); it != ws_.functionals.end()) return it->second;
    if (!section_.contains(name)) fail(from, "unknown functional '" + name + "'");
    if (active_.count(name)) fail(from, "functional '" + name + "' refers to itself");
    active_.insert(name);
    const auto at = child(at_, name);
    const auto& j = section_[name];
    only_keys(j, at, {"space", "expr"});
    const auto expr = text(field(j, at, "expr"), child(at, "expr"));
    std::optional<std::string> space;
    if (j.contains("space")) space = text(j["space"], child(at, "space"));
    auto nu = build(expr, space, child(at, "expr"), at);
    active_.erase(name);
    ws_.expressions[name] = expr;
    return ws_.functionals.emplace(name, std::move(nu)).first->second;
  }

 private:
  SpacePtr space_named(const std::optional<std::string>& name, const std::string& at) {
    if (!name) fail(at, "missing field 'space'");
    auto it = ws_.spaces.find(*name);
    if (it == ws_.spaces.end()) fail(child(at, "space"), "unknown space '" + *name + "'");
    return it->second;
  }

  Functional build(const std::string& expr, const std::optional<std::string>& space, const std::string& at,
                   const std::string& entry) {
    const auto tok = tokenize(expr, at);
    if (tok.empty()) fail(at, "empty expression");
    const auto& head = tok[0];
    auto want = [&](std::size_t n, const char* form) {
      if (tok.size() != n) fail(at, std::string("expected '") + form + "'");
    };
    if (head == "dirac") {
      want(2, "dirac <point>");
      auto sp = space_named(space, entry);
      return located(at, [&] { return dirac(sp, sp->point_index(tok[1])); });
    }
    if (head == "sup_over") {
      want(2, "sup_over {x, y}");
      auto sp = space_named(space, entry);
      return located(at, [&] { return sup_over(sp, sp->parse_points(tok[1])); });
    }
    if (head == "table") {
      want(2, "table [v1, v2, ...]");
      auto sp = space_named(space, entry);
      std::vector<Elem> values;
      for (const auto& v : list_items(tok[1], at))
        values.push_back(v == "undefined" ? Functional::kUndefined : value_of(sp->K(), v, at));
      return located(at, [&] { return from_table(sp, std::move(values)); });
    }
    if (head == "combo") {
      want(4, "combo left|right [c1, ...] [nu1, ...]");
      if (tok[1] != "left" && tok[1] != "right") fail(at, "combo side must be left or right");
      std::vector<Functional> parts;
      for (const auto& p : list_items(tok[3], at)) parts.push_back(resolve(p, at));
      if (parts.empty()) fail(at, "combo needs at least one part");
      std::vector<Elem> coeffs;
      for (const auto& c : list_items(tok[2], at)) coeffs.push_back(value_of(parts[0].space().K(), c, at));
      check_space(parts[0], space, at);
      return located(at, [&] {
        return weighted_combo(tok[1] == "left" ? Side::left : Side::right, coeffs, parts);
      });
    }
    if (head == "max" || head == "min" || head == "sum") {
      want(3, "max|min|sum <nu> <mu>");
      const auto& a = resolve(tok[1], at);
      const auto& b = resolve(tok[2], at);
      check_space(a, space, at);
      const Joint op = head == "max" ? Joint::join : head == "min" ? Joint::meet : Joint::add;
      return located(at, [&] { return combine(op, a, b); });
    }
    if (head == "convolve") {
      want(5, "convolve <nu> <lambda> with <action>");
      if (tok[3] != "with") fail(at, "expected 'with' before the action");
      const auto& a = resolve(tok[1], at);
      const auto& b = resolve(tok[2], at);
      auto act = ws_.actions.find(tok[4]);
      if (act == ws_.actions.end()) fail(at, "unknown action '" + tok[4] + "'");
      check_space(a, space, at);
      return located(at, [&] { return convolve(a, b, act->second); });
    }
    fail(at, "unknown functional form '" + head + "'");
  }

  void check_space(const Functional& nu, const std::optional<std::string>& space, const std::string& at) {
    if (!space) return;
    auto it = ws_.spaces.find(*space);
    if (it == ws_.spaces.end()) fail(at, "unknown space '" + *space + "'");
    if (it->second != nu.space_ptr()) fail(at, "operands do not live on space '" + *space + "'");
  }

  Workspace& ws_;
  const json& section_;
  std::string at_;
  std::set<std::string> active_;
};

ConvKind parse_kind(const std::string& s, const std::string& at) {
  if (s == "sum" || s == "+") return ConvKind::add;
  if (s == "max") return ConvKind::join;
  if (s == "min") return ConvKind::meet;
  fail(at, "kind must be sum, max or min");
}

const char* kind_text(ConvKind k) {
  switch (k) {
    case ConvKind::add: return "sum";
    case ConvKind::join: return "max";
    case ConvKind::meet: return "min";
  }
  return "max";
}

void parse_suites(Workspace& ws, const json& j, const std::string& at) {
  only_keys(j, at, {"laws", "convolution", "budget", "seed"});
  if (j.contains("laws")) {
    const auto l_at = child(at, "laws");
    const auto& laws = j["laws"];
    if (!laws.is_object()) fail(l_at, "expected structure -> [law, ...]");
    for (auto it = laws.begin(); it != laws.end(); ++it) {
      const auto s_at = child(l_at, it.key());
      if (!ws.structures.count(it.key())) fail(s_at, "unknown structure '" + it.key() + "'");
      const auto names = texts(*it, s_at);
      auto& out = ws.extra_laws[it.key()];
      for (std::size_t i = 0; i < names.size(); ++i) {
        auto law = parse_law(names[i]);
        if (!law) fail(child(s_at, i), "unknown law '" + names[i] + "'");
        out.push_back(*law);
      }
    }
  }
  if (j.contains("convolution")) {
    const auto c_at = child(at, "convolution");
    only_keys(j["convolution"], c_at, {"kind"});
    if (j["convolution"].contains("kind"))
      ws.conv_kind = parse_kind(text(j["convolution"]["kind"], child(c_at, "kind")), child(c_at, "kind"));
  }
  if (j.contains("budget")) {
    const auto b = integer(j["budget"], child(at, "budget"));
    if (b <= 0) fail(child(at, "budget"), "budget must be positive");
    ws.budget.limit = static_cast<std::size_t>(b);
  }
  if (j.contains("seed")) ws.budget.seed = static_cast<std::uint64_t>(integer(j["seed"], child(at, "seed")));
}

template <class F>
void each(const json& doc, const char* section, F&& f) {
  if (!doc.contains(section)) return;
  const auto at = child("", section);
  const auto& s = doc[section];
  if (!s.is_object()) fail(at, "expected an object of named entries");
  for (auto it = s.begin(); it != s.end(); ++it) f(it.key(), *it, child(at, it.key()));
}

}  // namespace

Workspace parse_workspace(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) fail("", "document must be an object");
  only_keys(doc, "", {"structures", "spaces", "functionals", "actions", "schemes", "suites"});

  Workspace ws;
  each(doc, "structures", [&](const std::string& name, const json& j, const std::string& at) {
    ws.structures.emplace(name, parse_structure(name, j, at));
  });
  each(doc, "spaces", [&](const std::string& name, const json& j, const std::string& at) {
    std::string values;
    ws.spaces.emplace(name, parse_space(ws, j, at, values));
    ws.space_values[name] = values;
  });
  each(doc, "actions", [&](const std::string& name, const json& j, const std::string& at) {
    std::string values;
    ws.actions.emplace(name, parse_action(ws, j, at, values));
    ws.action_values[name] = values;
  });
  each(doc, "schemes", [&](const std::string& name, const json& j, const std::string& at) {
    std::string component;
    ws.schemes.emplace(name, parse_scheme(ws, j, at, component));
    ws.scheme_component[name] = component;
  });
  if (doc.contains("functionals")) {
    const auto& section = doc["functionals"];
    if (!section.is_object()) fail("/functionals", "expected an object of named entries");
    FunctionalResolver r(ws, section, "/functionals");
    for (auto it = section.begin(); it != section.end(); ++it) r.resolve(it.key(), child("/functionals", it.key()));
  }
  if (doc.contains("suites")) parse_suites(ws, doc["suites"], "/suites");
  return ws;
}

Workspace load_workspace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str());
}

namespace {

json names_table(const BinaryTable& t, const std::vector<std::string>& names) {
  json rows = json::array();
  for (Elem a = 0; a < t.size(); ++a) {
    json row = json::array();
    for (Elem b = 0; b < t.size(); ++b) row.push_back(names[t(a, b)]);
    rows.push_back(row);
  }
  return rows;
}

json order_pairs(const OrderRelation& o) {
  json out = json::array();
  for (Elem a = 0; a < o.size(); ++a)
    for (Elem b = 0; b < o.size(); ++b)
      if (a != b && o.leq(a, b)) out.push_back({o.name(a), o.name(b)});
  return out;
}

json index_map(const IndexMap& m) {
  if (m.table.empty()) return m.offset;
  json t = json::array();
  for (auto [from, to] : m.table) t.push_back({from, to});
  return {{"offset", m.offset}, {"table", t}};
}

}  // namespace

std::string dump_workspace(const Workspace& ws) {
  json doc;
  for (const auto& [name, s] : ws.structures) {
    json flags = json::array();
    for (Law l : s.flags) flags.push_back(std::string(law_name(l)));
    doc["structures"][name] = {{"elements", s.names()},    {"order", order_pairs(s.order)},
                               {"add", names_table(s.add, s.names())}, {"mul", names_table(s.mul, s.names())},
                               {"zero", s.name(s.zero)},   {"one", s.name(s.one)},
                               {"flags", flags}};
  }
  for (const auto& [name, sp] : ws.spaces) {
    json j = {{"points", sp->points()}, {"values", ws.space_values.at(name)}};
    if (sp->tag() != Monotone::none) {
      j["monotone"] = sp->tag() == Monotone::nondecreasing ? "nondecreasing" : "nonincreasing";
      j["order"] = order_pairs(*sp->point_order());
    }
    doc["spaces"][name] = j;
  }
  for (const auto& [name, a] : ws.actions) {
    const auto& K = a->K;
    json action, rho, L = json::array();
    for (Elem g = 0; g < a->group.size(); ++g) {
      json row = json::array(), r = json::array();
      for (Elem x = 0; x < a->points.size(); ++x) {
        row.push_back(a->points[a->action[g][x]]);
        r.push_back(K.name(a->rho[g][x]));
      }
      action[a->group[g]] = row;
      rho[a->group[g]] = r;
    }
    for (Elem l : a->L) L.push_back(K.name(l));
    doc["actions"][name] = {{"group", a->group},  {"op", names_table(a->op, a->group)},
                            {"unit", a->group[a->unit]}, {"points", a->points},
                            {"action", action},   {"values", ws.action_values.at(name)},
                            {"L", L},             {"rho", rho},
                            {"regime", regime_name(a->regime)}};
  }
  for (const auto& [name, s] : ws.schemes) {
    json j = {{"component", ws.scheme_component.at(name)},
              {"window", {s.lo, s.hi}},
              {"psi", {{"add", index_map(s.psi[0])}, {"mul", index_map(s.psi[1])}}},
              {"phi", {{"add", index_map(s.phi[0])}, {"mul", index_map(s.phi[1])}}}};
    if (!s.embed.empty()) {
      json e = json::array();
      for (Elem x : s.embed) e.push_back(s.component.name(x));
      j["embed"] = e;
    }
    doc["schemes"][name] = j;
  }
  for (const auto& [name, expr] : ws.expressions) {
    const auto& nu = ws.functionals.at(name);
    json j = {{"expr", expr}};
    for (const auto& [sname, sp] : ws.spaces)
      if (sp == nu.space_ptr()) j["space"] = sname;
    doc["functionals"][name] = j;
  }
  json suites = {{"budget", ws.budget.limit}, {"seed", ws.budget.seed},
                 {"convolution", {{"kind", kind_text(ws.conv_kind)}}}};
  for (const auto& [name, laws] : ws.extra_laws) {
    json l = json::array();
    for (Law law : laws) l.push_back(std::string(law_name(law)));
    suites["laws"][name] = l;
  }
  doc["suites"] = suites;
  return doc.dump(2) + "\n";
}

std::string eval_expression(const Workspace& ws, const std::string& expr) {
  const auto open = expr.find('(');
  if (open == std::string::npos || expr.back() != ')') throw InputError("expression must read nu(f)");
  auto name = expr.substr(0, open);
  name.erase(name.find_last_not_of(" \t") + 1);
  name.erase(0, name.find_first_not_of(" \t"));
  auto it = ws.functionals.find(name);
  if (it == ws.functionals.end()) throw InputError("unknown functional '" + name + "'");
  const auto& nu = it->second;
  const auto& sp = nu.space();
  const auto& K = sp.K();
  std::string arg = expr.substr(open + 1, expr.size() - open - 2);
  arg.erase(arg.find_last_not_of(" \t") + 1);
  arg.erase(0, arg.find_first_not_of(" \t"));

  Fn f;
  if (!arg.empty() && arg.front() == '[') {
    for (const auto& v : list_items(arg, "argument")) f.values.push_back(value_of(K, v, "argument"));
  } else if (arg.size() >= 2 && arg.front() == '{' && arg.back() == '}') {
    f.values.assign(sp.dim(), Functional::kUndefined);
    std::stringstream ss(arg.substr(1, arg.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw InputError("expected 'point: value' in '" + item + "'");
      auto trim = [](std::string s) {
        s.erase(s.find_last_not_of(" \t") + 1);
        s.erase(0, s.find_first_not_of(" \t"));
        return s;
      };
      const auto x = sp.point_index(trim(item.substr(0, colon)));
      f.values[x] = value_of(K, trim(item.substr(colon + 1)), "argument");
    }
    for (std::size_t x = 0; x < f.size(); ++x)
      if (f[x] == Functional::kUndefined) throw InputError("no value given for point " + sp.points()[x]);
  } else {
    throw InputError("argument must be [v1, ...] or {x1: v1, ...}");
  }
  if (f.size() != sp.dim()) throw InputError("argument needs " + std::to_string(sp.dim()) + " values");
  if (!sp.contains(f)) throw InputError(sp.render(f) + " is not in the space of " + name);
  return K.name(nu.eval(f));
}

}  // namespace skew::cli
