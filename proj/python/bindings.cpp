#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skew/convolution.hpp"
#include "skew/error.hpp"
#include "skew/functional.hpp"
#include "skew/ordinal.hpp"
#include "skew/s_construction.hpp"
#include "suite.hpp"
#include "workspace.hpp"

namespace py = pybind11;
using namespace skew;

namespace {

Fn to_fn(const FunctionSpace& sp, const std::vector<std::string>& values) {
  if (values.size() != sp.dim()) throw InputError("expected " + std::to_string(sp.dim()) + " values");
  Fn f;
  for (const auto& v : values) {
    auto e = sp.K().order.find(v);
    if (!e) throw InputError("unknown element '" + v + "'");
    f.values.push_back(*e);
  }
  return f;
}

std::vector<std::string> names_of(const FinStruct& k, const Fn& f) {
  std::vector<std::string> out;
  for (Elem e : f.values) out.push_back(k.name(e));
  return out;
}

py::dict report_dict(const AxiomReport& r) {
  py::dict d;
  for (const auto& [name, v] : r.entries) d[py::str(name)] = v;
  return d;
}

Law law_named(const std::string& name) {
  auto law = parse_law(name);
  if (!law) throw InputError("unknown law '" + name + "'");
  return *law;
}

ConvKind kind_named(const std::string& s) {
  if (s == "sum") return ConvKind::add;
  if (s == "max") return ConvKind::join;
  if (s == "min") return ConvKind::meet;
  throw InputError("kind must be sum, max or min");
}

Family family_named(const std::string& s) {
  if (s == "all") return Family::all;
  if (s == "order_weak") return Family::order_weak;
  if (s == "idempotent") return Family::idempotent;
  throw InputError("family must be all, order_weak or idempotent");
}

BinaryTable table_of(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& rows) {
  auto order = OrderRelation::discrete(names);
  if (rows.size() != names.size()) throw InputError("table needs one row per element");
  BinaryTable t(names.size());
  for (Elem a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != names.size()) throw InputError("table rows must be square");
    for (Elem b = 0; b < rows[a].size(); ++b) t.set(a, b, order.index(rows[a][b]));
  }
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite ordered semirings, idempotent functionals and convolution algebras";

  auto base = py::register_exception<Error>(m, "SkewError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

  py::class_<Witness>(m, "Witness")
      .def_readonly("items", &Witness::items)
      .def_readonly("note", &Witness::note)
      .def("__str__", [](const Witness& w) { return render(w); });

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("holds", &Verdict::holds)
      .def_readonly("witness", &Verdict::witness)
      .def_readonly("sampled", &Verdict::sampled)
      .def("__bool__", [](const Verdict& v) { return v.holds; })
      .def("__repr__", [](const Verdict& v) {
        return v.holds ? std::string("<holds>") : "<fails " + render(*v.witness) + ">";
      });

  py::class_<FinStruct>(m, "Structure")
      .def_readonly("label", &FinStruct::label)
      .def_property_readonly("elements", &FinStruct::names)
      .def_property_readonly("zero", [](const FinStruct& s) { return s.name(s.zero); })
      .def_property_readonly("one", [](const FinStruct& s) { return s.name(s.one); })
      .def("add", [](const FinStruct& s, const std::string& a, const std::string& b) {
        return s.name(s.add(s.index(a), s.index(b)));
      })
      .def("mul", [](const FinStruct& s, const std::string& a, const std::string& b) {
        return s.name(s.mul(s.index(a), s.index(b)));
      })
      .def("leq", [](const FinStruct& s, const std::string& a, const std::string& b) {
        return s.order.leq(s.index(a), s.index(b));
      })
      .def("check_law", [](const FinStruct& s, const std::string& law) { return check_law(s, law_named(law)); })
      .def("ideals", [](const FinStruct& s) {
        std::vector<std::vector<std::string>> out;
        for (const auto& ideal : enumerate_ideals(s)) {
          out.emplace_back();
          for (Elem e : ideal) out.back().push_back(s.name(e));
        }
        return out;
      });
  m.def("builtin", &builtin::by_name, py::arg("name"),
        "boolean, max-plus:<cap>, chain:<n>, trivial or right-dist-only");
  m.def("product", &builtin::product);
  m.def("laws", [] {
    std::vector<std::string> out;
    for (Law l : all_laws()) out.emplace_back(law_name(l));
    return out;
  });

  py::class_<Ordinal>(m, "Ordinal")
      .def(py::init([](const std::string& text) { return parse_ordinal(text); }), py::arg("text"))
      .def_static("finite", &Ordinal::finite)
      .def_static("omega", &Ordinal::omega)
      .def("__add__", [](const Ordinal& a, const Ordinal& b) { return ord_add(a, b); })
      .def("__mul__", [](const Ordinal& a, const Ordinal& b) { return ord_mul(a, b); })
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def("__str__", &Ordinal::str)
      .def("__repr__", [](const Ordinal& o) { return "Ordinal('" + o.str() + "')"; });

  py::class_<FunctionSpace, std::shared_ptr<FunctionSpace>>(m, "FunctionSpace")
      .def(py::init([](std::vector<std::string> points, FinStruct k, const std::string& monotone) {
             Monotone tag = Monotone::none;
             if (monotone == "nondecreasing") tag = Monotone::nondecreasing;
             else if (monotone == "nonincreasing") tag = Monotone::nonincreasing;
             else if (monotone != "none") throw InputError("monotone must be none, nondecreasing or nonincreasing");
             std::optional<OrderRelation> order;
             if (tag != Monotone::none) order = OrderRelation::chain(points);
             return std::make_shared<FunctionSpace>(std::move(points), std::move(k), tag, std::move(order));
           }),
           py::arg("points"), py::arg("values"), py::arg("monotone") = "none")
      .def_property_readonly("points", &FunctionSpace::points)
      .def_property_readonly("values", &FunctionSpace::K)
      .def("functions", [](const FunctionSpace& sp) {
        std::vector<std::vector<std::string>> out;
        for (const auto& f : sp.functions()) out.push_back(names_of(sp.K(), f));
        return out;
      })
      .def("__len__", [](const FunctionSpace& sp) { return sp.functions().size(); });

  py::class_<Budget>(m, "Budget")
      .def(py::init([](std::size_t limit, std::uint64_t seed) { return Budget{limit, seed}; }),
           py::arg("limit") = 1'000'000, py::arg("seed") = 1)
      .def_readwrite("limit", &Budget::limit)
      .def_readwrite("seed", &Budget::seed);

  py::class_<Functional>(m, "Functional")
      .def_property_readonly("label", &Functional::label)
      .def_property_readonly("space", [](const Functional& nu) { return std::const_pointer_cast<FunctionSpace>(nu.space_ptr()); })
      .def("__call__", [](const Functional& nu, const std::vector<std::string>& f) {
        return nu.space().K().name(nu.eval(to_fn(nu.space(), f)));
      })
      .def("table", [](const Functional& nu) {
        std::vector<std::optional<std::string>> out;
        for (Elem e : nu.table())
          out.push_back(e == Functional::kUndefined ? std::nullopt
                                                    : std::optional<std::string>(nu.space().K().name(e)));
        return out;
      })
      .def("__eq__", [](const Functional& a, const Functional& b) { return extensionally_equal(a, b); })
      .def("__repr__", [](const Functional& nu) { return "<Functional " + nu.label() + ">"; });

  m.def("dirac", [](std::shared_ptr<FunctionSpace> sp, const std::string& x) {
    return dirac(sp, sp->point_index(x));
  });
  m.def("sup_over", [](std::shared_ptr<FunctionSpace> sp, const std::vector<std::string>& e) {
    PointSet s = 0;
    for (const auto& x : e) s |= PointSet{1} << sp->point_index(x);
    return sup_over(sp, s);
  });
  m.def("combine", [](const std::string& op, const Functional& a, const Functional& b) {
    if (op == "max") return combine(Joint::join, a, b);
    if (op == "min") return combine(Joint::meet, a, b);
    if (op == "sum") return combine(Joint::add, a, b);
    throw InputError("op must be max, min or sum");
  });
  m.def("pushforward",
        [](std::shared_ptr<FunctionSpace> target, const std::vector<std::size_t>& point_map, const Functional& inner) {
          return pushforward(target, point_map, identity_hom(inner.space().K()), inner);
        },
        py::arg("target"), py::arg("point_map"), py::arg("inner"), "Pushforward along a point map, values unchanged");
  m.def("check_idempotent", [](const Functional& nu, Budget b) { return report_dict(check_idempotent(nu, b)); },
        py::arg("nu"), py::arg("budget") = Budget{});
  m.def("check_weak_properties",
        [](const Functional& nu, Budget b) { return report_dict(check_weak_properties(nu, b)); }, py::arg("nu"),
        py::arg("budget") = Budget{});
  m.def("support_of", [](const Functional& nu) -> std::optional<std::vector<std::string>> {
    auto s = support_of(nu);
    if (!s) return std::nullopt;
    std::vector<std::string> out;
    for (std::size_t x = 0; x < nu.space().dim(); ++x)
      if (*s >> x & 1u) out.push_back(nu.space().points()[x]);
    return out;
  });
  m.def("enumerate_family", [](std::shared_ptr<FunctionSpace> sp, const std::string& family) {
    return enumerate_family(sp, family_named(family));
  });
  m.def("monad_check", [](const FunctionSpace& sp) {
    const auto r = monad_check(sp);
    py::dict d;
    d["level_sizes"] = r.level_sizes;
    d["left_unit"] = r.left_unit;
    d["right_unit"] = r.right_unit;
    d["associativity"] = r.associativity;
    d["inconclusive"] = r.inconclusive;
    d["holds"] = r.holds();
    return d;
  });

  py::class_<ActionSystem, std::shared_ptr<ActionSystem>>(m, "ActionSystem")
      .def_readonly("group", &ActionSystem::group)
      .def_readonly("points", &ActionSystem::points)
      .def("apply", [](const ActionSystem& s, const std::string& g, const std::vector<std::string>& f) {
        FunctionSpace sp(s.points, s.K);
        auto e = OrderRelation::discrete(s.group).index(g);
        return names_of(s.K, apply_T(s, e, to_fn(sp, f)));
      });
  m.def("right_regular",
        [](const std::vector<std::string>& group, const std::vector<std::vector<std::string>>& op,
           const std::string& unit, FinStruct k) {
          auto t = table_of(group, op);
          return std::make_shared<ActionSystem>(
              right_regular(group, t, OrderRelation::discrete(group).index(unit), std::move(k)));
        },
        py::arg("group"), py::arg("op"), py::arg("unit"), py::arg("values"),
        "The monoid acting on itself by x -> xg with a unit cocycle");
  m.def("check_action", [](const ActionSystem& s) { return check_action(s); });
  m.def("group_space", [](const ActionSystem& s) { return std::const_pointer_cast<FunctionSpace>(group_space(s)); });
  m.def("convolve", [](const Functional& nu, const Functional& lam, std::shared_ptr<ActionSystem> s) {
    return convolve(nu, lam, s);
  });
  m.def("check_invariant", [](const Functional& nu, const ActionSystem& s) { return check_invariant(nu, s); });
  m.def("convolution_algebra",
        [](std::shared_ptr<ActionSystem> s, const std::string& kind) {
          const auto k = kind_named(kind);
          auto alg = saturate(s, k, kind_family(group_space(*s), k));
          py::dict d;
          d["members"] = alg.members;
          d["saturated"] = alg.saturated;
          d["quasiring"] = report_dict(check_quasiring(alg));
          d["ideal"] = report_dict(check_ideal(invariant_members(alg), alg));
          return d;
        },
        py::arg("action"), py::arg("kind") = "max",
        "Saturates the functionals of one kind under sum and convolution and checks the quasiring and ideal laws");

  m.def("find_nonassoc_witness",
        [](FinStruct k, int lo, int hi, int mul_shift, std::size_t budget, std::uint64_t seed) {
          IndexScheme s;
          s.component = std::move(k);
          s.lo = lo;
          s.hi = hi;
          s.phi[1] = IndexMap::shift(mul_shift);
          s.validate();
          auto r = find_nonassoc_witness(Op::mul, s, budget, seed);
          py::dict d;
          d["found"] = r.found;
          d["tried"] = r.tried;
          if (r.found) {
            d["triple"] = std::vector<std::string>{s.render(r.a), s.render(r.b), s.render(r.c)};
            d["index"] = r.index;
          }
          return d;
        },
        py::arg("component"), py::arg("lo"), py::arg("hi"), py::arg("mul_shift"), py::arg("budget") = 1000,
        py::arg("seed") = 1);

  m.def("run_suite",
        [](const std::string& path, const std::string& suite, std::optional<std::size_t> budget,
           std::optional<std::uint64_t> seed, const std::string& format) {
          const auto ws = cli::load_workspace(path);
          auto s = cli::parse_suite(suite);
          if (!s) throw InputError("unknown suite '" + suite + "'");
          Budget b = ws.budget;
          if (budget) b.limit = *budget;
          if (seed) b.seed = *seed;
          const auto report = cli::run_suite(ws, *s, b);
          return py::make_tuple(report.exit_code(), format == "records" ? cli::render_records(report)
                                                                         : cli::render_text(report));
        },
        py::arg("path"), py::arg("suite") = "all", py::arg("budget") = std::nullopt, py::arg("seed") = std::nullopt,
        py::arg("format") = "text", "Runs a law suite over a workspace file; returns (exit code, report)");
  m.def("evaluate", [](const std::string& path, const std::string& expr) {
    return cli::eval_expression(cli::load_workspace(path), expr);
  });
}
