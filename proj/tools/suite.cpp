#include "suite.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "skew/error.hpp"

namespace skew::cli {

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "laws") return Suite::laws;
  if (name == "idempotent") return Suite::idempotent;
  if (name == "monad") return Suite::monad;
  if (name == "convolution") return Suite::convolution;
  if (name == "s-construction") return Suite::s_construction;
  if (name == "all") return Suite::all;
  return std::nullopt;
}

int SuiteReport::exit_code() const {
  int code = 0;
  for (const auto& r : records) {
    if (r.outcome == Outcome::error) return 2;
    if (r.outcome == Outcome::fails) code = 1;
  }
  return code;
}

namespace {

class Runner {
 public:
  Runner(const Workspace& ws, Budget budget) : ws_(ws), budget_(budget) {}

  SuiteReport take() { return std::move(report_); }

  void laws() {
    for (const auto& [name, s] : ws_.structures) {
      const auto base = "laws/" + name + "/";
      guarded(base + "zero-one", "semiring axioms", [&] {
        FinStruct bare = s;
        bare.flags.clear();
        return verdict(check_declared(bare));
      });
      std::vector<Law> laws(s.flags.begin(), s.flags.end());
      if (auto it = ws_.extra_laws.find(name); it != ws_.extra_laws.end())
        laws.insert(laws.end(), it->second.begin(), it->second.end());
      for (Law law : all_laws()) {
        if (std::find(laws.begin(), laws.end(), law) == laws.end()) continue;
        guarded(base + std::string(law_name(law)), "structure law", [&] { return verdict(check_law(s, law)); });
      }
      guarded(base + "ideals", "ideal enumeration", [&] {
        const auto ideals = enumerate_ideals(s);
        CheckRecord r;
        r.detail = std::to_string(ideals.size()) + (ideals.size() == 1 ? " ideal" : " ideals") +
                   (is_simple(s) ? ", simple" : "");
        return r;
      });
    }
  }

  void idempotent() {
    for (const auto& [name, nu] : ws_.functionals) {
      const auto base = "idempotent/" + name + "/";
      report_axioms(base, "idempotent functional axiom", [&] { return check_idempotent(nu, budget_); });
      report_axioms(base, "order and homogeneity", [&] { return check_order_and_homogeneity(nu, budget_); });
      report_axioms("weak/" + name + "/", "weak additivity", [&] { return check_weak_properties(nu, budget_); });
      guarded(base + "support", "functional support", [&] {
        CheckRecord r;
        auto s = support_of(nu, budget_);
        r.detail = s ? nu.space().render(*s) : "none";
        return r;
      });
    }
  }

  void monad() {
    for (const auto& [name, sp] : ws_.spaces) {
      const auto base = "monad/" + name + "/";
      std::optional<MonadReport> m;
      guarded(base + "levels", "monad law", [&] {
        m = monad_check(*sp);
        CheckRecord r;
        for (std::size_t i = 0; i < m->level_sizes.size(); ++i)
          r.detail += (i ? " " : "") + std::to_string(m->level_sizes[i]);
        if (m->inconclusive) {
          r.outcome = Outcome::skipped;
          r.detail += ": a level has fewer than two functionals";
        }
        return r;
      });
      if (!m || m->inconclusive) continue;
      const std::pair<const char*, const Verdict*> laws[] = {
          {"closure", &m->closure},           {"left-unit", &m->left_unit},
          {"right-unit", &m->right_unit},     {"associativity", &m->associativity},
          {"bar-constant", &m->bar_constant}, {"bar-max", &m->bar_join},
          {"bar-min", &m->bar_meet}};
      for (auto [law, v] : laws) add(base + law, "monad law", verdict(*v));
    }
  }

  void convolution() {
    for (const auto& [name, sys] : ws_.actions) {
      const auto base = "convolution/" + name + "/";
      guarded(base + "action", "cocycle action", [&] { return verdict(check_action(*sys)); });
      for (const auto& [fname, nu] : ws_.functionals) {
        const auto& sp = nu.space();
        if (sp.points() != sys->points || sp.K().names() != sys->K.names()) continue;
        bool invariant = false;
        guarded(base + "invariant/" + fname, "invariant functional", [&] {
          auto v = check_invariant(nu, *sys, budget_);
          invariant = v.holds;
          return verdict(v);
        });
        if (invariant) bounds(base, fname, nu, *sys);
      }
      if (sys->points != sys->group) continue;

      std::optional<ConvAlgebra> alg;
      guarded(base + "algebra", "convolution quasiring", [&] {
        alg = saturate(sys, ws_.conv_kind, kind_family(group_space(*sys), ws_.conv_kind));
        CheckRecord r;
        r.detail = std::to_string(alg->members.size()) + " members, " + std::to_string(alg->rounds) + " rounds" +
                   (alg->saturated ? "" : ", budget reached");
        return r;
      });
      if (!alg) continue;
      report_axioms(base + "quasiring/", "convolution quasiring", [&] { return check_quasiring(*alg); });
      auto H = invariant_members(*alg);
      report_axioms(base + "ideal/", "invariant ideal", [&] { return check_ideal(H, *alg); });
      for (std::size_t i = 0; i < alg->members.size(); ++i)
        if (check_invariant(alg->members[i], *sys, budget_))
          bounds(base, "member-" + std::to_string(i), alg->members[i], *sys);
    }
  }

  void s_construction() {
    for (const auto& [name, scheme] : ws_.schemes) {
      const auto base = "s-construction/" + name + "/";
      const bool linear = check_order_axioms(scheme.component.order, OrderMode::linear).holds;
      for (const char* check : {"lex-order", "lex-monotone"}) {
        if (!linear) {
          CheckRecord r;
          r.outcome = Outcome::skipped;
          r.detail = "component order is not linear";
          add(base + check, "lexicographic order", std::move(r));
          continue;
        }
        guarded(base + check, "lexicographic order", [&] {
          return verdict(std::string(check) == "lex-order" ? check_lex_order(scheme)
                                                           : check_lex_monotone(Op::mul, scheme, false));
        });
      }
      guarded(base + "mul-associative", "product associativity", [&] {
        auto w = find_nonassoc_witness(Op::mul, scheme, std::min<std::size_t>(budget_.limit, 1000), budget_.seed);
        CheckRecord r;
        r.sampled = true;
        r.detail = std::to_string(w.tried) + " triples";
        if (w.found) {
          r.outcome = Outcome::fails;
          r.witness = Witness{{scheme.render(w.a), scheme.render(w.b), scheme.render(w.c)},
                              "(ab)c = " + scheme.render(w.left) + " but a(bc) = " + scheme.render(w.right) +
                                  ", first difference at index " + std::to_string(w.index)};
        }
        return r;
      });
      for (Law side : {Law::left_dist, Law::right_dist})
        guarded(base + std::string(law_name(side)) + "-transfer", "distributivity transfer", [&] {
          auto r = verdict(check_dist_transfer(scheme, side, 500, budget_.seed));
          r.sampled = true;
          return r;
        });
    }
  }

 private:
  static CheckRecord verdict(const Verdict& v) {
    CheckRecord r;
    r.outcome = v.holds ? Outcome::holds : Outcome::fails;
    r.witness = v.witness;
    r.sampled = v.sampled;
    return r;
  }

  void add(std::string id, std::string tag, CheckRecord r) {
    r.id = std::move(id);
    r.tag = std::move(tag);
    report_.records.push_back(std::move(r));
  }

  template <class F>
  void guarded(std::string id, std::string tag, F&& f) {
    CheckRecord r;
    try {
      r = f();
    } catch (const PreconditionError& e) {
      r = {};
      r.outcome = Outcome::skipped;
      r.detail = e.what();
    } catch (const Error& e) {
      r = {};
      r.outcome = Outcome::error;
      r.detail = e.what();
    }
    add(std::move(id), std::move(tag), std::move(r));
  }

  template <class F>
  void report_axioms(const std::string& base, const std::string& tag, F&& f) {
    std::optional<AxiomReport> rep;
    try {
      rep = f();
    } catch (const PreconditionError& e) {
      CheckRecord r;
      r.outcome = Outcome::skipped;
      r.detail = e.what();
      add(base + "all", tag, std::move(r));
      return;
    } catch (const Error& e) {
      CheckRecord r;
      r.outcome = Outcome::error;
      r.detail = e.what();
      add(base + "all", tag, std::move(r));
      return;
    }
    for (const auto& [axiom, v] : rep->entries) add(base + axiom, tag, verdict(v));
  }

  void bounds(const std::string& base, const std::string& fname, const Functional& nu, const ActionSystem& sys) {
    std::optional<SupportBounds> b;
    guarded(base + "support-bound/" + fname, "support bound", [&] {
      b = support_bounds(nu, sys, budget_);
      const auto& sp = nu.space();
      CheckRecord r;
      r.detail = "support " + (b->support ? sp.render(*b->support) : std::string("none")) + ", T limit " +
                 sp.render(b->t_limit) + ", P limit " + sp.render(b->p_limit);
      if (!b->contained) {
        r.outcome = Outcome::fails;
        r.witness = Witness{{nu.label()}, "support is not inside the limits"};
      }
      return r;
    });
    if (b && b->no_zero_divisors) add(base + "support-stable/" + fname, "support bound", verdict(b->g_stable));
  }

  const Workspace& ws_;
  Budget budget_;
  SuiteReport report_;
};

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::skipped: return "skipped";
    case Outcome::error: return "error";
  }
  return "error";
}

}  // namespace

SuiteReport run_suite(const Workspace& ws, Suite suite, Budget budget) {
  Runner r(ws, budget);
  const bool all = suite == Suite::all;
  if (all || suite == Suite::laws) r.laws();
  if (all || suite == Suite::idempotent) r.idempotent();
  if (all || suite == Suite::monad) r.monad();
  if (all || suite == Suite::convolution) r.convolution();
  if (all || suite == Suite::s_construction) r.s_construction();
  return r.take();
}

std::string render_text(const SuiteReport& report) {
  std::ostringstream out;
  std::size_t counts[4] = {};
  for (const auto& r : report.records) {
    ++counts[static_cast<int>(r.outcome)];
    out << outcome_name(r.outcome) << "  " << r.id;
    if (r.sampled) out << " (sampled)";
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << "\n";
    if (r.witness) out << "    " << render(*r.witness) << "\n";
  }
  out << report.records.size() << " checks: " << counts[0] << " hold, " << counts[1] << " fail, " << counts[2]
      << " skipped, " << counts[3] << " errors\n";
  return out.str();
}

std::string render_records(const SuiteReport& report) {
  std::string out;
  for (const auto& r : report.records) {
    nlohmann::ordered_json j;
    j["check-id"] = r.id;
    j["law-ref"] = r.tag;
    j["verdict"] = outcome_name(r.outcome);
    if (r.witness) j["witness"] = {{"items", r.witness->items}, {"note", r.witness->note}};
    else j["witness"] = nullptr;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.sampled) j["sampled"] = true;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace skew::cli
