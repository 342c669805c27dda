#include <iostream>

#include "CLI11.hpp"
#include "skew/error.hpp"
#include "suite.hpp"
#include "workspace.hpp"

using namespace skew;
using namespace skew::cli;

namespace {

struct Options {
  std::string file;
  std::string suite = "all";
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string expr;
  std::string law;
};

Budget budget_for(const Workspace& ws, const Options& o) {
  Budget b = ws.budget;
  if (o.budget) b.limit = *o.budget;
  if (o.seed) b.seed = *o.seed;
  return b;
}

void print(const SuiteReport& report, const std::string& format) {
  std::cout << (format == "records" ? render_records(report) : render_text(report));
}

int check(const Options& o) {
  const auto ws = load_workspace(o.file);
  auto suite = parse_suite(o.suite);
  if (!suite) throw InputError("unknown suite '" + o.suite + "'");
  const auto report = run_suite(ws, *suite, budget_for(ws, o));
  print(report, o.format);
  return report.exit_code();
}

int witness(const Options& o) {
  const auto ws = load_workspace(o.file);
  auto report = run_suite(ws, Suite::all, budget_for(ws, o));
  SuiteReport picked;
  for (auto& r : report.records) {
    const auto last = r.id.substr(r.id.rfind('/') + 1);
    if (last == o.law) picked.records.push_back(std::move(r));
  }
  if (picked.records.empty()) throw InputError("no check named '" + o.law + "'");
  print(picked, o.format);
  return picked.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Law checker for finite ordered semirings and their functionals"};
  app.require_subcommand(1);
  Options o;

  auto* c = app.add_subcommand("check", "Run a law suite over a workspace");
  c->add_option("file", o.file, "Workspace document (JSON)")->required()->check(CLI::ExistingFile);
  c->add_option("--suite", o.suite, "laws, idempotent, monad, convolution, s-construction or all")
      ->check(CLI::IsMember({"laws", "idempotent", "monad", "convolution", "s-construction", "all"}));
  c->add_option("--budget", o.budget, "Largest grid checked exhaustively; larger grids are sampled");
  c->add_option("--seed", o.seed, "Seed for sampled grids");
  c->add_option("--format", o.format, "text or records")->check(CLI::IsMember({"text", "records"}));

  auto* e = app.add_subcommand("eval", "Evaluate a functional at a function");
  e->add_option("file", o.file, "Workspace document (JSON)")->required()->check(CLI::ExistingFile);
  e->add_option("--expr", o.expr, "nu({x1: 1, x2: 0}) or nu([1, 0])")->required();

  auto* w = app.add_subcommand("witness", "Report the checks of one law and their counterexamples");
  w->add_option("file", o.file, "Workspace document (JSON)")->required()->check(CLI::ExistingFile);
  w->add_option("--law", o.law, "Law or axiom name, e.g. left-dist or meet-preserving")->required();
  w->add_option("--budget", o.budget, "Largest grid checked exhaustively");
  w->add_option("--seed", o.seed, "Seed for sampled grids");
  w->add_option("--format", o.format, "text or records")->check(CLI::IsMember({"text", "records"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c->parsed()) return check(o);
    if (e->parsed()) {
      std::cout << eval_expression(load_workspace(o.file), o.expr) << "\n";
      return 0;
    }
    return witness(o);
  } catch (const Error& err) {
    std::cerr << "skewcheck: " << err.what() << "\n";
    return 2;
  }
}
