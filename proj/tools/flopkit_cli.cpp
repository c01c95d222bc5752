// Command-line front end: tables, verify, knit, monodromy.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "flopkit/dynkin.hpp"
#include "flopkit/error.hpp"
#include "flopkit/knitting.hpp"
#include "flopkit/monodromy.hpp"
#include "flopkit/tables.hpp"
#include "flopkit/verify.hpp"

namespace {

using namespace flopkit;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw DomainError("cannot open " + out + " for writing");
  f << text;
}

struct TablesArgs {
  std::string which;
  std::string format = "text";
  std::optional<int> ell;
  std::string out;
};

struct VerifyArgs {
  std::string format = "text";
  std::string out;
};

struct KnitArgs {
  std::string type;
  bool affine = false;
  std::string start;
  std::string read;
  std::vector<std::string> kill;
  int max_layers = knitting::kDefaultMaxLayers;
  std::string format = "text";
  std::string out;
};

struct MonodromyArgs {
  int ell = 0;
  std::string word;
  std::string out;
};

int run_tables(const TablesArgs& a) {
  if (a.which.empty()) throw UsageError("tables needs a selector (numerics, defalg, gv, helix)");
  if (a.ell && a.which != "helix") throw UsageError("--ell applies to the helix table only");
  emit(tables::table(a.which, tables::parse_format(a.format), a.ell), a.out);
  return kOk;
}

int run_verify(const VerifyArgs& a) {
  if (a.format != "text" && a.format != "json") throw UsageError("verify formats: text, json");
  const auto report = verify::run_all();
  emit(a.format == "json" ? verify::to_json(report).dump(2) + "\n" : verify::render_text(report),
       a.out);
  return report.pass() ? kOk : kFailure;
}

int run_knit(const KnitArgs& a) {
  if (a.format != "text" && a.format != "json") throw UsageError("knit formats: text, json");
  if (a.max_layers <= 0) throw UsageError("--max-layers must be positive");
  const auto g = dynkin::build_diagram(dynkin::DynkinType::parse(a.type), a.affine);
  knitting::KnitProblem p{g, g.resolve(a.start), g.resolve(a.read.empty() ? a.start : a.read), {},
                          a.max_layers};
  for (const auto& k : a.kill) p.kill.insert(g.resolve(k));
  const auto t = knitting::knit(p);
  emit(a.format == "json" ? knitting::to_json(p, t).dump(2) + "\n" : knitting::render_grid(p, t),
       a.out);
  return kOk;
}

int run_monodromy(const MonodromyArgs& a) {
  numerics::check_length(a.ell);
  emit(monodromy::evaluate(a.word, a.ell).dump(2) + "\n", a.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flop wall-crossing tables, knitting and monodromy words"};
  app.require_subcommand(1);

  TablesArgs ta;
  auto* tables_cmd = app.add_subcommand("tables", "Emit a derived table");
  tables_cmd->add_option("which_pos", ta.which, "numerics | defalg | gv | helix");
  tables_cmd->add_option("--which", ta.which, "numerics | defalg | gv | helix");
  tables_cmd->add_option("--format", ta.format, "text | json | csv");
  tables_cmd->add_option("--ell", ta.ell, "Restrict the helix table to one length");
  tables_cmd->add_option("--out", ta.out, "Write to a file instead of stdout");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run every acceptance check");
  verify_cmd->add_option("--format", va.format, "text | json");
  verify_cmd->add_option("--out", va.out, "Write to a file instead of stdout");

  KnitArgs ka;
  auto* knit_cmd = app.add_subcommand("knit", "Knit on a Dynkin diagram");
  knit_cmd->add_option("--type", ka.type, "A(n), Dn or En")->required();
  knit_cmd->add_flag("--affine", ka.affine, "Use the extended diagram");
  knit_cmd->add_option("--start", ka.start, "Vertex id or alias (extending, branch)")->required();
  knit_cmd->add_option("--read", ka.read, "Vertex to read (default: start)");
  knit_cmd->add_option("--kill", ka.kill, "Vertices forced to zero")->delimiter(',');
  knit_cmd->add_option("--max-layers", ka.max_layers, "Termination guard");
  knit_cmd->add_option("--format", ka.format, "text | json");
  knit_cmd->add_option("--out", ka.out, "Write to a file instead of stdout");

  MonodromyArgs ma;
  auto* mono_cmd = app.add_subcommand("monodromy", "Evaluate a monodromy word");
  mono_cmd->add_option("--ell", ma.ell, "Length 1..6")->required();
  mono_cmd->add_option("--word", ma.word, "e.g. \"inv(q0).qplus.qminus\"")->required();
  mono_cmd->add_option("--out", ma.out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*tables_cmd) return run_tables(ta);
    if (*verify_cmd) return run_verify(va);
    if (*knit_cmd) return run_knit(ka);
    if (*mono_cmd) return run_monodromy(ma);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
