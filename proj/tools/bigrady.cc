// bigrady: check bigraph models against privacy properties.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bigrady/fixtures.h"
#include "bigrady/model.h"
#include "bigrady/pipeline.h"

namespace {

using namespace bigrady;

constexpr int kExitStatic = 2;
constexpr int kExitBudget = 3;

std::size_t default_budget() {
  const char* env = std::getenv("BIGRADY_MAX_STATES");
  if (!env || !*env) return kDefaultMaxStates;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end || v == 0) throw Error(ErrorKind::kInvalidModel, std::string("bad BIGRADY_MAX_STATES value '") + env + "'");
  return static_cast<std::size_t>(v);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::kInvalidModel, "cannot write " + path);
}

struct CheckArgs {
  std::string file;
  std::string json;
  std::string dot;
  std::size_t max_states = 0;
  bool dynamic_sorts = false;
  bool quiet = false;
};

int cmd_check(const CheckArgs& a) {
  Model m = load_model_file(a.file);
  RunOptions opt;
  opt.max_states = a.max_states ? a.max_states : default_budget();
  opt.dynamic_sorts = a.dynamic_sorts;
  TransitionSystem ts;
  RunReport r = run_pipeline(m, opt, &ts);
  if (!a.quiet) std::cout << report_text(r);
  if (!a.json.empty()) write_file(a.json, report_json(r));
  if (!a.dot.empty() && r.explored) write_file(a.dot, export_dot(ts, r.model));
  return exit_code(r);
}

struct ExportArgs {
  std::string file;
  std::string format;
  std::string out;
  std::size_t max_states = 0;
};

int cmd_export(const ExportArgs& a) {
  Model m = load_model_file(a.file);
  RunOptions opt;
  opt.max_states = a.max_states ? a.max_states : default_budget();
  TransitionSystem ts;
  RunReport r = run_pipeline(m, opt, &ts);
  if (!r.explored) {
    std::cerr << report_text(r);
    return kExitStatic;
  }
  write_file(a.out, a.format == "dot" ? export_dot(ts, r.model) : export_json(ts, r));
  return 0;
}

int cmd_init(const std::string& name, bool force) {
  const Fixture& f = find_fixture(name);
  const std::string path = f.name + ".bgm";
  if (std::filesystem::exists(path) && !force) {
    std::cerr << "error: " << path << " already exists (use --force to overwrite)\n";
    return kExitStatic;
  }
  write_file(path, f.text);
  std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bigrady: bigraph model checker for cross-border data transfer rules"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Sort-check, explore and verify a model");
  c->add_option("file", check.file, "Model file (.bgm)")->required();
  c->add_option("--json", check.json, "Write the JSON report here");
  c->add_option("--dot", check.dot, "Write the transition system as DOT here");
  c->add_option("--max-states", check.max_states, "State budget")->check(CLI::PositiveNumber);
  c->add_flag("--dynamic-sorts", check.dynamic_sorts, "Sort-check every reachable state");
  c->add_flag("--quiet", check.quiet, "No report on stdout");

  ExportArgs exp;
  auto* e = app.add_subcommand("export", "Export the transition system");
  e->add_option("file", exp.file, "Model file (.bgm)")->required();
  e->add_option("--format", exp.format, "dot or json")->required()->check(CLI::IsMember({"dot", "json"}));
  e->add_option("--out", exp.out, "Output path")->required();
  e->add_option("--max-states", exp.max_states, "State budget")->check(CLI::PositiveNumber);

  std::string example;
  bool force = false;
  bool list = false;
  auto* i = app.add_subcommand("init", "Write a shipped example model to the working directory");
  i->add_option("--example", example, "Example name");
  i->add_flag("--force", force, "Overwrite an existing file");
  i->add_flag("--list", list, "List the examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitStatic;
  }

  try {
    if (*c) return cmd_check(check);
    if (*e) return cmd_export(exp);
    if (list) {
      for (const Fixture& f : fixtures()) std::cout << f.name << "\n";
      return 0;
    }
    if (example.empty()) {
      std::cerr << "error: init needs --example NAME (see --list)\n";
      return kExitStatic;
    }
    return cmd_init(example, force);
  } catch (const BudgetExceeded& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitBudget;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitStatic;
  }
}
