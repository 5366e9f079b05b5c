// Command-line front end: JSON-described spaces and elements in, verdicts,
// brackets and reports out.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "matord/experiments.hpp"
#include "matord/json_io.hpp"

using namespace matord;

namespace {

constexpr int kExitMalformed = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitExperimentFailed = 3;

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  int budget = 200;
  int level = 0;
  int restarts = 32;
  int iterations = 500;
  std::string kind = "min";
  bool json_out = false;
  bool strict = false;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, path + ": " + e.what());
  }
}

// One file holding {"space", "element"} or a space file plus an element file.
std::pair<BaseSpace, std::optional<LeveledElement>> read_inputs(const std::vector<std::string>& files) {
  if (files.empty()) throw Error(ErrorCode::MalformedInput, "missing input file");
  json first = read_json(files[0]);
  if (files.size() == 1 && first.contains("space")) {
    BaseSpace X = space_from_json(first.at("space"));
    if (first.contains("element")) return {X, element_from_json(first.at("element"))};
    return {X, std::nullopt};
  }
  BaseSpace X = space_from_json(first);
  if (files.size() < 2) return {X, std::nullopt};
  return {X, element_from_json(read_json(files[1]))};
}

MatricialStructure structure(const BaseSpace& X, const Options& o) {
  OptimizerConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.iterations = o.iterations;
  return MatricialStructure(X, parse_kind(o.kind), cfg);
}

LeveledElement need_element(const std::optional<LeveledElement>& x, const Options& o) {
  if (!x) throw Error(ErrorCode::MalformedInput, "missing element");
  if (o.level > 0 && x->level() != o.level)
    throw Error(ErrorCode::MalformedInput, "element level " + std::to_string(x->level()) +
                                               " does not match --level " + std::to_string(o.level));
  return *x;
}

void emit(const json& j) { std::cout << round_numbers(j, 12).dump() << "\n"; }

int print_verdict(const ConeVerdict& v, const Options& o) {
  if (o.json_out) {
    emit(to_json(v));
  } else if (v.non_member()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v.certificate.value);
    std::cout << "non-member, min_eig=" << buf << "\n";
  } else {
    std::cout << verdict_name(v.verdict) << "\n";
  }
  return (o.strict && v.verdict == Verdict::Undecided) ? kExitUndecided : 0;
}

int cmd_norm(const std::vector<std::string>& files, const Options& o) {
  auto [X, x] = read_inputs(files);
  NormBracket b = level_norm(structure(X, o), need_element(x, o));
  if (o.json_out) {
    emit(to_json(b));
  } else {
    std::cout << (b.exact() ? "norm=" + num(b.upper)
                            : "lower=" + num(b.lower) + " upper=" + num(b.upper))
              << " (" << b.method << ")\n";
  }
  return 0;
}

int cmd_cone(const std::vector<std::string>& files, const Options& o) {
  auto [X, x] = read_inputs(files);
  return print_verdict(cone_member(structure(X, o), need_element(x, o), o.tol), o);
}

int cmd_regularity(const std::vector<std::string>& files, const Options& o) {
  auto [X, x] = read_inputs(files);
  const int n = o.level > 0 ? o.level : 1;
  RegularityReport r = regularity_report(structure(X, o), n, o.budget, o.seed);
  if (o.json_out) {
    emit(to_json(r));
  } else {
    std::cout << "level=" << n << " normality_lower_bound=" << num(r.normality.bound)
              << " generation_upper_bound=" << num(r.generation_upper_bound)
              << " samples=" << r.normality.samples << " variant=" << r.variant << "\n";
  }
  return 0;
}

int cmd_positivise(const std::vector<std::string>& files, const Options& o) {
  auto [X, x] = read_inputs(files);
  PositivisationResult r = alpha_plus(structure(X, o), need_element(x, o), o.budget, o.seed);
  if (o.json_out) {
    emit(to_json(r));
  } else {
    std::cout << "alpha_plus in [" << num(r.value_lower) << ", " << num(r.value_upper) << "] ("
              << r.method << ")\n";
  }
  return 0;
}

int cmd_dual(const std::vector<std::string>& files, const Options& o) {
  auto [X, x] = read_inputs(files);
  MatricialStructure S = structure(X, o);
  MatricialStructure D = dual_structure(S);
  if (!x) {
    json j = {{"space", to_json(D.base())}, {"kind", kind_name(D.kind())}};
    if (o.json_out) emit(j);
    else std::cout << "dual: " << kind_name(D.kind()) << " over " << j["space"].dump() << "\n";
    return 0;
  }
  return print_verdict(dual_cone_member(S, need_element(x, o), o.tol), o);
}

int run_records(const std::vector<std::string>& names, const Options& o) {
  ExperimentConfig cfg;
  cfg.seed = o.seed;
  bool all = true;
  for (const std::string& name : names) {
    ExperimentRecord r = run_experiment(name, cfg);
    all = all && r.pass;
    std::cout << round_numbers(to_json(r), 12).dump() << std::endl;
  }
  return all ? 0 : kExitExperimentFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matricial order structures: norms, cones, regularity, positivisation, duality"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file with defaults for tol, budget, seed, ...");
  Options o;
  std::vector<std::string> files;
  std::string experiment_name;

  app.add_option("--tol", o.tol, "cone membership tolerance")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", o.seed, "random seed (env MATORD_SEED)")->capture_default_str();
  app.add_option("--budget", o.budget, "sample budget")->capture_default_str();
  app.add_option("--restarts", o.restarts, "optimizer restarts")->capture_default_str();
  app.add_option("--iterations", o.iterations, "optimizer iterations")->capture_default_str();
  app.add_flag("--json", o.json_out, "machine-readable output");
  app.add_flag("--strict", o.strict, "exit 2 on UNDECIDED verdicts");
  app.fallthrough();

  auto with_inputs = [&](CLI::App* c, bool kind) {
    c->add_option("files", files, "space.json [element.json], or one file with both")->required();
    c->add_option("--level", o.level, "matrix level");
    if (kind)
      c->add_option("--kind", o.kind, "min, max, schatten or matsys")
          ->check(CLI::IsMember({"min", "max", "schatten", "matsys"}))
          ->capture_default_str();
    return c;
  };
  auto* norm = with_inputs(app.add_subcommand("norm", "level-n norm bracket"), true);
  auto* cone = with_inputs(app.add_subcommand("cone", "cone membership verdict and certificate"), true);
  auto* reg = with_inputs(app.add_subcommand("regularity", "normality and generation probe"), true);
  auto* pos = with_inputs(app.add_subcommand("positivise", "positivised norm bracket"), true);
  auto* dual_cmd = with_inputs(app.add_subcommand("dual", "dual structure and dual cone membership"), true);
  auto* exp = app.add_subcommand("experiment", "run one registered experiment");
  exp->add_option("name", experiment_name, "experiment name")->required();
  auto* suite = app.add_subcommand("suite", "run every registered experiment");
  auto* list = app.add_subcommand("list", "list registered experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitMalformed;
  }
  if (seed_opt->count() == 0)
    if (const char* env = std::getenv("MATORD_SEED")) {
      try {
        o.seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error: MATORD_SEED is not an unsigned integer\n";
        return kExitMalformed;
      }
    }

  try {
    if (norm->parsed()) return cmd_norm(files, o);
    if (cone->parsed()) return cmd_cone(files, o);
    if (reg->parsed()) return cmd_regularity(files, o);
    if (pos->parsed()) return cmd_positivise(files, o);
    if (dual_cmd->parsed()) return cmd_dual(files, o);
    if (exp->parsed()) return run_records({experiment_name}, o);
    if (suite->parsed()) {
      std::vector<std::string> names;
      for (const auto& e : experiment_registry()) names.push_back(e.name);
      return run_records(names, o);
    }
    if (list->parsed()) {
      for (const auto& e : experiment_registry()) std::cout << e.name << "\t" << e.anchor << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return 0;
}
