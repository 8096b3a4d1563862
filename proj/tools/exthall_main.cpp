// exthall command line: universe listing, structure constants, products,
// the Euler form and the identity suites.
//
// Exit codes: 0 ok, 1 identity failure, 2 budget exceeded, 3 bad input.

#include "exthall/backend.hpp"
#include "exthall/expr.hpp"
#include "exthall/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace exthall;

struct CommonOpts {
  std::string backend_spec;
  int max_dim = 3;
  int per_degree = -1;
  std::uint64_t budget = 1ull << 24;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  int threads = 0;
  std::string cache;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--backend", o.backend_spec, "backend spec, e.g. quiver:A2@2")->required();
  cmd->add_option("--max-dim", o.max_dim, "total dimension bound (quiver universes)");
  cmd->add_option("--per-degree", o.per_degree, "per-degree bound (graded universes)");
  cmd->add_option("--budget", o.budget, "enumeration budget (candidates per enumeration)");
  cmd->add_option("--seed", o.seed, "seed for randomized witness sampling");
  cmd->add_option("--out", o.out, "write the result to this path");
  cmd->add_option("--format", o.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_option("--cache", o.cache, "persistent structure-constant cache file");
  cmd->add_flag("--timings", o.timings, "emit measured wall time (breaks byte-reproducibility)");
}

UniverseBounds bounds_of(const CommonOpts& o) {
  UniverseBounds b;
  b.max_total_dim = o.max_dim;
  b.per_degree = o.per_degree >= 0 ? o.per_degree : o.max_dim;
  return b;
}

int threads_of(const CommonOpts& o) {
  if (o.threads > 0) return o.threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::trunc | std::ios::binary);
  if (!f) throw ParseError("cannot write output file: " + o.out);
  f << text;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

MulType parse_mul_type(const std::string& s) {
  if (s == "F") return MulType::F;
  if (s == "G") return MulType::G;
  if (s == "twisted") return MulType::Twisted;
  throw ParseError("unknown product type: " + s);
}

int cmd_list(const CommonOpts& o) {
  auto model = make_backend(o.backend_spec, o.budget);
  auto classes = model->classes_up_to(bounds_of(o));
  if (o.format == "csv") {
    std::string text = "display,label,image,end_order,aut_order\n";
    for (auto& c : classes)
      text += csv_cell(c.display) + "," + csv_cell(c.label) + "," + csv_cell(model->image_string(c)) +
              "," + ipow(model->p(), model->hom_dim(c, c)).str() + "," +
              model->aut_order(c).str() + "\n";
    emit(o, text);
  } else {
    nlohmann::json j;
    j["backend"] = model->id();
    j["rows"] = nlohmann::json::array();
    for (auto& c : classes) {
      nlohmann::json row;
      row["display"] = c.display;
      row["label"] = c.label;
      row["image"] = model->image_string(c);
      row["end_order"] = ipow(model->p(), model->hom_dim(c, c)).str();
      row["aut_order"] = model->aut_order(c).str();
      j["rows"].push_back(row);
    }
    emit(o, j.dump(2) + "\n");
  }
  std::cerr << "[list] " << classes.size() << " classes\n";
  return 0;
}

int cmd_constants(const CommonOpts& o, const std::string& type, const std::string& xs,
                  const std::string& ys) {
  auto model = make_backend(o.backend_spec, o.budget);
  HallAlgebra alg(model);
  if (!o.cache.empty()) alg.load_cache(o.cache);
  MulType t = parse_mul_type(type);
  IsoClass x = model->parse_object(xs);
  IsoClass y = model->parse_object(ys);
  std::vector<std::pair<IsoClass, Rat>> rows;
  for (const IsoClass& l : model->middle_candidates(x, y)) {
    Rat v = alg.constant(t, x, y, l);
    if (v != 0) rows.emplace_back(l, v);
  }
  if (!o.cache.empty()) alg.save_cache(o.cache);
  if (o.format == "csv") {
    std::string text = "x,y,l,value\n";
    for (auto& [l, v] : rows)
      text += csv_cell(x.display) + "," + csv_cell(y.display) + "," + csv_cell(l.display) + "," +
              csv_cell(rat_str(v)) + "\n";
    emit(o, text);
  } else {
    nlohmann::json j;
    j["backend"] = model->id();
    j["type"] = type;
    j["x"] = x.display;
    j["y"] = y.display;
    j["rows"] = nlohmann::json::array();
    for (auto& [l, v] : rows) {
      nlohmann::json row;
      row["l"] = l.display;
      row["value"] = rat_str(v);
      j["rows"].push_back(row);
    }
    emit(o, j.dump(2) + "\n");
  }
  std::cerr << "[constants] " << rows.size() << " nonzero\n";
  return 0;
}

int cmd_mul(const CommonOpts& o, const std::string& type, const std::string& expr) {
  auto model = make_backend(o.backend_spec, o.budget);
  HallAlgebra alg(model);
  if (!o.cache.empty()) alg.load_cache(o.cache);
  HallElement e = eval_expr(alg, parse_mul_type(type), expr);
  if (!o.cache.empty()) alg.save_cache(o.cache);
  if (o.format == "csv") {
    std::string text = "term,coefficient\n";
    for (auto& [c, v] : e.terms()) text += csv_cell(c.display) + "," + csv_cell(rat_str(v)) + "\n";
    emit(o, text);
  } else {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [c, v] : e.terms()) j[c.display] = rat_str(v);
    emit(o, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_euler(const CommonOpts& o, const std::string& xs, const std::string& ys) {
  auto model = make_backend(o.backend_spec, o.budget);
  HallAlgebra alg(model);
  IsoClass x = model->parse_object(xs);
  IsoClass y = model->parse_object(ys);
  long e = alg.euler(x, y);
  nlohmann::json j;
  j["backend"] = model->id();
  j["x"] = x.display;
  j["y"] = y.display;
  j["euler"] = e;
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const CommonOpts& o, const std::vector<std::string>& suites_arg) {
  auto model = make_backend(o.backend_spec, o.budget);
  HallAlgebra alg(model);
  if (!o.cache.empty()) alg.load_cache(o.cache);
  std::vector<std::string> suites = suites_arg;
  if (suites.size() == 1 && suites[0] == "all") suites = suite_names();

  SuiteOptions so;
  so.bounds = bounds_of(o);
  so.seed = o.seed;
  so.threads = threads_of(o);

  bool any_failed = false;
  std::string text;
  std::string csv;
  for (const std::string& name : suites) {
    VerificationReport r = run_suite(name, alg, so);
    any_failed = any_failed || !r.passed();
    text += r.to_json(o.timings);
    csv += r.to_csv();
    std::cerr << "[" << name << "] " << r.cases << " cases, " << r.failures.size()
              << " failures" << (o.timings ? " (" + std::to_string(r.wall_ms) + " ms)" : "")
              << "\n";
  }
  if (!o.cache.empty()) alg.save_cache(o.cache);
  emit(o, o.format == "csv" ? csv : text);
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hall algebra computations on finite category models"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string type = "F";
  std::string expr, xs, ys;
  std::vector<std::string> suites;

  CLI::App* list = app.add_subcommand("list", "enumerate the class universe");
  add_common(list, o);

  CLI::App* constants = app.add_subcommand("constants", "structure constants of a pair");
  add_common(constants, o);
  constants->add_option("--type", type, "F, G or twisted");
  constants->add_option("x", xs, "left operand")->required();
  constants->add_option("y", ys, "right operand")->required();

  CLI::App* mul = app.add_subcommand("mul", "evaluate a product expression");
  add_common(mul, o);
  mul->add_option("--type", type, "F, G or twisted");
  mul->add_option("expr", expr, "expression, e.g. 'u[k]*u[k]'")->required();

  CLI::App* euler = app.add_subcommand("euler", "Euler form of a pair");
  add_common(euler, o);
  euler->add_option("x", xs, "left operand")->required();
  euler->add_option("y", ys, "right operand")->required();

  CLI::App* verify = app.add_subcommand("verify", "run identity suites");
  add_common(verify, o);
  verify->add_option("--suite", suites, "suite name (repeatable) or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (list->parsed()) return cmd_list(o);
    if (constants->parsed()) return cmd_constants(o, type, xs, ys);
    if (mul->parsed()) return cmd_mul(o, type, expr);
    if (euler->parsed()) return cmd_euler(o, xs, ys);
    if (verify->parsed()) return cmd_verify(o, suites);
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const CapabilityError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const IdentityError& e) {
    std::cerr << "identity failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
