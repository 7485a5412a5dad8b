#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "collage/oracle.hpp"
#include "collage/parse.hpp"
#include "collage/present.hpp"
#include "collage/render.hpp"
#include "collage/rewrite.hpp"
#include "collage/semantics.hpp"

// Exit codes: 0 success, 1 semantic failure/distinct, 2 usage or parse error,
// 3 unknown verdict.

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kUnknown = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

collage::CollageFile load(const std::string& path) {
  return collage::parse_collage(slurp(path));
}

// The theory holding a named (possibly internal) diagram.
const collage::TheoryDecl* theory_of(const collage::CollageFile& f, const std::string& diagram,
                                     bool* internal = nullptr) {
  for (const auto& t : f.theories) {
    if (t.diagrams.count(diagram)) {
      if (internal) *internal = false;
      return &t;
    }
    if (t.internal_diagrams.count(diagram)) {
      if (internal) *internal = true;
      return &t;
    }
  }
  return nullptr;
}

std::size_t default_depth() {
  if (const char* env = std::getenv("COLLAGE_DEPTH")) return std::stoul(env);
  return collage::kDefaultDepth;
}

int run_check(const std::vector<std::string>& files) {
  bool failed = false;
  for (const auto& path : files) {
    collage::CollageFile f = load(path);
    for (const auto& t : f.theories) {
      for (const auto& d : t.diagnostics) {
        std::cout << path << ": " << t.name << ": " << d.invariant << ": " << d.item << ": "
                  << d.message << "\n";
        failed = true;
      }
      if (t.diagnostics.empty()) std::cout << path << ": " << t.name << ": ok\n";
    }
  }
  return failed ? kFail : kOk;
}

int run_normalize(const std::string& file, const std::string& diagram) {
  collage::CollageFile f = load(file);
  bool internal = false;
  const collage::TheoryDecl* t = theory_of(f, diagram, &internal);
  if (!t) {
    std::cerr << "unknown diagram " << diagram << "\n";
    return kUsage;
  }
  const collage::TwoGraph& g =
      internal ? t->internal_presentation->graph : t->graph;
  const collage::SlicedDiagram& d =
      internal ? t->internal_diagrams.at(diagram) : t->diagrams.at(diagram);
  std::cout << collage::to_json(collage::normalize(g, d)).dump() << "\n";
  return kOk;
}

int run_eq(const std::string& file, const std::string& lhs, const std::string& rhs,
           std::size_t depth, std::size_t search_bound, const std::string& trace_path) {
  collage::CollageFile f = load(file);
  const collage::TheoryDecl* t = theory_of(f, lhs);
  if (!t || !t->diagrams.count(rhs)) {
    std::cerr << "unknown diagram " << (!t ? lhs : rhs) << "\n";
    return kUsage;
  }
  collage::EquationSet rules = t->equations;
  if (t->fbox_presentation) {
    for (const auto& r : t->fbox_presentation->equations) rules.push_back(r);
    for (const auto& r : collage::kit_lax_merge(t->fbox)) rules.push_back(r);
  }
  collage::Verdict v;
  try {
    v = collage::bounded_eq(t->graph, t->diagrams.at(lhs), t->diagrams.at(rhs), rules, depth,
                            search_bound);
  } catch (const collage::DiagramError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  switch (v.kind) {
    case collage::Verdict::Equal: {
      std::cout << "equal\n" << collage::trace_steps_to_json(v.trace).dump() << "\n";
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        out << collage::trace_steps_to_json(v.trace).dump() << "\n";
      }
      return kOk;
    }
    case collage::Verdict::Distinct:
      std::cout << "distinct\n" << v.witness << "\n";
      return kFail;
    case collage::Verdict::Unknown:
      std::cout << "unknown\n";
      return kUnknown;
  }
  return kUnknown;
}

int run_eval(const std::string& file, const std::string& diagram, const std::string& interp,
             bool json) {
  collage::CollageFile f = load(file);
  bool internal = false;
  const collage::TheoryDecl* t = theory_of(f, diagram, &internal);
  if (!t) {
    std::cerr << "unknown diagram " << diagram << "\n";
    return kUsage;
  }
  const collage::InterpretationDecl* decl = f.interpretation(interp);
  if (!decl || decl->theory != t->name) {
    std::cerr << "no interpretation " << interp << " for theory " << t->name << "\n";
    return kUsage;
  }
  std::string result;
  std::string model_name = decl->model;
  try {
    switch (t->kind) {
      case collage::TheoryDecl::Monoidal: {
        collage::MonoidalInterpretation i = collage::resolve_monoidal_interpretation(f, *decl);
        if (internal) {
          collage::InternalPoint pt = collage::eval_internal(
              *t->internal_presentation, t->poly, t->internal_diagrams.at(diagram), i);
          std::string acc;
          for (std::size_t k = 0; k < pt.closed.size(); ++k)
            acc += (k ? " " : "") + pt.closed[k];
          result = acc;
        } else {
          result = collage::eval_monoidal(t->graph, t->diagrams.at(diagram), i);
        }
        break;
      }
      case collage::TheoryDecl::Bimodular: {
        collage::CollageInterpretation i = collage::resolve_collage_interpretation(f, *decl);
        result = collage::eval_collage(t->diagrams.at(diagram), t->bimod, i);
        break;
      }
      case collage::TheoryDecl::FunctorBox: {
        collage::FunctorBoxInterpretation i = collage::resolve_functorbox_interpretation(*decl);
        result = collage::eval_functor_box(t->diagrams.at(diagram), t->fbox, i);
        break;
      }
      case collage::TheoryDecl::Two:
        std::cerr << "raw two-theories have no evaluation semantics\n";
        return kUsage;
    }
  } catch (const collage::EvalError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const collage::CentralTypingError& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  }
  if (json)
    std::cout << nlohmann::json{{"diagram", diagram}, {"model", model_name}, {"result", result}}
                     .dump()
              << "\n";
  else
    std::cout << result << "\n";
  return kOk;
}

int run_render(const std::string& file, const std::string& diagram, const std::string& format) {
  collage::CollageFile f = load(file);
  bool internal = false;
  const collage::TheoryDecl* t = theory_of(f, diagram, &internal);
  if (!t) {
    std::cerr << "unknown diagram " << diagram << "\n";
    return kUsage;
  }
  const collage::TwoGraph& g = internal ? t->internal_presentation->graph : t->graph;
  const collage::SlicedDiagram& d =
      internal ? t->internal_diagrams.at(diagram) : t->diagrams.at(diagram);
  try {
    std::cout << collage::render_diagram(g, d, format);
  } catch (const collage::RenderError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

int run_oracle(const std::string& subtask, unsigned seed, bool seed_given,
               std::size_t instances) {
  collage::oracle::Report report;
  if (subtask == "exchange-bfs") {
    report = collage::oracle::exchange_bfs();
  } else if (subtask == "coend-closure") {
    if (!seed_given) {
      std::cerr << "coend-closure requires --seed\n";
      return kUsage;
    }
    report = collage::oracle::coend_closure(seed, instances);
  } else if (subtask == "hom-count") {
    report = collage::oracle::hom_count();
  } else {
    std::cerr << "unknown oracle subtask " << subtask << "\n";
    return kUsage;
  }
  std::cout << report.summary << "\n";
  return report.ok ? kOk : kFail;
}

int run_examples() {
  std::string dir = "corpus";
  if (const char* env = std::getenv("COLLAGE_CORPUS_DIR")) dir = env;
  std::vector<std::string> entries;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    entries.push_back(e.path().filename().string());
  std::sort(entries.begin(), entries.end());
  for (const auto& name : entries) {
    std::cout << name;
    if (name.size() > 8 && name.substr(name.size() - 8) == ".collage") {
      collage::CollageFile f = load(dir + "/" + name);
      std::cout << ":";
      for (const auto& t : f.theories) std::cout << " " << t.name;
    }
    std::cout << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"string-diagram workbench for bimodular categories"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string file, diagram, lhs, rhs;
  std::string interp, format = "svg", trace_path;
  std::size_t depth = default_depth();
  std::size_t search_bound = collage::kDefaultSearchBound;
  bool json = false;
  std::string subtask;
  unsigned seed = 0;
  std::size_t instances = 100;

  CLI::App* check = app.add_subcommand("check", "parse and typecheck files");
  check->add_option("files", files)->required();

  CLI::App* normalize = app.add_subcommand("normalize", "print the canonical normal form");
  normalize->add_option("file", file)->required();
  normalize->add_option("diagram", diagram)->required();

  CLI::App* eq = app.add_subcommand("eq", "bounded equality of two named diagrams");
  eq->add_option("file", file)->required();
  eq->add_option("lhs", lhs)->required();
  eq->add_option("rhs", rhs)->required();
  eq->add_option("--depth", depth);
  eq->add_option("--search-bound", search_bound);
  eq->add_option("--trace", trace_path);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a diagram in a model");
  eval->add_option("file", file)->required();
  eval->add_option("diagram", diagram)->required();
  eval->add_option("--model", interp)->required();
  eval->add_flag("--json", json);

  CLI::App* render = app.add_subcommand("render", "render a diagram");
  render->add_option("file", file)->required();
  render->add_option("diagram", diagram)->required();
  render->add_option("--format", format);

  CLI::App* oracle = app.add_subcommand("oracle", "run a brute-force oracle");
  oracle->add_option("subtask", subtask)->required();
  CLI::Option* seed_opt = oracle->add_option("--seed", seed);
  oracle->add_option("--instances", instances);

  CLI::App* examples = app.add_subcommand("examples", "print the corpus index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (check->parsed()) return run_check(files);
    if (normalize->parsed()) return run_normalize(file, diagram);
    if (eq->parsed()) return run_eq(file, lhs, rhs, depth, search_bound, trace_path);
    if (eval->parsed()) return run_eval(file, diagram, interp, json);
    if (render->parsed()) return run_render(file, diagram, format);
    if (oracle->parsed()) return run_oracle(subtask, seed, seed_opt->count() > 0, instances);
    if (examples->parsed()) return run_examples();
  } catch (const collage::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
