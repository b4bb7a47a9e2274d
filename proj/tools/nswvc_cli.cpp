// Command-line front door: generate -> reduce -> solve -> verify -> extract-vc,
// plus the lemma-check suites and the improving move.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nswvc/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nswvc::FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// temp file + rename, so partially written outputs never appear.
void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw nswvc::FormatError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path)
    write_file_atomic(*path, content);
  else
    std::cout << content;
}

nswvc::AuctionInstance load_instance(const std::string& path) {
  return nswvc::parse_instance(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic-graph to Nash-social-welfare auction toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Emit a 3-regular graph file");
  std::string family;
  std::optional<int> gen_n;
  std::optional<std::uint64_t> gen_seed;
  std::optional<std::string> gen_out;
  gen->add_option("--family", family, "k4 | k33 | prism | petersen | random")
      ->required();
  gen->add_option("--n", gen_n, "vertex count (random family)");
  gen->add_option("--seed", gen_seed, "RNG seed (random family)");
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");

  // reduce
  auto* red = app.add_subcommand("reduce", "Compile a graph into an auction instance");
  std::string red_graph;
  std::string red_c = "1";
  std::string red_eps = "1/100";
  std::optional<std::string> red_out;
  red->add_option("graph", red_graph, "graph file")->required();
  red->add_option("-c", red_c, "approximation factor, fraction >= 1");
  red->add_option("--epsilon", red_eps, "positive fraction (default 1/100)");
  red->add_option("-o,--output", red_out, "output path (default stdout)");

  // solve
  auto* sol = app.add_subcommand("solve", "Compute an NSW-optimal allocation");
  std::string sol_inst;
  std::string sol_method = "structured";
  std::optional<std::string> sol_out;
  sol->add_option("instance", sol_inst, "instance file")->required();
  sol->add_option("--method", sol_method, "structured | bruteforce");
  sol->add_option("-o,--output", sol_out, "output path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "Diagnose an allocation against the lemmas");
  std::string ver_inst, ver_alloc;
  std::optional<std::string> ver_out;
  bool ver_complete = false;
  ver->add_option("instance", ver_inst, "instance file")->required();
  ver->add_option("allocation", ver_alloc, "allocation file")->required();
  ver->add_option("-o,--output", ver_out, "report path (default stdout)");
  ver->add_flag("--complete-to-greedy", ver_complete,
                "assign unmentioned items to the greedy agent");

  // extract-vc
  auto* ext = app.add_subcommand("extract-vc",
                                 "Print the minimum vertex cover behind a "
                                 "c-approximate allocation");
  std::string ext_inst, ext_alloc;
  bool ext_complete = false;
  ext->add_option("instance", ext_inst, "instance file")->required();
  ext->add_option("allocation", ext_alloc, "allocation file")->required();
  ext->add_flag("--complete-to-greedy", ext_complete,
                "assign unmentioned items to the greedy agent");

  // check
  auto* chk = app.add_subcommand("check", "Run a verification suite");
  std::string chk_inst;
  std::string chk_mode;
  bool chk_exhaustive = false;
  long long chk_budget = 100000;
  long long chk_trials = 1000;
  std::uint64_t chk_seed = 0;
  std::optional<std::string> chk_out;
  chk->add_option("instance", chk_inst, "instance file")->required();
  chk->add_option("--mode", chk_mode, "supermodular | classes | lemmas")->required();
  chk->add_flag("--exhaustive", chk_exhaustive, "exhaustive (S,T) sweep");
  chk->add_option("--budget", chk_budget, "sampled pair budget");
  chk->add_option("--trials", chk_trials, "random allocations (lemmas mode)");
  chk->add_option("--seed", chk_seed, "RNG seed");
  chk->add_option("-o,--output", chk_out, "report path (default stdout)");

  // improve
  auto* imp = app.add_subcommand("improve", "Apply the improving move for one vertex");
  std::string imp_inst, imp_alloc;
  int imp_vbar = -1;
  bool imp_complete = false;
  std::optional<std::string> imp_out;
  imp->add_option("instance", imp_inst, "instance file")->required();
  imp->add_option("allocation", imp_alloc, "allocation file")->required();
  imp->add_option("--vbar", imp_vbar, "cover vertex to drop from V_E")->required();
  imp->add_flag("--complete-to-greedy", imp_complete,
                "assign unmentioned items to the greedy agent");
  imp->add_option("-o,--output", imp_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitBadInput : kExitOk;
  }

  try {
    if (*gen) {
      auto g = nswvc::generate_family(family, gen_n, gen_seed);
      emit(gen_out, nswvc::serialize_graph(g));
      return kExitOk;
    }
    if (*red) {
      auto g = nswvc::parse_graph(read_file(red_graph));
      auto params = nswvc::ReductionParams::make(nswvc::parse_fraction(red_c),
                                                 nswvc::parse_fraction(red_eps));
      auto inst = nswvc::build_instance(g, params);
      emit(red_out, nswvc::serialize_instance(inst));
      std::cerr << "N=" << g.vertex_count << " M=" << g.edge_count()
                << " agents=" << inst.agent_count << " items=" << inst.item_count()
                << " log2(alpha)=" << inst.alpha_log2 << "\n";
      return kExitOk;
    }
    if (*sol) {
      auto inst = load_instance(sol_inst);
      nswvc::SolveResult r;
      if (sol_method == "bruteforce")
        r = nswvc::solve_bruteforce(inst);
      else if (sol_method == "structured")
        r = nswvc::solve_structured(inst);
      else
        throw nswvc::FormatError("unknown method '" + sol_method + "'");
      emit(sol_out, nswvc::serialize_allocation(inst, r.alloc));
      std::cerr << "k=" << r.value.two_exp << " g=" << r.value.alpha_exp
                << " log2(NSW)="
                << nswvc::nsw_log2(r.value, inst.alpha_log2, inst.agent_count)
                << "\n";
      return kExitOk;
    }
    if (*ver) {
      auto inst = load_instance(ver_inst);
      auto alloc = nswvc::parse_allocation(inst, read_file(ver_alloc), ver_complete);
      auto rep = nswvc::verify_capprox(inst, alloc);
      emit(ver_out, rep.to_json(inst).dump(2) + "\n");
      return rep.theorem_holds ? kExitOk : kExitFalsified;
    }
    if (*ext) {
      auto inst = load_instance(ext_inst);
      auto alloc = nswvc::parse_allocation(inst, read_file(ext_alloc), ext_complete);
      nswvc::VertexSet cover;
      try {
        cover = nswvc::extract_cover(inst, alloc);
      } catch (const nswvc::AllocationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFalsified;
      }
      std::string sep;
      for (int v : cover.indices()) {
        std::cout << sep << v;
        sep = " ";
      }
      std::cout << "\n";
      return kExitOk;
    }
    if (*chk) {
      auto inst = load_instance(chk_inst);
      nswvc::ordered_json report;
      bool ok = false;
      if (chk_mode == "supermodular") {
        nswvc::CheckReport rep;
        try {
          rep = nswvc::check_supermodular(
              inst, chk_exhaustive ? "exhaustive" : "sampled", chk_budget, chk_seed);
        } catch (const nswvc::BudgetError& e) {
          // requesting an exhaustive sweep on an oversized instance is a
          // config error, not an exceeded runtime budget
          std::cerr << "error: " << e.what() << "\n";
          return kExitBadInput;
        }
        report = rep.to_json();
        ok = rep.ok();
      } else if (chk_mode == "classes") {
        auto rep = nswvc::check_superadditive_additive(inst, chk_seed);
        report = rep.to_json();
        ok = rep.ok();
      } else if (chk_mode == "lemmas") {
        auto rep = nswvc::theorem_sweep(inst, chk_trials, chk_seed);
        report = rep.to_json();
        ok = rep.ok();
      } else {
        throw nswvc::FormatError("unknown check mode '" + chk_mode + "'");
      }
      emit(chk_out, report.dump(2) + "\n");
      return ok ? kExitOk : kExitFalsified;
    }
    if (*imp) {
      auto inst = load_instance(imp_inst);
      auto alloc = nswvc::parse_allocation(inst, read_file(imp_alloc), imp_complete);
      auto improved = nswvc::improve_allocation(inst, alloc, imp_vbar);
      emit(imp_out, nswvc::serialize_allocation(inst, improved));
      return kExitOk;
    }
  } catch (const nswvc::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
