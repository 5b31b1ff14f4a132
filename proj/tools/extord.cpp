// extord: command-line front end for the extensional-orientation toolkit.
//
// Exit codes: 0 predicate true / solution found / construction succeeded,
// 1 predicate false / no solution / infeasible, 2 usage or input error,
// 3 internal cross-check defect (e.g. solver/oracle mismatch).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "extord/extord.hpp"

namespace {

using namespace extord;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }
Digraph load_digraph(const std::string& path) { return parse_digraph(read_file(path)); }

Variant variant_from_flag(const std::string& flag) {
  auto v = parse_variant(flag);
  if (!v) throw DomainError("unknown variant '" + flag + "' (expected eao, seao or heo)");
  return *v;
}

void print_name_map(const NameMap& renames) {
  for (const auto& [old_name, new_name] : renames)
    std::cout << "# renamed " << old_name << " -> " << new_name << "\n";
}

struct CheckFlags {
  bool acyclic = false;
  bool extensional = false;
  bool slim = false;
  bool hyperext = false;
  bool reversal_robust = false;
  bool reach_sink = false;
};

int run_check(const std::string& path, const CheckFlags& f) {
  if (!(f.acyclic || f.extensional || f.slim || f.hyperext || f.reversal_robust || f.reach_sink))
    throw CLI::ValidationError("check", "pick at least one predicate flag");
  Digraph d = load_digraph(path);
  bool all_true = true;
  auto report = [&](const char* key, bool value) {
    std::cout << key << "=" << (value ? "true" : "false") << "\n";
    all_true = all_true && value;
  };
  if (f.acyclic) {
    auto r = is_acyclic(d);
    report("acyclic", r.acyclic);
    if (!r.acyclic) {
      std::cout << "cycle=";
      for (std::size_t i = 0; i < r.cycle.size(); ++i)
        std::cout << (i ? " " : "") << d.name(r.cycle[i]);
      std::cout << "\n";
    }
  }
  if (f.extensional) {
    auto r = is_extensional(d);
    report("extensional", r.extensional);
    if (r.collision)
      std::cout << "collision=" << d.name(r.collision->u) << " " << d.name(r.collision->v) << "\n";
  }
  if (f.slim) {
    auto r = is_slim(d);
    report("slim", r.slim);
    if (r.removable_arc)
      std::cout << "removable=" << d.name(r.removable_arc->first) << " "
                << d.name(r.removable_arc->second) << "\n";
  }
  if (f.hyperext) report("hyperext", is_hyper_extensional(d));
  if (f.reversal_robust) report("reversal_robust", is_reversal_robust(d));
  if (f.reach_sink) report("reach_sink", all_reach_sink(d));
  return all_true ? 0 : 1;
}

int run_solve(const std::string& path, const std::string& variant_flag) {
  Variant v = variant_from_flag(variant_flag);
  Graph g = load_graph(path);
  SolveResult r = solve(g, v);
  std::cerr << "nodes=" << r.stats.nodes << " cycle_prunes=" << r.stats.cycle_prunes
            << " collision_prunes=" << r.stats.collision_prunes << "\n";
  if (!r.digraph) {
    std::cout << "no " << variant_name(v) << " exists\n";
    return 1;
  }
  std::cout << serialize(*r.digraph);
  return 0;
}

int run_enumerate(const std::string& path, const std::string& variant_flag) {
  Variant v = variant_from_flag(variant_flag);
  Graph g = load_graph(path);
  std::size_t n = 0;
  for_each_orientation(g, v, [&](const Digraph& d) {
    if (n++) std::cout << "\n";
    std::cout << serialize(d);
  });
  std::cout << "count=" << n << "\n";
  return n > 0 ? 0 : 1;
}

int run_count(const std::string& path, const std::string& variant_flag, bool oracle, int jobs) {
  Variant v = variant_from_flag(variant_flag);
  Graph g = load_graph(path);
  mpz_class count = count_orientations(g, v, nullptr, jobs);
  std::cout << "count=" << count.get_str();
  if (oracle) {
    mpz_class check = brute_force_count(g, v);
    std::cout << " oracle=" << check.get_str() << "\n";
    if (check != count)
      throw DefectError("count: solver says " + count.get_str() + ", oracle says " + check.get_str());
  } else {
    std::cout << "\n";
  }
  return count > 0 ? 0 : 1;
}

int run_hp_find(const std::string& path) {
  Graph g = load_graph(path);
  auto hp = find_hamiltonian_path(g);
  if (!hp) {
    std::cout << "no hamiltonian path\n";
    return 1;
  }
  std::cout << "path=";
  auto names = hp->names(g);
  for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? " " : "") << names[i];
  std::cout << "\n";
  return 0;
}

int run_hp_count(const std::string& path) {
  Graph g = load_graph(path);
  auto n = count_hamiltonian_paths(g);
  std::cout << "count=" << n << "\n";
  return n > 0 ? 0 : 1;
}

int emit_graph(const Graph& g, const NameMap& renames) {
  print_name_map(renames);
  std::cout << serialize(g);
  return 0;
}

int emit_digraph(const Digraph& d, const NameMap& renames) {
  print_name_map(renames);
  std::cout << serialize(d);
  return 0;
}

int run_lemma2(const std::string& graph_path, const std::string& path_file) {
  Graph g = load_graph(graph_path);
  std::vector<int> seq;
  for (const auto& name : parse_vertex_lines(read_file(path_file))) {
    auto idx = g.index_of(name);
    if (!idx) throw DomainError("path vertex '" + name + "' is not in the graph");
    seq.push_back(*idx);
  }
  NameMap renames;
  Digraph d = lemma2_orientation(g, HamPath{std::move(seq)}, &renames);
  return emit_digraph(d, renames);
}

int run_compose(const std::string& path1, const std::string& v1, const std::string& v2,
                const std::string& path2) {
  auto first = parse_edge_list(read_file(path1));
  auto second = parse_edge_list(read_file(path2));
  NameMap renames;
  if (std::holds_alternative<Digraph>(first) && std::holds_alternative<Digraph>(second)) {
    Digraph d = compose(std::get<Digraph>(first), v1, v2, std::get<Digraph>(second), &renames);
    return emit_digraph(d, renames);
  }
  if (std::holds_alternative<Graph>(first) && std::holds_alternative<Graph>(second)) {
    Graph g = compose(std::get<Graph>(first), v1, v2, std::get<Graph>(second), &renames);
    return emit_graph(g, renames);
  }
  throw DomainError("compose: inputs must both be graphs or both be digraphs");
}

int run_code_oosc(const std::string& path, const std::string& verify_file) {
  Digraph d = load_digraph(path);
  if (!verify_file.empty()) {
    bool ok = is_oosc(d, parse_vertex_lines(read_file(verify_file)));
    std::cout << "valid=" << (ok ? "true" : "false") << "\n";
    return ok ? 0 : 1;
  }
  CodeResult r = min_oosc(d);
  if (!r.feasible) {
    std::cout << "infeasible\n";
    return 1;
  }
  std::cout << "size=" << r.size << "\n";
  std::cout << "witness=";
  for (std::size_t i = 0; i < r.witness.size(); ++i) std::cout << (i ? " " : "") << r.witness[i];
  std::cout << "\n";
  return 0;
}

int run_code_dc(const std::string& path, const std::string& a_file, const std::string& b_file,
                const std::string& verify_file) {
  Graph g = load_graph(path);
  auto a_side = parse_vertex_lines(read_file(a_file));
  auto b_side = parse_vertex_lines(read_file(b_file));
  if (!verify_file.empty()) {
    bool ok = is_discriminating_code(g, a_side, b_side, parse_vertex_lines(read_file(verify_file)));
    std::cout << "valid=" << (ok ? "true" : "false") << "\n";
    return ok ? 0 : 1;
  }
  CodeResult r = min_discriminating_code(g, a_side, b_side);
  if (!r.feasible) {
    std::cout << "infeasible\n";
    return 1;
  }
  std::cout << "size=" << r.size << "\n";
  std::cout << "witness=";
  for (std::size_t i = 0; i < r.witness.size(); ++i) std::cout << (i ? " " : "") << r.witness[i];
  std::cout << "\n";
  return 0;
}

int run_collapse(const std::string& path) {
  Digraph d = load_digraph(path);
  auto collapse = mostowski_collapse(d);
  for (int v : d.canonical_vertices()) {
    const HFSet& s = collapse[static_cast<std::size_t>(v)];
    std::cout << d.name(v) << "\t" << s.canonical_string() << "\t"
              << ackermann(s).get_str() << "\n";
  }
  return 0;
}

int run_gadget_verify() {
  auto found = gadget_verify();
  std::cout << "count=" << found.size() << "\n";
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (i) std::cout << "\n";
    std::cout << serialize(found[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extensional acyclic / hyper-extensional orientation toolkit"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for counting searches")->capture_default_str();

  auto* check = app.add_subcommand("check", "evaluate digraph predicates");
  CheckFlags flags;
  std::string check_file;
  check->add_flag("--acyclic", flags.acyclic, "acyclicity, with ranks or a cycle witness");
  check->add_flag("--extensional", flags.extensional, "pairwise distinct out-neighborhoods");
  check->add_flag("--slim", flags.slim, "every arc removal breaks extensionality");
  check->add_flag("--hyperext", flags.hyperext, "maximum bisimulation is the identity");
  check->add_flag("--reversal-robust", flags.reversal_robust,
                  "every arc reversal yields a cycle or a collision");
  check->add_flag("--reach-sink", flags.reach_sink, "every vertex reaches a sink");
  check->add_option("file", check_file, "digraph file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "find one satisfying orientation");
  std::string solve_variant, solve_file;
  solve_cmd->add_option("--variant", solve_variant, "eao, seao or heo")->required();
  solve_cmd->add_option("file", solve_file, "graph file")->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "list every satisfying orientation");
  std::string enum_variant, enum_file;
  enum_cmd->add_option("--variant", enum_variant, "eao, seao or heo")->required();
  enum_cmd->add_option("file", enum_file, "graph file")->required();

  auto* count_cmd = app.add_subcommand("count", "count satisfying orientations");
  std::string count_variant, count_file;
  bool count_oracle = false;
  count_cmd->add_option("--variant", count_variant, "eao, seao or heo")->required();
  count_cmd->add_flag("--oracle", count_oracle, "cross-check against the unpruned 2^|E| oracle");
  count_cmd->add_option("--jobs", jobs, "worker threads for this count");
  count_cmd->add_option("file", count_file, "graph file")->required();

  auto* hp_cmd = app.add_subcommand("hp", "Hamiltonian paths");
  hp_cmd->require_subcommand(1);
  std::string hp_find_file, hp_count_file;
  hp_cmd->add_subcommand("find", "find one Hamiltonian path")
      ->add_option("file", hp_find_file, "graph file")
      ->required();
  hp_cmd->add_subcommand("count", "count Hamiltonian paths up to reversal")
      ->add_option("file", hp_count_file, "graph file")
      ->required();

  auto* reduce = app.add_subcommand("reduce", "constructions from graphs");
  reduce->require_subcommand(1);
  std::string rx_file;
  auto* hpx = reduce->add_subcommand("hpx", "two-leaf extension G+");
  hpx->add_option("file", rx_file, "graph file")->required();
  std::string sub_file;
  auto* sub = reduce->add_subcommand("subdivide", "subdivision graph S(G)");
  sub->add_option("file", sub_file, "graph file")->required();
  std::string l2_file, l2_path_file;
  auto* l2 = reduce->add_subcommand("lemma2", "slim e.a.o. of S(G) from a Hamiltonian path");
  l2->add_option("file", l2_file, "two-leaf graph file")->required();
  l2->add_option("--path", l2_path_file, "Hamiltonian path, one vertex per line")->required();
  std::string cp_file1, cp_v1, cp_v2, cp_file2;
  auto* cp = reduce->add_subcommand("compose", "disjoint union plus one bridge");
  cp->add_option("first", cp_file1, "first (di)graph file")->required();
  cp->add_option("v1", cp_v1, "bridge tail in the first structure")->required();
  cp->add_option("v2", cp_v2, "bridge head in the second structure")->required();
  cp->add_option("second", cp_file2, "second (di)graph file")->required();
  std::string heo_file;
  auto* heo = reduce->add_subcommand("heo-instance", "U(S(G), s, a_8, G_8)");
  heo->add_option("file", heo_file, "two-leaf graph file")->required();
  std::string dc_file, dc_a_file, dc_b_file;
  auto* d2o = reduce->add_subcommand("dc2oosc", "discriminating-code to ooSC digraph");
  d2o->add_option("file", dc_file, "bipartite graph file")->required();
  d2o->add_option("--side-a", dc_a_file, "part A, one vertex per line")->required();
  d2o->add_option("--side-b", dc_b_file, "part B, one vertex per line")->required();

  auto* code = app.add_subcommand("code", "minimum codes");
  code->require_subcommand(1);
  std::string oosc_file, oosc_verify;
  auto* oosc = code->add_subcommand("oosc", "open-out-separating code");
  oosc->add_option("file", oosc_file, "digraph file")->required();
  oosc->add_option("--verify", oosc_verify, "check this vertex set instead of optimizing");
  std::string dcc_file, dcc_a, dcc_b, dcc_verify;
  auto* dcc = code->add_subcommand("dc", "discriminating code");
  dcc->add_option("file", dcc_file, "bipartite graph file")->required();
  dcc->add_option("--side-a", dcc_a, "part A, one vertex per line")->required();
  dcc->add_option("--side-b", dcc_b, "part B, one vertex per line")->required();
  dcc->add_option("--verify", dcc_verify, "check this vertex set instead of optimizing");

  auto* clp = app.add_subcommand("collapse", "Mostowski collapse of an acyclic digraph");
  std::string clp_file;
  clp->add_option("file", clp_file, "digraph file")->required();

  app.add_subcommand("gadget-verify", "exhaustively re-derive {D_8, D'_8} from G_8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code_ = app.exit(e);
    return code_ == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(check_file, flags);
    if (solve_cmd->parsed()) return run_solve(solve_file, solve_variant);
    if (enum_cmd->parsed()) return run_enumerate(enum_file, enum_variant);
    if (count_cmd->parsed()) return run_count(count_file, count_variant, count_oracle, jobs);
    if (hp_cmd->parsed()) {
      if (hp_cmd->get_subcommand("find")->parsed()) return run_hp_find(hp_find_file);
      return run_hp_count(hp_count_file);
    }
    if (reduce->parsed()) {
      if (hpx->parsed()) {
        NameMap renames;
        return emit_graph(hp_prime_extend(load_graph(rx_file), &renames), renames);
      }
      if (sub->parsed()) {
        NameMap renames;
        return emit_graph(subdivision(load_graph(sub_file), &renames), renames);
      }
      if (l2->parsed()) return run_lemma2(l2_file, l2_path_file);
      if (cp->parsed()) return run_compose(cp_file1, cp_v1, cp_v2, cp_file2);
      if (heo->parsed()) {
        NameMap renames;
        return emit_graph(heo_instance(load_graph(heo_file), &renames), renames);
      }
      if (d2o->parsed()) {
        NameMap renames;
        Digraph d = dc_to_oosc(load_graph(dc_file), parse_vertex_lines(read_file(dc_a_file)),
                               parse_vertex_lines(read_file(dc_b_file)), &renames);
        return emit_digraph(d, renames);
      }
    }
    if (code->parsed()) {
      if (oosc->parsed()) return run_code_oosc(oosc_file, oosc_verify);
      return run_code_dc(dcc_file, dcc_a, dcc_b, dcc_verify);
    }
    if (clp->parsed()) return run_collapse(clp_file);
    return run_gadget_verify();
  } catch (const DefectError& e) {
    std::cerr << "defect: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
