#include "virtgen/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>
#include <sstream>

#include "virtgen/construction.hpp"
#include "virtgen/errors.hpp"
#include "virtgen/graphs.hpp"
#include "virtgen/group_spec.hpp"
#include "virtgen/io.hpp"
#include "virtgen/mingen.hpp"
#include "virtgen/seq_product.hpp"
#include "virtgen/subgroups.hpp"
#include "virtgen/verify.hpp"

namespace virtgen {

nlohmann::ordered_json group_summary(const FiniteGroup& G) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["report"] = "group";
  j["group"] = G.label();
  j["order"] = G.order();
  auto& gens = j["generators"] = nlohmann::ordered_json::array();
  for (Elem g : G.generators()) gens.push_back(G.name(g));
  std::map<std::size_t, std::size_t> orders;
  for (Elem g = 0; g < G.order(); ++g) ++orders[G.element_order(g)];
  auto& eo = j["element_orders"] = nlohmann::ordered_json::object();
  for (const auto& [o, c] : orders) eo[std::to_string(o)] = c;
  j["abelian"] = G.is_abelian();
  j["center_order"] = center(G).size();
  if (G.order() <= caps().lattice) {
    j["soluble"] = is_soluble(G);
    j["frattini_order"] = frattini(G).size();
    j["minimal_subgroups"] = to_string(classify_unique_minimal(G).kind);
    j["rank"] = rank_d(G);
  }
  return j;
}

namespace {

std::vector<double> parse_taus(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("bad tau '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty tau list");
  return out;
}

void emit(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"virtgen: generating and independence graphs of finite groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "virtgen 1.0");

  std::string group_spec, kind_name = "virt-independence", dot_path, csv_path, family_path,
                          taus_text = "1.5,2,3", variant_name = "corrected", suite = "all",
                          mingen_csv;
  unsigned t = 2;
  std::size_t samples = 100, threshold = 4, doubling = 0;
  std::uint64_t seed = 1;

  auto* build = app.add_subcommand("build", "Construct a group and print its summary");
  build->add_option("--group", group_spec, "Group constructor string")->required();

  auto* graph = app.add_subcommand("graph", "Build a graph on a group and analyse it");
  graph->add_option("--group", group_spec, "Group constructor string")->required();
  graph->add_option("--kind", kind_name, "generating | independence | virt-independence");
  graph->add_option("--dot", dot_path, "Write the graph in DOT format");
  graph->add_option("--csv", csv_path, "Write the edge list as CSV");

  auto* mingen = app.add_subcommand("mingen", "Sizes of irredundant generating sets");
  mingen->add_option("--group", group_spec, "Group constructor string")->required();
  mingen->add_option("--csv", mingen_csv, "Also write the witness table as CSV");

  auto* construction = app.add_subcommand("construction", "Component census of the t-block construction");
  construction->add_option("--t", t, "Number of blocks")->check(CLI::Range(1u, 10u));
  construction->add_option("--samples", samples, "Samples per block")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  construction->add_option("--seed", seed, "Random seed");
  construction->add_option("--variant", variant_name, "corrected | paper");

  auto* seqprod = app.add_subcommand("seqprod", "Separation certificates in a sequence product");
  auto* fam = seqprod->add_option("--family", family_path, "Coordinate family file");
  auto* dbl = seqprod->add_option("--doubling", doubling, "Use paths of length 2^1..2^N instead of a file");
  fam->excludes(dbl);
  seqprod->add_option("--taus", taus_text, "Comma separated taus, each > 1");
  seqprod->add_option("--threshold", threshold, "Distance gap threshold B");

  auto* verify = app.add_subcommand("verify", "Run acceptance suites");
  verify->add_option("--suite", suite, "all, a suite name or a criterion number");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "virtgen 1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (build->parsed()) {
      emit(out, group_summary(build_group(group_spec)));
    } else if (graph->parsed()) {
      const GraphKind kind = parse_graph_kind(kind_name);
      const FiniteGroup G = build_group(group_spec);
      const Graph g = build_graph(G, kind);
      GraphReport r = analyze_graph(g, kind, G.label());
      if (!dot_path.empty()) write_file_atomic(dot_path, to_dot(g, G, kind));
      if (!csv_path.empty()) write_file_atomic(csv_path, to_csv(g));
      emit(out, to_json(r, &G));
    } else if (mingen->parsed()) {
      const auto table = tarski_table(build_group(group_spec));
      if (!mingen_csv.empty()) write_file_atomic(mingen_csv, tarski_csv({table}));
      emit(out, to_json(table));
    } else if (construction->parsed()) {
      const Variant variant = parse_variant(variant_name);
      nlohmann::ordered_json j;
      j["schema_version"] = 1;
      j["report"] = "construction";
      j["variant"] = to_string(variant);
      j["census"] = to_json(component_census(t, samples, seed));
      if (t <= 3) j["generator_pairs"] = to_json(verify_generator_pairs(t, variant));
      emit(out, j);
    } else if (seqprod->parsed()) {
      if (family_path.empty() && doubling == 0)
        throw ParseError("seqprod needs --family FILE or --doubling N");
      const CoordinateFamily F = family_path.empty() ? doubling_path_family(doubling) : load_family(family_path);
      emit(out, to_json(separation_demo(F, parse_taus(taus_text), threshold)));
    } else if (verify->parsed()) {
      const auto results = run_suite(suite);
      for (const auto& r : results) err << format_line(r) << '\n';
      const auto j = to_json(results);
      emit(out, j);
      return j["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace virtgen
