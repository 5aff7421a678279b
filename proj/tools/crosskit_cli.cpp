// crosskit: exact crossing numbers of small multigraphs, cut decomposition,
// zip products, bundles, criticality and minor-crossing-number bounds.
//
// Exit codes: 0 ok, 1 negative verdict, 2 input error, 3 resource exhaustion.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crosskit/bundles.hpp"
#include "crosskit/critical.hpp"
#include "crosskit/cuts.hpp"
#include "crosskit/decompose.hpp"
#include "crosskit/io.hpp"
#include "crosskit/mcr.hpp"
#include "crosskit/multigraph.hpp"
#include "crosskit/named.hpp"
#include "crosskit/solver.hpp"
#include "crosskit/zip.hpp"

namespace {

using nlohmann::json;
using namespace crosskit;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_stream(std::istream& in) {
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

GraphFormat parse_format(const std::string& s) {
  if (s == "auto") return GraphFormat::auto_detect;
  if (s == "edgelist") return GraphFormat::edge_list;
  if (s == "graph6") return GraphFormat::graph6;
  throw InputError("unknown format '" + s + "' (expected auto, edgelist or graph6)");
}

// Inputs are file paths, "-" for stdin, or named graphs (K5, K3,3, C6,
// Petersen, ...).
MultiGraph load_graph(const std::string& arg, GraphFormat fmt) {
  if (arg == "-") return read_graph_document(read_stream(std::cin), fmt).graph;
  std::ifstream file(arg);
  if (file) return read_graph_document(read_stream(file), fmt).graph;
  if (auto g = named_graph(arg)) return *g;
  throw InputError("cannot open '" + arg + "' (not a file, and not a known graph name)");
}

long long env_ll(const char* name, long long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoll(v);
  } catch (...) {
    throw InputError(std::string(name) + " is not an integer");
  }
}

struct SolverFlags {
  long long max_nodes = -1;
  long long time_limit_ms = -1;
  int threads = 1;
  bool no_memo = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-nodes", max_nodes,
                    "search node cap (default: CROSSKIT_MAX_NODES or unlimited)");
    cmd->add_option("--time-limit", time_limit_ms,
                    "wall-clock cap in ms (default: CROSSKIT_MAX_MS or unlimited)");
    cmd->add_option("--threads", threads, "worker threads for the root search level");
    cmd->add_flag("--no-memo", no_memo, "disable isomorphism memoization");
  }

  SolverLimits limits() const {
    SolverLimits lim;
    lim.node_cap = max_nodes >= 0 ? max_nodes : env_ll("CROSSKIT_MAX_NODES", -1);
    long long ms = time_limit_ms >= 0 ? time_limit_ms : env_ll("CROSSKIT_MAX_MS", -1);
    lim.time_cap_ms = ms >= 0 ? static_cast<int>(ms) : -1;
    lim.threads = threads;
    lim.use_memo = !no_memo;
    return lim;
  }
};

json stats_to_json(const SolverStats& s) {
  return json{{"nodes", s.nodes}, {"planarity_checks", s.planarity_checks}, {"wall_ms", s.wall_ms}};
}

int cmd_cr(const std::string& input, GraphFormat fmt, const SolverFlags& flags, int budget,
           const std::string& cert_path, bool as_json) {
  MultiGraph g = load_graph(input, fmt);
  SolverLimits lim = flags.limits();
  lim.budget = budget;
  SolveResult r = crossing_number(g, lim);

  if (!cert_path.empty() && r.certificate) {
    std::ofstream out(cert_path);
    if (!out) throw InputError("cannot write certificate to '" + cert_path + "'");
    out << certificate_to_json(*r.certificate).dump(2) << '\n';
  }
  if (as_json) {
    json j{{"command", "cr"}, {"stats", stats_to_json(r.stats)}, {"lower", r.lower}};
    j["upper"] = r.upper ? json(*r.upper) : json(nullptr);
    switch (r.status) {
      case SolveStatus::exact:
        j["status"] = "exact";
        j["value"] = r.value();
        break;
      case SolveStatus::exceeds_budget:
        j["status"] = "exceeds_budget";
        j["budget"] = budget;
        break;
      case SolveStatus::inconclusive:
        j["status"] = "inconclusive";
        break;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    switch (r.status) {
      case SolveStatus::exact:
        std::cout << r.value() << '\n';
        break;
      case SolveStatus::exceeds_budget:
        std::cout << "exceeds budget " << budget << " (cr >= " << r.lower << ")\n";
        break;
      case SolveStatus::inconclusive:
        std::cout << "unknown, bound interval [" << r.lower << ", inf)\n";
        break;
    }
  }
  if (r.status == SolveStatus::exceeds_budget) return kExitNegative;
  if (r.status == SolveStatus::inconclusive) return kExitResource;
  return kExitOk;
}

void print_tree(const DecompositionTree& t, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (t.is_leaf()) {
    std::cout << pad << "leaf n=" << t.graph.vertex_count() << " m=" << t.graph.edge_count()
              << " value=" << t.lower;
    if (!t.exact()) std::cout << " (unresolved)";
    std::cout << '\n';
    return;
  }
  std::cout << pad << "split cut={";
  for (std::size_t i = 0; i < t.cut->edges.size(); ++i)
    std::cout << (i ? " " : "") << t.cut->edges[i];
  std::cout << "} |F|=" << t.cut->edges.size() << (t.exact_split ? "" : " [lower-bound]") << '\n';
  for (const auto& c : t.children) print_tree(*c, depth + 1);
}

int cmd_decompose(const std::string& input, GraphFormat fmt, const SolverFlags& flags,
                  int max_cut_size, bool allow_lb, bool as_json) {
  MultiGraph g = load_graph(input, fmt);
  DecompPolicy policy;
  policy.max_cut_size = max_cut_size;
  policy.allow_lb = allow_lb;
  policy.solver = flags.limits();
  if (max_cut_size == 4 && !allow_lb)
    throw InputError("--max-cut-size 4 produces lower bounds; pass --allow-lb");
  DecompositionTree tree = cr_via_decomposition(g, policy);

  if (as_json) {
    json j{{"command", "decompose"}, {"value", tree.lower}, {"exact", tree.exact()}};
    j["tree"] = tree_to_json(tree);
    std::cout << j.dump(2) << '\n';
  } else {
    if (tree.exact())
      std::cout << "value " << tree.lower << " (exact)\n";
    else if (tree.upper)
      std::cout << "value in [" << tree.lower << ", " << *tree.upper << "]\n";
    else
      std::cout << "value >= " << tree.lower << " (lower bound)\n";
    print_tree(tree, 0);
  }
  bool unresolved_leaf = false;
  std::function<void(const DecompositionTree&)> scan = [&](const DecompositionTree& t) {
    if (t.is_leaf() && t.leaf->status == SolveStatus::inconclusive) unresolved_leaf = true;
    for (const auto& c : t.children) scan(*c);
  };
  scan(tree);
  return unresolved_leaf ? kExitResource : kExitOk;
}

int cmd_zip(const std::string& in1, const std::string& in2, GraphFormat fmt,
            const std::string& at, const std::string& sigma_list, bool as_json) {
  MultiGraph g1 = load_graph(in1, fmt);
  MultiGraph g2 = load_graph(in2, fmt);
  int v1 = -1, v2 = -1;
  {
    std::istringstream ss(at);
    char comma = 0;
    if (!(ss >> v1 >> comma >> v2) || comma != ',')
      throw InputError("--at expects \"v1,v2\"");
  }
  ZipSpec spec = make_zip_spec(g1, v1, g2, v2);
  if (!sigma_list.empty()) {
    std::vector<int> perm;
    std::istringstream ss(sigma_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) perm.push_back(std::stoi(tok));
    std::vector<EdgeId> f1 = g1.incident_edges(v1);
    std::vector<EdgeId> f2 = g2.incident_edges(v2);
    std::sort(f1.begin(), f1.end());
    std::sort(f2.begin(), f2.end());
    if (perm.size() != f1.size()) throw InputError("--sigma length must equal the degree");
    std::vector<char> seen(perm.size(), 0);
    spec.sigma.clear();
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (perm[i] < 0 || perm[i] >= static_cast<int>(f2.size()) ||
          seen[static_cast<std::size_t>(perm[i])])
        throw InputError("--sigma must be a permutation of 0.." + std::to_string(perm.size() - 1));
      seen[static_cast<std::size_t>(perm[i])] = 1;
      spec.sigma.push_back({f1[i], f2[static_cast<std::size_t>(perm[i])]});
    }
  }
  MultiGraph z = zip(spec);
  if (as_json)
    std::cout << graph_to_json(z).dump(2) << '\n';
  else
    std::cout << emit_edge_list(z);
  return kExitOk;
}

int cmd_cuts(const std::string& input, GraphFormat fmt, int max_size, bool nontrivial,
             bool as_json) {
  MultiGraph g = load_graph(input, fmt);
  std::vector<EdgeCut> cuts = enumerate_min_cuts(g, max_size, nontrivial);
  if (as_json) {
    json arr = json::array();
    for (const EdgeCut& c : cuts)
      arr.push_back(json{{"edges", c.edges}, {"side1", c.side1}, {"side2", c.side2}});
    std::cout << json{{"command", "cuts"}, {"count", cuts.size()}, {"cuts", arr}}.dump(2) << '\n';
  } else {
    for (const EdgeCut& c : cuts) {
      std::cout << "size " << c.edges.size() << ": edges";
      for (EdgeId e : c.edges) std::cout << ' ' << e;
      std::cout << " sides " << c.side1.size() << "+" << c.side2.size() << '\n';
    }
    if (cuts.empty()) std::cout << "no cuts of size <= " << max_size << '\n';
  }
  return cuts.empty() ? kExitNegative : kExitOk;
}

void print_bundle(const Bundle& b) {
  std::cout << "sink " << b.sink << ":";
  for (const BundlePath& p : b.paths) {
    std::cout << " [" << p.start;
    for (EdgeId e : p.edges) std::cout << " e" << e;
    std::cout << "]";
  }
  std::cout << '\n';
}

json bundle_to_json(const Bundle& b) {
  json paths = json::array();
  for (const BundlePath& p : b.paths)
    paths.push_back(json{{"start", p.start}, {"edges", p.edges}});
  return json{{"center", b.center}, {"sink", b.sink}, {"paths", paths}};
}

int cmd_bundles(const std::string& input, GraphFormat fmt, int vertex, int sink, bool coherent,
                bool as_json) {
  MultiGraph g = load_graph(input, fmt);
  if (!g.has_vertex(vertex)) throw InputError("no vertex " + std::to_string(vertex));
  if (coherent) {
    auto pair = find_coherent_bundles(g, vertex);
    if (as_json) {
      json j{{"command", "bundles"}, {"coherent", pair.has_value()}};
      if (pair) j["pair"] = json::array({bundle_to_json(pair->first), bundle_to_json(pair->second)});
      std::cout << j.dump(2) << '\n';
    } else if (pair) {
      print_bundle(pair->first);
      print_bundle(pair->second);
    } else {
      std::cout << "no coherent bundles at vertex " << vertex << '\n';
    }
    return pair ? kExitOk : kExitNegative;
  }
  std::vector<Bundle> found;
  if (sink >= 0) {
    if (!g.has_vertex(sink)) throw InputError("no vertex " + std::to_string(sink));
    if (auto b = find_bundle(g, vertex, sink)) found.push_back(*b);
  } else {
    for (VertexId w : g.vertices())
      if (w != vertex)
        if (auto b = find_bundle(g, vertex, w)) found.push_back(*b);
  }
  if (as_json) {
    json arr = json::array();
    for (const Bundle& b : found) arr.push_back(bundle_to_json(b));
    std::cout << json{{"command", "bundles"}, {"count", found.size()}, {"bundles", arr}}.dump(2)
              << '\n';
  } else {
    for (const Bundle& b : found) print_bundle(b);
    if (found.empty()) std::cout << "no bundles at vertex " << vertex << '\n';
  }
  return found.empty() ? kExitNegative : kExitOk;
}

int cmd_critical(const std::string& input, GraphFormat fmt, const SolverFlags& flags,
                 bool as_json) {
  MultiGraph g = load_graph(input, fmt);
  DecompPolicy policy;
  policy.solver = flags.limits();
  CriticalityReport rep = is_crossing_critical(g, policy);
  if (as_json) {
    json j{{"command", "critical"}};
    j["cr_lower"] = rep.cr.lower;
    j["cr_upper"] = rep.cr.upper ? json(*rep.cr.upper) : json(nullptr);
    j["critical"] = rep.critical == Tri::yes ? "yes" : rep.critical == Tri::no ? "no" : "unknown";
    j["slack_edges"] = rep.slack_edges;
    std::cout << j.dump(2) << '\n';
  } else {
    switch (rep.critical) {
      case Tri::yes:
        std::cout << "crossing-critical (cr = " << rep.cr.lower << ")\n";
        break;
      case Tri::no: {
        std::cout << "not crossing-critical (cr = " << rep.cr.lower << "; slack edges:";
        for (EdgeId e : rep.slack_edges) std::cout << ' ' << e;
        std::cout << ")\n";
        break;
      }
      case Tri::unknown:
        std::cout << "unknown (resource limits hit)\n";
        break;
    }
  }
  if (rep.critical == Tri::unknown) return kExitResource;
  return rep.critical == Tri::yes ? kExitOk : kExitNegative;
}

int cmd_mcr(const std::string& input, GraphFormat fmt, const SolverFlags& flags, int degree_cap,
            bool as_json) {
  MultiGraph g = load_graph(input, fmt);
  McrResult r = minor_crossing_number(g, degree_cap, flags.limits());
  if (as_json) {
    json j{{"command", "mcr"},
           {"class_exact", r.class_exact},
           {"expansions_total", r.expansions_total},
           {"expansions_solved", r.expansions_solved},
           {"lower", r.lower}};
    j["upper"] = r.upper ? json(*r.upper) : json(nullptr);
    j["status"] = r.status == SolveStatus::exact ? "exact" : "inconclusive";
    if (r.witness) j["witness"] = graph_to_json(r.witness->host);
    std::cout << j.dump(2) << '\n';
  } else {
    if (r.status == SolveStatus::exact) {
      std::cout << r.value();
      if (!r.class_exact) std::cout << " (within the cubic-expansion class)";
      std::cout << '\n';
    } else {
      std::cout << "unknown, bounds [" << r.lower << ", "
                << (r.upper ? std::to_string(*r.upper) : "inf") << "]\n";
    }
  }
  return r.status == SolveStatus::exact ? kExitOk : kExitResource;
}

int cmd_product_bound(const std::string& tree_arg, const std::string& graph_arg, GraphFormat fmt,
                      const SolverFlags& flags, int degree_cap, bool as_json) {
  MultiGraph t = load_graph(tree_arg, fmt);
  MultiGraph g = load_graph(graph_arg, fmt);
  TreeProductBound b = tree_product_bound(t, g, degree_cap, flags.limits());
  if (as_json) {
    json terms = json::array();
    for (auto& [d, v] : b.terms) terms.push_back(json{{"tree_degree", d}, {"mcr_lower", v}});
    std::cout << json{{"command", "product_bound"},
                      {"bound", b.total},
                      {"all_exact", b.all_exact},
                      {"terms", terms}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << b.total << '\n';
  }
  return kExitOk;
}

int cmd_verify(const std::string& input, GraphFormat fmt, const std::string& cert_path,
               bool as_json) {
  MultiGraph g = load_graph(input, fmt);
  std::ifstream file(cert_path);
  if (!file) throw InputError("cannot open certificate '" + cert_path + "'");
  CrossingCertificate cert;
  try {
    cert = certificate_from_json(json::parse(read_stream(file)));
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate parse error: ") + e.what());
  }
  VerifyOutcome out = verify_certificate_detail(g, cert);
  if (as_json) {
    std::cout << json{{"command", "verify"}, {"valid", out.ok}, {"reason", out.reason}}.dump(2)
              << '\n';
  } else {
    std::cout << (out.ok ? "valid" : "invalid: " + out.reason) << '\n';
  }
  return out.ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossing numbers of small multigraphs via cut decomposition and zip products"};
  app.require_subcommand(1);
  app.fallthrough();  // --format may follow the subcommand

  std::string format_name = "auto";
  app.add_option("--format", format_name, "input format: auto, edgelist, graph6")
      ->capture_default_str();

  // cr
  auto* cr = app.add_subcommand("cr", "exact crossing number");
  std::string cr_input;
  int cr_budget = -1;
  std::string cr_cert;
  bool cr_json = false;
  SolverFlags cr_flags;
  cr->add_option("input", cr_input, "graph file, '-', or a named graph")->required();
  cr->add_option("--budget", cr_budget, "decision mode: is cr <= budget?");
  cr->add_option("--certificate", cr_cert, "write the planarization certificate (JSON)");
  cr->add_flag("--json", cr_json, "JSON output");
  cr_flags.attach(cr);

  // decompose
  auto* dec = app.add_subcommand("decompose", "crossing number via cut decomposition");
  std::string dec_input;
  int dec_max_cut = 3;
  bool dec_allow_lb = false, dec_json = false;
  SolverFlags dec_flags;
  dec->add_option("input", dec_input, "graph file, '-', or a named graph")->required();
  dec->add_option("--max-cut-size", dec_max_cut, "split at cuts up to this size (3 or 4)")
      ->check(CLI::IsMember({3, 4}));
  dec->add_flag("--allow-lb", dec_allow_lb, "allow size-4 splits (result becomes a lower bound)");
  dec->add_flag("--json", dec_json, "JSON output");
  dec_flags.attach(dec);

  // zip
  auto* zp = app.add_subcommand("zip", "zip product of two graphs");
  std::string zip_in1, zip_in2, zip_at, zip_sigma;
  bool zip_json = false;
  zp->add_option("input1", zip_in1)->required();
  zp->add_option("input2", zip_in2)->required();
  zp->add_option("--at", zip_at, "vertices \"v1,v2\"")->required();
  zp->add_option("--sigma", zip_sigma, "permutation list, e.g. 2,0,1 (default: ascending ids)");
  zp->add_flag("--json", zip_json, "JSON output");

  // cuts
  auto* cut = app.add_subcommand("cuts", "minimal edge cuts of bounded size");
  std::string cuts_input;
  int cuts_max = 3;
  bool cuts_nontrivial = false, cuts_json = false;
  cut->add_option("input", cuts_input)->required();
  cut->add_option("--max-size", cuts_max, "largest cut size (<= 4)");
  cut->add_flag("--nontrivial", cuts_nontrivial, "suppress single-vertex sides");
  cut->add_flag("--json", cuts_json, "JSON output");

  // bundles
  auto* bnd = app.add_subcommand("bundles", "bundles and coherent bundles at a vertex");
  std::string bnd_input;
  int bnd_vertex = -1, bnd_sink = -1;
  bool bnd_coherent = false, bnd_json = false;
  bnd->add_option("input", bnd_input)->required();
  bnd->add_option("--vertex", bnd_vertex, "bundle center")->required();
  bnd->add_option("--sink", bnd_sink, "check one sink only");
  bnd->add_flag("--coherent", bnd_coherent, "search for a coherent pair");
  bnd->add_flag("--json", bnd_json, "JSON output");

  // critical
  auto* crit = app.add_subcommand("critical", "is the graph crossing-critical?");
  std::string crit_input;
  bool crit_json = false;
  SolverFlags crit_flags;
  crit->add_option("input", crit_input)->required();
  crit->add_flag("--json", crit_json, "JSON output");
  crit_flags.attach(crit);

  // mcr
  auto* mcr = app.add_subcommand("mcr", "minor crossing number (cubic-expansion class)");
  std::string mcr_input;
  int mcr_cap = 6;
  bool mcr_json = false;
  SolverFlags mcr_flags;
  mcr->add_option("input", mcr_input)->required();
  mcr->add_option("--degree-cap", mcr_cap, "largest expandable degree");
  mcr->add_flag("--json", mcr_json, "JSON output");
  mcr_flags.attach(mcr);

  // product-bound
  auto* pb = app.add_subcommand("product-bound", "lower bound for mcr(T box G)");
  std::string pb_tree, pb_graph;
  int pb_cap = 6;
  bool pb_json = false;
  SolverFlags pb_flags;
  pb->add_option("--tree", pb_tree, "tree T (file or name)")->required();
  pb->add_option("--graph", pb_graph, "graph G (file or name)")->required();
  pb->add_option("--degree-cap", pb_cap, "largest expandable degree");
  pb->add_flag("--json", pb_json, "JSON output");
  pb_flags.attach(pb);

  // verify
  auto* ver = app.add_subcommand("verify", "replay a crossing certificate");
  std::string ver_input, ver_cert;
  bool ver_json = false;
  ver->add_option("input", ver_input)->required();
  ver->add_option("--certificate", ver_cert, "certificate JSON file")->required();
  ver->add_flag("--json", ver_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    GraphFormat fmt = parse_format(format_name);
    if (*cr) return cmd_cr(cr_input, fmt, cr_flags, cr_budget, cr_cert, cr_json);
    if (*dec) return cmd_decompose(dec_input, fmt, dec_flags, dec_max_cut, dec_allow_lb, dec_json);
    if (*zp) return cmd_zip(zip_in1, zip_in2, fmt, zip_at, zip_sigma, zip_json);
    if (*cut) return cmd_cuts(cuts_input, fmt, cuts_max, cuts_nontrivial, cuts_json);
    if (*bnd) return cmd_bundles(bnd_input, fmt, bnd_vertex, bnd_sink, bnd_coherent, bnd_json);
    if (*crit) return cmd_critical(crit_input, fmt, crit_flags, crit_json);
    if (*mcr) return cmd_mcr(mcr_input, fmt, mcr_flags, mcr_cap, mcr_json);
    if (*pb) return cmd_product_bound(pb_tree, pb_graph, fmt, pb_flags, pb_cap, pb_json);
    if (*ver) return cmd_verify(ver_input, fmt, ver_cert, ver_json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
