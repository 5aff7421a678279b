// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Where a value is derived rather than hand-checkable, the independent oracle
// (unpruned exhaustive planarization recursion, exhaustive path systems) runs
// right here before the value is trusted.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crosskit/bundles.hpp"
#include "crosskit/critical.hpp"
#include "crosskit/decompose.hpp"
#include "crosskit/io.hpp"
#include "crosskit/mcr.hpp"
#include "crosskit/multigraph.hpp"
#include "crosskit/named.hpp"
#include "crosskit/solver.hpp"
#include "crosskit/zip.hpp"
#include "oracles.hpp"

using namespace crosskit;
using nlohmann::json;

namespace {

struct Check {
  int number;
  std::string name;
  std::function<bool(std::ostream&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int exact_or_fail(const MultiGraph& g, MemoTable* memo, std::ostream& log, const char* what) {
  SolveResult r = crossing_number(g, {}, memo);
  if (r.status != SolveStatus::exact) {
    log << what << ": solver did not reach an exact value; ";
    return -1;
  }
  if (!r.certificate || !verify_certificate(g, *r.certificate)) {
    log << what << ": certificate failed to verify; ";
    return -1;
  }
  return r.value();
}

MultiGraph k33_chain(int t) {
  MultiGraph cur = complete_bipartite(3, 3);
  for (int i = 1; i < t; ++i)
    cur = zip(make_zip_spec(cur, cur.max_vertex_id(), complete_bipartite(3, 3), 0));
  return cur;
}

MultiGraph planted(std::mt19937& rng, int degree, int base_max_vertices, int base_max_edges,
                   double parallel_prob = 0.1) {
  while (true) {
    MultiGraph base = oracles::random_connected_graph(rng, std::max(degree, 3),
                                                      base_max_vertices, base_max_edges,
                                                      parallel_prob);
    if (base.vertex_count() < degree) continue;
    std::vector<VertexId> targets(base.vertices());
    std::shuffle(targets.begin(), targets.end(), rng);
    targets.resize(static_cast<std::size_t>(degree));
    std::vector<Edge> es(base.edges());
    EdgeId id = base.next_edge_id();
    VertexId nv = base.max_vertex_id() + 1;
    for (VertexId t : targets) es.push_back(Edge{id++, t, nv});
    std::vector<VertexId> vs(base.vertices());
    vs.push_back(nv);
    return MultiGraph::build(std::move(vs), std::move(es));
  }
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

std::string g_tmpdir;

CliRun run_cli(const std::string& args) {
  static int counter = 0;
  std::string out_path = g_tmpdir + "/acc_out" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(CROSSKIT_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(out_path);
  std::ostringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  return r;
}

// 1. exact solver values, each under 60 s, matched against the unpruned
//    exhaustive recursion
bool criterion1(std::ostream& log) {
  MemoTable memo;
  struct Item {
    const char* name;
    MultiGraph g;
    int expect;
    int oracle_cap;  // -1: trivial, skip the oracle
  };
  std::vector<Item> items;
  items.push_back({"K4", complete_graph(4), 0, -1});
  items.push_back({"K5", complete_graph(5), 1, 2});
  items.push_back({"K3,3", complete_bipartite(3, 3), 1, 2});
  items.push_back({"K6", complete_graph(6), 3, 4});
  items.push_back({"Petersen", petersen_graph(), 2, 3});
  bool ok = true;
  for (auto& item : items) {
    auto t0 = std::chrono::steady_clock::now();
    int got = exact_or_fail(item.g, &memo, log, item.name);
    double secs = seconds_since(t0);
    if (got != item.expect) {
      log << item.name << ": got " << got << ", want " << item.expect << "; ";
      ok = false;
    }
    if (secs >= 60.0) {
      log << item.name << ": took " << secs << " s (cap 60); ";
      ok = false;
    }
    if (item.oracle_cap > 0) {
      int ref = oracles::crossing_number(item.g, item.oracle_cap);
      if (ref != item.expect) {
        log << item.name << ": oracle says " << ref << "; ";
        ok = false;
      }
    }
  }
  return ok;
}

// 2. cross-identify bound suite over 200 seeded random connected graphs
bool criterion2(std::ostream& log) {
  std::mt19937 rng(20260808);
  MemoTable memo;
  int violations = 0, equality_misses = 0, nonplanar = 0;
  for (int it = 0; it < 200; ++it) {
    MultiGraph g = oracles::random_connected_graph(rng, 4, 9, 14, 0.0);
    int c = exact_or_fail(g, &memo, log, "instance");
    if (c < 0) return false;
    const auto& es = g.edges();
    // one random admissible pair per instance
    for (int probe = 0; probe < 20; ++probe) {
      std::uniform_int_distribution<std::size_t> d(0, es.size() - 1);
      std::size_t i = d(rng), j = d(rng);
      if (i == j || es[i].adjacent_to(es[j])) continue;
      int child = exact_or_fail(cross_identify(g, es[i].id, es[j].id), &memo, log, "child");
      if (child < c - 1) ++violations;
      break;
    }
    if (c == 0) continue;
    ++nonplanar;
    bool floor_hit = false;
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        if (es[i].adjacent_to(es[j])) continue;
        SolverLimits lim;
        lim.budget = c - 1;
        SolveResult r = crossing_number(cross_identify(g, es[i].id, es[j].id), lim, &memo);
        if (r.status == SolveStatus::exact) {
          if (r.value() < c - 1) ++violations;
          if (r.value() == c - 1) floor_hit = true;
        } else if (r.status != SolveStatus::exceeds_budget) {
          return false;
        }
      }
    if (!floor_hit) ++equality_misses;
  }
  log << "200 instances, " << nonplanar << " nonplanar; ";
  if (violations) log << violations << " inequality violations; ";
  if (equality_misses) log << equality_misses << " equality misses; ";
  return violations == 0 && equality_misses == 0;
}

// 3. additivity over 100 seeded degree <= 3 zips, plus all sigma on 10
bool criterion3(std::ostream& log) {
  std::mt19937 rng(33003);
  MemoTable memo;
  int checked = 0;
  for (int it = 0; it < 100; ++it) {
    std::uniform_int_distribution<int> dd(1, 3);
    int d = dd(rng);
    MultiGraph g1 = planted(rng, d, 7, 10);
    MultiGraph g2 = planted(rng, d, 7, 10);
    ZipSpec spec = make_zip_spec(g1, g1.max_vertex_id(), g2, g2.max_vertex_id());
    std::vector<EdgeId> rhs;
    for (auto& [a, b] : spec.sigma) rhs.push_back(b);
    std::shuffle(rhs.begin(), rhs.end(), rng);
    for (std::size_t i = 0; i < rhs.size(); ++i) spec.sigma[i].second = rhs[i];

    int c1 = exact_or_fail(spec.g1, &memo, log, "factor1");
    int c2 = exact_or_fail(spec.g2, &memo, log, "factor2");
    int cz = exact_or_fail(zip(spec), &memo, log, "zip");
    if (c1 < 0 || c2 < 0 || cz < 0) return false;
    if (cz != c1 + c2) {
      log << "instance " << it << ": cr(zip)=" << cz << " != " << c1 << "+" << c2 << "; ";
      return false;
    }
    ++checked;
  }
  // exhaust all bijections on 10 instances
  for (int it = 0; it < 10; ++it) {
    std::uniform_int_distribution<int> dd(2, 3);
    int d = dd(rng);
    MultiGraph g1 = planted(rng, d, 6, 8);
    MultiGraph g2 = planted(rng, d, 6, 8);
    ZipSpec base = make_zip_spec(g1, g1.max_vertex_id(), g2, g2.max_vertex_id());
    int c1 = exact_or_fail(base.g1, &memo, log, "factor1");
    int c2 = exact_or_fail(base.g2, &memo, log, "factor2");
    std::vector<EdgeId> rhs;
    for (auto& [a, b] : base.sigma) rhs.push_back(b);
    std::sort(rhs.begin(), rhs.end());
    do {
      ZipSpec spec = base;
      for (std::size_t i = 0; i < rhs.size(); ++i) spec.sigma[i].second = rhs[i];
      int cz = exact_or_fail(zip(spec), &memo, log, "zip");
      if (cz != c1 + c2) {
        log << "sigma variant broke additivity; ";
        return false;
      }
    } while (std::next_permutation(rhs.begin(), rhs.end()));
  }
  log << checked << " zips + 10 sigma-exhausted instances; ";
  return true;
}

// 4. chain of 5 zipped K3,3s: decomposition beats the raw solver
bool criterion4(std::ostream& log) {
  MultiGraph chain = k33_chain(5);
  std::string path = g_tmpdir + "/chain5.txt";
  {
    std::ofstream f(path);
    f << emit_edge_list(chain);
  }
  auto t0 = std::chrono::steady_clock::now();
  CliRun dec = run_cli("decompose " + path + " --json");
  double dec_secs = seconds_since(t0);
  if (dec.exit_code != 0) {
    log << "cmd_decompose exited " << dec.exit_code << "; ";
    return false;
  }
  json j = json::parse(dec.out);
  if (j.at("value") != 5 || j.at("exact") != true) {
    log << "decompose value " << j.at("value") << " exact " << j.at("exact") << "; ";
    return false;
  }
  if (dec_secs >= 10.0) {
    log << "decompose took " << dec_secs << " s (cap 10); ";
    return false;
  }
  log << "decompose " << dec_secs << " s; ";

  CliRun direct = run_cli("cr " + path + " --time-limit 60000");
  if (direct.exit_code == 0) {
    std::istringstream ss(direct.out);
    int v = -1;
    ss >> v;
    if (v != 5) {
      log << "direct solver answered " << v << "; ";
      return false;
    }
    log << "direct solver agreed; ";
  } else if (direct.exit_code == 3) {
    log << "direct solver timed out (engine value stands); ";
  } else {
    log << "direct solver exited " << direct.exit_code << "; ";
    return false;
  }
  return true;
}

// 5. zip(K3,3, K3,3): cr = 2 and every single deletion drops below
bool criterion5(std::ostream& log) {
  MemoTable memo;
  MultiGraph z = zip(make_zip_spec(complete_bipartite(3, 3), 0, complete_bipartite(3, 3), 0));
  int c = exact_or_fail(z, &memo, log, "zip");
  if (c != 2) {
    log << "cr(zip) = " << c << ", want 2; ";
    return false;
  }
  for (const Edge& e : z.edges()) {
    SolverLimits lim;
    lim.budget = 1;
    SolveResult r = crossing_number(delete_edge(z, e.id), lim, &memo);
    if (r.status != SolveStatus::exact || r.value() > 1) {
      log << "deleting edge " << e.id << " does not drop cr below 2; ";
      return false;
    }
  }
  log << "all " << z.edge_count() << " deletions drop cr; ";
  return true;
}

// 6. decompose_internally_4ec over the 3-chain
bool criterion6(std::ostream& log) {
  MemoTable memo;
  MultiGraph chain = k33_chain(3);
  FactorDecomposition fd = decompose_internally_4ec(chain, {}, &memo);
  if (!fd.complete) {
    log << "pipeline hit resource limits; ";
    return false;
  }
  if (fd.factors.size() != 3) {
    log << "got " << fd.factors.size() << " factors, want 3; ";
    return false;
  }
  int sum = 0;
  for (std::size_t i = 0; i < fd.factors.size(); ++i) {
    const MultiGraph& f = fd.factors[i];
    if (!enumerate_min_cuts(f, 3, true).empty()) {
      log << "factor " << i << " still has a nontrivial small cut; ";
      return false;
    }
    if (is_crossing_critical(f, {}, &memo).critical != Tri::yes) {
      log << "factor " << i << " is not crossing-critical; ";
      return false;
    }
    sum += fd.values[i];
  }
  if (sum != 3) {
    log << "factor values sum to " << sum << ", want 3; ";
    return false;
  }
  log << "3 factors, values 1+1+1; ";
  return true;
}

// 7. bundle detection equals exhaustive path-system enumeration
bool criterion7(std::ostream& log) {
  std::mt19937 rng(20260808);
  int bundle_checks = 0, coherent_checks = 0;
  for (int it = 0; it < 200; ++it) {
    MultiGraph g = oracles::random_connected_graph(rng, 4, 7, 12, 0.35);
    std::uniform_int_distribution<int> vd(0, g.vertex_count() - 1);
    for (int probe = 0; probe < 4; ++probe) {
      VertexId v = g.vertices()[static_cast<std::size_t>(vd(rng))];
      VertexId w = g.vertices()[static_cast<std::size_t>(vd(rng))];
      if (v == w) continue;
      auto mine = find_bundle(g, v, w);
      if (mine && !validate_bundle(g, *mine)) {
        log << "invalid bundle returned (instance " << it << "); ";
        return false;
      }
      if (mine.has_value() != oracles::has_bundle(g, v, w)) {
        log << "bundle mismatch at instance " << it << " v=" << v << " w=" << w << "; ";
        return false;
      }
      ++bundle_checks;
    }
    VertexId v = g.vertices()[static_cast<std::size_t>(vd(rng))];
    auto pair = find_coherent_bundles(g, v);
    if (pair && (!validate_bundle(g, pair->first) || !validate_bundle(g, pair->second) ||
                 pair->first.sink == pair->second.sink)) {
      log << "invalid coherent pair at instance " << it << "; ";
      return false;
    }
    if (pair.has_value() != oracles::has_coherent_bundles(g, v)) {
      log << "coherent mismatch at instance " << it << " v=" << v << "; ";
      return false;
    }
    ++coherent_checks;
  }

  // the named instances
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      pairs.push_back({i, j});
      pairs.push_back({i, j});
    }
  for (int i = 0; i < 4; ++i) pairs.push_back({i, 4});
  MultiGraph apex = make_graph(5, pairs);
  if (!find_coherent_bundles(apex, 4)) {
    log << "apex-over-doubled-K4 should yield a coherent pair; ";
    return false;
  }
  if (find_coherent_bundles(complete_graph(5), 0)) {
    log << "K5 apex should yield none; ";
    return false;
  }
  log << bundle_checks << " bundle and " << coherent_checks << " coherent checks; ";
  return true;
}

// 8. coherent-bundle regime: zips at degree >= 4 respect the summed lower bound
bool criterion8(std::ostream& log) {
  std::mt19937 rng(88888);
  MemoTable memo;
  int instances = 0, attempts = 0;
  while (instances < 50 && attempts < 4000) {
    ++attempts;
    MultiGraph g1 = planted(rng, 4, 6, 11, 0.6);
    MultiGraph g2 = planted(rng, 4, 6, 11, 0.6);
    VertexId v1 = g1.max_vertex_id(), v2 = g2.max_vertex_id();
    if (!find_coherent_bundles(g1, v1) || !find_coherent_bundles(g2, v2)) continue;
    ZipSpec spec = make_zip_spec(g1, v1, g2, v2);
    int c1 = exact_or_fail(g1, &memo, log, "factor1");
    int c2 = exact_or_fail(g2, &memo, log, "factor2");
    int cz = exact_or_fail(zip(spec), &memo, log, "zip");
    if (c1 < 0 || c2 < 0 || cz < 0) return false;
    if (cz < c1 + c2) {
      log << "violation: cr(zip)=" << cz << " < " << c1 << "+" << c2 << "; ";
      return false;
    }
    ++instances;
  }
  log << instances << " coherent-gated zips, zero violations; ";
  return instances >= 50;
}

// 9. mcr suite
bool criterion9(std::ostream& log) {
  MemoTable memo;
  ZipSpec spec = make_zip_spec(complete_bipartite(3, 3), 0, complete_bipartite(3, 3), 0);
  McrZipReport rep = mcr_zip_check(spec, 6, {}, &memo);
  if (!(rep.zip_value.exact() && rep.zip_value.lower == 2 && rep.g1_value.lower == 1 &&
        rep.g2_value.lower == 1 && rep.equality_holds == Tri::yes)) {
    log << "mcr(zip(K3,3,K3,3)) suite failed; ";
    return false;
  }

  // mcr <= cr on every instance solved here
  std::vector<MultiGraph> insts{complete_graph(5), complete_bipartite(3, 3), complete_graph(4),
                                petersen_graph(),
                                zip(make_zip_spec(complete_bipartite(3, 3), 0,
                                                  complete_bipartite(3, 3), 0))};
  for (const MultiGraph& g : insts) {
    McrResult m = minor_crossing_number(g, 6, {}, &memo);
    SolveResult c = crossing_number(g, {}, &memo);
    if (m.status != SolveStatus::exact || c.status != SolveStatus::exact ||
        m.value() > c.value()) {
      log << "mcr <= cr failed on an instance; ";
      return false;
    }
  }

  TreeProductBound k2k4 = tree_product_bound(path_graph(2), complete_graph(4), 6, {}, &memo);
  if (k2k4.total != 2) {
    log << "tree_product_bound(K2,K4) = " << k2k4.total << ", want 2; ";
    return false;
  }
  SolveResult k4k2 = crossing_number(cartesian_product(complete_graph(4), path_graph(2)), {}, &memo);
  if (k4k2.status != SolveStatus::exact || k2k4.total > k4k2.value()) {
    log << "bound exceeds cr(K4 box K2); ";
    return false;
  }

  TreeProductBound p3c3 = tree_product_bound(path_graph(3), cycle_graph(3), 6, {}, &memo);
  if (p3c3.total != 0) {
    log << "tree_product_bound(P3,C3) = " << p3c3.total << ", want 0; ";
    return false;
  }
  SolveResult c3p3 = crossing_number(cartesian_product(cycle_graph(3), path_graph(3)), {}, &memo);
  if (c3p3.status != SolveStatus::exact || p3c3.total > c3p3.value()) {
    log << "bound exceeds cr(C3 box P3); ";
    return false;
  }
  log << "cr(K4xK2)=" << k4k2.value() << " cr(C3xP3)=" << c3p3.value() << "; ";
  return true;
}

}  // namespace

int main() {
  {
    char buf[] = "/tmp/crosskit_acceptance_XXXXXX";
    const char* made = mkdtemp(buf);
    if (!made) {
      std::cerr << "cannot create temp dir\n";
      return 99;
    }
    g_tmpdir = made;
  }

  std::vector<Check> checks{
      {1, "exact solver values (K4, K5, K3,3, K6, Petersen)", criterion1},
      {2, "cross-identify bounds on 200 random graphs", criterion2},
      {3, "additivity over degree <= 3 zips (100 + sigma exhaustion)", criterion3},
      {4, "chain of 5 zipped K3,3s decomposes fast to 5", criterion4},
      {5, "zip(K3,3, K3,3) is 2-crossing-critical (exhaustive)", criterion5},
      {6, "internally-4EC factor pipeline on the 3-chain", criterion6},
      {7, "bundle detection vs exhaustive path systems", criterion7},
      {8, "coherent-bundle zips respect the lower bound (50+)", criterion8},
      {9, "minor crossing number suite", criterion9},
  };

  int failures = 0;
  for (auto& c : checks) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream log;
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log << "exception: " << e.what();
    }
    double secs = seconds_since(t0);
    std::printf("[%s] criterion %d: %s (%s%.1f s)\n", ok ? "PASS" : "FAIL", c.number,
                c.name.c_str(), log.str().c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
