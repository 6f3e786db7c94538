#include <algorithm>
#include <cstdio>
#include <fstream>

#include "als/bench_io.hpp"
#include "als/gen.hpp"
#include "als/rng.hpp"
#include "als/sta.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace als;

namespace {

// Independent oracle: enumerate every PI-to-PO gate path and sum gate delays
// along it. No arrival-time propagation anywhere in here.
struct PathOracle {
  double cpd = 0.0;
  std::vector<std::vector<GateId>> critical;  // all paths within tolerance
};

PathOracle enumerate_paths(const Netlist& n, const CellLibrary& lib,
                           const SizingMap& sizing = {}) {
  auto fanouts = fanout_counts(n);
  std::map<GateId, std::vector<GateId>> consumers;
  std::set<GateId> po_gates;
  for (const auto& [id, g] : n.gates)
    for (const FaninRef& f : g.fanins)
      if (f.is_gate()) consumers[f.gate_id()].push_back(id);
  for (const FaninRef& po : n.primary_outputs)
    if (po.is_gate()) po_gates.insert(po.gate_id());

  PathOracle out;
  std::vector<GateId> path;
  std::vector<std::pair<double, std::vector<GateId>>> all;
  std::function<void(GateId, double)> dfs = [&](GateId g, double delay) {
    delay += gate_delay(n, g, lib, sizing, fanouts);
    path.push_back(g);
    if (po_gates.count(g)) all.emplace_back(delay, path);
    for (GateId c : consumers[g]) dfs(c, delay);
    path.pop_back();
  };
  for (GateId pi : n.primary_inputs) dfs(pi, 0.0);
  for (const auto& [d, p] : all) out.cpd = std::max(out.cpd, d);
  for (const auto& [d, p] : all)
    if (d >= out.cpd - kTieTolerance) out.critical.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("default library delay arithmetic for an inverter") {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a)\n");
  CellLibrary lib = CellLibrary::defaults();
  auto fo = fanout_counts(n);
  CHECK(gate_delay(n, 1, lib, {}, fo) == doctest::Approx(1.2));  // 1.0 + 0.2*1
  SizingMap x4{{1, DriveStrength::X4}};
  CHECK(gate_delay(n, 1, lib, x4, fo) == doctest::Approx(1.05));  // load/4
  // dangling drivers still pay their intrinsic delay
  Netlist d = parse_bench(
      "INPUT(a)\nOUTPUT(y)\nt = NOT(a)\ny = BUF(a)\n");
  auto fo2 = fanout_counts(d);
  CHECK(gate_delay(d, 1, CellLibrary::defaults(), {}, fo2) ==
        doctest::Approx(1.0));
}

TEST_CASE("extra fan-ins add intrinsic delay and area") {
  CellLibrary lib = CellLibrary::defaults();
  CellParams and2 = lib.params(GateKind::And, DriveStrength::X1, 2);
  CellParams and3 = lib.params(GateKind::And, DriveStrength::X1, 3);
  CHECK(and3.intrinsic == doctest::Approx(and2.intrinsic + 0.25));
  CHECK(and3.area == doctest::Approx(and2.area + 0.5));
  CHECK(and3.load_coeff == doctest::Approx(and2.load_coeff));
}

TEST_CASE("single-gate circuit cpd") {
  Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n");
  TimingReport r = analyze(n, CellLibrary::defaults());
  CHECK(r.cpd == doctest::Approx(1.7));  // 1.5 intrinsic + 0.2 * 1 PO reader
  // one path per tied PI
  REQUIRE(r.critical_paths.size() == 2);
  CHECK(r.critical_paths[0] == std::vector<GateId>{0, 2});
  CHECK(r.critical_paths[1] == std::vector<GateId>{1, 2});
  CHECK(r.po_arrival[0] == doctest::Approx(r.cpd));
}

TEST_CASE("unit-delay library measures depth in levels") {
  Netlist n = parse_bench(
      "INPUT(a)\nOUTPUT(y)\n"
      "t = NOT(a)\n"
      "u = NOT(t)\n"
      "y = AND(t, u)\n");
  TimingReport r = analyze(n, CellLibrary::unit_delay());
  CHECK(r.cpd == doctest::Approx(3.0));
}

TEST_CASE("analyze matches the all-paths oracle on random DAGs") {
  CellLibrary lib = CellLibrary::defaults();
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Netlist n = gen_random(15, 4, seed);
    SizingMap sizing;
    auto rng = derive_rng(seed, 5);
    std::uniform_int_distribution<int> d3(0, 2);
    for (const auto& [id, g] : n.gates)
      sizing[id] = static_cast<DriveStrength>(d3(rng));
    TimingReport r = analyze(n, lib, sizing, 1 << 20);
    PathOracle oracle = enumerate_paths(n, lib, sizing);
    CHECK(r.cpd == doctest::Approx(oracle.cpd).epsilon(1e-12));
    std::set<std::vector<GateId>> got(r.critical_paths.begin(),
                                      r.critical_paths.end());
    std::set<std::vector<GateId>> want(oracle.critical.begin(),
                                       oracle.critical.end());
    CHECK(got == want);
  }
}

TEST_CASE("rca16 cpd equals the carry-spine path enumeration") {
  Netlist n = gen_rca(16);
  CellLibrary lib = CellLibrary::defaults();
  TimingReport r = analyze(n, lib);
  PathOracle oracle = enumerate_paths(n, lib);
  CHECK(r.cpd == doctest::Approx(oracle.cpd).epsilon(1e-12));
  CHECK(r.critical_paths.size() <= kMaxCriticalPaths);
  CHECK(!r.critical_paths.empty());
  for (const auto& p : r.critical_paths)
    CHECK(std::count(oracle.critical.begin(), oracle.critical.end(), p) >= 1);
}

TEST_CASE("arrival times are monotone along live edges") {
  Netlist n = gen_random(120, 8, 21);
  TimingReport r = analyze(n, CellLibrary::defaults());
  for (const auto& [id, g] : n.gates)
    for (const FaninRef& f : g.fanins)
      if (f.is_gate())
        CHECK(r.arrival.at(f.gate_id()) <= r.arrival.at(id) + kTieTolerance);
}

TEST_CASE("upsizing one gate never increases cpd") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Netlist n = gen_random(60, 6, seed);
    CellLibrary lib = CellLibrary::defaults();
    double base = analyze(n, lib).cpd;
    auto rng = derive_rng(seed, 9);
    std::vector<GateId> non_pi;
    for (const auto& [id, g] : n.gates)
      if (g.kind != GateKind::Input) non_pi.push_back(id);
    std::uniform_int_distribution<std::size_t> pick(0, non_pi.size() - 1);
    for (int k = 0; k < 5; ++k) {
      SizingMap s{{non_pi[pick(rng)], DriveStrength::X2}};
      CHECK(analyze(n, lib, s).cpd <= base + kTieTolerance);
    }
  }
}

TEST_CASE("area sums cell areas with drive multipliers") {
  Netlist n = parse_bench(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\n"
      "t = NOT(a)\n"
      "u = AND(t, b)\n"
      "y = XOR(u, a)\n");
  CellLibrary lib = CellLibrary::defaults();
  CHECK(area(n, lib) == doctest::Approx(1.0 + 2.0 + 3.0));
  SizingMap s{{2, DriveStrength::X2}, {4, DriveStrength::X4}};
  CHECK(area(n, lib, s) == doctest::Approx(1.8 + 2.0 + 3.0 * 3.2));
}

TEST_CASE("stranding a 2-gate cone drops its area when excluded") {
  Netlist n = parse_bench(
      "INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\n"
      "t = AND(a, b)\n"
      "u = AND(t, c)\n"
      "y = OR(u, a)\n");
  CellLibrary lib = CellLibrary::defaults();
  double base = area(n, lib);
  Netlist m = apply_fanin_edit(n, EditSite::gate(5), FaninRef::gate(4),
                               FaninRef::const0());
  CHECK(area(m, lib, {}, true) == doctest::Approx(base - 4.0));
  CHECK(area(m, lib, {}, false) == doctest::Approx(base));
}

TEST_CASE("library files load and override the defaults") {
  std::string path = "test_lib.tmp";
  {
    std::ofstream out(path);
    out << "# kind drive area intrinsic load\n"
           "NOT X1 1.0 2.0 0.3\n"
           "NOT X2 1.8 2.0 0.15\n"
           "NOT X4 3.2 2.0 0.075\n"
           "BUF X1 1.0 1.0 0.2\nBUF X2 1.8 1.0 0.1\nBUF X4 3.2 1.0 0.05\n"
           "AND X1 2.0 1.5 0.2\nAND X2 3.6 1.5 0.1\nAND X4 6.4 1.5 0.05\n"
           "NAND X1 2.0 1.5 0.2\nNAND X2 3.6 1.5 0.1\nNAND X4 6.4 1.5 0.05\n"
           "OR X1 2.0 1.5 0.2\nOR X2 3.6 1.5 0.1\nOR X4 6.4 1.5 0.05\n"
           "NOR X1 2.0 1.5 0.2\nNOR X2 3.6 1.5 0.1\nNOR X4 6.4 1.5 0.05\n"
           "XOR X1 3.0 2.0 0.2\nXOR X2 5.4 2.0 0.1\nXOR X4 9.6 2.0 0.05\n"
           "XNOR X1 3.0 2.0 0.2\nXNOR X2 5.4 2.0 0.1\nXNOR X4 9.6 2.0 0.05\n";
  }
  CellLibrary lib = CellLibrary::from_file(path);
  std::remove(path.c_str());
  CellParams p = lib.params(GateKind::Not, DriveStrength::X1, 1);
  CHECK(p.intrinsic == doctest::Approx(2.0));
  CHECK(p.load_coeff == doctest::Approx(0.3));
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a)\n");
  CHECK(analyze(n, lib).cpd == doctest::Approx(2.3));
}
