#include <array>

#include "als/bench_io.hpp"
#include "als/gen.hpp"
#include "als/postopt.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace als;

namespace {

// six-gate inverter/buffer chain: one path, uniform upsizing choices
Netlist chain6() {
  return parse_bench(
      "INPUT(a)\nOUTPUT(y)\n"
      "g1 = NOT(a)\n"
      "g2 = BUF(g1)\n"
      "g3 = NOT(g2)\n"
      "g4 = BUF(g3)\n"
      "g5 = NOT(g4)\n"
      "y = BUF(g5)\n");
}

ReferenceContext context_for(const Netlist& n) {
  OptimizerConfig cfg;
  return make_context(n, cfg, CellLibrary::defaults());
}

// every drive assignment of the six chain gates, the slow way
std::pair<double, double> exhaustive_best(const Netlist& n,
                                          const ReferenceContext& ctx,
                                          double area_con) {
  std::vector<GateId> gates;
  for (const auto& [id, g] : n.gates)
    if (g.kind != GateKind::Input) gates.push_back(id);
  REQUIRE(gates.size() == 6);
  double best_cpd = analyze(n, ctx.lib).cpd;
  double best_area = area(n, ctx.lib);
  std::array<DriveStrength, 3> drives = {DriveStrength::X1, DriveStrength::X2,
                                         DriveStrength::X4};
  for (int mask = 0; mask < 729; ++mask) {  // 3^6 assignments
    SizingMap s;
    int m = mask;
    for (GateId g : gates) {
      s[g] = drives[m % 3];
      m /= 3;
    }
    double a = area(n, ctx.lib, s);
    if (a > area_con + 1e-9) continue;
    double cpd = analyze(n, ctx.lib, s).cpd;
    if (cpd < best_cpd - 1e-12) {
      best_cpd = cpd;
      best_area = a;
    }
  }
  return {best_cpd, best_area};
}

}  // namespace

TEST_CASE("a generous budget drives the whole chain to X4") {
  Netlist n = chain6();
  ReferenceContext ctx = context_for(n);
  PostOptResult res = post_optimize(n, ctx, 1000.0, 7);
  CHECK(res.sizing.size() == 6);
  for (const auto& [id, d] : res.sizing) CHECK(d == DriveStrength::X4);
  CHECK(res.cpd_fac < ctx.cpd_ori);
  CHECK(res.ratio_cpd == doctest::Approx(res.cpd_fac / ctx.cpd_ori));
}

TEST_CASE("greedy sizing matches the exhaustive optimum on the chain") {
  Netlist n = chain6();
  ReferenceContext ctx = context_for(n);
  double base_area = area(n, ctx.lib);
  for (double budget :
       {base_area, base_area + 1.0, base_area + 2.5, base_area + 6.0,
        base_area * 3.2}) {
    PostOptResult res = post_optimize(n, ctx, budget, 7);
    auto [best_cpd, best_area] = exhaustive_best(n, ctx, budget);
    CHECK(res.cpd_fac == doctest::Approx(best_cpd).epsilon(1e-10));
    CHECK(res.final_area <= budget + 1e-9);
  }
}

TEST_CASE("a zero headroom budget performs no upsizing") {
  Netlist n = chain6();
  ReferenceContext ctx = context_for(n);
  PostOptResult res = post_optimize(n, ctx, area(n, ctx.lib), 7);
  CHECK(res.sizing.empty());
  CHECK(res.cpd_fac == doctest::Approx(ctx.cpd_ori));
  CHECK(!res.area_infeasible);
}

TEST_CASE("an impossible budget is flagged, not forced") {
  Netlist n = chain6();
  ReferenceContext ctx = context_for(n);
  PostOptResult res = post_optimize(n, ctx, 1.0, 7);
  CHECK(res.area_infeasible);
  CHECK(res.sizing.empty());
}

TEST_CASE("dangling gates are removed before sizing") {
  Netlist n = parse_bench(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\n"
      "dead = AND(a, b)\n"
      "y = OR(a, b)\n");
  ReferenceContext ctx = context_for(n);
  PostOptResult res = post_optimize(n, ctx, 1000.0, 7);
  CHECK(res.final.gates.size() == 3);  // two PIs + y
  CHECK(dangling_gates(res.final).empty());
}

TEST_CASE("sizing never changes the function") {
  Netlist n = gen_random(60, 8, 15);
  ReferenceContext ctx = context_for(n);
  PostOptResult res = post_optimize(n, ctx, area(n, ctx.lib) * 2.0, 7);
  CHECK(testutil::equivalent_exhaustive(n, res.final));
  CHECK(res.final_error.er == 0.0);
}

TEST_CASE("cpd is never worse than the unsized circuit") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Netlist n = gen_random(50, 7, seed);
    ReferenceContext ctx = context_for(n);
    double slack[] = {0.0, 2.0, 10.0};
    for (double s : slack) {
      PostOptResult res = post_optimize(n, ctx, area(n, ctx.lib) + s, 7);
      CHECK(res.cpd_fac <= ctx.cpd_ori + 1e-9);
      CHECK(res.final_area <= area(n, ctx.lib) + s + 1e-9);
    }
  }
}
