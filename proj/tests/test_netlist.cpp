#include <algorithm>

#include "als/bench_io.hpp"
#include "als/gen.hpp"
#include "als/netlist.hpp"
#include "als/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace als;

TEST_CASE("parse a minimal two-input AND") {
  Netlist n = parse_bench(
      "INPUT(a)\n"
      "INPUT(b)\n"
      "OUTPUT(y)\n"
      "y = AND(a, b)\n");
  CHECK(n.gates.size() == 3);
  CHECK(n.primary_inputs.size() == 2);
  REQUIRE(n.primary_outputs.size() == 1);
  const Gate& y = n.gate(n.primary_outputs[0].gate_id());
  CHECK(y.kind == GateKind::And);
  CHECK(y.fanins.size() == 2);
  CHECK(y.fanins[0] == FaninRef::gate(n.primary_inputs[0]));
  CHECK(y.fanins[1] == FaninRef::gate(n.primary_inputs[1]));
}

TEST_CASE("parser tolerates case, comments, and OUTPUT before definition") {
  Netlist n = parse_bench(
      "# header comment\n"
      "output(y)\n"
      "input(a)\n"
      "y = nand(a, a)  # trailing comment\n");
  CHECK(n.gates.size() == 2);
  CHECK(n.gate(n.primary_outputs[0].gate_id()).kind == GateKind::Nand);
}

TEST_CASE("BUFF is accepted as a buffer") {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUFF(a)\n");
  CHECK(n.gate(n.primary_outputs[0].gate_id()).kind == GateKind::Buf);
}

TEST_CASE("constant aliases consume no gate ID") {
  Netlist n = parse_bench(
      "INPUT(a)\n"
      "OUTPUT(y)\n"
      "zero = CONST0\n"
      "one = CONST1\n"
      "y = OR(a, zero)\n");
  CHECK(n.gates.size() == 2);  // a and y only
  const Gate& y = n.gate(n.primary_outputs[0].gate_id());
  CHECK(y.fanins[1] == FaninRef::const0());
}

TEST_CASE("constant fan-ins survive emit/parse") {
  Netlist n = parse_bench(
      "INPUT(a)\nOUTPUT(y)\nc1 = CONST1\ny = XOR(a, c1)\n");
  Netlist back = parse_bench(emit_bench(n));
  CHECK(testutil::same_structure(n, back));
}

TEST_CASE("parse errors carry line info") {
  CHECK_THROWS_AS(parse_bench("INPUT(a)\ny = FROB(a)\nOUTPUT(y)\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_bench("OUTPUT(y)\ny = AND(a, b)\n"), ParseError);
  CHECK_THROWS_AS(parse_bench("INPUT(a)\n"), ValidationError);  // no outputs
}

TEST_CASE("self-loop is a cycle error") {
  CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(c)\nc = AND(a, c)\n"),
                  CycleError);
}

TEST_CASE("two-gate loop names the stuck gates") {
  try {
    parse_bench(
        "INPUT(a)\nOUTPUT(p)\n"
        "p = AND(a, q)\n"
        "q = OR(a, p)\n");
    FAIL("expected CycleError");
  } catch (const CycleError& e) {
    CHECK(e.cycle_gates.size() == 2);
  }
}

TEST_CASE("arity is enforced") {
  CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a, a)\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(y)\ny = AND(a)\n"),
                  ParseError);
}

TEST_CASE("topological order respects every edge") {
  Netlist n = gen_random(120, 8, 11);
  std::vector<GateId> order = topological_order(n);
  CHECK(order.size() == n.gates.size());
  std::map<GateId, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& [id, g] : n.gates)
    for (const FaninRef& f : g.fanins)
      if (f.is_gate()) CHECK(pos.at(f.gate_id()) < pos.at(id));
}

TEST_CASE("tfi of a PI is just the PI; tfi of a constant is empty") {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a)\n");
  CHECK(tfi(n, FaninRef::gate(n.primary_inputs[0])).size() == 1);
  CHECK(tfi(n, FaninRef::const0()).empty());
  CHECK(tfi(n, n.primary_outputs[0]).size() == 2);
}

TEST_CASE("dangling matches the backward-liveness oracle on random netlists") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Netlist n = gen_random(200, 10, seed);
    // strand some cones by rewiring random PO slots to const0
    auto rng = derive_rng(seed, 77);
    Netlist m = n;
    std::uniform_int_distribution<int> po_pick(
        0, static_cast<int>(m.primary_outputs.size()) - 1);
    for (int k = 0; k < 3; ++k) {
      int p = po_pick(rng);
      m = apply_fanin_edit(m, EditSite::po(p), m.primary_outputs[p],
                           FaninRef::const0());
    }
    std::set<GateId> live = testutil::live_gates(m);
    std::set<GateId> dangling = dangling_gates(m);
    for (const auto& [id, g] : m.gates) {
      bool is_pi = g.kind == GateKind::Input;
      bool expect = !is_pi && !live.count(id);
      CHECK(dangling.count(id) == (expect ? 1u : 0u));
    }
  }
}

TEST_CASE("remove_dangling keeps the function and is idempotent") {
  Netlist n = gen_random(150, 9, 3);
  Netlist m = apply_fanin_edit(n, EditSite::po(0), n.primary_outputs[0],
                               FaninRef::const1());
  Netlist cleaned = remove_dangling(m);
  CHECK(dangling_gates(cleaned).empty());
  CHECK(testutil::same_structure(cleaned, remove_dangling(cleaned)));
  CHECK(testutil::equivalent_exhaustive(m, cleaned));
  validate(cleaned);
}

TEST_CASE("apply_fanin_edit changes exactly one slot") {
  Netlist n = parse_bench(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\n"
      "t = AND(a, a)\n"
      "y = OR(t, b)\n");
  GateId t = 2, y = 3;
  Netlist m = apply_fanin_edit(n, EditSite::gate(t), FaninRef::gate(0),
                               FaninRef::gate(1));
  // only the first matching slot of t moved
  CHECK(m.gate(t).fanins[0] == FaninRef::gate(1));
  CHECK(m.gate(t).fanins[1] == FaninRef::gate(0));
  CHECK(m.gate(y).fanins == n.gate(y).fanins);
  CHECK(m.primary_outputs == n.primary_outputs);
}

TEST_CASE("apply_fanin_edit refuses to close a loop") {
  Netlist n = parse_bench(
      "INPUT(a)\nOUTPUT(y)\n"
      "t = NOT(a)\n"
      "y = NOT(t)\n");
  CHECK_THROWS_AS(
      apply_fanin_edit(n, EditSite::gate(1), FaninRef::gate(0),
                       FaninRef::gate(2)),
      CycleError);
}

TEST_CASE("rca16 round trip preserves structure and all 17 PO slots") {
  Netlist n = gen_rca(16);
  CHECK(n.primary_inputs.size() == 32);
  CHECK(n.primary_outputs.size() == 17);
  Netlist back = parse_bench(emit_bench(n));
  CHECK(testutil::same_structure(n, back));
  CHECK(back.primary_outputs.size() == 17);
}

TEST_CASE("random netlists round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Netlist n = gen_random(80, 7, seed);
    Netlist back = parse_bench(emit_bench(n));
    CHECK(testutil::same_structure(n, back));
  }
}
