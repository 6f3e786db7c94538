#include "als/bench_io.hpp"
#include "als/gen.hpp"
#include "als/sim.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace als;

namespace {

// decode the adder's PO bits into an integer for one exhaustive vector
unsigned decode_sum(const Netlist& n, const TraceMap& traces, std::size_t j) {
  unsigned out = 0;
  for (std::size_t k = 0; k < n.primary_outputs.size(); ++k) {
    const FaninRef& po = n.primary_outputs[k];
    bool bit = po.is_const() ? po.const_value()
                             : testutil::row_bit(traces.at(po.gate_id()), j);
    if (bit) out |= 1u << k;
  }
  return out;
}

}  // namespace

TEST_CASE("one-bit adder is a five-gate full adder") {
  Netlist n = gen_rca(1);
  CHECK(n.primary_inputs.size() == 2);
  CHECK(n.primary_outputs.size() == 2);
  CHECK(n.gates.size() == 2 + 5);
  validate(n);
}

TEST_CASE("ripple-carry adders compute integer addition exhaustively") {
  for (int width : {1, 2, 4, 6, 8}) {
    Netlist n = gen_rca(width);
    REQUIRE(n.primary_inputs.size() == 2 * static_cast<std::size_t>(width));
    REQUIRE(n.primary_outputs.size() == static_cast<std::size_t>(width) + 1);
    VectorSet v = gen_vectors_exhaustive(2 * width);
    TraceMap traces = simulate(n, v);
    // PI order is a0..aN-1 then b0..bN-1, LSB first
    for (std::size_t j = 0; j < v.num_vectors; ++j) {
      unsigned a = static_cast<unsigned>(j) & ((1u << width) - 1);
      unsigned b = static_cast<unsigned>(j) >> width;
      CHECK(decode_sum(n, traces, j) == a + b);
    }
  }
}

TEST_CASE("a wide adder still adds on sampled vectors") {
  int width = 16;
  Netlist n = gen_rca(width);
  VectorSet v = gen_vectors_mc(2 * width, 500, 99);
  TraceMap traces = simulate(n, v);
  for (std::size_t j = 0; j < v.num_vectors; ++j) {
    unsigned a = 0, b = 0;
    for (int i = 0; i < width; ++i) {
      if (testutil::row_bit(v.rows[i], j)) a |= 1u << i;
      if (testutil::row_bit(v.rows[width + i], j)) b |= 1u << i;
    }
    CHECK(decode_sum(n, traces, j) == a + b);
  }
}

TEST_CASE("generators are deterministic") {
  CHECK(emit_bench(gen_rca(8)) == emit_bench(gen_rca(8)));
  CHECK(emit_bench(gen_random(120, 10, 5)) == emit_bench(gen_random(120, 10, 5)));
  CHECK(emit_bench(gen_random(120, 10, 5)) != emit_bench(gen_random(120, 10, 6)));
}

TEST_CASE("random netlists hit the requested size and validate") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Netlist n = gen_random(150, 12, seed);
    validate(n);
    CHECK(n.primary_inputs.size() == 12);
    CHECK(n.gates.size() == 150 + 12);
    CHECK(dangling_gates(n).empty());  // POs cover every sink
  }
}

TEST_CASE("mux tree routes the selected data input") {
  int levels = 2;
  Netlist n = gen_mux_tree(levels);
  validate(n);
  REQUIRE(n.primary_inputs.size() == 4 + 2);  // data then selects
  REQUIRE(n.primary_outputs.size() == 1);
  VectorSet v = gen_vectors_exhaustive(6);
  TraceMap traces = simulate(n, v);
  const FaninRef& po = n.primary_outputs[0];
  for (std::size_t j = 0; j < v.num_vectors; ++j) {
    unsigned sel = (static_cast<unsigned>(j) >> 4) & 3;
    bool want = (j >> sel) & 1;  // data PIs are vector bits 0..3
    CHECK(testutil::row_bit(traces.at(po.gate_id()), j) == want);
  }
}
