#pragma once

#include <cstdint>

#include "als/netlist.hpp"

namespace als {

/// N-bit ripple-carry adder built from uniform full-adder cells (carry-in of
/// bit 0 tied to const0): 2N PIs a0..aN-1, b0..bN-1; N+1 POs s0..sN-1, cout
/// with s0 the least significant bit. 5 gates per bit.
Netlist gen_rca(int width);

/// Mux tree with `levels` select inputs: 2^levels data PIs, `levels` select
/// PIs, one PO. Each 2:1 mux is NOT/AND/AND/OR.
Netlist gen_mux_tree(int levels);

/// Random valid DAG: `num_pis` inputs, `num_gates` gates drawing fan-ins
/// from earlier nodes; POs are all sink gates.
Netlist gen_random(int num_gates, int num_pis, std::uint64_t seed);

}  // namespace als
