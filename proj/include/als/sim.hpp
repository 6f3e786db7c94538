#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "als/netlist.hpp"

namespace als {

using BitRow = std::vector<std::uint64_t>;  // packed, LSB-first within a word

/// Sampled (or exhaustive) input vectors, one packed bit row per PI.
/// Immutable and shareable across concurrent simulations.
struct VectorSet {
  int num_inputs = 0;
  std::size_t num_vectors = 0;
  std::vector<BitRow> rows;  // rows[i] = waveform of PI index i
  bool exhaustive = false;
  std::uint64_t seed = 0;
};

/// Vector order for exhaustive sets: vector j assigns bit (j >> i) & 1 to PI
/// index i, so PI 0 is the LSB-cycling input.
VectorSet gen_vectors_exhaustive(int num_inputs);

/// Uniform independent fair bits, reproducible from the seed.
VectorSet gen_vectors_mc(int num_inputs, std::size_t num_vectors,
                         std::uint64_t seed);

using TraceMap = std::unordered_map<GateId, BitRow>;

/// Bit-parallel simulation in topological order. PI traces equal the
/// VectorSet rows; padding bits past num_vectors are kept at zero.
TraceMap simulate(const Netlist& n, const VectorSet& v);

struct ErrorReport {
  double er = 0.0;    // Pr[any PO differs]
  double nmed = 0.0;  // mean |value diff| / (2^n - 1), PO index 0 = LSB
  std::vector<double> per_po_error;  // bit mismatch rate per PO
  std::size_t num_vectors = 0;
};

ErrorReport error_report(const Netlist& accurate, const Netlist& approx,
                         const VectorSet& v);

/// Similarity of one target gate to the constant rails and to every gate in
/// its TFI: the fraction of vectors where both hold the same value.
struct SimilarityTable {
  GateId target = -1;
  double to_const0 = 0.0;
  double to_const1 = 0.0;
  std::vector<std::pair<GateId, double>> to_tfi;  // excludes the target itself
};

SimilarityTable similarity_table(const Netlist& n, GateId target,
                                 const TraceMap& traces,
                                 std::size_t num_vectors);

std::size_t popcount_row(const BitRow& row);

}  // namespace als
