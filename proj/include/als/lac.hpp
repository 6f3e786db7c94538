#pragma once

#include <optional>
#include <random>
#include <vector>

#include "als/netlist.hpp"
#include "als/sim.hpp"
#include "als/sta.hpp"

namespace als {

/// One local approximate change: replace every reader of `target` by
/// `replacement` (a TFI gate or a constant rail).
struct Lac {
  GateId target = -1;
  FaninRef replacement = FaninRef::const0();
  double similarity = 0.0;
};

/// Candidate target gates: all non-input gates on the extracted critical
/// paths, plus (per gate, with probability 1/2) their gate fan-ins.
/// Insertion-ordered, duplicates removed. Empty when the critical paths
/// carry no gates.
std::vector<GateId> build_target_set(const Netlist& n,
                                     const TimingReport& timing,
                                     std::mt19937_64& rng);

/// Picks the highest-similarity candidate among {const0, const1} and the
/// target's TFI. Ties: constants before gates, then lower gate ID.
Lac choose_switch(const Netlist& n, GateId target,
                  const SimilarityTable& table);

/// All-consumers rewrite of the target's output wire; the target typically
/// becomes dangling. Result re-validated for acyclicity.
Netlist apply_lac(const Netlist& n, const Lac& lac);

/// One similarity-guided LAC on a critical-path target picked uniformly at
/// random. Returns nothing when no target exists (wires-only netlist).
std::optional<Netlist> circuit_searching(const Netlist& n,
                                         const TimingReport& timing,
                                         const TraceMap& traces,
                                         std::size_t num_vectors,
                                         std::mt19937_64& rng);

}  // namespace als
