#include "als/lac.hpp"

#include <algorithm>
#include <set>

namespace als {

std::vector<GateId> build_target_set(const Netlist& n,
                                     const TimingReport& timing,
                                     std::mt19937_64& rng) {
  std::vector<GateId> targets;
  std::set<GateId> seen;
  auto add = [&](GateId id) {
    if (n.gate(id).kind == GateKind::Input) return;
    if (seen.insert(id).second) targets.push_back(id);
  };
  for (const auto& path : timing.critical_paths)
    for (GateId id : path) add(id);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t on_paths = targets.size();
  for (std::size_t i = 0; i < on_paths; ++i) {
    if (unit(rng) <= 0.5) continue;
    for (FaninRef f : n.gate(targets[i]).fanins)
      if (f.is_gate()) add(f.gate_id());
  }
  return targets;
}

Lac choose_switch(const Netlist& n, GateId target,
                  const SimilarityTable& table) {
  Lac best{target, FaninRef::const0(), table.to_const0};
  if (table.to_const1 > best.similarity) {
    best.replacement = FaninRef::const1();
    best.similarity = table.to_const1;
  }
  std::vector<std::pair<GateId, double>> tfi_sims = table.to_tfi;
  std::sort(tfi_sims.begin(), tfi_sims.end());
  for (const auto& [g, sim] : tfi_sims) {
    if (sim > best.similarity) {  // strict: ties keep constants / lower IDs
      best.replacement = FaninRef::gate(g);
      best.similarity = sim;
    }
  }
  return best;
}

Netlist apply_lac(const Netlist& n, const Lac& lac) {
  FaninRef old_ref = FaninRef::gate(lac.target);
  Netlist out = n;
  for (auto& [id, g] : out.gates)
    for (FaninRef& f : g.fanins)
      if (f == old_ref) f = lac.replacement;
  for (FaninRef& po : out.primary_outputs)
    if (po == old_ref) po = lac.replacement;
  validate(out);  // switch in TFI or constant cannot close a loop; safety net
  return out;
}

std::optional<Netlist> circuit_searching(const Netlist& n,
                                         const TimingReport& timing,
                                         const TraceMap& traces,
                                         std::size_t num_vectors,
                                         std::mt19937_64& rng) {
  std::vector<GateId> targets = build_target_set(n, timing, rng);
  if (targets.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
  GateId target = targets[pick(rng)];
  SimilarityTable table = similarity_table(n, target, traces, num_vectors);
  return apply_lac(n, choose_switch(n, target, table));
}

}  // namespace als
