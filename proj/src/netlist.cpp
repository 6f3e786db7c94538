#include "als/netlist.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace als {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Input: return "INPUT";
    case GateKind::And: return "AND";
    case GateKind::Nand: return "NAND";
    case GateKind::Or: return "OR";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Xnor: return "XNOR";
    case GateKind::Not: return "NOT";
    case GateKind::Buf: return "BUFF";
  }
  return "?";
}

CycleError::CycleError(std::vector<GateId> ids)
    : ValidationError([&] {
        std::ostringstream os;
        os << "cycle detected involving gates:";
        for (GateId g : ids) os << ' ' << g;
        return os.str();
      }()),
      cycle_gates(std::move(ids)) {}

const Gate& Netlist::gate(GateId id) const {
  auto it = gates.find(id);
  if (it == gates.end())
    throw ValidationError("unknown gate id " + std::to_string(id));
  return it->second;
}

std::pair<int, int> arity(GateKind kind) {
  switch (kind) {
    case GateKind::Input: return {0, 0};
    case GateKind::Not:
    case GateKind::Buf: return {1, 1};
    default: return {2, -1};
  }
}

void validate(const Netlist& n) {
  if (n.primary_outputs.empty())
    throw ValidationError(n.name + ": PO list is empty");
  for (const auto& [id, g] : n.gates) {
    if (g.id != id)
      throw ValidationError("gate id mismatch at " + std::to_string(id));
    auto [lo, hi] = arity(g.kind);
    int cnt = static_cast<int>(g.fanins.size());
    if (cnt < lo || (hi >= 0 && cnt > hi))
      throw ValidationError("gate " + std::to_string(id) + " (" +
                            to_string(g.kind) + ") has " + std::to_string(cnt) +
                            " fan-ins");
    for (FaninRef f : g.fanins)
      if (f.is_gate() && !n.has_gate(f.gate_id()))
        throw ValidationError("gate " + std::to_string(id) +
                              " references missing gate " +
                              std::to_string(f.gate_id()));
  }
  for (GateId pi : n.primary_inputs) {
    if (!n.has_gate(pi) || n.gate(pi).kind != GateKind::Input)
      throw ValidationError("PI " + std::to_string(pi) +
                            " is missing or not of kind INPUT");
  }
  for (FaninRef po : n.primary_outputs)
    if (po.is_gate() && !n.has_gate(po.gate_id()))
      throw ValidationError("PO references missing gate " +
                            std::to_string(po.gate_id()));
  topological_order(n);  // throws CycleError on a loop
}

std::vector<GateId> topological_order(const Netlist& n) {
  std::map<GateId, int> pending;  // unresolved gate fan-ins
  std::map<GateId, std::vector<GateId>> consumers;
  for (const auto& [id, g] : n.gates) {
    int cnt = 0;
    for (FaninRef f : g.fanins)
      if (f.is_gate()) {
        ++cnt;
        consumers[f.gate_id()].push_back(id);
      }
    pending[id] = cnt;
  }
  std::deque<GateId> ready;
  for (const auto& [id, cnt] : pending)
    if (cnt == 0) ready.push_back(id);
  std::vector<GateId> order;
  order.reserve(n.gates.size());
  while (!ready.empty()) {
    GateId id = ready.front();
    ready.pop_front();
    order.push_back(id);
    auto it = consumers.find(id);
    if (it == consumers.end()) continue;
    for (GateId c : it->second)
      if (--pending[c] == 0) ready.push_back(c);
  }
  if (order.size() != n.gates.size()) {
    std::vector<GateId> stuck;
    for (const auto& [id, cnt] : pending)
      if (cnt > 0) stuck.push_back(id);
    throw CycleError(std::move(stuck));
  }
  return order;
}

std::set<GateId> tfi(const Netlist& n, FaninRef root) {
  std::set<GateId> seen;
  if (!root.is_gate()) return seen;
  if (!n.has_gate(root.gate_id()))
    throw ValidationError("tfi: unresolved reference " +
                          std::to_string(root.gate_id()));
  std::deque<GateId> work{root.gate_id()};
  seen.insert(root.gate_id());
  while (!work.empty()) {
    GateId id = work.front();
    work.pop_front();
    for (FaninRef f : n.gate(id).fanins)
      if (f.is_gate() && seen.insert(f.gate_id()).second)
        work.push_back(f.gate_id());
  }
  return seen;
}

std::set<GateId> dangling_gates(const Netlist& n) {
  std::set<GateId> live;
  for (FaninRef po : n.primary_outputs) {
    auto cone = tfi(n, po);
    live.insert(cone.begin(), cone.end());
  }
  std::set<GateId> dangling;
  for (const auto& [id, g] : n.gates)
    if (!live.count(id) && g.kind != GateKind::Input) dangling.insert(id);
  return dangling;
}

Netlist remove_dangling(const Netlist& n) {
  auto dead = dangling_gates(n);
  Netlist out = n;
  for (GateId id : dead) out.gates.erase(id);
  return out;
}

Netlist apply_fanin_edit(const Netlist& n, EditSite site, FaninRef old_ref,
                         FaninRef new_ref) {
  if (new_ref.is_gate() && !n.has_gate(new_ref.gate_id()))
    throw ValidationError("edit: new reference does not resolve");
  Netlist out = n;
  if (site.is_po) {
    if (site.po_index < 0 ||
        site.po_index >= static_cast<int>(out.primary_outputs.size()))
      throw ValidationError("edit: PO index out of range");
    if (!(out.primary_outputs[site.po_index] == old_ref))
      throw ValidationError("edit: PO slot does not hold the old reference");
    out.primary_outputs[site.po_index] = new_ref;
  } else {
    auto it = out.gates.find(site.consumer);
    if (it == out.gates.end())
      throw ValidationError("edit: unknown consumer gate " +
                            std::to_string(site.consumer));
    auto& fis = it->second.fanins;
    auto slot = std::find(fis.begin(), fis.end(), old_ref);
    if (slot == fis.end())
      throw ValidationError("edit: old reference not found in fan-ins of " +
                            std::to_string(site.consumer));
    *slot = new_ref;
  }
  topological_order(out);  // throws CycleError if the edit closed a loop
  return out;
}

}  // namespace als
