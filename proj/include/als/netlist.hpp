#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace als {

using GateId = int;

enum class GateKind { Input, And, Nand, Or, Nor, Xor, Xnor, Not, Buf };

const char* to_string(GateKind kind);

/// A fan-in slot: either another gate or one of the constant rails.
/// Constants carry no gate ID, so cycle checks never see them.
struct FaninRef {
  static constexpr int kConst0 = -1;
  static constexpr int kConst1 = -2;

  int code = kConst0;

  static FaninRef gate(GateId id) { return FaninRef{id}; }
  static FaninRef const0() { return FaninRef{kConst0}; }
  static FaninRef const1() { return FaninRef{kConst1}; }

  bool is_gate() const { return code >= 0; }
  bool is_const() const { return code < 0; }
  bool const_value() const { return code == kConst1; }
  GateId gate_id() const { return code; }

  bool operator==(const FaninRef&) const = default;
  auto operator<=>(const FaninRef&) const = default;
};

struct Gate {
  GateId id = 0;
  GateKind kind = GateKind::And;
  std::vector<FaninRef> fanins;
  std::string name;  // optional; emit_bench synthesizes one when empty
};

/// Gate-level circuit stored as fan-in adjacency lists keyed by gate ID.
/// Treated as immutable after construction: every transform below returns
/// a new Netlist.
struct Netlist {
  std::string name;
  std::map<GateId, Gate> gates;
  std::vector<GateId> primary_inputs;
  std::vector<FaninRef> primary_outputs;

  const Gate& gate(GateId id) const;
  bool has_gate(GateId id) const { return gates.count(id) != 0; }
  GateId max_id() const { return gates.empty() ? -1 : gates.rbegin()->first; }
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CycleError : ValidationError {
  std::vector<GateId> cycle_gates;
  explicit CycleError(std::vector<GateId> ids);
};

/// Arity bounds for a gate kind: {min, max} fan-ins (max = -1 for unbounded).
std::pair<int, int> arity(GateKind kind);

/// Full structural validation: arity, fan-in resolution, PI kinds,
/// non-empty PO list, acyclicity. Throws ValidationError / CycleError.
void validate(const Netlist& n);

/// Kahn ordering; throws CycleError naming the gates left on a cycle.
std::vector<GateId> topological_order(const Netlist& n);

/// All gates reachable backward from root (root included when it is a gate).
std::set<GateId> tfi(const Netlist& n, FaninRef root);

/// Gates with no path to any PO. PIs never count as dangling.
std::set<GateId> dangling_gates(const Netlist& n);

Netlist remove_dangling(const Netlist& n);

/// Where a fan-in edit applies: one gate's fan-in list or one PO slot.
struct EditSite {
  bool is_po = false;
  GateId consumer = -1;
  int po_index = -1;

  static EditSite gate(GateId id) { return EditSite{false, id, -1}; }
  static EditSite po(int index) { return EditSite{true, -1, index}; }
};

/// Rewrites exactly one fan-in slot (the first slot of the consumer holding
/// `old_ref`, or the named PO slot) and re-verifies acyclicity.
Netlist apply_fanin_edit(const Netlist& n, EditSite site, FaninRef old_ref,
                         FaninRef new_ref);

}  // namespace als
