#include "als/sta.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace als {
namespace {

constexpr DriveStrength kDrives[] = {DriveStrength::X1, DriveStrength::X2,
                                     DriveStrength::X4};

double drive_multiplier(DriveStrength d) {
  switch (d) {
    case DriveStrength::X1: return 1.0;
    case DriveStrength::X2: return 2.0;
    case DriveStrength::X4: return 4.0;
  }
  return 1.0;
}

double area_scale(DriveStrength d) {
  switch (d) {
    case DriveStrength::X1: return 1.0;
    case DriveStrength::X2: return 1.8;
    case DriveStrength::X4: return 3.2;
  }
  return 1.0;
}

struct BaseCell {
  double area;
  double intrinsic;
};

BaseCell base_cell(GateKind kind) {
  switch (kind) {
    case GateKind::Not:
    case GateKind::Buf: return {1.0, 1.0};
    case GateKind::Xor:
    case GateKind::Xnor: return {3.0, 2.0};
    case GateKind::Input: return {0.0, 0.0};
    default: return {2.0, 1.5};  // AND/OR/NAND/NOR
  }
}

GateKind kind_from_lib_token(const std::string& t) {
  for (GateKind k : {GateKind::And, GateKind::Nand, GateKind::Or, GateKind::Nor,
                     GateKind::Xor, GateKind::Xnor, GateKind::Not,
                     GateKind::Buf})
    if (t == to_string(k)) return k;
  if (t == "BUF") return GateKind::Buf;
  throw std::runtime_error("cell library: unknown gate kind '" + t + "'");
}

}  // namespace

const char* to_string(DriveStrength d) {
  switch (d) {
    case DriveStrength::X1: return "X1";
    case DriveStrength::X2: return "X2";
    case DriveStrength::X4: return "X4";
  }
  return "?";
}

CellLibrary CellLibrary::defaults() {
  CellLibrary lib;
  for (GateKind k : {GateKind::And, GateKind::Nand, GateKind::Or, GateKind::Nor,
                     GateKind::Xor, GateKind::Xnor, GateKind::Not,
                     GateKind::Buf}) {
    BaseCell base = base_cell(k);
    for (DriveStrength d : kDrives)
      lib.entries_[{k, d}] = {base.area * area_scale(d), base.intrinsic,
                              0.2 / drive_multiplier(d)};
  }
  return lib;
}

CellLibrary CellLibrary::unit_delay() {
  CellLibrary lib = defaults();
  for (auto& [key, cell] : lib.entries_) {
    cell.intrinsic = 1.0;
    cell.load_coeff = 0.0;
  }
  return lib;
}

CellLibrary CellLibrary::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cell library: " + path);
  CellLibrary lib;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::string kind_tok, drive_tok;
    CellParams cell;
    if (!(ls >> kind_tok)) continue;  // blank line
    if (!(ls >> drive_tok >> cell.area >> cell.intrinsic >> cell.load_coeff))
      throw std::runtime_error("cell library line " + std::to_string(line_no) +
                               ": expected KIND DRIVE area intrinsic load");
    GateKind kind = kind_from_lib_token(kind_tok);
    DriveStrength drive;
    if (drive_tok == "X1") drive = DriveStrength::X1;
    else if (drive_tok == "X2") drive = DriveStrength::X2;
    else if (drive_tok == "X4") drive = DriveStrength::X4;
    else
      throw std::runtime_error("cell library line " + std::to_string(line_no) +
                               ": unknown drive '" + drive_tok + "'");
    lib.entries_[{kind, drive}] = cell;
  }
  return lib;
}

CellParams CellLibrary::params(GateKind kind, DriveStrength drive,
                               int fanin_count) const {
  if (kind == GateKind::Input) return {0.0, 0.0, 0.0};
  auto it = entries_.find({kind, drive});
  if (it == entries_.end())
    throw std::runtime_error(std::string("cell library has no entry for ") +
                             to_string(kind) + " " + to_string(drive));
  CellParams cell = it->second;
  int extra = std::max(0, fanin_count - 2);
  cell.area += 0.5 * extra;
  cell.intrinsic += 0.25 * extra;
  return cell;
}

std::unordered_map<GateId, int> fanout_counts(const Netlist& n) {
  std::unordered_map<GateId, int> counts;
  counts.reserve(n.gates.size());
  for (const auto& [id, g] : n.gates) {
    counts.try_emplace(id, 0);
    for (FaninRef f : g.fanins)
      if (f.is_gate()) ++counts[f.gate_id()];
  }
  for (FaninRef po : n.primary_outputs)
    if (po.is_gate()) ++counts[po.gate_id()];
  return counts;
}

double gate_delay(const Netlist& n, GateId g, const CellLibrary& lib,
                  const SizingMap& sizing,
                  const std::unordered_map<GateId, int>& fanouts) {
  const Gate& gate = n.gate(g);
  if (gate.kind == GateKind::Input) return 0.0;
  auto sit = sizing.find(g);
  DriveStrength drive = sit == sizing.end() ? DriveStrength::X1 : sit->second;
  CellParams cell =
      lib.params(gate.kind, drive, static_cast<int>(gate.fanins.size()));
  auto fit = fanouts.find(g);
  int fo = fit == fanouts.end() ? 0 : fit->second;
  return cell.intrinsic + cell.load_coeff * fo;
}

namespace {

void collect_paths(const Netlist& n, const std::map<GateId, double>& arrival,
                   GateId g, std::vector<GateId>& stack,
                   std::vector<std::vector<GateId>>& out, int cap) {
  if (static_cast<int>(out.size()) >= cap) return;
  stack.push_back(g);
  double best = -1.0;
  bool has_gate_fanin = false;
  for (FaninRef f : n.gate(g).fanins)
    if (f.is_gate()) {
      has_gate_fanin = true;
      best = std::max(best, arrival.at(f.gate_id()));
    }
  if (!has_gate_fanin) {
    out.emplace_back(stack.rbegin(), stack.rend());
  } else {
    for (FaninRef f : n.gate(g).fanins)
      if (f.is_gate() && arrival.at(f.gate_id()) >= best - kTieTolerance)
        collect_paths(n, arrival, f.gate_id(), stack, out, cap);
  }
  stack.pop_back();
}

}  // namespace

TimingReport analyze(const Netlist& n, const CellLibrary& lib,
                     const SizingMap& sizing, int max_paths) {
  TimingReport rep;
  auto fanouts = fanout_counts(n);
  for (GateId id : topological_order(n)) {
    const Gate& g = n.gate(id);
    double at = 0.0;
    for (FaninRef f : g.fanins)
      if (f.is_gate()) at = std::max(at, rep.arrival.at(f.gate_id()));
    rep.arrival[id] = at + gate_delay(n, id, lib, sizing, fanouts);
  }
  rep.po_arrival.reserve(n.primary_outputs.size());
  for (FaninRef po : n.primary_outputs)
    rep.po_arrival.push_back(po.is_gate() ? rep.arrival.at(po.gate_id()) : 0.0);
  rep.cpd = 0.0;
  for (double t : rep.po_arrival) rep.cpd = std::max(rep.cpd, t);

  // backtrack from the critical POs, longest arrival first
  std::vector<int> po_order(n.primary_outputs.size());
  for (std::size_t i = 0; i < po_order.size(); ++i)
    po_order[i] = static_cast<int>(i);
  std::stable_sort(po_order.begin(), po_order.end(), [&](int a, int b) {
    return rep.po_arrival[a] > rep.po_arrival[b];
  });
  std::vector<GateId> stack;
  for (int i : po_order) {
    if (rep.po_arrival[i] < rep.cpd - kTieTolerance) break;
    FaninRef po = n.primary_outputs[i];
    if (!po.is_gate()) continue;
    collect_paths(n, rep.arrival, po.gate_id(), stack, rep.critical_paths,
                  max_paths);
    if (static_cast<int>(rep.critical_paths.size()) >= max_paths) break;
  }
  return rep;
}

double area(const Netlist& n, const CellLibrary& lib, const SizingMap& sizing,
            bool exclude_dangling) {
  std::set<GateId> dead;
  if (exclude_dangling) dead = dangling_gates(n);
  double total = 0.0;
  for (const auto& [id, g] : n.gates) {
    if (g.kind == GateKind::Input || dead.count(id)) continue;
    auto sit = sizing.find(id);
    DriveStrength drive = sit == sizing.end() ? DriveStrength::X1 : sit->second;
    total += lib.params(g.kind, drive, static_cast<int>(g.fanins.size())).area;
  }
  return total;
}

}  // namespace als
