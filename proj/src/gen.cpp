#include "als/gen.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace als {
namespace {

GateId add_gate(Netlist& n, GateKind kind, std::vector<FaninRef> fanins,
                const std::string& name) {
  GateId id = n.max_id() + 1;
  n.gates[id] = Gate{id, kind, std::move(fanins), name};
  return id;
}

GateId add_input(Netlist& n, const std::string& name) {
  GateId id = add_gate(n, GateKind::Input, {}, name);
  n.primary_inputs.push_back(id);
  return id;
}

}  // namespace

Netlist gen_rca(int width) {
  if (width < 1 || width > 256)
    throw std::invalid_argument("rca width must be in 1..256");
  Netlist n;
  n.name = "rca" + std::to_string(width);
  std::vector<GateId> a(width), b(width);
  for (int i = 0; i < width; ++i) a[i] = add_input(n, "a" + std::to_string(i));
  for (int i = 0; i < width; ++i) b[i] = add_input(n, "b" + std::to_string(i));
  FaninRef carry = FaninRef::const0();
  for (int i = 0; i < width; ++i) {
    std::string s = std::to_string(i);
    FaninRef ai = FaninRef::gate(a[i]), bi = FaninRef::gate(b[i]);
    FaninRef axb =
        FaninRef::gate(add_gate(n, GateKind::Xor, {ai, bi}, "axb" + s));
    FaninRef sum =
        FaninRef::gate(add_gate(n, GateKind::Xor, {axb, carry}, "sum" + s));
    FaninRef g0 = FaninRef::gate(add_gate(n, GateKind::And, {ai, bi}, "g" + s));
    FaninRef p0 =
        FaninRef::gate(add_gate(n, GateKind::And, {axb, carry}, "p" + s));
    carry = FaninRef::gate(add_gate(n, GateKind::Or, {g0, p0}, "c" + s));
    n.primary_outputs.push_back(sum);
  }
  n.primary_outputs.push_back(carry);
  validate(n);
  return n;
}

Netlist gen_mux_tree(int levels) {
  if (levels < 1 || levels > 8)
    throw std::invalid_argument("mux-tree levels must be in 1..8");
  Netlist n;
  n.name = "mux" + std::to_string(levels);
  int leaves = 1 << levels;
  std::vector<FaninRef> layer(leaves);
  for (int i = 0; i < leaves; ++i)
    layer[i] = FaninRef::gate(add_input(n, "d" + std::to_string(i)));
  std::vector<FaninRef> sel(levels);
  for (int i = 0; i < levels; ++i)
    sel[i] = FaninRef::gate(add_input(n, "s" + std::to_string(i)));
  int counter = 0;
  for (int lvl = 0; lvl < levels; ++lvl) {
    std::vector<FaninRef> next(layer.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      std::string tag = std::to_string(counter++);
      FaninRef ns =
          FaninRef::gate(add_gate(n, GateKind::Not, {sel[lvl]}, "ns" + tag));
      FaninRef lo = FaninRef::gate(
          add_gate(n, GateKind::And, {ns, layer[2 * i]}, "lo" + tag));
      FaninRef hi = FaninRef::gate(
          add_gate(n, GateKind::And, {sel[lvl], layer[2 * i + 1]}, "hi" + tag));
      next[i] =
          FaninRef::gate(add_gate(n, GateKind::Or, {lo, hi}, "mx" + tag));
    }
    layer = std::move(next);
  }
  n.primary_outputs.push_back(layer[0]);
  validate(n);
  return n;
}

Netlist gen_random(int num_gates, int num_pis, std::uint64_t seed) {
  if (num_pis < 1 || num_gates < 1)
    throw std::invalid_argument("random netlist needs >= 1 PI and >= 1 gate");
  Netlist n;
  n.name = "rand" + std::to_string(num_gates) + "_" + std::to_string(seed);
  for (int i = 0; i < num_pis; ++i) add_input(n, "pi" + std::to_string(i));
  std::mt19937_64 rng(seed);
  // two-input kinds dominate; the odd inverter/buffer mixed in
  const GateKind two_in[] = {GateKind::And, GateKind::Nand, GateKind::Or,
                             GateKind::Nor, GateKind::Xor, GateKind::Xnor};
  std::uniform_int_distribution<int> kind_pick(0, 7);
  for (int i = 0; i < num_gates; ++i) {
    GateId hi = n.max_id();
    std::uniform_int_distribution<GateId> src(0, hi);
    int kp = kind_pick(rng);
    std::vector<FaninRef> fanins;
    GateKind kind;
    if (kp >= 6) {
      kind = kp == 6 ? GateKind::Not : GateKind::Buf;
      fanins = {FaninRef::gate(src(rng))};
    } else {
      kind = two_in[kp];
      GateId f0 = src(rng), f1 = src(rng);
      for (int tries = 0; f1 == f0 && tries < 8; ++tries) f1 = src(rng);
      fanins = {FaninRef::gate(f0), FaninRef::gate(f1)};
    }
    add_gate(n, kind, std::move(fanins), "g" + std::to_string(i));
  }
  auto fanout = std::vector<int>(n.max_id() + 1, 0);
  for (const auto& [id, g] : n.gates)
    for (FaninRef f : g.fanins)
      if (f.is_gate()) ++fanout[f.gate_id()];
  for (const auto& [id, g] : n.gates)
    if (g.kind != GateKind::Input && fanout[id] == 0)
      n.primary_outputs.push_back(FaninRef::gate(id));
  validate(n);
  return n;
}

}  // namespace als
