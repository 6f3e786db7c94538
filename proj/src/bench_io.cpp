#include "als/bench_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace als {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::optional<GateKind> kind_from_token(const std::string& tok) {
  std::string t = upper(tok);
  if (t == "AND") return GateKind::And;
  if (t == "NAND") return GateKind::Nand;
  if (t == "OR") return GateKind::Or;
  if (t == "NOR") return GateKind::Nor;
  if (t == "XOR") return GateKind::Xor;
  if (t == "XNOR") return GateKind::Xnor;
  if (t == "NOT") return GateKind::Not;
  if (t == "BUFF" || t == "BUF") return GateKind::Buf;
  return std::nullopt;
}

}  // namespace

ParseError::ParseError(int line_no, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
      line(line_no) {}

Netlist parse_bench(const std::string& text, const std::string& name) {
  struct GateDef {
    int line;
    GateId id;
    GateKind kind;
    std::vector<std::string> args;
  };
  std::unordered_map<std::string, GateDef> defs;   // name -> definition
  std::unordered_map<std::string, FaninRef> consts;  // constant aliases
  std::vector<std::pair<std::string, int>> outputs;  // name, line
  Netlist n;
  n.name = name;
  GateId next_id = 0;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = trim(raw);
    if (line.empty()) continue;

    auto paren = line.find('(');
    auto eq = line.find('=');
    if (eq == std::string::npos && paren != std::string::npos) {
      // INPUT(x) / OUTPUT(x)
      auto close = line.rfind(')');
      if (close == std::string::npos || close < paren)
        throw ParseError(line_no, "malformed declaration: " + line);
      std::string kw = upper(trim(line.substr(0, paren)));
      std::string sig = trim(line.substr(paren + 1, close - paren - 1));
      if (sig.empty()) throw ParseError(line_no, "empty signal name");
      if (kw == "INPUT") {
        if (defs.count(sig) || consts.count(sig))
          throw ParseError(line_no, "redefinition of '" + sig + "'");
        GateId id = next_id++;
        defs.emplace(sig, GateDef{line_no, id, GateKind::Input, {}});
        n.primary_inputs.push_back(id);
        n.gates[id] = Gate{id, GateKind::Input, {}, sig};
      } else if (kw == "OUTPUT") {
        outputs.emplace_back(sig, line_no);
      } else {
        throw ParseError(line_no, "unknown keyword '" + kw + "'");
      }
      continue;
    }
    if (eq == std::string::npos)
      throw ParseError(line_no, "unparsable line: " + line);

    std::string lhs = trim(line.substr(0, eq));
    std::string rhs = trim(line.substr(eq + 1));
    if (lhs.empty()) throw ParseError(line_no, "missing signal name");
    if (defs.count(lhs) || consts.count(lhs))
      throw ParseError(line_no, "redefinition of '" + lhs + "'");

    std::string rhs_up = upper(rhs);
    if (rhs_up == "CONST0" || rhs_up == "CONST1") {
      consts.emplace(lhs, rhs_up == "CONST0" ? FaninRef::const0()
                                             : FaninRef::const1());
      continue;
    }
    auto rp = rhs.find('(');
    auto rc = rhs.rfind(')');
    if (rp == std::string::npos || rc == std::string::npos || rc < rp)
      throw ParseError(line_no, "malformed gate definition: " + rhs);
    auto kind = kind_from_token(trim(rhs.substr(0, rp)));
    if (!kind)
      throw ParseError(line_no,
                       "unknown gate kind '" + trim(rhs.substr(0, rp)) + "'");
    std::vector<std::string> args;
    std::string arg;
    std::istringstream alist(rhs.substr(rp + 1, rc - rp - 1));
    while (std::getline(alist, arg, ',')) {
      arg = trim(arg);
      if (arg.empty()) throw ParseError(line_no, "empty fan-in argument");
      args.push_back(arg);
    }
    auto [lo, hi] = arity(*kind);
    int cnt = static_cast<int>(args.size());
    if (cnt < lo || (hi >= 0 && cnt > hi))
      throw ParseError(line_no, "gate '" + lhs + "' (" + to_string(*kind) +
                                    ") has " + std::to_string(cnt) +
                                    " fan-ins");
    GateId id = next_id++;
    defs.emplace(lhs, GateDef{line_no, id, *kind, std::move(args)});
    n.gates[id] = Gate{id, *kind, {}, lhs};
  }

  auto resolve = [&](const std::string& sig, int at_line) -> FaninRef {
    if (auto it = consts.find(sig); it != consts.end()) return it->second;
    if (auto it = defs.find(sig); it != defs.end())
      return FaninRef::gate(it->second.id);
    throw ParseError(at_line, "undefined signal '" + sig + "'");
  };

  for (const auto& [sig, def] : defs)
    for (const std::string& a : def.args)
      n.gates[def.id].fanins.push_back(resolve(a, def.line));
  for (const auto& [sig, at_line] : outputs)
    n.primary_outputs.push_back(resolve(sig, at_line));

  validate(n);
  return n;
}

std::string emit_bench(const Netlist& n) {
  std::unordered_map<GateId, std::string> names;
  std::unordered_set<std::string> used;
  for (const auto& [id, g] : n.gates) {
    std::string nm = g.name.empty() ? "n" + std::to_string(id) : g.name;
    while (!used.insert(nm).second) nm += "_";
    names[id] = nm;
  }
  bool need0 = false, need1 = false;
  auto scan = [&](FaninRef f) {
    if (f == FaninRef::const0()) need0 = true;
    if (f == FaninRef::const1()) need1 = true;
  };
  for (const auto& [id, g] : n.gates)
    for (FaninRef f : g.fanins) scan(f);
  for (FaninRef po : n.primary_outputs) scan(po);
  std::string c0 = "const0", c1 = "const1";
  while (used.count(c0)) c0 += "_";
  used.insert(c0);
  while (used.count(c1)) c1 += "_";
  used.insert(c1);

  auto ref_name = [&](FaninRef f) -> const std::string& {
    if (f == FaninRef::const0()) return c0;
    if (f == FaninRef::const1()) return c1;
    return names.at(f.gate_id());
  };

  // OUTPUT lines and constant aliases first, then every definition in gate
  // ID order, so re-parsing assigns the same IDs.
  std::ostringstream os;
  if (!n.name.empty()) os << "# " << n.name << "\n";
  for (FaninRef po : n.primary_outputs)
    os << "OUTPUT(" << ref_name(po) << ")\n";
  if (need0) os << c0 << " = CONST0\n";
  if (need1) os << c1 << " = CONST1\n";
  for (const auto& [id, g] : n.gates) {
    if (g.kind == GateKind::Input) {
      os << "INPUT(" << names.at(id) << ")\n";
      continue;
    }
    os << names.at(id) << " = " << to_string(g.kind) << "(";
    for (size_t i = 0; i < g.fanins.size(); ++i) {
      if (i) os << ", ";
      os << ref_name(g.fanins[i]);
    }
    os << ")\n";
  }
  return os.str();
}

Netlist read_bench_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open netlist file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string base = path;
  if (auto p = base.find_last_of("/\\"); p != std::string::npos)
    base = base.substr(p + 1);
  return parse_bench(buf.str(), base);
}

void write_bench_file(const Netlist& n, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write netlist file: " + path);
  out << emit_bench(n);
}

}  // namespace als
