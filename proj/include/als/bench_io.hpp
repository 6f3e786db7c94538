#pragma once

#include <string>

#include "als/netlist.hpp"

namespace als {

struct ParseError : std::runtime_error {
  int line = 0;
  ParseError(int line_no, const std::string& msg);
};

/// Parses the .bench dialect: INPUT(x), OUTPUT(x), x = KIND(a, b, ...),
/// plus `x = CONST0` / `x = CONST1` aliases for the constant rails.
/// Keywords are case-insensitive, `#` starts a comment, OUTPUT lines may
/// precede definitions. Gate IDs are assigned in file order starting at 0;
/// constant aliases consume no ID.
Netlist parse_bench(const std::string& text, const std::string& name = "");

/// Round-trip stable counterpart: parse_bench(emit_bench(n)) is isomorphic
/// to n (same IDs, kinds, fan-ins, PI/PO order).
std::string emit_bench(const Netlist& n);

Netlist read_bench_file(const std::string& path);
void write_bench_file(const Netlist& n, const std::string& path);

}  // namespace als
