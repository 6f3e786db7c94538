#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "als/netlist.hpp"

namespace als {

enum class DriveStrength { X1, X2, X4 };

const char* to_string(DriveStrength d);

/// Per-gate drive assignment; gates absent from the map are at X1.
using SizingMap = std::unordered_map<GateId, DriveStrength>;

struct CellParams {
  double area = 0.0;
  double intrinsic = 0.0;    // drive-independent
  double load_coeff = 0.0;   // delay units per fan-out
};

/// Area/delay model standing in for a real cell library. Delay of a gate is
/// intrinsic + load_coeff * fanout_count. Gates with more than two fan-ins
/// add 0.25 intrinsic and 0.5 area per extra fan-in.
class CellLibrary {
 public:
  static CellLibrary defaults();
  static CellLibrary unit_delay();  // intrinsic 1, load 0; depth in levels
  static CellLibrary from_file(const std::string& path);

  CellParams params(GateKind kind, DriveStrength drive, int fanin_count) const;

 private:
  // keyed by (kind, drive); entries hold the 2-input base values
  std::map<std::pair<GateKind, DriveStrength>, CellParams> entries_;
};

struct TimingReport {
  std::map<GateId, double> arrival;
  std::vector<double> po_arrival;  // T_a per PO index
  double cpd = 0.0;
  // PI-to-PO gate ID sequences within tie tolerance of cpd, at most K
  std::vector<std::vector<GateId>> critical_paths;
};

inline constexpr double kTieTolerance = 1e-9;
inline constexpr int kMaxCriticalPaths = 5;

/// Reader slots (consumer fan-ins plus PO slots) per gate.
std::unordered_map<GateId, int> fanout_counts(const Netlist& n);

double gate_delay(const Netlist& n, GateId g, const CellLibrary& lib,
                  const SizingMap& sizing,
                  const std::unordered_map<GateId, int>& fanouts);

TimingReport analyze(const Netlist& n, const CellLibrary& lib,
                     const SizingMap& sizing = {},
                     int max_paths = kMaxCriticalPaths);

double area(const Netlist& n, const CellLibrary& lib,
            const SizingMap& sizing = {}, bool exclude_dangling = false);

}  // namespace als
