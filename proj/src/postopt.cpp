#include "als/postopt.hpp"

#include <algorithm>
#include <set>

#include "als/rng.hpp"

namespace als {
namespace {

constexpr double kStopTolerance = 1e-9;

std::optional<DriveStrength> next_drive(DriveStrength d) {
  switch (d) {
    case DriveStrength::X1: return DriveStrength::X2;
    case DriveStrength::X2: return DriveStrength::X4;
    case DriveStrength::X4: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

PostOptResult post_optimize(const Netlist& n, const ReferenceContext& ctx,
                            double area_con, std::uint64_t fresh_seed,
                            std::size_t fresh_vectors) {
  PostOptResult res;
  res.final = remove_dangling(n);
  validate(res.final);

  double current_area = area(res.final, ctx.lib, res.sizing);
  if (current_area > area_con + kStopTolerance) res.area_infeasible = true;

  TimingReport timing = analyze(res.final, ctx.lib, res.sizing);
  while (!res.area_infeasible) {
    // candidates: gates on the currently extracted critical paths
    std::set<GateId> on_path;
    for (const auto& path : timing.critical_paths)
      for (GateId g : path)
        if (res.final.gate(g).kind != GateKind::Input) on_path.insert(g);

    GateId best_gate = -1;
    DriveStrength best_drive = DriveStrength::X1;
    double best_score = 0.0, best_cpd = timing.cpd, best_area = current_area;
    for (GateId g : on_path) {
      auto it = res.sizing.find(g);
      DriveStrength cur =
          it == res.sizing.end() ? DriveStrength::X1 : it->second;
      auto up = next_drive(cur);
      if (!up) continue;
      SizingMap trial = res.sizing;
      trial[g] = *up;
      double trial_area = area(res.final, ctx.lib, trial);
      if (trial_area > area_con + kStopTolerance) continue;
      TimingReport trial_timing = analyze(res.final, ctx.lib, trial);
      double gain = timing.cpd - trial_timing.cpd;
      if (gain <= kStopTolerance) continue;
      double cost = std::max(trial_area - current_area, kStopTolerance);
      double score = gain / cost;
      if (score > best_score ||
          (score == best_score && best_gate >= 0 && g < best_gate)) {
        best_score = score;
        best_gate = g;
        best_drive = *up;
        best_cpd = trial_timing.cpd;
        best_area = trial_area;
      }
    }
    if (best_gate < 0) break;
    res.sizing[best_gate] = best_drive;
    current_area = best_area;
    timing = analyze(res.final, ctx.lib, res.sizing);
  }

  res.cpd_fac = timing.cpd;
  res.ratio_cpd = ctx.cpd_ori > 0 ? res.cpd_fac / ctx.cpd_ori : 1.0;
  res.final_area = current_area;

  int m = static_cast<int>(ctx.accurate.primary_inputs.size());
  VectorSet fresh = (m <= 16 && ctx.vectors.exhaustive)
                        ? ctx.vectors
                        : gen_vectors_mc(m, fresh_vectors, fresh_seed);
  res.final_error = error_report(ctx.accurate, res.final, fresh);
  return res;
}

}  // namespace als
