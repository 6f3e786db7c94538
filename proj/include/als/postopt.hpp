#pragma once

#include "als/dcgwo.hpp"
#include "als/netlist.hpp"
#include "als/sta.hpp"

namespace als {

struct PostOptResult {
  Netlist final;
  SizingMap sizing;
  double cpd_fac = 0.0;
  double ratio_cpd = 0.0;  // cpd_fac / cpd_ori
  double final_area = 0.0;
  ErrorReport final_error;        // measured with an independent vector set
  bool area_infeasible = false;   // X1 area already exceeds the constraint
};

/// Deletes dangling gates, then greedily upsizes critical-path gates while
/// the area budget lasts: each step takes the single-step upsize with the
/// best cpd reduction per unit of added area (ties to the lower gate ID),
/// stopping when nothing fits or nothing helps.
PostOptResult post_optimize(const Netlist& n, const ReferenceContext& ctx,
                            double area_con, std::uint64_t fresh_seed,
                            std::size_t fresh_vectors = 100000);

}  // namespace als
