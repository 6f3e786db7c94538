#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "als/lac.hpp"
#include "als/netlist.hpp"
#include "als/sim.hpp"
#include "als/sta.hpp"

namespace als {

enum class ErrorMetric { ErrorRate, Nmed };

struct OptimizerConfig {
  int population_size = 30;        // N
  int max_iterations = 20;         // I_max
  double depth_weight = 0.8;       // w_d; area weight is 1 - w_d
  double level_time_weight = -1;   // w_t; < 0 means 0.9 * cpd_ori
  double level_error_weight = -1;  // w_e; < 0 means 0.1 (ER) / 0.2 (NMED)
  double elite_threshold = 0.5;    // S_e
  double omega_threshold = 0.5;    // S_omega
  ErrorMetric metric = ErrorMetric::ErrorRate;
  double error_bound = 0.05;       // E_max
  double initial_bound = -1;       // E_0; < 0 means E_max / 4
  double relax_coeff = -1;         // b; < 0 means 0.75 * E_max / I_max^2
  std::uint64_t seed = 1;
  int init_lacs_max = 3;
  std::size_t num_vectors = 100000;
  bool force_monte_carlo = false;  // otherwise exhaustive when m <= 16
  bool force_exhaustive = false;   // request exhaustive vectors up to m = 24
  bool unit_delay = false;
  int jobs = 1;

  double area_weight() const { return 1.0 - depth_weight; }
};

/// Everything computed once from the accurate circuit.
struct ReferenceContext {
  Netlist accurate;
  CellLibrary lib;
  VectorSet vectors;
  double depth_ori = 0.0;  // = cpd_ori under the delay model
  double area_ori = 0.0;
  double cpd_ori = 0.0;
  TimingReport timing_ori;
};

ReferenceContext make_context(Netlist accurate, const OptimizerConfig& cfg,
                              CellLibrary lib);

/// Fills the derived defaults (w_t, w_e, E_0, b) from the context.
OptimizerConfig resolve_config(OptimizerConfig cfg,
                               const ReferenceContext& ctx);

struct Individual {
  Netlist netlist;
  double fit = 0.0;
  double depth_app = 0.0;
  double area_app = 0.0;
  ErrorReport err;
  std::vector<double> po_arrival;
  std::uint64_t lineage = 0;
  bool degenerate = false;
};

double error_value(const ErrorReport& err, ErrorMetric metric);

/// Simulate + STA + fitness for one candidate netlist.
Individual evaluate(Netlist n, const ReferenceContext& ctx,
                    const OptimizerConfig& cfg, std::uint64_t lineage);

double fitness(double depth_app, double area_app, const ReferenceContext& ctx,
               const OptimizerConfig& cfg);

struct PopulationDivision {
  std::size_t leader;
  std::array<std::size_t, 3> elites;  // fitness ranks 2-4
  std::vector<std::size_t> omegas;
};

/// Sorts by fitness (ties by lineage) into leader / elites / omegas.
/// Requires at least 5 individuals.
PopulationDivision divide(const std::vector<Individual>& pop);

double scaling_factor(int iter, int max_iterations);
double encircling_coeff(double a, std::mt19937_64& rng);

enum class Tier { Elite, Omega };
double fitness_distance(const Individual& ind, Tier tier,
                        const std::vector<Individual>& pop,
                        const PopulationDivision& div, std::mt19937_64& rng);

/// Same formula with the chase coefficient pinned instead of drawn.
double fitness_distance_rc(const Individual& ind, Tier tier,
                           const std::vector<Individual>& pop,
                           const PopulationDivision& div, double rc);

double level(std::size_t po_index, const std::vector<double>& po_arrival,
             const ErrorReport& err, const OptimizerConfig& cfg);

/// PO-TFI cone merge with first-write-wins adjacency; falls back to the
/// fitter parent when the merge closes a loop.
Individual reproduce(const Individual& parent_x, const Individual& parent_y,
                     const ReferenceContext& ctx, const OptimizerConfig& cfg,
                     std::uint64_t lineage);

/// One member's move in the current iteration; every returned individual is
/// fully evaluated.
std::vector<Individual> chase_step(const Individual& ind, Tier tier,
                                   const std::vector<Individual>& pop,
                                   const PopulationDivision& div, int iter,
                                   const ReferenceContext& ctx,
                                   const OptimizerConfig& cfg,
                                   std::mt19937_64& rng,
                                   std::uint64_t lineage_base);

/// Pareto fronts on points maximizing both coordinates; index lists are
/// 0-ranked first.
std::vector<std::vector<std::size_t>> pareto_fronts(
    const std::vector<std::array<double, 2>>& points);

/// Crowding distance per front member (same indexing as the input).
std::vector<double> crowding(const std::vector<std::array<double, 2>>& front);

double relax_bound(int iter, const OptimizerConfig& cfg);

/// Bound filter plus Pareto peeling on (depth ratio, area ratio); returned
/// fronts hold candidate indices. Empty when nothing is feasible.
std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<Individual>& candidates, double bound,
    ErrorMetric metric, const ReferenceContext& ctx);

/// Rank-then-crowding selection of the next population (clones the best
/// feasible member when fewer than N candidates survive the bound).
std::vector<Individual> select_next(
    const std::vector<Individual>& candidates,
    const std::vector<std::vector<std::size_t>>& fronts, int n,
    const ReferenceContext& ctx);

std::vector<Individual> init_population(const ReferenceContext& ctx,
                                        const OptimizerConfig& cfg);

struct TraceRow {
  int iter = 0;
  double bound = 0.0;
  double best_fit = 0.0;
  double best_depth_ratio = 0.0;
  double best_area_ratio = 0.0;
  std::size_t feasible_count = 0;
};

struct RunResult {
  Individual best;
  std::vector<TraceRow> trace;
  bool feasibility_failed = false;  // no LAC'd candidate ever survived
  ErrorReport fresh_error;          // re-measured with an independent seed
};

struct IterationState {
  int iter;
  double bound;
  const std::vector<Individual>& population;
};
using IterationObserver = std::function<void(const IterationState&)>;

RunResult run(const ReferenceContext& ctx, const OptimizerConfig& cfg,
              const IterationObserver& observer = {});

std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace als
