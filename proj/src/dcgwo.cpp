#include "als/dcgwo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "als/rng.hpp"

namespace als {
namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// stream purposes for seed derivation
constexpr std::uint64_t kStreamVectors = 1;
constexpr std::uint64_t kStreamInit = 2;
constexpr std::uint64_t kStreamChase = 3;
constexpr std::uint64_t kStreamLeader = 4;
constexpr std::uint64_t kStreamFresh = 5;

std::uint64_t make_lineage(int iter, int slot, int k = 0) {
  return (static_cast<std::uint64_t>(iter) << 32) |
         (static_cast<std::uint64_t>(slot) << 8) |
         static_cast<std::uint64_t>(k);
}

bool fitter(const Individual& a, const Individual& b) {
  if (a.fit != b.fit) return a.fit > b.fit;
  return a.lineage < b.lineage;
}

std::array<double, 2> ratios(const Individual& ind,
                             const ReferenceContext& ctx) {
  return {ctx.depth_ori / std::max(ind.depth_app, kEps),
          ctx.area_ori / std::max(ind.area_app, kEps)};
}

/// Evaluated searching move; returns the individual unchanged when no
/// critical-path target exists.
Individual search_one(const Individual& ind, const ReferenceContext& ctx,
                      const OptimizerConfig& cfg, std::mt19937_64& rng,
                      std::uint64_t lineage) {
  TimingReport timing = analyze(ind.netlist, ctx.lib);
  TraceMap traces = simulate(ind.netlist, ctx.vectors);
  auto searched =
      circuit_searching(ind.netlist, timing, traces, ctx.vectors.num_vectors, rng);
  if (!searched) return ind;
  return evaluate(std::move(*searched), ctx, cfg, lineage);
}

}  // namespace

double error_value(const ErrorReport& err, ErrorMetric metric) {
  return metric == ErrorMetric::ErrorRate ? err.er : err.nmed;
}

ReferenceContext make_context(Netlist accurate, const OptimizerConfig& cfg,
                              CellLibrary lib) {
  validate(accurate);
  ReferenceContext ctx;
  ctx.lib = std::move(lib);
  int m = static_cast<int>(accurate.primary_inputs.size());
  if (cfg.force_exhaustive || (m <= 16 && !cfg.force_monte_carlo))
    ctx.vectors = gen_vectors_exhaustive(m);
  else
    ctx.vectors = gen_vectors_mc(m, cfg.num_vectors,
                                 derive_seed(cfg.seed, kStreamVectors));
  ctx.timing_ori = analyze(accurate, ctx.lib);
  ctx.cpd_ori = ctx.timing_ori.cpd;
  ctx.depth_ori = ctx.timing_ori.cpd;
  ctx.area_ori = area(accurate, ctx.lib);
  ctx.accurate = std::move(accurate);
  return ctx;
}

OptimizerConfig resolve_config(OptimizerConfig cfg,
                               const ReferenceContext& ctx) {
  if (cfg.population_size < 5)
    throw std::invalid_argument("population size must be at least 5");
  if (cfg.max_iterations < 1)
    throw std::invalid_argument("iteration cap must be at least 1");
  if (cfg.level_time_weight < 0) cfg.level_time_weight = 0.9 * ctx.cpd_ori;
  if (cfg.level_error_weight < 0)
    cfg.level_error_weight =
        cfg.metric == ErrorMetric::ErrorRate ? 0.1 : 0.2;
  if (cfg.initial_bound < 0) cfg.initial_bound = cfg.error_bound / 4.0;
  if (cfg.relax_coeff < 0)
    cfg.relax_coeff = 0.75 * cfg.error_bound /
                      (static_cast<double>(cfg.max_iterations) *
                       cfg.max_iterations);
  if (cfg.initial_bound > cfg.error_bound)
    throw std::invalid_argument("initial bound exceeds the error bound");
  return cfg;
}

double fitness(double depth_app, double area_app, const ReferenceContext& ctx,
               const OptimizerConfig& cfg) {
  return cfg.depth_weight * (ctx.depth_ori / std::max(depth_app, kEps)) +
         cfg.area_weight() * (ctx.area_ori / std::max(area_app, kEps));
}

Individual evaluate(Netlist n, const ReferenceContext& ctx,
                    const OptimizerConfig& cfg, std::uint64_t lineage) {
  Individual ind;
  TimingReport timing = analyze(n, ctx.lib);
  ind.depth_app = timing.cpd;
  ind.area_app = area(n, ctx.lib, {}, /*exclude_dangling=*/true);
  ind.err = error_report(ctx.accurate, n, ctx.vectors);
  ind.fit = fitness(ind.depth_app, ind.area_app, ctx, cfg);
  ind.po_arrival = std::move(timing.po_arrival);
  ind.degenerate = ind.depth_app <= 0.0 || ind.area_app <= 0.0;
  ind.lineage = lineage;
  ind.netlist = std::move(n);
  return ind;
}

PopulationDivision divide(const std::vector<Individual>& pop) {
  if (pop.size() < 5)
    throw std::invalid_argument("population division needs >= 5 individuals");
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fitter(pop[a], pop[b]);
  });
  PopulationDivision div;
  div.leader = order[0];
  div.elites = {order[1], order[2], order[3]};
  div.omegas.assign(order.begin() + 4, order.end());
  return div;
}

double scaling_factor(int iter, int max_iterations) {
  return 2.0 - 2.0 * static_cast<double>(iter) / max_iterations;
}

double encircling_coeff(double a, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return (2.0 * unit(rng) - 1.0) * a;
}

double fitness_distance_rc(const Individual& ind, Tier tier,
                           const std::vector<Individual>& pop,
                           const PopulationDivision& div, double rc) {
  if (tier == Tier::Elite) return rc * pop[div.leader].fit - ind.fit;
  double elite_sum = 0.0;
  for (std::size_t e : div.elites) elite_sum += pop[e].fit;
  return (rc / 3.0) * elite_sum - ind.fit;
}

double fitness_distance(const Individual& ind, Tier tier,
                        const std::vector<Individual>& pop,
                        const PopulationDivision& div, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> chase(0.0, 2.0);
  return fitness_distance_rc(ind, tier, pop, div, chase(rng));
}

double level(std::size_t po_index, const std::vector<double>& po_arrival,
             const ErrorReport& err, const OptimizerConfig& cfg) {
  double ta = std::max(po_arrival.at(po_index), kEps);
  double eo = std::max(err.per_po_error.at(po_index), kEps);
  return cfg.level_time_weight / ta + cfg.level_error_weight / eo;
}

Individual reproduce(const Individual& parent_x, const Individual& parent_y,
                     const ReferenceContext& ctx, const OptimizerConfig& cfg,
                     std::uint64_t lineage) {
  const Netlist& nx = parent_x.netlist;
  const Netlist& ny = parent_y.netlist;
  if (nx.primary_inputs.size() != ny.primary_inputs.size() ||
      nx.primary_outputs.size() != ny.primary_outputs.size())
    throw std::invalid_argument("reproduce: parent interface mismatch");

  Netlist child;
  child.name = nx.name;
  child.primary_inputs = nx.primary_inputs;
  std::set<GateId> written;
  for (std::size_t i = 0; i < nx.primary_outputs.size(); ++i) {
    double lx = level(i, parent_x.po_arrival, parent_x.err, cfg);
    double ly = level(i, parent_y.po_arrival, parent_y.err, cfg);
    const Netlist& src = (ly > lx) ? ny : nx;  // tie keeps parent_x
    FaninRef po = src.primary_outputs[i];
    child.primary_outputs.push_back(po);
    for (GateId g : tfi(src, po))
      if (written.insert(g).second) child.gates[g] = src.gate(g);
  }
  // gates outside every chosen cone, filled parent_x first
  for (const auto& [id, g] : nx.gates)
    if (written.insert(id).second) child.gates[id] = g;
  for (const auto& [id, g] : ny.gates)
    if (written.insert(id).second) child.gates[id] = g;

  try {
    validate(child);
  } catch (const ValidationError&) {
    Individual copy = fitter(parent_x, parent_y) ? parent_x : parent_y;
    copy.lineage = lineage;
    return copy;
  }
  return evaluate(std::move(child), ctx, cfg, lineage);
}

std::vector<Individual> chase_step(const Individual& ind, Tier tier,
                                   const std::vector<Individual>& pop,
                                   const PopulationDivision& div, int iter,
                                   const ReferenceContext& ctx,
                                   const OptimizerConfig& cfg,
                                   std::mt19937_64& rng,
                                   std::uint64_t lineage_base) {
  // draws, in order: r_c, r1, then branch-specific draws
  double d = fitness_distance(ind, tier, pop, div, rng);
  double a = scaling_factor(iter, cfg.max_iterations);
  double w = encircling_coeff(a, rng) * d;

  std::vector<Individual> out;
  if (tier == Tier::Elite) {
    if (w > cfg.elite_threshold)
      out.push_back(reproduce(ind, pop[div.leader], ctx, cfg, lineage_base));
    else
      out.push_back(search_one(ind, ctx, cfg, rng, lineage_base));
    return out;
  }
  std::uniform_int_distribution<int> elite_pick(0, 2);
  if (w > cfg.omega_threshold) {
    const Individual& partner = pop[div.elites[elite_pick(rng)]];
    Individual child = reproduce(ind, partner, ctx, cfg, lineage_base);
    Individual grandchild =
        search_one(child, ctx, cfg, rng, lineage_base + 1);
    out.push_back(std::move(child));
    out.push_back(std::move(grandchild));
    return out;
  }
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng) == 0) {
    out.push_back(search_one(ind, ctx, cfg, rng, lineage_base));
  } else {
    const Individual& partner = pop[div.elites[elite_pick(rng)]];
    out.push_back(reproduce(ind, partner, ctx, cfg, lineage_base));
  }
  return out;
}

std::vector<std::vector<std::size_t>> pareto_fronts(
    const std::vector<std::array<double, 2>>& points) {
  std::size_t n = points.size();
  auto dominates = [&](std::size_t a, std::size_t b) {
    return points[a][0] >= points[b][0] && points[a][1] >= points[b][1] &&
           (points[a][0] > points[b][0] || points[a][1] > points[b][1]);
  };
  // dominated lists: L_d of i holds everyone dominating i
  std::vector<int> dominator_count(n, 0);
  std::vector<std::vector<std::size_t>> dominated_by(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dominates(i, j)) {
        dominated_by[i].push_back(j);
        ++dominator_count[j];
      }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i)
    if (dominator_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t i : current)
      for (std::size_t j : dominated_by[i])
        if (--dominator_count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding(const std::vector<std::array<double, 2>>& front) {
  std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  for (int obj = 0; obj < 2; ++obj) {
    double lo = kInf, hi = -kInf;
    for (const auto& p : front) {
      lo = std::min(lo, p[obj]);
      hi = std::max(hi, p[obj]);
    }
    double range = hi - lo;
    for (std::size_t i = 0; i < n; ++i) {
      double v = front[i][obj];
      // boundary members of the sorted list
      if (v >= hi || v <= lo) {
        dist[i] = kInf;
        continue;
      }
      if (dist[i] == kInf || range <= 0.0) continue;
      // neighbours in the descending-value sort: the nearest strictly
      // greater and strictly smaller values (permutation-invariant)
      double above = hi, below = lo;
      for (const auto& p : front) {
        if (p[obj] > v) above = std::min(above, p[obj]);
        if (p[obj] < v) below = std::max(below, p[obj]);
      }
      dist[i] += (above - below) / range;
    }
  }
  return dist;
}

double relax_bound(int iter, const OptimizerConfig& cfg) {
  double e0 = cfg.initial_bound >= 0 ? cfg.initial_bound
                                     : cfg.error_bound / 4.0;
  double b = cfg.relax_coeff >= 0
                 ? cfg.relax_coeff
                 : 0.75 * cfg.error_bound /
                       (static_cast<double>(cfg.max_iterations) *
                        cfg.max_iterations);
  return std::min(cfg.error_bound,
                  b * static_cast<double>(iter) * iter + e0);
}

std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<Individual>& candidates, double bound,
    ErrorMetric metric, const ReferenceContext& ctx) {
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (error_value(candidates[i].err, metric) <= bound) feasible.push_back(i);
  if (feasible.empty()) return {};
  std::vector<std::array<double, 2>> points;
  points.reserve(feasible.size());
  for (std::size_t i : feasible) points.push_back(ratios(candidates[i], ctx));
  auto fronts = pareto_fronts(points);
  for (auto& front : fronts)
    for (std::size_t& idx : front) idx = feasible[idx];
  return fronts;
}

std::vector<Individual> select_next(
    const std::vector<Individual>& candidates,
    const std::vector<std::vector<std::size_t>>& fronts, int n,
    const ReferenceContext& ctx) {
  std::vector<Individual> next;
  next.reserve(n);
  std::size_t best_idx = candidates.size();
  for (const auto& front : fronts)
    for (std::size_t i : front)
      if (best_idx == candidates.size() ||
          fitter(candidates[i], candidates[best_idx]))
        best_idx = i;

  bool best_selected = false;
  for (const auto& front : fronts) {
    if (static_cast<int>(next.size()) >= n) break;
    std::vector<std::array<double, 2>> points;
    points.reserve(front.size());
    for (std::size_t i : front) points.push_back(ratios(candidates[i], ctx));
    std::vector<double> dist = crowding(points);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (dist[a] != dist[b]) return dist[a] > dist[b];
      return candidates[front[a]].lineage < candidates[front[b]].lineage;
    });
    for (std::size_t k : order) {
      if (static_cast<int>(next.size()) >= n) break;
      next.push_back(candidates[front[k]]);
      if (front[k] == best_idx) best_selected = true;
    }
  }
  if (next.empty()) return next;
  // keep the fitness incumbent alive so best feasible fitness never regresses
  if (!best_selected) next.back() = candidates[best_idx];
  while (static_cast<int>(next.size()) < n)
    next.push_back(candidates[best_idx]);
  return next;
}

std::vector<Individual> init_population(const ReferenceContext& ctx,
                                        const OptimizerConfig& cfg) {
  std::vector<Individual> pop;
  pop.reserve(cfg.population_size);
  for (int i = 0; i < cfg.population_size; ++i) {
    std::mt19937_64 rng = derive_rng(cfg.seed, kStreamInit, i);
    std::uniform_int_distribution<int> lac_count(1, cfg.init_lacs_max);
    int k = lac_count(rng);
    Netlist current = ctx.accurate;
    for (int step = 0; step < k; ++step) {
      std::set<GateId> dead = dangling_gates(current);
      std::vector<GateId> live;
      for (const auto& [id, g] : current.gates)
        if (g.kind != GateKind::Input && !dead.count(id)) live.push_back(id);
      if (live.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
      GateId target = live[pick(rng)];
      TraceMap traces = simulate(current, ctx.vectors);
      SimilarityTable table =
          similarity_table(current, target, traces, ctx.vectors.num_vectors);
      current = apply_lac(current, choose_switch(current, target, table));
    }
    pop.push_back(evaluate(std::move(current), ctx, cfg, i + 1));
  }
  return pop;
}

RunResult run(const ReferenceContext& ctx, const OptimizerConfig& raw_cfg,
              const IterationObserver& observer) {
  OptimizerConfig cfg = resolve_config(raw_cfg, ctx);
  std::vector<Individual> pop = init_population(ctx, cfg);

  RunResult result;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    PopulationDivision div = divide(pop);
    std::vector<Individual> cands = pop;

    // chase slots 1..N-1 follow the fitness-sorted order; slot 0 is the
    // leader's own searching move. Streams are independent per slot, so the
    // outcome does not depend on evaluation order.
    struct Task {
      std::size_t pop_index;
      Tier tier;
      int slot;
    };
    std::vector<Task> tasks;
    for (int e = 0; e < 3; ++e)
      tasks.push_back({div.elites[e], Tier::Elite, e + 1});
    for (std::size_t o = 0; o < div.omegas.size(); ++o)
      tasks.push_back({div.omegas[o], Tier::Omega, static_cast<int>(o) + 4});

    std::vector<std::vector<Individual>> outs(tasks.size());
    auto run_task = [&](std::size_t t) {
      const Task& task = tasks[t];
      std::mt19937_64 rng = derive_rng(cfg.seed, kStreamChase, iter, task.slot);
      outs[t] = chase_step(cands[task.pop_index], task.tier, cands, div, iter,
                           ctx, cfg, rng, make_lineage(iter, task.slot));
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || tasks.size() < 2) {
      for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
      std::vector<std::thread> workers;
      std::size_t stride = static_cast<std::size_t>(jobs);
      for (std::size_t w = 0; w < stride; ++w)
        workers.emplace_back([&, w] {
          for (std::size_t t = w; t < tasks.size(); t += stride) run_task(t);
        });
      for (auto& th : workers) th.join();
    }

    std::mt19937_64 leader_rng = derive_rng(cfg.seed, kStreamLeader, iter);
    Individual leader_out = search_one(cands[div.leader], ctx, cfg, leader_rng,
                                       make_lineage(iter, 0));
    for (auto& batch : outs)
      for (auto& ind : batch) cands.push_back(std::move(ind));
    cands.push_back(std::move(leader_out));

    double bound = relax_bound(iter, cfg);
    auto fronts = nondominated_sort(cands, bound, cfg.metric, ctx);
    std::size_t feasible_count = 0;
    for (const auto& f : fronts) feasible_count += f.size();
    if (!fronts.empty())
      pop = select_next(cands, fronts, cfg.population_size, ctx);

    TraceRow row;
    row.iter = iter;
    row.bound = bound;
    row.feasible_count = feasible_count;
    for (const Individual& ind : pop) {
      if (error_value(ind.err, cfg.metric) > bound) continue;
      auto [fd, fa] = ratios(ind, ctx);
      row.best_fit = std::max(row.best_fit, ind.fit);
      row.best_depth_ratio = std::max(row.best_depth_ratio, fd);
      row.best_area_ratio = std::max(row.best_area_ratio, fa);
    }
    result.trace.push_back(row);
    if (observer) observer(IterationState{iter, bound, pop});
  }

  const Individual* best = nullptr;
  for (const Individual& ind : pop)
    if (error_value(ind.err, cfg.metric) <= cfg.error_bound &&
        (!best || fitter(ind, *best)))
      best = &ind;
  if (best) {
    result.best = *best;
  } else {
    // nothing feasible in the final population; fall back to the accurate
    // circuit, which trivially satisfies any non-negative bound
    result.feasibility_failed = true;
    result.best = evaluate(ctx.accurate, ctx, cfg, 0);
  }

  if (ctx.vectors.exhaustive) {
    result.fresh_error =
        error_report(ctx.accurate, result.best.netlist, ctx.vectors);
  } else {
    VectorSet fresh = gen_vectors_mc(
        static_cast<int>(ctx.accurate.primary_inputs.size()),
        cfg.num_vectors, derive_seed(cfg.seed, kStreamFresh));
    result.fresh_error = error_report(ctx.accurate, result.best.netlist, fresh);
  }
  return result;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os << "iter,bound,best_fit,best_depth_ratio,best_area_ratio,feasible_count\n";
  for (const TraceRow& row : trace)
    os << row.iter << ',' << row.bound << ',' << row.best_fit << ','
       << row.best_depth_ratio << ',' << row.best_area_ratio << ','
       << row.feasible_count << '\n';
  return os.str();
}

}  // namespace als
