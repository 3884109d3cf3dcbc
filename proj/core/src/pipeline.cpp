#include "coxsg/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include "coxsg/analysis.hpp"
#include "coxsg/completion.hpp"

namespace coxsg {

std::vector<Gen> resolve_cover(const CoxeterPresentation& p,
                               const std::optional<std::vector<Gen>>& requested,
                               bool unchecked)
{
  if (requested)
    return *requested;
  if (p.declared_cover())
    return *p.declared_cover();
  if (unchecked) {
    // Uniform choice; only used for counting in unchecked runs.
    std::vector<Gen> all(p.rank());
    for (Gen g = 0; g < p.rank(); ++g)
      all[g] = g;
    return all;
  }
  auto found = find_cover(p);
  if (!found)
    throw std::runtime_error(
        "no cover satisfies the Reduction Hypothesis for this presentation");
  return *found;
}

BuildResult build_from_graph(SubgroupGraph g, const std::vector<Word>& loop_checks,
                             const BuildOptions& options)
{
  const CoxeterPresentation& p = g.presentation();
  p.require_extra_large();
  std::vector<Gen> cover = resolve_cover(p, options.cover, options.unchecked);

  BuildStats stats;
  stats.s_H = static_cast<long>(g.edge_count());
  stats.cover_used = cover;

  Phase1Options p1;
  p1.unchecked = options.unchecked;
  p1.budget = options.budget;
  p1.trace = options.trace;

  auto t0 = std::chrono::steady_clock::now();
  stats.phase1 = phase1(g, cover, p1);
  auto t1 = std::chrono::steady_clock::now();
  stats.seconds_phase1 = std::chrono::duration<double>(t1 - t0).count();

  stats.delta1_vertices = g.vertex_count();
  stats.delta1_edges = g.edge_count();

  if (auto witness = relator_path_property_violation(g))
    throw std::runtime_error("build: Delta_1 lacks the Relator Path Property (pair " +
                             std::to_string(witness->i + 1) + "," +
                             std::to_string(witness->j + 1) + ")");

  std::optional<SubgroupGraph> delta1;
  if (options.keep_delta1)
    delta1 = g;

  std::size_t edges_before = g.edge_count();
  two_complete(g);
  auto t2 = std::chrono::steady_clock::now();
  stats.seconds_phase2 = std::chrono::duration<double>(t2 - t1).count();

  stats.delta2_vertices = g.vertex_count();
  stats.delta2_edges = g.edge_count();
  stats.phase2_added_edges = g.edge_count() > edges_before;

  if (!options.unchecked && stats.s_H > 0 &&
      static_cast<long>(g.edge_count()) > p.k_G() * stats.s_H)
    throw std::runtime_error("build: Delta_2 edge count exceeds k_G * s_H");

  if (auto violation = two_completeness_violation(g))
    throw std::runtime_error("build: Delta_2 is not 2-complete: " + violation->message);

  for (const Word& h : loop_checks)
    if (!g.reads_closed_loop(h))
      throw std::runtime_error("build: subgroup generator no longer reads as a loop");

  if (stats.phase2_added_edges && is_finite_index(g).full)
    throw std::runtime_error(
        "build: graph gained Phase II edges yet is full; invariant violated");

  BuildResult result{std::move(g), std::move(delta1), std::move(stats)};
  return result;
}

BuildResult build_subgroup_graph(const CoxeterPresentation& p, const std::vector<Word>& gens,
                                 const BuildOptions& options)
{
  SubgroupGraph g = bouquet(p, gens);
  return build_from_graph(std::move(g), gens, options);
}

} // namespace coxsg
