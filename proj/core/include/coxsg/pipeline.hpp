#ifndef COXSG_PIPELINE_HPP
#define COXSG_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "coxsg/reduction.hpp"
#include "coxsg/subgroup_graph.hpp"

namespace coxsg {

struct BuildOptions {
  std::optional<std::vector<Gen>> cover; // defaults to the declared or found cover
  bool unchecked = false;                // skip the Reduction Hypothesis (no guarantees)
  long budget = 0;                       // step cap for unchecked runs
  bool keep_delta1 = false;
  std::function<void(const std::string&)> trace;
};

struct BuildStats {
  Phase1Stats phase1;
  long s_H = 0;
  std::vector<Gen> cover_used;
  std::size_t delta1_vertices = 0, delta1_edges = 0;
  std::size_t delta2_vertices = 0, delta2_edges = 0;
  bool phase2_added_edges = false;
  double seconds_phase1 = 0, seconds_phase2 = 0;
};

struct BuildResult {
  SubgroupGraph delta2;
  std::optional<SubgroupGraph> delta1;
  BuildStats stats;
};

// Full pipeline Delta_0 -> Delta_1 -> Delta_2 with the structural
// invariants asserted: the count decreases across Phase I, the edge count
// stays within k_G * s_H, Delta_1 has the Relator Path Property, Delta_2
// is 2-complete, every input generator still reads as a basepoint loop,
// and a graph that gained Phase II edges is not full.
BuildResult build_subgroup_graph(const CoxeterPresentation& p, const std::vector<Word>& gens,
                                 const BuildOptions& options = {});

// Same pipeline applied to an arbitrary starting graph (stem graphs, path
// graphs); s_H is taken as the initial edge count.
BuildResult build_from_graph(SubgroupGraph g, const std::vector<Word>& loop_checks,
                             const BuildOptions& options);

// The cover actually used for a build: explicit option, the presentation's
// declared cover, or the smallest one found by search.
std::vector<Gen> resolve_cover(const CoxeterPresentation& p,
                               const std::optional<std::vector<Gen>>& requested,
                               bool unchecked);

} // namespace coxsg

#endif
