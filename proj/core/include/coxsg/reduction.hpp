#ifndef COXSG_REDUCTION_HPP
#define COXSG_REDUCTION_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coxsg/presentation.hpp"
#include "coxsg/subgroup_graph.hpp"

namespace coxsg {

struct PerimeterCount {
  long missing_total = 0; // (edge, relator) pairs missing over C-labeled edges
  long edge_count = 0;
  long gamma = 0; // 4 * missing_total + edge_count
};

// The count gamma on a trim graph: four times the number of relator cycles
// missing at edges labeled from C, plus the edge count.
PerimeterCount count_gamma(const SubgroupGraph& g, const std::vector<Gen>& cover);

struct NearRelatorPath {
  Gen i, j;    // relator pair
  int missing; // letters missing, 0..3
  // The path alpha: 2*m_ij - missing edges for missing >= 1.  For
  // missing == 0 only the two vertices to identify are relevant.
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertices;
  bool from_bad_loop = false; // closed alternating loop whose half-period does not divide m_ij
  VertexId ident_a = kNoVertex, ident_b = kNoVertex; // set when missing == 0
};

// First path labeled by a relator with at most three letters missing that
// is not on a relator cycle, in deterministic scan order (vertices by id,
// labels ascending); closed alternating loops with bad period surface as
// missing == 0 identifications.
std::optional<NearRelatorPath> find_near_relator_path(const SubgroupGraph& g);

// Adds the missing edges (or identifies endpoints when nothing is missing)
// so the path closes to a relator cycle; missing == 0 identifications are
// folded immediately.
void complete_relator_cycle(SubgroupGraph& g, const NearRelatorPath& path,
                            Provenance prov = Provenance::Primary);

// Exhaustive check of the Relator Path Property.
bool has_relator_path_property(const SubgroupGraph& g);
std::optional<NearRelatorPath> relator_path_property_violation(const SubgroupGraph& g);

struct Phase1Options {
  bool unchecked = false; // run without the Reduction Hypothesis; no guarantees
  long budget = 0;        // step cap for unchecked runs (0 = none)
  std::function<void(const std::string&)> trace; // optional step audit log
};

struct Phase1Stats {
  long fold_steps = 0;
  long completion_steps = 0;
  long initial_edges = 0; // s_H for bouquet inputs
  long gamma_initial = 0;
  long gamma_final = 0;
  long max_edges = 0;
};

// Phase I: alternates folding to trim and completing one near-relator path
// until neither applies.  In checked mode the cover must pass the Reduction
// Hypothesis; gamma then strictly decreases at every trim-to-trim step and
// the edge count never exceeds k_G * s_H, both asserted.
Phase1Stats phase1(SubgroupGraph& g, const std::vector<Gen>& cover,
                   const Phase1Options& options = {});

} // namespace coxsg

#endif
