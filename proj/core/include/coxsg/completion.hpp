#ifndef COXSG_COMPLETION_HPP
#define COXSG_COMPLETION_HPP

#include <optional>
#include <string>
#include <vector>

#include "coxsg/subgroup_graph.hpp"

namespace coxsg {

// Completes every maximal alternating path of length >= 2 that is not on a
// relator cycle with a chain of secondary edges (at least four of them,
// by the Relator Path Property).  Precondition violations are reported
// with the witnessing path.
void complete_maximal_paths(SubgroupGraph& g);

// Identifies same-labeled secondary edges at every primary vertex and
// marks the secondary endpoints of secondary edges incident to primary
// vertices as critical.  The result is trim.
void fold_secondary_at_primary(SubgroupGraph& g);

// Completes residual pairs of related-labeled edges at primary vertices:
// a primary edge paired with a secondary one is extended through a
// secondary parallel-label edge at its far endpoint when present; pairs of
// secondary edges are completed directly.  Keeps the graph trim.
void complete_vertex_pairs(SubgroupGraph& g);

// Phase II: the three stages in order, on any trim graph with the Relator
// Path Property.  The input's vertices and edges are embedded unchanged
// (as primary); everything added is secondary.
void two_complete(SubgroupGraph& g);

struct TwoCompletenessViolation {
  VertexId v;
  EdgeId e1, e2;
  Gen s, t;
  std::string message;
};

// A trim graph is 2-complete when every pair of edges with distinct
// related labels at a vertex lies on a relator cycle, except the one
// configuration where both far endpoints have degree 2 and a third edge at
// the vertex closes relator cycles with each of the pair.
std::optional<TwoCompletenessViolation> two_completeness_violation(const SubgroupGraph& g);
bool is_two_complete(const SubgroupGraph& g);

// Recomputes critical marks: secondary vertices joined to a primary vertex
// by a secondary edge.
void mark_critical_vertices(SubgroupGraph& g);

} // namespace coxsg

#endif
