#ifndef COXSG_ANALYSIS_HPP
#define COXSG_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "coxsg/rewriting.hpp"
#include "coxsg/subgroup_graph.hpp"

namespace coxsg {

struct MembershipResult {
  bool member = false;
  Word reduced;                  // the Dehn-reduced form actually traced
  std::vector<VertexId> trace;   // visited vertices, reduced.size()+1 entries when inside
  bool fell_off = false;         // some letter had no edge
  std::size_t fell_off_at = 0;   // 1-based letter index
};

// Membership via Dehn reduction and tracing on a 2-complete subgroup graph:
// w is in H iff the reduced form reads a closed loop at the basepoint.
MembershipResult is_member(const SubgroupGraph& delta2, const Word& w);

// Distances from the basepoint (unit edge lengths); index is the vertex's
// root id.  Unreached ids map to -1.
std::vector<long> distances_from_basepoint(const SubgroupGraph& g);

// Eccentricity of the basepoint: the quasiconvexity constant for H.
long quasiconvexity_constant(const SubgroupGraph& delta2);

struct FullnessReport {
  bool full = false;
  std::size_t vertex_count = 0; // coset-count estimate when full
  VertexId missing_vertex = kNoVertex;
  Gen missing_label = 0;
};

// H has finite index iff every generator labels an edge at every vertex.
FullnessReport is_finite_index(const SubgroupGraph& delta2);

// For a non-full graph: z = w a_l a_r a_s with w a shortlex-least path
// label to a vertex missing a_l; every power of z is normal and outside H.
// Tie-breaking: smallest vertex id, then smallest admissible letters.
Word infinite_index_witness(const SubgroupGraph& delta2);

// Component of the labeled product containing both basepoints; accepts a
// Dehn-reduced word iff it lies in both subgroups.
SubgroupGraph intersection_acceptor(const SubgroupGraph& delta2_h,
                                    const SubgroupGraph& delta2_k);

// Shortlex-least label over all paths from the basepoint to v.  On a
// normal graph this label is in normal form.
Word least_path_label(const SubgroupGraph& g, VertexId v);

struct AnalysisReport {
  bool full = false;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  long diameter = 0;
  std::optional<Word> witness;
};

AnalysisReport analyze(const SubgroupGraph& delta2);

} // namespace coxsg

#endif
