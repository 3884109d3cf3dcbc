#ifndef COXSG_SUBGROUP_GRAPH_HPP
#define COXSG_SUBGROUP_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxsg/presentation.hpp"
#include "coxsg/word.hpp"

namespace coxsg {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
constexpr VertexId kNoVertex = static_cast<VertexId>(-1);
constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

enum class Provenance : std::uint8_t { Primary = 0, Secondary = 1 };
enum class VertexClass : std::uint8_t { Primary = 0, Secondary = 1, Critical = 2 };
enum class Stage : std::uint8_t { Delta0 = 0, Delta1 = 1, Delta2 = 2 };

struct GraphEdge {
  VertexId u, v; // unordered; loops (u == v) are legal
  Gen label;
  Provenance prov;
  bool alive;
};

// Labeled graph over a Coxeter group.  Generators are involutions, so edges
// are undirected and read the same label in both directions.  Vertices are
// merged through a union-find; ids are stable and never reused.
class SubgroupGraph {
public:
  explicit SubgroupGraph(const CoxeterPresentation& p, Stage stage = Stage::Delta0);

  const CoxeterPresentation& presentation() const { return *pres_; }

  Stage stage() const { return stage_; }
  void set_stage(Stage s) { stage_ = s; }

  VertexId add_vertex(VertexClass cls = VertexClass::Primary);
  EdgeId add_edge(VertexId u, VertexId v, Gen label, Provenance prov = Provenance::Primary);

  VertexId basepoint() const { return find(base_); }
  void set_basepoint(VertexId v) { base_ = v; }
  VertexId terminal() const { return term_ == kNoVertex ? kNoVertex : find(term_); }
  void set_terminal(VertexId v) { term_ = v; }

  VertexId find(VertexId v) const;
  bool vertex_alive(VertexId v) const { return find(v) == v; }

  std::size_t vertex_count() const { return live_vertices_; }
  std::size_t edge_count() const { return live_edges_; }
  std::size_t vertex_slots() const { return parent_.size(); }
  std::size_t edge_slots() const { return edges_.size(); }

  const GraphEdge& edge(EdgeId e) const { return edges_[e]; }
  bool edge_alive(EdgeId e) const { return edges_[e].alive; }
  VertexId endpoint(EdgeId e, int side) const
  {
    return find(side == 0 ? edges_[e].u : edges_[e].v);
  }
  // The endpoint across e from v (v itself for loops).
  VertexId across(EdgeId e, VertexId v) const;

  VertexClass vertex_class(VertexId v) const { return cls_[find(v)]; }
  void set_vertex_class(VertexId v, VertexClass c) { cls_[find(v)] = c; }

  // Incident live edges of the root vertex v (loops listed once).
  const std::vector<EdgeId>& incident(VertexId v) const { return adj_[find(v)]; }

  // Unique live edge labeled g at v, or kNoEdge.  Meaningful on trim
  // graphs; on non-trim graphs returns the least such edge id.
  EdgeId edge_at(VertexId v, Gen g) const;
  std::size_t degree(VertexId v) const;

  // Identifies u and v (and nothing else); callers fold afterwards.
  VertexId identify(VertexId u, VertexId v);

  // Folds to the smallest trim quotient: repeatedly identifies the far
  // endpoints of same-labeled edge pairs at a vertex.  Confluent, so the
  // result does not depend on processing order.
  void fold();
  // Folding restricted to conflicts at the given seed vertices (their
  // cascades may touch others).
  void fold_from(std::vector<VertexId> seeds);

  bool is_trim() const;
  void require_trim(const std::string& where) const;

  // Demotes all provenance and class marks to input material, for graphs
  // reused as the starting point of a fresh pipeline run.
  void reset_provenance();

  std::optional<VertexId> trace(VertexId v, const Word& w) const;
  bool reads_closed_loop(const Word& w) const;

  std::vector<VertexId> live_vertex_list() const;
  std::vector<EdgeId> live_edge_list() const;

  // Breadth-first relabeling from the basepoint with label-sorted edge
  // order; equal keys mean equal based labeled graphs.
  std::string canonical_key() const;

private:
  void merge_into(VertexId survivor, VertexId absorbed);

  const CoxeterPresentation* pres_;
  Stage stage_;
  mutable std::vector<VertexId> parent_;
  std::vector<std::vector<EdgeId>> adj_; // valid at roots only
  std::vector<VertexClass> cls_;
  std::vector<GraphEdge> edges_;
  VertexId base_ = kNoVertex;
  VertexId term_ = kNoVertex;
  std::size_t live_vertices_ = 0;
  std::size_t live_edges_ = 0;
};

// Bouquet of loops at a fresh basepoint, one per generator word; the i-th
// loop spells gens[i].  Empty words are dropped.  The edge count equals the
// sum of the word lengths.
SubgroupGraph bouquet(const CoxeterPresentation& p, const std::vector<Word>& gens);

inline SubgroupGraph fold(SubgroupGraph g)
{
  g.fold();
  return g;
}

struct AlternatingWalk {
  std::vector<EdgeId> edges;      // in traversal order
  std::vector<VertexId> vertices; // edges.size()+1 entries when open, edges.size() when closed
  bool closed = false;
  bool truncated = false; // open walk cut off at the exploration cap
  std::size_t length() const { return edges.size(); }
  // Half-period k of a closed walk (the walk has 2k edges).
  std::size_t half_period() const { return edges.size() / 2; }
};

// Maximal walk through e whose labels alternate between a_i and a_j, on a
// trim graph.  Walks may traverse an edge in both phases only by closing;
// closure is detected by state repetition.  When cap > 0 the walk is
// explored at most cap edges in each direction and flagged truncated if
// cut off.
AlternatingWalk alternating_walk(const SubgroupGraph& g, EdgeId e, Gen i, Gen j,
                                 std::size_t cap = 0);

// True iff the maximal (i,j)-walk through e is closed with half-period k
// dividing m_ij; traversing it m_ij/k times spells the relator.  Rejects
// unrelated label pairs.
bool on_relator_cycle(const SubgroupGraph& g, EdgeId e, Gen i, Gen j);

inline std::optional<VertexId> trace(const SubgroupGraph& g, VertexId v, const Word& w)
{
  return g.trace(v, w);
}

} // namespace coxsg

#endif
