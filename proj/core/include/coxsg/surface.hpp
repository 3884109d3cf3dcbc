#ifndef COXSG_SURFACE_HPP
#define COXSG_SURFACE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxsg/word.hpp"

namespace coxsg::surface {

// Signed letter over the surface alphabet: +(g+1) reads generator g
// forward, -(g+1) reads its inverse.
using SLetter = int;
using SWord = std::vector<SLetter>;

inline SLetter inv(SLetter x) { return -x; }
inline Gen gen_of(SLetter x) { return static_cast<Gen>((x > 0 ? x : -x) - 1); }
inline bool forward(SLetter x) { return x > 0; }

SWord inverse(const SWord& w);

// "ab'c" or signed indices "1 -2 3"; letters a..z with ' or - suffix for
// inverses.
SWord parse_sword(const std::string& text, std::size_t n);
std::string format_sword(const SWord& w, std::size_t n);

// Standard surface presentation: orientable genus g >= 2 with relator
// [a1,b1]...[ag,bg]; nonorientable genus g >= 4 with relator a1^2...ag^2.
// All pieces have length one, so two consecutive letters determine the
// symmetrized relator and position uniquely.
class SurfacePresentation {
public:
  SurfacePresentation(int genus, bool orientable);

  bool orientable() const { return orientable_; }
  int genus() const { return genus_; }
  std::size_t rank() const { return n_; }
  const SWord& relator() const { return relator_; }
  std::size_t half() const { return relator_.size() / 2; }

  // Next letter after the 2-letter relator subword (a, b); nullopt when
  // (a, b) is not a relator subword.
  std::optional<SLetter> successor(SLetter a, SLetter b) const;
  std::optional<SLetter> predecessor(SLetter a, SLetter b) const;
  bool is_subword_pair(SLetter a, SLetter b) const
  {
    return successor(a, b).has_value();
  }

  // Symmetrized elements beginning with the letter a (always exactly two).
  const std::vector<SWord>& starters(SLetter a) const;

private:
  bool orientable_;
  int genus_;
  std::size_t n_;
  SWord relator_;
  std::map<std::pair<SLetter, SLetter>, SLetter> succ_;
  std::map<std::pair<SLetter, SLetter>, SLetter> pred_;
  std::map<SLetter, std::vector<SWord>> starters_;
};

// Free reduction plus replacement of any factor spelling more than half a
// relator by the inverse of the complement.  Dehn's algorithm: the result
// is empty iff w represents the identity.
SWord dehn_reduce(const SurfacePresentation& sp, const SWord& w);

enum class SProvenance : std::uint8_t { Primary = 0, Secondary = 1 };
enum class SVertexClass : std::uint8_t { Primary = 0, Secondary = 1, Critical = 2 };

struct SEdge {
  std::uint32_t tail, head; // reads +label from tail to head
  Gen label;
  SProvenance prov;
  bool alive;
};

// Directed labeled graph: trim means at most one outgoing and one incoming
// edge per generator at each vertex.
class DirectedSubgroupGraph {
public:
  explicit DirectedSubgroupGraph(const SurfacePresentation& sp);

  const SurfacePresentation& presentation() const { return *sp_; }

  std::uint32_t add_vertex(SVertexClass cls = SVertexClass::Primary);
  std::uint32_t add_edge(std::uint32_t tail, std::uint32_t head, Gen label,
                         SProvenance prov = SProvenance::Primary);

  std::uint32_t find(std::uint32_t v) const;
  std::uint32_t basepoint() const { return find(base_); }

  std::size_t vertex_count() const { return live_vertices_; }
  std::size_t edge_count() const { return live_edges_; }

  const SEdge& edge(std::uint32_t e) const { return edges_[e]; }
  SVertexClass vertex_class(std::uint32_t v) const { return cls_[find(v)]; }
  void set_vertex_class(std::uint32_t v, SVertexClass c) { cls_[find(v)] = c; }

  // Unique edge realizing the letter x out of v (x > 0: out-edge labeled
  // g; x < 0: in-edge labeled g, traversed backward), or -1.
  std::uint32_t edge_for(std::uint32_t v, SLetter x) const;
  std::uint32_t dest(std::uint32_t e, SLetter x) const;
  std::size_t degree(std::uint32_t v) const;

  std::uint32_t identify(std::uint32_t u, std::uint32_t v);
  void fold();
  void fold_from(std::vector<std::uint32_t> seeds);
  bool is_trim() const;
  void require_trim(const std::string& where) const;

  std::optional<std::uint32_t> trace(std::uint32_t v, const SWord& w) const;
  bool reads_closed_loop(const SWord& w) const;

  std::vector<std::uint32_t> live_vertex_list() const;
  std::vector<std::uint32_t> live_edge_list() const;

private:
  void merge_into(std::uint32_t surv, std::uint32_t gone);

  const SurfacePresentation* sp_;
  mutable std::vector<std::uint32_t> parent_;
  std::vector<std::vector<std::uint32_t>> adj_; // incident edges (either end)
  std::vector<SVertexClass> cls_;
  std::vector<SEdge> edges_;
  std::uint32_t base_;
  std::size_t live_vertices_ = 0;
  std::size_t live_edges_ = 0;
};

DirectedSubgroupGraph surface_bouquet(const SurfacePresentation& sp,
                                      const std::vector<SWord>& gens);

struct SurfaceStats {
  long completion_steps = 0;
  long gamma_initial = 0;
  long gamma_final = 0;
  long initial_edges = 0;
};

// Phase I: folds and completes paths spelling more than half a relator;
// the count h * missing + edges strictly decreases per step (asserted).
SurfaceStats surface_phase1(DirectedSubgroupGraph& g);

// Phase II, exactly as for Coxeter groups: complete maximal relator-subword
// paths (length >= 2) with secondary chains, fold secondary edges at
// primary vertices, complete residual letter pairs at primary vertices.
void surface_two_complete(DirectedSubgroupGraph& g);

struct SurfaceViolation {
  std::uint32_t v;
  std::string message;
};

std::optional<SurfaceViolation> surface_two_completeness_violation(
    const DirectedSubgroupGraph& g);
inline bool surface_is_two_complete(const DirectedSubgroupGraph& g)
{
  return !surface_two_completeness_violation(g).has_value();
}

long surface_count_gamma(const DirectedSubgroupGraph& g);

struct SurfaceReport {
  bool member = false;
  SWord reduced;
  bool full = false;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  long diameter = 0;
};

// Membership (Dehn reduce + trace), fullness in both directions, diameter.
SurfaceReport surface_queries(const DirectedSubgroupGraph& delta2,
                              const std::optional<SWord>& w);

} // namespace coxsg::surface

#endif
