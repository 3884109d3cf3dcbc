#ifndef COXSG_SEPARABILITY_HPP
#define COXSG_SEPARABILITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxsg/pipeline.hpp"
#include "coxsg/subgroup_graph.hpp"

namespace coxsg {

// Permutation of 0..degree-1 in one-line notation.
using Permutation = std::vector<std::uint32_t>;

std::string cycle_notation(const Permutation& perm);

// Action of a_i on the vertices: an edge swaps its endpoints, a loop or a
// missing label fixes the vertex.  Indices follow `vertex_index`.
Permutation generator_action(const SubgroupGraph& g, Gen i,
                             const std::vector<VertexId>& vertex_order);

struct FiniteQuotient {
  std::size_t degree = 0;
  std::vector<Permutation> images;   // one involution per generator
  std::vector<VertexId> vertex_order; // dense index -> graph vertex id
  std::size_t base_index = 0;         // image of O_H
  std::optional<std::size_t> terminal_index; // image of T_w when present

  std::size_t apply(std::size_t point, const Word& w) const
  {
    for (Gen g : w)
      point = images[g][point];
    return point;
  }
};

struct RelatorViolation {
  Gen i, j;
  std::size_t vertex_index;
  std::string message;
};

// The generator actions as a homomorphism to Sym(V): verifies that every
// image is an involution and that every finite relator acts trivially,
// by explicit composition.  Violations are possible only when the
// Separability Condition fails; the first one is returned.
struct HomomorphismResult {
  std::optional<FiniteQuotient> quotient;
  std::optional<RelatorViolation> violation;
};

HomomorphismResult homomorphism(const SubgroupGraph& g);

struct StemGraph {
  SubgroupGraph graph;  // Delta_2(H, w)
  BuildStats stats;
};

// Attaches a stem spelling the Dehn-reduced form of w at the basepoint of
// Delta_2(H), re-runs perimeter reduction and 2-completion, and tracks the
// stem's far endpoint T_w; asserts T_w != O_H at the end.
StemGraph build_stem_graph(const SubgroupGraph& delta2_h, const std::vector<Gen>& cover,
                           const Word& w);

struct SeparationCertificate {
  FiniteQuotient quotient;
  Word w_reduced;
  // O_H, its image under w, and the check that each subgroup generator
  // stabilizes O_H.
  std::size_t base_index = 0;
  std::size_t w_image = 0;
  std::vector<Word> stabilized_generators;
};

// Theorem-I(5) separation: for w outside H over a presentation passing the
// Reduction Hypothesis and the Separability Condition, an explicit
// homomorphism to a finite symmetric group with the images of H fixing
// O_H while the image of w moves it.
SeparationCertificate separate(const CoxeterPresentation& p, const std::vector<Word>& gens,
                               const Word& w, const std::optional<std::vector<Gen>>& cover_opt =
                                                   std::nullopt);

// Theorem-III residual-finiteness witness: for w != 1, 2-completes the
// path graph of the Dehn-reduced form and returns the vertex action, under
// which w moves the path's initial vertex to its terminal one.
SeparationCertificate residual_witness(const CoxeterPresentation& p, const Word& w);

} // namespace coxsg

#endif
