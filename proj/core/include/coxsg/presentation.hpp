#ifndef COXSG_PRESENTATION_HPP
#define COXSG_PRESENTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "coxsg/word.hpp"

namespace coxsg {

// Coxeter presentation <a_1..a_n; a_i^2, (a_i a_j)^{m_ij}>.  Exponents are
// symmetric, m_ii = 1, and absent relations are "unrelated" (the classical
// infinity label); unrelated pairs never enter arithmetic.
class CoxeterPresentation {
public:
  CoxeterPresentation(std::size_t n_gens);

  std::size_t rank() const { return n_; }

  void set_exponent(Gen i, Gen j, int m);

  bool related(Gen i, Gen j) const { return entry(i, j) > 0 && i != j; }
  std::optional<int> exponent(Gen i, Gen j) const
  {
    int e = entry(i, j);
    if (e == 0)
      return std::nullopt;
    return e;
  }
  // Exponent of a related pair; call sites guard with related().
  int exponent_of(Gen i, Gen j) const { return entry(i, j); }

  // Degree of a_i in the modified Coxeter graph.
  int rho(Gen i) const;
  int rho_edge(Gen i, Gen j) const { return std::max(rho(i), rho(j)); }

  // Maximum relator length times the maximum rho_i; the per-input edge
  // budget of the whole construction is k_G * s_H.
  long k_G() const;

  bool is_extra_large() const;
  // Throws with a per-pair diagnostic unless n >= 3 and all finite
  // exponents are >= 4.
  void require_extra_large() const;

  const std::optional<std::vector<Gen>>& declared_cover() const { return cover_; }
  void set_declared_cover(std::vector<Gen> c) { cover_ = std::move(c); }

private:
  int entry(Gen i, Gen j) const { return matrix_[static_cast<std::size_t>(i) * n_ + j]; }
  std::size_t n_;
  std::vector<int> matrix_; // 1 on the diagonal, 0 encodes "unrelated" (never exposed)
  std::optional<std::vector<Gen>> cover_;
};

struct ModifiedGraphEdge {
  Gen i, j;   // i < j
  int label;  // m_ij
  int rho_ij; // max of the endpoint degrees
};

// Vertices are the generators; edges are the related pairs (2-edges
// included, unrelated pairs omitted).
struct ModifiedCoxeterGraph {
  std::size_t n = 0;
  std::vector<ModifiedGraphEdge> edges;
  std::vector<int> degrees; // rho_i

  std::size_t edge_count() const { return edges.size(); }
};

ModifiedCoxeterGraph modified_graph(const CoxeterPresentation& p);

// Presentation file format:
//   gens <n>
//   m <i> <j> <k>       (1-based, k >= 2; omitted pairs are unrelated)
//   cover <i> <j> ...   (optional)
// Duplicate or conflicting m lines are errors.  Extra-large type (n >= 3,
// all k >= 4) is enforced here because every downstream construction
// assumes it.
CoxeterPresentation parse_presentation(const std::string& text);

std::string format_presentation(const CoxeterPresentation& p);

struct CoverViolation {
  enum class Kind { Uncovered, BothInCover, OneInCover };
  Kind kind;
  Gen i, j;
  std::string message;
};

struct ReductionReport {
  bool pass = false;
  std::vector<CoverViolation> violations;
};

// Reduction Hypothesis for a candidate cover C: C covers every edge of the
// modified graph, 2*m_ij > 3*rho_ij when both endpoints are in C, and
// m_ij > 2*rho_i when only a_i is in C.
ReductionReport check_reduction_hypothesis(const CoxeterPresentation& p,
                                           const std::vector<Gen>& cover);

// Smallest cover passing the hypothesis (then lexicographically least),
// found by exhaustive search over subsets by increasing size.
std::optional<std::vector<Gen>> find_cover(const CoxeterPresentation& p);

struct SeparabilityViolation {
  Gen i, j;
  int label;
  bool odd;                       // exponent not even
  std::optional<Gen> triangle_apex; // edge on a triangle with 3 not dividing m_ij
  std::string message;
};

struct SeparabilityReport {
  bool pass = false;
  std::vector<SeparabilityViolation> violations;
};

// All finite exponents even; edges on triangles of the modified graph
// additionally divisible by 3 (hence by 6).
SeparabilityReport check_separability_condition(const CoxeterPresentation& p);

} // namespace coxsg

#endif
