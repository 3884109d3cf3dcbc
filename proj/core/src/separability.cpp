#include "coxsg/separability.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coxsg/analysis.hpp"
#include "coxsg/completion.hpp"
#include "coxsg/rewriting.hpp"

namespace coxsg {

std::string cycle_notation(const Permutation& perm)
{
  std::ostringstream out;
  std::vector<char> seen(perm.size(), 0);
  bool any = false;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s] || perm[s] == s)
      continue;
    any = true;
    out << "(";
    std::size_t cur = s;
    bool first = true;
    do {
      if (!first)
        out << " ";
      out << cur;
      seen[cur] = 1;
      first = false;
      cur = perm[cur];
    } while (cur != s);
    out << ")";
  }
  if (!any)
    return "()";
  return out.str();
}

Permutation generator_action(const SubgroupGraph& g, Gen i,
                             const std::vector<VertexId>& vertex_order)
{
  std::map<VertexId, std::size_t> index;
  for (std::size_t k = 0; k < vertex_order.size(); ++k)
    index[vertex_order[k]] = k;
  Permutation perm(vertex_order.size());
  for (std::size_t k = 0; k < vertex_order.size(); ++k) {
    VertexId v = vertex_order[k];
    EdgeId e = g.edge_at(v, i);
    if (e == kNoEdge) {
      perm[k] = static_cast<std::uint32_t>(k);
    } else {
      VertexId w = g.across(e, v); // loops fix their vertex
      perm[k] = static_cast<std::uint32_t>(index.at(w));
    }
  }
  return perm;
}

HomomorphismResult homomorphism(const SubgroupGraph& g)
{
  g.require_trim("homomorphism");
  const CoxeterPresentation& p = g.presentation();

  FiniteQuotient q;
  q.vertex_order = g.live_vertex_list();
  q.degree = q.vertex_order.size();

  std::map<VertexId, std::size_t> index;
  for (std::size_t k = 0; k < q.vertex_order.size(); ++k)
    index[q.vertex_order[k]] = k;
  q.base_index = index.at(g.basepoint());
  if (g.terminal() != kNoVertex)
    q.terminal_index = index.at(g.terminal());

  for (Gen i = 0; i < p.rank(); ++i)
    q.images.push_back(generator_action(g, i, q.vertex_order));

  HomomorphismResult result;
  // Involutions hold by construction; verify anyway, then check every
  // finite relator pointwise by composition.
  for (Gen i = 0; i < p.rank(); ++i)
    for (std::size_t v = 0; v < q.degree; ++v)
      if (q.images[i][q.images[i][v]] != v) {
        result.violation = RelatorViolation{
            i, i, v, "generator image is not an involution at vertex index " +
                         std::to_string(v)};
        return result;
      }
  for (Gen i = 0; i < p.rank(); ++i)
    for (Gen j = i + 1; j < p.rank(); ++j) {
      if (!p.related(i, j))
        continue;
      int m = p.exponent_of(i, j);
      for (std::size_t v = 0; v < q.degree; ++v) {
        std::size_t cur = v;
        for (int t = 0; t < m; ++t) {
          cur = q.images[i][cur];
          cur = q.images[j][cur];
        }
        if (cur != v) {
          result.violation = RelatorViolation{
              i, j, v,
              "(a_" + std::to_string(i + 1) + " a_" + std::to_string(j + 1) + ")^" +
                  std::to_string(m) + " moves vertex index " + std::to_string(v)};
          return result;
        }
      }
    }
  result.quotient = std::move(q);
  return result;
}

StemGraph build_stem_graph(const SubgroupGraph& delta2_h, const std::vector<Gen>& cover,
                           const Word& w)
{
  const CoxeterPresentation& p = delta2_h.presentation();
  MembershipResult member = is_member(delta2_h, w);
  if (member.member)
    throw std::runtime_error("build_stem_graph: w lies in H");

  Word reduced = member.reduced;
  if (reduced.empty())
    throw std::runtime_error("build_stem_graph: w reduces to the identity");

  // Copy Delta_2(H), demote everything to input material, attach the stem.
  SubgroupGraph g = delta2_h;
  g.set_stage(Stage::Delta0);
  g.reset_provenance();
  VertexId cur = g.basepoint();
  for (std::size_t k = 0; k < reduced.size(); ++k) {
    VertexId nxt = g.add_vertex(VertexClass::Primary);
    g.add_edge(cur, nxt, reduced[k], Provenance::Primary);
    cur = nxt;
  }
  g.set_terminal(cur);

  BuildOptions options;
  options.cover = cover;
  std::vector<Word> loop_checks; // loop language re-checked by callers
  BuildResult built = build_from_graph(std::move(g), loop_checks, options);

  if (built.delta2.terminal() == built.delta2.basepoint())
    throw std::runtime_error(
        "build_stem_graph: stem endpoint collapsed onto the basepoint");
  return StemGraph{std::move(built.delta2), std::move(built.stats)};
}

SeparationCertificate separate(const CoxeterPresentation& p, const std::vector<Word>& gens,
                               const Word& w,
                               const std::optional<std::vector<Gen>>& cover_opt)
{
  p.require_extra_large();
  SeparabilityReport sep = check_separability_condition(p);
  if (!sep.pass) {
    std::string msg = "separate: presentation fails the Separability Condition:";
    for (auto& v : sep.violations)
      msg += "\n  " + v.message;
    throw std::runtime_error(msg);
  }
  std::vector<Gen> cover = resolve_cover(p, cover_opt, false);
  ReductionReport red = check_reduction_hypothesis(p, cover);
  if (!red.pass)
    throw std::runtime_error("separate: cover fails the Reduction Hypothesis");

  Word reduced = dehn_reduce(p, w);
  if (reduced.empty())
    throw std::runtime_error("separate: w is the identity, which lies in every subgroup");

  BuildOptions options;
  options.cover = cover;
  BuildResult base = build_subgroup_graph(p, gens, options);
  if (is_member(base.delta2, w).member)
    throw std::runtime_error("separate: w lies in H");

  StemGraph stem = build_stem_graph(base.delta2, cover, reduced);
  HomomorphismResult hom = homomorphism(stem.graph);
  if (!hom.quotient)
    throw std::runtime_error("separate: vertex action violates a relator: " +
                             hom.violation->message);

  SeparationCertificate cert;
  cert.quotient = std::move(*hom.quotient);
  cert.w_reduced = reduced;
  cert.base_index = cert.quotient.base_index;
  cert.w_image = cert.quotient.apply(cert.base_index, reduced);
  if (cert.w_image == cert.base_index)
    throw std::runtime_error("separate: image of w fixes the basepoint");
  for (const Word& h : gens) {
    Word hred = dehn_reduce(p, h);
    if (cert.quotient.apply(cert.base_index, hred) != cert.base_index)
      throw std::runtime_error("separate: a subgroup generator moves the basepoint");
    cert.stabilized_generators.push_back(h);
  }
  return cert;
}

SeparationCertificate residual_witness(const CoxeterPresentation& p, const Word& w)
{
  p.require_extra_large();
  SeparabilityReport sep = check_separability_condition(p);
  if (!sep.pass)
    throw std::runtime_error("residual_witness: presentation fails the Separability Condition");

  if (normal_form(p, w).empty())
    throw std::runtime_error("residual_witness: w equals the identity in G");
  Word reduced = dehn_reduce(p, w);

  // Path graph spelling the reduced word; Dehn-reduced paths satisfy the
  // Relator Path Property outright, so 2-completion applies directly.
  SubgroupGraph g(p, Stage::Delta1);
  VertexId cur = g.basepoint();
  for (Gen a : reduced) {
    VertexId nxt = g.add_vertex();
    g.add_edge(cur, nxt, a);
    cur = nxt;
  }
  g.set_terminal(cur);
  two_complete(g);

  HomomorphismResult hom = homomorphism(g);
  if (!hom.quotient)
    throw std::runtime_error("residual_witness: vertex action violates a relator: " +
                             hom.violation->message);

  SeparationCertificate cert;
  cert.quotient = std::move(*hom.quotient);
  cert.w_reduced = reduced;
  cert.base_index = cert.quotient.base_index;
  cert.w_image = cert.quotient.apply(cert.base_index, reduced);
  if (cert.w_image == cert.base_index)
    throw std::runtime_error("residual_witness: w fixes the path basepoint");
  return cert;
}

} // namespace coxsg
