#include "coxsg/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace coxsg {

MembershipResult is_member(const SubgroupGraph& delta2, const Word& w)
{
  MembershipResult r;
  r.reduced = dehn_reduce(delta2.presentation(), w);
  VertexId cur = delta2.basepoint();
  r.trace.push_back(cur);
  for (std::size_t k = 0; k < r.reduced.size(); ++k) {
    EdgeId e = delta2.edge_at(cur, r.reduced[k]);
    if (e == kNoEdge) {
      r.fell_off = true;
      r.fell_off_at = k + 1;
      r.member = false;
      return r;
    }
    cur = delta2.across(e, cur);
    r.trace.push_back(cur);
  }
  r.member = (cur == delta2.basepoint());
  return r;
}

std::vector<long> distances_from_basepoint(const SubgroupGraph& g)
{
  std::vector<long> dist(g.vertex_slots(), -1);
  std::deque<VertexId> q;
  VertexId base = g.basepoint();
  dist[base] = 0;
  q.push_back(base);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (EdgeId e : g.incident(v)) {
      if (!g.edge_alive(e))
        continue;
      VertexId w = g.across(e, v);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

long quasiconvexity_constant(const SubgroupGraph& delta2)
{
  std::vector<long> d = distances_from_basepoint(delta2);
  long best = 0;
  for (VertexId v : delta2.live_vertex_list())
    best = std::max(best, d[v]);
  return best;
}

FullnessReport is_finite_index(const SubgroupGraph& delta2)
{
  const CoxeterPresentation& p = delta2.presentation();
  FullnessReport rep;
  rep.vertex_count = delta2.vertex_count();
  for (VertexId v : delta2.live_vertex_list())
    for (Gen g = 0; g < p.rank(); ++g)
      if (delta2.edge_at(v, g) == kNoEdge) {
        rep.full = false;
        rep.missing_vertex = v;
        rep.missing_label = g;
        return rep;
      }
  rep.full = true;
  return rep;
}

Word least_path_label(const SubgroupGraph& g, VertexId target)
{
  target = g.find(target);
  VertexId base = g.basepoint();
  // Grow shortlex-least labels outward; processing vertices in shortlex
  // order of their best label makes the first assignment final, since
  // extending words preserves strict shortlex order.
  auto cmp = [](const Word& a, const Word& b) { return shortlex_less(a, b); };
  std::map<Word, VertexId, decltype(cmp)> queue(cmp);
  std::vector<char> done(g.vertex_slots(), 0);
  queue.emplace(Word{}, base);
  while (!queue.empty()) {
    auto [label, v] = *queue.begin();
    queue.erase(queue.begin());
    if (done[v])
      continue;
    done[v] = 1;
    if (v == target)
      return label;
    for (Gen a = 0; a < g.presentation().rank(); ++a) {
      EdgeId e = g.edge_at(v, a);
      if (e == kNoEdge)
        continue;
      VertexId w = g.across(e, v);
      if (done[w])
        continue;
      Word next = label;
      next.push_back(a);
      queue.emplace(std::move(next), w);
    }
  }
  throw std::runtime_error("least_path_label: target not reachable from basepoint");
}

namespace {

bool witness_powers_check(const SubgroupGraph& delta2, const Word& z)
{
  const CoxeterPresentation& p = delta2.presentation();
  Word power;
  for (int n = 1; n <= 3; ++n) {
    power.insert(power.end(), z.begin(), z.end());
    if (!is_shortlex_normal(p, power))
      return false;
    if (is_member(delta2, power).member)
      return false;
  }
  return true;
}

} // namespace

Word infinite_index_witness(const SubgroupGraph& delta2)
{
  const CoxeterPresentation& p = delta2.presentation();
  if (is_finite_index(delta2).full)
    throw std::runtime_error("infinite_index_witness: graph is full");

  // z = w a_l a_r a_s for a shortlex-least path label w to a vertex
  // missing a_l, with a_r off a_l and the last letter of w, and a_s off
  // a_r and the first letter of w a_l.  Letter collisions across power
  // junctions can still expose a flippable half-relator run, so candidates
  // are tried in deterministic order and each must pass the power checks
  // (z, z^2, z^3 normal and outside H) before being returned.
  for (VertexId v : delta2.live_vertex_list()) {
    for (Gen l = 0; l < p.rank(); ++l) {
      if (delta2.edge_at(v, l) != kNoEdge)
        continue;
      Word w = least_path_label(delta2, v);
      Gen last = w.empty() ? l : w.back();
      Gen first = w.empty() ? l : w.front();
      for (Gen r = 0; r < p.rank(); ++r) {
        if (r == l || r == last)
          continue;
        for (Gen s = 0; s < p.rank(); ++s) {
          if (s == r || s == first)
            continue;
          Word z = w;
          z.push_back(l);
          z.push_back(r);
          z.push_back(s);
          if (witness_powers_check(delta2, z))
            return z;
        }
      }
    }
  }
  throw std::runtime_error(
      "infinite_index_witness: no admissible witness passed the power checks");
}

SubgroupGraph intersection_acceptor(const SubgroupGraph& delta2_h,
                                    const SubgroupGraph& delta2_k)
{
  const CoxeterPresentation& p = delta2_h.presentation();
  const CoxeterPresentation& q = delta2_k.presentation();
  if (p.rank() != q.rank())
    throw std::runtime_error("intersection_acceptor: presentations differ");
  for (Gen i = 0; i < p.rank(); ++i)
    for (Gen j = i + 1; j < p.rank(); ++j)
      if (p.exponent(i, j) != q.exponent(i, j))
        throw std::runtime_error("intersection_acceptor: presentations differ");

  SubgroupGraph prod(p, Stage::Delta2);
  std::map<std::pair<VertexId, VertexId>, VertexId> ids;
  std::set<std::tuple<VertexId, VertexId, Gen>> crossings;
  std::deque<std::pair<VertexId, VertexId>> queue;
  auto start = std::make_pair(delta2_h.basepoint(), delta2_k.basepoint());
  ids[start] = prod.basepoint();
  queue.push_back(start);
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    VertexId from = ids[{a, b}];
    for (Gen g = 0; g < p.rank(); ++g) {
      EdgeId ea = delta2_h.edge_at(a, g);
      EdgeId eb = delta2_k.edge_at(b, g);
      if (ea == kNoEdge || eb == kNoEdge)
        continue;
      auto to = std::make_pair(delta2_h.across(ea, a), delta2_k.across(eb, b));
      auto it = ids.find(to);
      if (it == ids.end()) {
        VertexId nv = prod.add_vertex();
        it = ids.emplace(to, nv).first;
        queue.push_back(to);
      }
      VertexId tv = it->second;
      crossings.insert({std::min(from, tv), std::max(from, tv), g});
    }
  }
  for (auto& [u, v, g] : crossings)
    prod.add_edge(u, v, g);
  return prod;
}

AnalysisReport analyze(const SubgroupGraph& delta2)
{
  AnalysisReport rep;
  FullnessReport f = is_finite_index(delta2);
  rep.full = f.full;
  rep.vertex_count = delta2.vertex_count();
  rep.edge_count = delta2.edge_count();
  rep.diameter = quasiconvexity_constant(delta2);
  if (!f.full)
    rep.witness = infinite_index_witness(delta2);
  return rep;
}

} // namespace coxsg
