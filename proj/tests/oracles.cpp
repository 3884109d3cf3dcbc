#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "coxsg/rewriting.hpp"

namespace coxsg::oracle {

namespace {

std::vector<Word> tits_neighbors(const CoxeterPresentation& p, const Word& u)
{
  std::vector<Word> out;
  const std::size_t L = u.size();
  for (std::size_t k = 0; k + 1 < L; ++k) {
    if (u[k] == u[k + 1]) {
      Word v(u.begin(), u.begin() + static_cast<long>(k));
      v.insert(v.end(), u.begin() + static_cast<long>(k + 2), u.end());
      out.push_back(std::move(v));
    }
  }
  for (std::size_t k = 0; k + 1 < L; ++k) {
    Gen a = u[k], b = u[k + 1];
    if (a == b || !p.related(a, b))
      continue;
    std::size_t m = static_cast<std::size_t>(p.exponent_of(a, b));
    if (k + m > L)
      continue;
    bool alt = true;
    for (std::size_t t = 0; t < m && alt; ++t)
      if (u[k + t] != (t % 2 == 0 ? a : b))
        alt = false;
    if (!alt)
      continue;
    Word v = u;
    for (std::size_t t = 0; t < m; ++t)
      v[k + t] = (t % 2 == 0 ? b : a);
    out.push_back(std::move(v));
  }
  return out;
}

} // namespace

std::set<Word> TitsOracle::closure(const Word& w) const
{
  std::set<Word> seen{w};
  std::deque<Word> frontier{w};
  while (!frontier.empty()) {
    Word u = frontier.front();
    frontier.pop_front();
    for (Word& v : tits_neighbors(p_, u))
      if (seen.insert(v).second)
        frontier.push_back(std::move(v));
  }
  return seen;
}

Word TitsOracle::normal_form(const Word& w)
{
  auto it = cache_.find(w);
  if (it != cache_.end())
    return it->second;
  std::set<Word> cls = closure(w);
  Word best = *cls.begin();
  for (const Word& u : cls)
    if (shortlex_less(u, best))
      best = u;
  for (const Word& u : cls)
    cache_.emplace(u, best);
  return best;
}

std::vector<Word> words_up_to(std::size_t n, std::size_t maxlen)
{
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (Gen g = 0; g < n; ++g) {
        Word w = out[k];
        w.push_back(g);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

SubgroupGraph naive_fold(SubgroupGraph g, std::mt19937_64& rng)
{
  for (;;) {
    // All genuine identifications available right now (parallel duplicate
    // edges do not move vertices and are cleaned at the end).
    std::vector<std::pair<VertexId, VertexId>> conflicts;
    for (VertexId v : g.live_vertex_list()) {
      std::map<Gen, std::vector<VertexId>> ends;
      for (EdgeId e : g.incident(v)) {
        if (!g.edge_alive(e))
          continue;
        VertexId x = g.endpoint(e, 0), y = g.endpoint(e, 1);
        if (x != v && y != v)
          continue;
        ends[g.edge(e).label].push_back(g.across(e, v));
      }
      for (auto& [lab, list] : ends) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        for (std::size_t k = 1; k < list.size(); ++k)
          conflicts.push_back({list[0], list[k]});
      }
    }
    if (conflicts.empty())
      break;
    std::uniform_int_distribution<std::size_t> pick(0, conflicts.size() - 1);
    auto [a, b] = conflicts[pick(rng)];
    g.identify(a, b);
  }
  g.fold(); // no identifications left; only merges parallel duplicates
  return g;
}

std::set<Word> subgroup_element_forms(const CoxeterPresentation& p,
                                      const std::vector<Word>& gens, int max_factors)
{
  std::vector<Word> factors;
  for (const Word& h : gens) {
    if (h.empty())
      continue;
    factors.push_back(h);
    Word r = reversed(h);
    if (r != h)
      factors.push_back(r);
  }
  TitsOracle oracle(p);
  std::set<Word> forms{Word{}};
  std::set<Word> layer{Word{}};
  for (int step = 0; step < max_factors; ++step) {
    std::set<Word> next;
    for (const Word& base : layer)
      for (const Word& f : factors) {
        Word prod = base;
        prod.insert(prod.end(), f.begin(), f.end());
        // Dehn reduction keeps the element and shrinks the word, so the
        // closure stays shallow; dehn_reduce itself is validated against
        // this oracle in the unit tests.
        Word nf = oracle.normal_form(dehn_reduce(p, prod));
        if (forms.insert(nf).second)
          next.insert(nf);
      }
    if (next.empty())
      break;
    layer = std::move(next);
  }
  return forms;
}

long eccentricity(const SubgroupGraph& g)
{
  std::map<VertexId, std::vector<VertexId>> adj;
  for (EdgeId e : g.live_edge_list()) {
    VertexId u = g.endpoint(e, 0), v = g.endpoint(e, 1);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::map<VertexId, long> dist;
  std::deque<VertexId> q;
  dist[g.basepoint()] = 0;
  q.push_back(g.basepoint());
  long best = 0;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    best = std::max(best, dist[v]);
    for (VertexId w : adj[v])
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  return best;
}

Word random_dehn_reduced_word(const CoxeterPresentation& p, std::mt19937_64& rng,
                              std::size_t target_len)
{
  std::uniform_int_distribution<int> letter(0, static_cast<int>(p.rank()) - 1);
  for (;;) {
    Word w;
    while (w.size() < target_len) {
      Gen g = static_cast<Gen>(letter(rng));
      if (!w.empty() && w.back() == g)
        continue;
      w.push_back(g);
    }
    Word red = dehn_reduce(p, w);
    if (red.size() == target_len)
      return red;
  }
}

namespace {

using surface::SWord;

SWord free_reduce(const SWord& w)
{
  SWord st;
  for (int x : w) {
    if (!st.empty() && st.back() == -x)
      st.pop_back();
    else
      st.push_back(x);
  }
  return st;
}

std::vector<SWord> symmetrized(const surface::SurfacePresentation& sp)
{
  std::vector<SWord> out;
  for (const SWord& base : {sp.relator(), surface::inverse(sp.relator())})
    for (std::size_t r = 0; r < base.size(); ++r) {
      SWord rot;
      for (std::size_t k = 0; k < base.size(); ++k)
        rot.push_back(base[(r + k) % base.size()]);
      out.push_back(std::move(rot));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

bool surface_trivial(const surface::SurfacePresentation& sp, const SWord& w)
{
  std::vector<SWord> sym = symmetrized(sp);
  const std::size_t h = sp.half();
  SWord cur = free_reduce(w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const SWord& r : sym) {
      for (std::size_t start = 0; start + h < cur.size() && !changed; ++start) {
        std::size_t len = 0;
        while (start + len < cur.size() && len < r.size() && cur[start + len] == r[len])
          ++len;
        if (len > h) {
          SWord complement(r.begin() + static_cast<long>(len), r.end());
          SWord repl = surface::inverse(complement);
          SWord next(cur.begin(), cur.begin() + static_cast<long>(start));
          next.insert(next.end(), repl.begin(), repl.end());
          next.insert(next.end(), cur.begin() + static_cast<long>(start + len),
                      cur.end());
          cur = free_reduce(next);
          changed = true;
        }
      }
      if (changed)
        break;
    }
  }
  return cur.empty();
}

bool surface_member(const surface::SurfacePresentation& sp,
                    const std::vector<SWord>& gens, const SWord& w, int max_factors)
{
  std::vector<SWord> factors;
  for (const SWord& h : gens) {
    if (h.empty())
      continue;
    factors.push_back(h);
    factors.push_back(surface::inverse(h));
  }
  SWord winv = surface::inverse(w);
  std::set<SWord> seen{SWord{}};
  std::deque<std::pair<SWord, int>> queue;
  queue.push_back({SWord{}, 0});
  while (!queue.empty()) {
    auto [prod, depth] = queue.front();
    queue.pop_front();
    SWord test = prod;
    test.insert(test.end(), winv.begin(), winv.end());
    if (surface_trivial(sp, test))
      return true;
    if (depth == max_factors)
      continue;
    for (const SWord& f : factors) {
      SWord next = prod;
      next.insert(next.end(), f.begin(), f.end());
      next = free_reduce(next);
      if (seen.insert(next).second)
        queue.push_back({next, depth + 1});
    }
  }
  return false;
}

std::vector<surface::SWord> surface_words_up_to(std::size_t n, std::size_t maxlen)
{
  std::vector<SWord> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (std::size_t g = 1; g <= n; ++g)
        for (int sign : {1, -1}) {
          SWord w = out[k];
          int letter = sign * static_cast<int>(g);
          if (!w.empty() && w.back() == -letter)
            continue;
          w.push_back(letter);
          out.push_back(std::move(w));
        }
    begin = end;
  }
  return out;
}

} // namespace coxsg::oracle

namespace coxsg::oracle {

SurfaceNfOracle::SurfaceNfOracle(const surface::SurfacePresentation& sp)
    : half_(sp.half())
{
  for (const SWord& r : symmetrized(sp)) {
    SWord head(r.begin(), r.begin() + static_cast<long>(half_));
    SWord tail(r.begin() + static_cast<long>(half_), r.end());
    auto [it, inserted] =
        flips_.emplace(std::make_pair(r[0], r[1]),
                       std::make_pair(head, surface::inverse(tail)));
    if (!inserted && it->second.first != head)
      throw std::logic_error("surface half-relators not determined by two letters");
  }
}

std::set<surface::SWord> SurfaceNfOracle::closure(const SWord& w) const
{
  std::set<SWord> seen{free_reduce(w)};
  std::deque<SWord> frontier{*seen.begin()};
  while (!frontier.empty()) {
    SWord u = frontier.front();
    frontier.pop_front();
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
      if (u[k] == -u[k + 1]) {
        SWord v(u.begin(), u.begin() + static_cast<long>(k));
        v.insert(v.end(), u.begin() + static_cast<long>(k + 2), u.end());
        if (seen.insert(v).second)
          frontier.push_back(std::move(v));
        continue;
      }
      auto it = flips_.find({u[k], u[k + 1]});
      if (it == flips_.end() || k + half_ > u.size())
        continue;
      const auto& [head, repl] = it->second;
      if (!std::equal(head.begin(), head.end(), u.begin() + static_cast<long>(k)))
        continue;
      SWord v(u.begin(), u.begin() + static_cast<long>(k));
      v.insert(v.end(), repl.begin(), repl.end());
      v.insert(v.end(), u.begin() + static_cast<long>(k + half_), u.end());
      if (seen.insert(v).second)
        frontier.push_back(std::move(v));
    }
  }
  return seen;
}

surface::SWord SurfaceNfOracle::normal_form(const SWord& w) const
{
  std::set<SWord> cls = closure(w);
  SWord best = *cls.begin();
  for (const SWord& u : cls) {
    if (u.size() < best.size() || (u.size() == best.size() && u < best))
      best = u;
  }
  return best;
}

std::set<surface::SWord> surface_element_forms(const surface::SurfacePresentation& sp,
                                               const std::vector<SWord>& gens,
                                               int max_factors)
{
  SurfaceNfOracle oracle(sp);
  std::vector<SWord> factors;
  for (const SWord& h : gens) {
    if (h.empty())
      continue;
    factors.push_back(h);
    factors.push_back(surface::inverse(h));
  }
  std::set<SWord> forms{SWord{}};
  std::set<SWord> layer{SWord{}};
  for (int step = 0; step < max_factors; ++step) {
    std::set<SWord> next;
    for (const SWord& base : layer)
      for (const SWord& f : factors) {
        SWord prod = base;
        prod.insert(prod.end(), f.begin(), f.end());
        SWord nf = oracle.normal_form(surface::dehn_reduce(sp, prod));
        if (forms.insert(nf).second)
          next.insert(nf);
      }
    if (next.empty())
      break;
    layer = std::move(next);
  }
  return forms;
}

} // namespace coxsg::oracle
