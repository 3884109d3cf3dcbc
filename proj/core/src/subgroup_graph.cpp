#include "coxsg/subgroup_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace coxsg {

SubgroupGraph::SubgroupGraph(const CoxeterPresentation& p, Stage stage)
    : pres_(&p), stage_(stage)
{
  base_ = add_vertex(VertexClass::Primary);
}

VertexId SubgroupGraph::add_vertex(VertexClass cls)
{
  VertexId v = static_cast<VertexId>(parent_.size());
  parent_.push_back(v);
  adj_.emplace_back();
  cls_.push_back(cls);
  ++live_vertices_;
  return v;
}

EdgeId SubgroupGraph::add_edge(VertexId u, VertexId v, Gen label, Provenance prov)
{
  if (label >= pres_->rank())
    throw std::runtime_error("edge label out of range");
  u = find(u);
  v = find(v);
  EdgeId e = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v, label, prov, true});
  adj_[u].push_back(e);
  if (v != u)
    adj_[v].push_back(e);
  ++live_edges_;
  return e;
}

VertexId SubgroupGraph::find(VertexId v) const
{
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

VertexId SubgroupGraph::across(EdgeId e, VertexId v) const
{
  const GraphEdge& ed = edges_[e];
  VertexId a = find(ed.u), b = find(ed.v);
  v = find(v);
  if (a == v)
    return b;
  if (b == v)
    return a;
  throw std::runtime_error("across: vertex not an endpoint");
}

EdgeId SubgroupGraph::edge_at(VertexId v, Gen g) const
{
  v = find(v);
  EdgeId best = kNoEdge;
  for (EdgeId e : adj_[v])
    if (edges_[e].alive && edges_[e].label == g && (best == kNoEdge || e < best))
      best = e;
  return best;
}

std::size_t SubgroupGraph::degree(VertexId v) const
{
  v = find(v);
  std::size_t d = 0;
  for (EdgeId e : adj_[v])
    if (edges_[e].alive)
      ++d;
  return d;
}

void SubgroupGraph::merge_into(VertexId survivor, VertexId absorbed)
{
  parent_[absorbed] = survivor;
  auto& into = adj_[survivor];
  auto& from = adj_[absorbed];
  into.insert(into.end(), from.begin(), from.end());
  from.clear();
  from.shrink_to_fit();
  if (cls_[absorbed] < cls_[survivor])
    cls_[survivor] = cls_[absorbed];
  --live_vertices_;
}

VertexId SubgroupGraph::identify(VertexId u, VertexId v)
{
  u = find(u);
  v = find(v);
  if (u == v)
    return u;
  VertexId surv = u, gone = v;
  if (adj_[gone].size() > adj_[surv].size() ||
      (adj_[gone].size() == adj_[surv].size() && gone < surv))
    std::swap(surv, gone);
  merge_into(surv, gone);
  return surv;
}

void SubgroupGraph::fold()
{
  std::vector<VertexId> seeds;
  seeds.reserve(live_vertices_);
  for (VertexId v = 0; v < parent_.size(); ++v)
    if (find(v) == v)
      seeds.push_back(v);
  fold_from(std::move(seeds));
}

void SubgroupGraph::fold_from(std::vector<VertexId> seeds)
{
  std::deque<VertexId> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    VertexId v = find(work.front());
    work.pop_front();

    // Compact the incidence list: drop dead edges and duplicates from
    // merges, then look for a same-label conflict.
    auto& inc = adj_[v];
    std::sort(inc.begin(), inc.end());
    inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
    bool changed = true;
    while (changed) {
      changed = false;
      if (find(v) != v)
        break; // v was absorbed while processing
      auto& list = adj_[v];
      list.erase(std::remove_if(list.begin(), list.end(),
                                [&](EdgeId e) {
                                  if (!edges_[e].alive)
                                    return true;
                                  VertexId a = find(edges_[e].u), b = find(edges_[e].v);
                                  return a != v && b != v;
                                }),
                 list.end());
      for (std::size_t x = 0; x < list.size() && !changed; ++x)
        for (std::size_t y = x + 1; y < list.size(); ++y) {
          EdgeId e1 = list[x], e2 = list[y];
          if (e1 == e2 || edges_[e1].label != edges_[e2].label)
            continue;
          VertexId a = across(e1, v), b = across(e2, v);
          if (a == b) {
            // Parallel edges: keep the older one.
            EdgeId keep = std::min(e1, e2), drop = std::max(e1, e2);
            if (edges_[drop].prov < edges_[keep].prov)
              edges_[keep].prov = edges_[drop].prov;
            edges_[drop].alive = false;
            --live_edges_;
          } else {
            VertexId r = identify(a, b);
            work.push_back(r);
          }
          changed = true;
          break;
        }
    }
    VertexId r = find(v);
    if (r != v)
      work.push_back(r);
  }
}

bool SubgroupGraph::is_trim() const
{
  for (VertexId v = 0; v < parent_.size(); ++v) {
    if (find(v) != v)
      continue;
    std::uint64_t seen = 0;
    for (EdgeId e : adj_[v]) {
      if (!edges_[e].alive)
        continue;
      VertexId a = find(edges_[e].u), b = find(edges_[e].v);
      if (a != v && b != v)
        continue;
      std::uint64_t bit = 1ull << edges_[e].label;
      if (seen & bit)
        return false;
      seen |= bit;
    }
  }
  return true;
}

void SubgroupGraph::require_trim(const std::string& where) const
{
  if (!is_trim())
    throw std::runtime_error(where + ": graph is not trim");
}

void SubgroupGraph::reset_provenance()
{
  for (auto& e : edges_)
    e.prov = Provenance::Primary;
  for (auto& c : cls_)
    c = VertexClass::Primary;
}

std::optional<VertexId> SubgroupGraph::trace(VertexId v, const Word& w) const
{
  VertexId cur = find(v);
  for (Gen g : w) {
    EdgeId e = edge_at(cur, g);
    if (e == kNoEdge)
      return std::nullopt;
    cur = across(e, cur);
  }
  return cur;
}

bool SubgroupGraph::reads_closed_loop(const Word& w) const
{
  auto end = trace(basepoint(), w);
  return end && *end == basepoint();
}

std::vector<VertexId> SubgroupGraph::live_vertex_list() const
{
  std::vector<VertexId> out;
  out.reserve(live_vertices_);
  for (VertexId v = 0; v < parent_.size(); ++v)
    if (find(v) == v)
      out.push_back(v);
  return out;
}

std::vector<EdgeId> SubgroupGraph::live_edge_list() const
{
  std::vector<EdgeId> out;
  out.reserve(live_edges_);
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].alive)
      out.push_back(e);
  return out;
}

std::string SubgroupGraph::canonical_key() const
{
  std::map<VertexId, std::size_t> order;
  std::deque<VertexId> queue;
  order[basepoint()] = 0;
  queue.push_back(basepoint());
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (Gen g = 0; g < pres_->rank(); ++g) {
      EdgeId e = edge_at(v, g);
      if (e == kNoEdge)
        continue;
      VertexId w = across(e, v);
      if (!order.count(w)) {
        order[w] = order.size();
        queue.push_back(w);
      }
    }
  }
  std::ostringstream out;
  out << "V" << vertex_count() << ";B0;T";
  if (terminal() != kNoVertex && order.count(terminal()))
    out << order[terminal()];
  out << ";";
  std::vector<std::string> lines;
  for (EdgeId e : live_edge_list()) {
    VertexId a = endpoint(e, 0), b = endpoint(e, 1);
    if (!order.count(a) || !order.count(b))
      continue; // unreachable from the basepoint; connected graphs have none
    std::size_t x = order[a], y = order[b];
    if (x > y)
      std::swap(x, y);
    std::ostringstream ln;
    ln << x << "-" << y << ":" << static_cast<int>(edge(e).label) << ":"
       << static_cast<int>(edge(e).prov);
    lines.push_back(ln.str());
  }
  std::sort(lines.begin(), lines.end());
  for (auto& l : lines)
    out << l << ";";
  std::vector<std::pair<std::size_t, int>> classes;
  for (auto& [v, idx] : order)
    classes.push_back({idx, static_cast<int>(vertex_class(v))});
  std::sort(classes.begin(), classes.end());
  out << "C";
  for (auto& [idx, c] : classes)
    out << c;
  return out.str();
}

SubgroupGraph bouquet(const CoxeterPresentation& p, const std::vector<Word>& gens)
{
  SubgroupGraph g(p, Stage::Delta0);
  VertexId base = g.basepoint();
  for (const Word& h : gens) {
    if (h.empty())
      continue; // trivial generator contributes nothing
    VertexId cur = base;
    for (std::size_t k = 0; k < h.size(); ++k) {
      VertexId nxt = (k + 1 == h.size()) ? base : g.add_vertex();
      g.add_edge(cur, nxt, h[k]);
      cur = nxt;
    }
  }
  return g;
}

AlternatingWalk alternating_walk(const SubgroupGraph& g, EdgeId e, Gen i, Gen j,
                                 std::size_t cap)
{
  if (!g.edge_alive(e))
    throw std::runtime_error("alternating_walk: dead edge");
  Gen a = g.edge(e).label;
  if (a != i && a != j)
    throw std::runtime_error("alternating_walk: edge label not in the pair");
  Gen b = (a == i) ? j : i;

  AlternatingWalk walk;
  VertexId u = g.endpoint(e, 0);
  VertexId v = g.endpoint(e, 1);

  // Traverse forward from (u, a): e first, then alternate.
  std::vector<EdgeId> fwd;
  std::vector<VertexId> fvert;
  VertexId cur = v;
  Gen next = b;
  fwd.push_back(e);
  fvert.push_back(u);
  fvert.push_back(v);
  bool closed = false;
  bool trunc = false;
  while (true) {
    if (cur == u && next == a) {
      closed = true;
      break;
    }
    if (cap && fwd.size() >= cap + 1) {
      trunc = true;
      break;
    }
    EdgeId nx = g.edge_at(cur, next);
    if (nx == kNoEdge)
      break;
    fwd.push_back(nx);
    cur = g.across(nx, cur);
    fvert.push_back(cur);
    next = (next == i) ? j : i;
  }

  if (closed) {
    walk.closed = true;
    walk.edges = std::move(fwd);
    fvert.pop_back(); // the repeat of u
    walk.vertices = std::move(fvert);
    return walk;
  }

  // Open: extend backward from (u, expecting b into u).
  std::vector<EdgeId> back;
  std::vector<VertexId> bvert;
  cur = u;
  Gen prevlab = b;
  while (true) {
    if (cap && back.size() >= cap + 1) {
      trunc = true;
      break;
    }
    EdgeId pv = g.edge_at(cur, prevlab);
    if (pv == kNoEdge)
      break;
    back.push_back(pv);
    cur = g.across(pv, cur);
    bvert.push_back(cur);
    prevlab = (prevlab == i) ? j : i;
  }
  walk.closed = false;
  walk.truncated = trunc;
  walk.edges.assign(back.rbegin(), back.rend());
  walk.edges.insert(walk.edges.end(), fwd.begin(), fwd.end());
  walk.vertices.assign(bvert.rbegin(), bvert.rend());
  walk.vertices.insert(walk.vertices.end(), fvert.begin(), fvert.end());
  return walk;
}

bool on_relator_cycle(const SubgroupGraph& g, EdgeId e, Gen i, Gen j)
{
  const CoxeterPresentation& p = g.presentation();
  if (!p.related(i, j))
    throw std::runtime_error("on_relator_cycle: labels are unrelated");
  int m = p.exponent_of(i, j);
  AlternatingWalk w = alternating_walk(g, e, i, j, static_cast<std::size_t>(2 * m) + 2);
  if (!w.closed)
    return false;
  std::size_t k = w.half_period();
  return k > 0 && static_cast<std::size_t>(m) % k == 0;
}

} // namespace coxsg
