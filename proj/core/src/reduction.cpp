#include "coxsg/reduction.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace coxsg {

namespace {

std::size_t walk_cap(int m) { return static_cast<std::size_t>(2 * m) + 2; }

bool walk_on_cycle(const AlternatingWalk& w, int m)
{
  if (!w.closed)
    return false;
  std::size_t k = w.half_period();
  return k > 0 && static_cast<std::size_t>(m) % k == 0;
}

std::vector<std::pair<Gen, Gen>> related_pairs(const CoxeterPresentation& p)
{
  std::vector<std::pair<Gen, Gen>> out;
  for (Gen i = 0; i < p.rank(); ++i)
    for (Gen j = i + 1; j < p.rank(); ++j)
      if (p.related(i, j))
        out.push_back({i, j});
  return out;
}

} // namespace

PerimeterCount count_gamma(const SubgroupGraph& g, const std::vector<Gen>& cover)
{
  g.require_trim("count_gamma");
  const CoxeterPresentation& p = g.presentation();
  std::uint64_t in_c = 0;
  for (Gen c : cover)
    in_c |= 1ull << c;

  PerimeterCount pc;
  pc.edge_count = static_cast<long>(g.edge_count());

  std::vector<EdgeId> edges = g.live_edge_list();
  std::unordered_set<std::uint64_t> done; // (edge, pair) already settled
  for (auto [i, j] : related_pairs(p)) {
    int m = p.exponent_of(i, j);
    std::uint64_t pair_key = (static_cast<std::uint64_t>(i) << 8 | j) << 32;
    for (EdgeId e : edges) {
      Gen l = g.edge(e).label;
      if (l != i && l != j)
        continue;
      if (done.count(pair_key | e))
        continue;
      AlternatingWalk w = alternating_walk(g, e, i, j, walk_cap(m));
      bool missing = !walk_on_cycle(w, m);
      for (EdgeId we : w.edges) {
        if (done.insert(pair_key | we).second && missing &&
            (in_c >> g.edge(we).label & 1))
          ++pc.missing_total;
      }
    }
  }
  pc.gamma = 4 * pc.missing_total + pc.edge_count;
  return pc;
}

namespace {

// Shared scan: the first violating walk in deterministic order, reported
// either as a near-relator path (for Step II) or as an RPP witness.
std::optional<NearRelatorPath> scan_for_near_path(const SubgroupGraph& g)
{
  const CoxeterPresentation& p = g.presentation();
  auto pairs = related_pairs(p);
  std::unordered_set<std::uint64_t> seen;

  for (VertexId v : g.live_vertex_list()) {
    for (Gen a = 0; a < p.rank(); ++a) {
      EdgeId e = g.edge_at(v, a);
      if (e == kNoEdge)
        continue;
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        auto [i, j] = pairs[pi];
        if (a != i && a != j)
          continue;
        std::uint64_t key = (static_cast<std::uint64_t>(pi) << 32) | e;
        if (!seen.insert(key).second)
          continue;
        int m = p.exponent_of(i, j);
        AlternatingWalk w = alternating_walk(g, e, i, j, walk_cap(m));
        for (EdgeId we : w.edges)
          seen.insert((static_cast<std::uint64_t>(pi) << 32) | we);

        const std::size_t full = static_cast<std::size_t>(2 * m);
        if (w.closed) {
          std::size_t k = w.half_period();
          if (static_cast<std::size_t>(m) % k == 0)
            continue;
          // Reading the relator around the loop lands a fixed offset away;
          // identifying exposes the completion.
          NearRelatorPath np;
          np.i = i;
          np.j = j;
          np.missing = 0;
          np.from_bad_loop = true;
          np.ident_a = w.vertices[0];
          np.ident_b = w.vertices[full % w.edges.size()];
          return np;
        }
        std::size_t len = w.length();
        if (len >= full) {
          NearRelatorPath np;
          np.i = i;
          np.j = j;
          np.missing = 0;
          np.edges.assign(w.edges.begin(), w.edges.begin() + static_cast<long>(full));
          np.vertices.assign(w.vertices.begin(),
                             w.vertices.begin() + static_cast<long>(full) + 1);
          np.ident_a = np.vertices.front();
          np.ident_b = np.vertices.back();
          return np;
        }
        if (len + 3 >= full && len >= 2) {
          NearRelatorPath np;
          np.i = i;
          np.j = j;
          np.missing = static_cast<int>(full - len);
          np.edges = w.edges;
          np.vertices = w.vertices;
          return np;
        }
      }
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<NearRelatorPath> find_near_relator_path(const SubgroupGraph& g)
{
  g.require_trim("find_near_relator_path");
  return scan_for_near_path(g);
}

void complete_relator_cycle(SubgroupGraph& g, const NearRelatorPath& path, Provenance prov)
{
  const CoxeterPresentation& p = g.presentation();
  if (!p.related(path.i, path.j))
    throw std::runtime_error("complete_relator_cycle: unrelated pair");

  if (path.missing == 0) {
    VertexId merged = g.identify(path.ident_a, path.ident_b);
    g.fold_from({merged});
    return;
  }

  Gen last_label = g.edge(path.edges.back()).label;
  VertexId front = path.vertices.front();
  VertexId back = path.vertices.back();
  Gen other = (last_label == path.i) ? path.j : path.i;
  VertexClass cls = (prov == Provenance::Primary) ? VertexClass::Primary
                                                  : VertexClass::Secondary;
  VertexId cur = back;
  for (int t = 0; t < path.missing; ++t) {
    Gen lab = (t % 2 == 0) ? other : last_label;
    VertexId nxt = (t + 1 == path.missing) ? front : g.add_vertex(cls);
    g.add_edge(cur, nxt, lab, prov);
    cur = nxt;
  }
}

std::optional<NearRelatorPath> relator_path_property_violation(const SubgroupGraph& g)
{
  g.require_trim("relator_path_property");
  return scan_for_near_path(g);
}

bool has_relator_path_property(const SubgroupGraph& g)
{
  return !relator_path_property_violation(g).has_value();
}

Phase1Stats phase1(SubgroupGraph& g, const std::vector<Gen>& cover,
                   const Phase1Options& options)
{
  const CoxeterPresentation& p = g.presentation();
  p.require_extra_large();
  if (!options.unchecked) {
    ReductionReport rep = check_reduction_hypothesis(p, cover);
    if (!rep.pass) {
      std::string msg = "phase1: cover fails the Reduction Hypothesis:";
      for (const auto& v : rep.violations)
        msg += "\n  " + v.message;
      throw std::runtime_error(msg);
    }
  }

  Phase1Stats stats;
  stats.initial_edges = static_cast<long>(g.edge_count());
  const long edge_bound = p.k_G() * stats.initial_edges;

  auto log = [&](const std::string& s) {
    if (options.trace)
      options.trace(s);
  };

  bool was_trim = g.is_trim();
  g.fold();
  if (!was_trim) {
    ++stats.fold_steps;
    log("fold: initial graph folded to trim");
  }

  PerimeterCount pc = count_gamma(g, cover);
  stats.gamma_initial = pc.gamma;
  stats.max_edges = pc.edge_count;
  if (!options.unchecked) {
    if (pc.gamma > 5 * edge_bound)
      throw std::runtime_error("phase1: initial count exceeds 5 * k_G * s_H");
  }

  long prev_gamma = pc.gamma;
  for (;;) {
    if (options.budget && stats.completion_steps >= options.budget) {
      if (options.unchecked)
        throw std::runtime_error("phase1: step budget exhausted (unchecked run)");
    }
    std::optional<NearRelatorPath> np = find_near_relator_path(g);
    if (!np)
      break;
    ++stats.completion_steps;
    complete_relator_cycle(g, *np, Provenance::Primary);
    std::vector<VertexId> seeds;
    if (np->missing == 0) {
      seeds.push_back(g.find(np->ident_a));
    } else {
      seeds.push_back(g.find(np->vertices.front()));
      seeds.push_back(g.find(np->vertices.back()));
    }
    bool trim_before = g.is_trim();
    g.fold_from(seeds);
    if (!trim_before)
      ++stats.fold_steps;

    stats.max_edges = std::max(stats.max_edges, static_cast<long>(g.edge_count()));
    PerimeterCount now = count_gamma(g, cover);
    if (options.trace) {
      std::ostringstream os;
      os << "step " << stats.completion_steps << ": completed (" << int(np->i) + 1
         << "," << int(np->j) + 1 << ") path, missing " << np->missing << ", gamma "
         << prev_gamma << " -> " << now.gamma << ", edges " << now.edge_count;
      log(os.str());
    }
    if (!options.unchecked) {
      if (now.gamma >= prev_gamma)
        throw std::runtime_error(
            "phase1: count failed to decrease (gamma " + std::to_string(prev_gamma) +
            " -> " + std::to_string(now.gamma) + "); hypothesis or implementation violated");
      if (stats.initial_edges > 0 && now.edge_count > edge_bound)
        throw std::runtime_error("phase1: edge count " + std::to_string(now.edge_count) +
                                 " exceeds k_G * s_H = " + std::to_string(edge_bound));
    }
    prev_gamma = now.gamma;
  }
  stats.gamma_final = prev_gamma;
  g.set_stage(Stage::Delta1);
  return stats;
}

} // namespace coxsg
