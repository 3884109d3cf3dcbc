#include <doctest.h>

#include <random>
#include <set>

#include "coxsg/subgroup_graph.hpp"
#include "oracles.hpp"

using namespace coxsg;

namespace {

CoxeterPresentation g4()
{
  CoxeterPresentation p(3);
  p.set_exponent(0, 1, 4);
  p.set_exponent(0, 2, 4);
  p.set_exponent(1, 2, 4);
  return p;
}

// Folded graph of the even subgroup <a1a2, a1a3>: both vertices carry all
// three labels.
SubgroupGraph even_subgroup_graph(const CoxeterPresentation& p)
{
  SubgroupGraph g = bouquet(p, {{0, 1}, {0, 2}});
  g.fold();
  return g;
}

} // namespace

TEST_CASE("bouquet shapes")
{
  auto p = g4();
  SubgroupGraph one = bouquet(p, {{0, 1}});
  CHECK(one.vertex_count() == 2);
  CHECK(one.edge_count() == 2);

  SubgroupGraph two = bouquet(p, {{0, 1}, {0, 2}});
  CHECK(two.vertex_count() == 3);
  CHECK(two.edge_count() == 4);

  SubgroupGraph none = bouquet(p, {});
  CHECK(none.vertex_count() == 1);
  CHECK(none.edge_count() == 0);

  // Empty generators are dropped.
  SubgroupGraph dropped = bouquet(p, {{}, {0}});
  CHECK(dropped.edge_count() == 1);

  CHECK_THROWS(bouquet(p, {{9}}));
}

TEST_CASE("bouquet edge count is the total generator length")
{
  auto p = g4();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Word> gens;
    std::size_t total = 0;
    std::uniform_int_distribution<int> count(1, 4), len(1, 7), letter(0, 2);
    int m = count(rng);
    for (int i = 0; i < m; ++i) {
      Word w;
      int l = len(rng);
      for (int k = 0; k < l; ++k)
        w.push_back(static_cast<Gen>(letter(rng)));
      total += w.size();
      gens.push_back(std::move(w));
    }
    CHECK(bouquet(p, gens).edge_count() == total);
  }
}

TEST_CASE("folding the even subgroup bouquet")
{
  auto p = g4();
  SubgroupGraph g = even_subgroup_graph(p);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 3);
  CHECK(g.is_trim());
  VertexId o = g.basepoint();
  for (Gen a = 0; a < 3; ++a) {
    EdgeId e = g.edge_at(o, a);
    REQUIRE(e != kNoEdge);
    CHECK(g.across(e, o) != o);
  }
}

TEST_CASE("fold is idempotent and keeps duplicate loops single")
{
  auto p = g4();
  SubgroupGraph g = bouquet(p, {{0, 1}, {0, 1}});
  g.fold();
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 2);
  std::string key = g.canonical_key();
  g.fold();
  CHECK(g.canonical_key() == key);
}

TEST_CASE("fold is confluent under random identification orders")
{
  auto p = g4();
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> count(1, 3), len(1, 6), letter(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Word> gens;
    int m = count(rng);
    for (int i = 0; i < m; ++i) {
      Word w;
      int l = len(rng);
      for (int k = 0; k < l; ++k)
        w.push_back(static_cast<Gen>(letter(rng)));
      gens.push_back(std::move(w));
    }
    SubgroupGraph base = bouquet(p, gens);
    SubgroupGraph deterministic = base;
    deterministic.fold();
    std::string expect = deterministic.canonical_key();
    for (int run = 0; run < 3; ++run) {
      SubgroupGraph shuffled = oracle::naive_fold(base, rng);
      CHECK(shuffled.canonical_key() == expect);
    }
  }
}

namespace {

// Nondeterministic readability: on non-trim graphs a word is readable when
// some choice of same-labeled edges closes up at the basepoint.
bool reads_closed_nondet(const SubgroupGraph& g, const Word& w)
{
  std::set<VertexId> cur{g.basepoint()};
  for (Gen a : w) {
    std::set<VertexId> nxt;
    for (VertexId v : cur)
      for (EdgeId e : g.incident(v)) {
        if (!g.edge_alive(e) || g.edge(e).label != a)
          continue;
        VertexId x = g.endpoint(e, 0), y = g.endpoint(e, 1);
        if (x != v && y != v)
          continue;
        nxt.insert(g.across(e, v));
      }
    cur = std::move(nxt);
    if (cur.empty())
      return false;
  }
  return cur.count(g.basepoint()) > 0;
}

} // namespace

TEST_CASE("folding preserves the loop language")
{
  auto p = g4();
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> len(1, 6), letter(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 2; ++i) {
      Word w;
      int l = len(rng);
      for (int k = 0; k < l; ++k)
        w.push_back(static_cast<Gen>(letter(rng)));
      gens.push_back(std::move(w));
    }
    SubgroupGraph g = bouquet(p, gens);
    for (auto& h : gens)
      CHECK(reads_closed_nondet(g, h));
    g.fold();
    for (auto& h : gens) {
      CHECK(g.reads_closed_loop(h));
      CHECK(reads_closed_nondet(g, h));
    }
  }
}

TEST_CASE("alternating walks")
{
  auto p = g4();

  SubgroupGraph cyc = bouquet(p, {{0, 1}});
  cyc.fold();
  EdgeId e = cyc.edge_at(cyc.basepoint(), 0);
  AlternatingWalk w = alternating_walk(cyc, e, 0, 1);
  CHECK(w.closed);
  CHECK(w.length() == 2);
  CHECK(w.half_period() == 1);

  // A single a1-edge with no a2 anywhere: open walk of length 1.
  SubgroupGraph single(p);
  VertexId v = single.add_vertex();
  EdgeId lone = single.add_edge(single.basepoint(), v, 0);
  AlternatingWalk open = alternating_walk(single, lone, 0, 1);
  CHECK_FALSE(open.closed);
  CHECK(open.length() == 1);

  // An eight-cycle alternating a1/a2.
  SubgroupGraph eight = bouquet(p, {{0, 1, 0, 1, 0, 1, 0, 1}});
  eight.fold();
  CHECK(eight.edge_count() == 8);
  EdgeId e8 = eight.edge_at(eight.basepoint(), 0);
  AlternatingWalk w8 = alternating_walk(eight, e8, 0, 1);
  CHECK(w8.closed);
  CHECK(w8.half_period() == 4);

  CHECK_THROWS(alternating_walk(cyc, cyc.edge_at(cyc.basepoint(), 0), 1, 2));
}

TEST_CASE("walks through loops wrap and stay deterministic")
{
  // Loop graphs support walks that traverse an edge repeatedly; the walk
  // through the two loops closes with half-period 1.
  auto p = g4();
  SubgroupGraph g(p);
  VertexId o = g.basepoint();
  EdgeId l0 = g.add_edge(o, o, 0);
  g.add_edge(o, o, 1);
  AlternatingWalk w = alternating_walk(g, l0, 0, 1);
  CHECK(w.closed);
  CHECK(w.half_period() == 1);
}

TEST_CASE("on_relator_cycle")
{
  auto p = g4();
  SubgroupGraph cyc = bouquet(p, {{0, 1}});
  cyc.fold();
  EdgeId e = cyc.edge_at(cyc.basepoint(), 0);
  CHECK(on_relator_cycle(cyc, e, 0, 1)); // closed, half-period 1 divides 4

  SubgroupGraph single(p);
  VertexId v = single.add_vertex();
  EdgeId lone = single.add_edge(single.basepoint(), v, 0);
  CHECK_FALSE(on_relator_cycle(single, lone, 0, 1));

  // Closed alternating 6-cycle: half-period 3 does not divide 4.
  SubgroupGraph six = bouquet(p, {{0, 1, 0, 1, 0, 1}});
  six.fold();
  CHECK(six.edge_count() == 6);
  EdgeId e6 = six.edge_at(six.basepoint(), 0);
  CHECK_FALSE(on_relator_cycle(six, e6, 0, 1));

  CHECK_THROWS(on_relator_cycle(six, e6, 0, 0));
}

TEST_CASE("trace")
{
  auto p = g4();
  SubgroupGraph g = even_subgroup_graph(p);
  VertexId o = g.basepoint();
  auto end = g.trace(o, {0, 1});
  REQUIRE(end.has_value());
  CHECK(*end == o);
  auto mid = g.trace(o, {0});
  REQUIRE(mid.has_value());
  CHECK(*mid != o);
  auto eps = g.trace(o, {});
  REQUIRE(eps.has_value());
  CHECK(*eps == o);
  // Falling off
  SubgroupGraph single(p);
  single.add_edge(single.basepoint(), single.add_vertex(), 0);
  CHECK_FALSE(single.trace(single.basepoint(), {1}).has_value());
  // A loop keeps the trace at its vertex.
  SubgroupGraph loop(p);
  loop.add_edge(loop.basepoint(), loop.basepoint(), 0);
  auto stay = loop.trace(loop.basepoint(), {0, 0, 0});
  REQUIRE(stay.has_value());
  CHECK(*stay == loop.basepoint());
}

TEST_CASE("canonical keys are label-respecting")
{
  auto p = g4();
  // The same subgroup given with generators in a different order folds to
  // an identical based graph.
  SubgroupGraph a = bouquet(p, {{0, 1}, {0, 2}});
  SubgroupGraph b = bouquet(p, {{0, 2}, {0, 1}});
  a.fold();
  b.fold();
  CHECK(a.canonical_key() == b.canonical_key());
  SubgroupGraph c = bouquet(p, {{0, 1}});
  c.fold();
  CHECK(a.canonical_key() != c.canonical_key());
}
