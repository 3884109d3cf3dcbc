#include <doctest.h>

#include "coxsg/analysis.hpp"
#include "coxsg/io.hpp"
#include "coxsg/pipeline.hpp"
#include "coxsg/separability.hpp"

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

} // namespace

TEST_CASE("graph json round trip preserves the based labeled graph")
{
  auto p = g4();
  BuildResult r = build_subgroup_graph(p, {{0, 1, 2}});
  std::string doc = graph_to_json(r.delta2);
  SubgroupGraph back = graph_from_json(p, doc);
  CHECK(back.canonical_key() == r.delta2.canonical_key());
  CHECK(back.stage() == Stage::Delta2);
}

TEST_CASE("graph json keeps the terminal vertex")
{
  auto p = g4();
  SubgroupGraph g(p);
  VertexId v = g.add_vertex();
  g.add_edge(g.basepoint(), v, 0);
  g.set_terminal(v);
  SubgroupGraph back = graph_from_json(p, graph_to_json(g));
  CHECK(back.terminal() != kNoVertex);
  CHECK(back.terminal() != back.basepoint());
}

TEST_CASE("graph json rejects malformed documents")
{
  auto p = g4();
  CHECK_THROWS(graph_from_json(p, "{}"));
  CHECK_THROWS(graph_from_json(
      p, R"({"schema":"coxsg-graph/1","basepoint":0,"vertices":[{"id":0}],)"
         R"("edges":[{"u":0,"v":7,"label":1}]})"));
  CHECK_THROWS(graph_from_json(
      p, R"({"schema":"coxsg-graph/1","basepoint":0,"vertices":[{"id":0}],)"
         R"("edges":[{"u":0,"v":0,"label":9}]})"));
}

TEST_CASE("dot export mentions every vertex and edge label")
{
  auto p = g4();
  BuildResult r = build_subgroup_graph(p, {{0, 1}});
  std::string dot = graph_to_dot(r.delta2);
  CHECK(dot.find("graph subgroup") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("a1") != std::string::npos);
  CHECK(dot.find("a2") != std::string::npos);
}

TEST_CASE("quotient text format")
{
  FiniteQuotient q;
  q.degree = 2;
  q.images = {{1, 0}, {1, 0}, {0, 1}};
  q.vertex_order = {0, 1};
  q.base_index = 0;
  std::string text = quotient_to_text(q);
  CHECK(text.find("a_1 -> (0 1)") != std::string::npos);
  CHECK(text.find("a_3 -> ()") != std::string::npos);
  CHECK(text.find("degree 2") != std::string::npos);
  CHECK(text.find("O_H 0") != std::string::npos);
}
