#include <doctest.h>

#include <stdexcept>

#include "coxsg/presentation.hpp"

using namespace coxsg;

namespace {

CoxeterPresentation triangle(int m12, int m13, int m23)
{
  CoxeterPresentation p(3);
  p.set_exponent(0, 1, m12);
  p.set_exponent(0, 2, m13);
  p.set_exponent(1, 2, m23);
  return p;
}

// Central triangulation of a polygon: outer cycle a_1..a_{n-1} plus spokes
// to the central vertex a_n.
CoxeterPresentation central_triangulation(std::size_t n, int outer, int central)
{
  CoxeterPresentation p(n);
  for (Gen i = 0; i + 1 < n - 1; ++i)
    p.set_exponent(i, i + 1, outer);
  p.set_exponent(0, static_cast<Gen>(n - 2), outer);
  for (Gen i = 0; i < n - 1; ++i)
    p.set_exponent(i, static_cast<Gen>(n - 1), central);
  return p;
}

} // namespace

TEST_CASE("parse the triangle presentation")
{
  auto p = parse_presentation("gens 3\nm 1 2 4\nm 1 3 4\nm 2 3 4\n");
  CHECK(p.rank() == 3);
  CHECK(p.related(0, 1));
  CHECK(p.exponent_of(0, 1) == 4);
  CHECK(p.exponent(0, 1) == 4);
  CHECK(p.is_extra_large());
}

TEST_CASE("parse rejects small exponents")
{
  CHECK_THROWS_WITH_AS(parse_presentation("gens 3\nm 1 2 3\n"),
                       doctest::Contains("extra-large"), std::runtime_error);
  CHECK_THROWS(parse_presentation("gens 2\n"));
  CHECK_THROWS(parse_presentation("gens 3\nm 1 2 4\nm 2 1 4\n")); // duplicate pair
  CHECK_THROWS(parse_presentation("gens 3\nm 1 1 4\n"));
  CHECK_THROWS(parse_presentation("m 1 2 4\n"));
  CHECK_THROWS(parse_presentation("gens 3\nbogus\n"));
}

TEST_CASE("free product: no m lines means no relations")
{
  auto p = parse_presentation("gens 3\n");
  CHECK(!p.related(0, 1));
  CHECK(!p.exponent(0, 1).has_value());
  auto g = modified_graph(p);
  CHECK(g.edge_count() == 0);
  CHECK(g.degrees == std::vector<int>{0, 0, 0});
}

TEST_CASE("modified graph of the triangle group")
{
  auto p = triangle(4, 4, 4);
  auto g = modified_graph(p);
  CHECK(g.edge_count() == 3);
  for (auto& e : g.edges) {
    CHECK(e.label == 4);
    CHECK(e.rho_ij == 2);
  }
  CHECK(g.degrees == std::vector<int>{2, 2, 2});
}

TEST_CASE("modified graph degrees sum to twice the edge count")
{
  for (auto& p : {triangle(4, 4, 4), triangle(5, 7, 9), central_triangulation(6, 5, 7)}) {
    auto g = modified_graph(p);
    int total = 0;
    for (int d : g.degrees)
      total += d;
    CHECK(total == 2 * static_cast<int>(g.edge_count()));
  }
}

TEST_CASE("central triangulation degrees")
{
  auto p = central_triangulation(6, 5, 7);
  CHECK(p.rho(5) == 5);
  for (Gen i = 0; i < 5; ++i)
    CHECK(p.rho(i) == 3);
}

TEST_CASE("reduction hypothesis: uniform choice on the triangle group")
{
  auto p = triangle(4, 4, 4);
  auto rep = check_reduction_hypothesis(p, {0, 1, 2});
  CHECK(rep.pass); // 2*4 > 3*2
}

TEST_CASE("reduction hypothesis on a central triangulation")
{
  // Outer edges both in C need m >= 5, central edges (one endpoint in C)
  // need m >= 7.
  CHECK(check_reduction_hypothesis(central_triangulation(6, 5, 7), {0, 1, 2, 3, 4}).pass);
  CHECK_FALSE(
      check_reduction_hypothesis(central_triangulation(6, 4, 7), {0, 1, 2, 3, 4}).pass);
  CHECK_FALSE(
      check_reduction_hypothesis(central_triangulation(6, 5, 6), {0, 1, 2, 3, 4}).pass);
}

TEST_CASE("reduction hypothesis: uncovered edge is reported")
{
  auto rep = check_reduction_hypothesis(triangle(4, 4, 4), {0});
  REQUIRE_FALSE(rep.pass);
  bool found = false;
  for (auto& v : rep.violations)
    if (v.kind == CoverViolation::Kind::Uncovered && v.i == 1 && v.j == 2)
      found = true;
  CHECK(found);
}

TEST_CASE("uniform-choice equivalence")
{
  // check(p, A) passes iff all finite exponents satisfy 2m > 3 rho_ij.
  for (auto& p : {triangle(4, 4, 4), triangle(4, 4, 9), triangle(5, 6, 7),
                  central_triangulation(5, 5, 7), central_triangulation(5, 4, 9)}) {
    std::vector<Gen> all;
    for (Gen g = 0; g < p.rank(); ++g)
      all.push_back(g);
    bool expect = true;
    for (Gen i = 0; i < p.rank(); ++i)
      for (Gen j = i + 1; j < p.rank(); ++j)
        if (p.related(i, j) && 2 * p.exponent_of(i, j) <= 3 * p.rho_edge(i, j))
          expect = false;
    CHECK(check_reduction_hypothesis(p, all).pass == expect);
  }
}

TEST_CASE("find_cover on the triangle group returns the full set")
{
  auto cover = find_cover(triangle(4, 4, 4));
  REQUIRE(cover.has_value());
  CHECK(*cover == std::vector<Gen>{0, 1, 2});
}

TEST_CASE("find_cover prefers a smaller admissible cover")
{
  auto cover = find_cover(triangle(5, 5, 5));
  REQUIRE(cover.has_value());
  CHECK(*cover == std::vector<Gen>{0, 1});
}

TEST_CASE("find_cover on the free product returns the empty set")
{
  auto p = parse_presentation("gens 3\n");
  auto cover = find_cover(p);
  REQUIRE(cover.has_value());
  CHECK(cover->empty());
}

TEST_CASE("find_cover round-trips through the checker")
{
  for (auto& p : {triangle(4, 4, 4), triangle(5, 5, 5), triangle(4, 9, 9),
                  central_triangulation(6, 5, 7)}) {
    auto cover = find_cover(p);
    REQUIRE(cover.has_value());
    CHECK(check_reduction_hypothesis(p, *cover).pass);
  }
}

TEST_CASE("separability condition")
{
  // Triangle with exponent 4: edge on a triangle, 4 not divisible by 3.
  auto rep4 = check_separability_condition(triangle(4, 4, 4));
  CHECK_FALSE(rep4.pass);
  REQUIRE_FALSE(rep4.violations.empty());
  CHECK(rep4.violations.front().triangle_apex.has_value());

  CHECK(check_separability_condition(triangle(6, 6, 6)).pass);

  // Square graph: 4 generators in a cycle, no triangles, all exponents 4.
  CoxeterPresentation sq(4);
  sq.set_exponent(0, 1, 4);
  sq.set_exponent(1, 2, 4);
  sq.set_exponent(2, 3, 4);
  sq.set_exponent(0, 3, 4);
  CHECK(check_separability_condition(sq).pass);

  // Odd exponent fails even without triangles.
  CoxeterPresentation odd(3);
  odd.set_exponent(0, 1, 5);
  CHECK_FALSE(check_separability_condition(odd).pass);
}

TEST_CASE("presentation format round trip")
{
  auto p = triangle(4, 6, 8);
  auto q = parse_presentation(format_presentation(p));
  CHECK(q.rank() == 3);
  CHECK(q.exponent_of(0, 1) == 4);
  CHECK(q.exponent_of(0, 2) == 6);
  CHECK(q.exponent_of(1, 2) == 8);
}
