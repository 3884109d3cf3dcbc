#include "coxsg/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coxsg {

CoxeterPresentation::CoxeterPresentation(std::size_t n_gens)
    : n_(n_gens), matrix_(n_gens * n_gens, 0)
{
  if (n_ < 1 || n_ > kMaxGenerators)
    throw std::runtime_error("generator count must be in 1.." +
                             std::to_string(kMaxGenerators));
  for (std::size_t i = 0; i < n_; ++i)
    matrix_[i * n_ + i] = 1;
}

void CoxeterPresentation::set_exponent(Gen i, Gen j, int m)
{
  if (i == j)
    throw std::runtime_error("diagonal exponents are fixed at 1");
  if (i >= n_ || j >= n_)
    throw std::runtime_error("generator index out of range");
  if (m < 2)
    throw std::runtime_error("exponent must be >= 2");
  matrix_[static_cast<std::size_t>(i) * n_ + j] = m;
  matrix_[static_cast<std::size_t>(j) * n_ + i] = m;
}

int CoxeterPresentation::rho(Gen i) const
{
  int d = 0;
  for (Gen j = 0; j < n_; ++j)
    if (related(i, j))
      ++d;
  return d;
}

long CoxeterPresentation::k_G() const
{
  int max_m = 0;
  int max_rho = 0;
  for (Gen i = 0; i < n_; ++i) {
    max_rho = std::max(max_rho, rho(i));
    for (Gen j = i + 1; j < n_; ++j)
      if (related(i, j))
        max_m = std::max(max_m, exponent_of(i, j));
  }
  return 2L * max_m * max_rho;
}

bool CoxeterPresentation::is_extra_large() const
{
  if (n_ < 3)
    return false;
  for (Gen i = 0; i < n_; ++i)
    for (Gen j = i + 1; j < n_; ++j)
      if (related(i, j) && exponent_of(i, j) < 4)
        return false;
  return true;
}

void CoxeterPresentation::require_extra_large() const
{
  if (n_ < 3)
    throw std::runtime_error("extra-large type requires at least 3 generators, got " +
                             std::to_string(n_));
  for (Gen i = 0; i < n_; ++i)
    for (Gen j = i + 1; j < n_; ++j)
      if (related(i, j) && exponent_of(i, j) < 4)
        throw std::runtime_error(
            "extra-large type requires m_ij >= 4, but m_" +
            std::to_string(i + 1) + "," + std::to_string(j + 1) + " = " +
            std::to_string(exponent_of(i, j)));
}

ModifiedCoxeterGraph modified_graph(const CoxeterPresentation& p)
{
  ModifiedCoxeterGraph g;
  g.n = p.rank();
  g.degrees.resize(g.n);
  for (Gen i = 0; i < g.n; ++i)
    g.degrees[i] = p.rho(i);
  for (Gen i = 0; i < g.n; ++i)
    for (Gen j = i + 1; j < g.n; ++j)
      if (p.related(i, j))
        g.edges.push_back({i, j, p.exponent_of(i, j), p.rho_edge(i, j)});
  return g;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what)
{
  throw std::runtime_error("presentation line " + std::to_string(line) + ": " + what);
}

} // namespace

CoxeterPresentation parse_presentation(const std::string& text)
{
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<CoxeterPresentation> pres;
  std::set<std::pair<Gen, Gen>> seen;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#')
      continue;
    if (key == "gens") {
      if (pres)
        parse_fail(lineno, "duplicate gens line");
      long n;
      if (!(ls >> n) || n < 1)
        parse_fail(lineno, "expected 'gens <n>'");
      if (n < 3)
        parse_fail(lineno, "extra-large type requires at least 3 generators");
      if (static_cast<std::size_t>(n) > kMaxGenerators)
        parse_fail(lineno, "at most " + std::to_string(kMaxGenerators) + " generators supported");
      pres.emplace(static_cast<std::size_t>(n));
    } else if (key == "m") {
      if (!pres)
        parse_fail(lineno, "m line before gens line");
      long i, j, k;
      if (!(ls >> i >> j >> k))
        parse_fail(lineno, "expected 'm <i> <j> <k>'");
      if (i < 1 || j < 1 || static_cast<std::size_t>(i) > pres->rank() ||
          static_cast<std::size_t>(j) > pres->rank())
        parse_fail(lineno, "generator index out of range");
      if (i == j)
        parse_fail(lineno, "m lines must name two distinct generators");
      if (k < 2)
        parse_fail(lineno, "exponent must be >= 2");
      if (k < 4)
        parse_fail(lineno, "exponent " + std::to_string(k) +
                               " violates extra-large type (m_ij >= 4 required)");
      Gen a = static_cast<Gen>(std::min(i, j) - 1);
      Gen b = static_cast<Gen>(std::max(i, j) - 1);
      if (!seen.insert({a, b}).second)
        parse_fail(lineno, "duplicate exponent for pair " + std::to_string(i) + "," +
                               std::to_string(j));
      pres->set_exponent(a, b, static_cast<int>(k));
    } else if (key == "cover") {
      if (!pres)
        parse_fail(lineno, "cover line before gens line");
      std::vector<Gen> c;
      long v;
      while (ls >> v) {
        if (v < 1 || static_cast<std::size_t>(v) > pres->rank())
          parse_fail(lineno, "cover index out of range");
        c.push_back(static_cast<Gen>(v - 1));
      }
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      pres->set_declared_cover(std::move(c));
    } else {
      parse_fail(lineno, "unknown directive '" + key + "'");
    }
  }
  if (!pres)
    throw std::runtime_error("presentation: missing gens line");
  return *pres;
}

std::string format_presentation(const CoxeterPresentation& p)
{
  std::ostringstream out;
  out << "gens " << p.rank() << "\n";
  for (Gen i = 0; i < p.rank(); ++i)
    for (Gen j = i + 1; j < p.rank(); ++j)
      if (p.related(i, j))
        out << "m " << (i + 1) << " " << (j + 1) << " " << p.exponent_of(i, j) << "\n";
  if (p.declared_cover()) {
    out << "cover";
    for (Gen g : *p.declared_cover())
      out << " " << (g + 1);
    out << "\n";
  }
  return out.str();
}

ReductionReport check_reduction_hypothesis(const CoxeterPresentation& p,
                                           const std::vector<Gen>& cover)
{
  ReductionReport rep;
  std::vector<bool> in_c(p.rank(), false);
  for (Gen g : cover) {
    if (g >= p.rank())
      throw std::runtime_error("cover index out of range");
    in_c[g] = true;
  }

  for (Gen i = 0; i < p.rank(); ++i)
    for (Gen j = i + 1; j < p.rank(); ++j) {
      if (!p.related(i, j))
        continue;
      int m = p.exponent_of(i, j);
      if (!in_c[i] && !in_c[j]) {
        rep.violations.push_back(
            {CoverViolation::Kind::Uncovered, i, j,
             "edge {" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                 "} has no endpoint in C"});
      } else if (in_c[i] && in_c[j]) {
        int r = p.rho_edge(i, j);
        if (2 * m <= 3 * r) // m > (3/2) rho_ij, kept integral
          rep.violations.push_back(
              {CoverViolation::Kind::BothInCover, i, j,
               "edge {" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                   "}: need m > 3/2 * rho_ij but " + std::to_string(m) +
                   " <= 3/2 * " + std::to_string(r)});
      } else {
        Gen inside = in_c[i] ? i : j;
        int r = p.rho(inside);
        if (m <= 2 * r)
          rep.violations.push_back(
              {CoverViolation::Kind::OneInCover, i, j,
               "edge {" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                   "}: need m > 2 * rho_" + std::to_string(inside + 1) + " but " +
                   std::to_string(m) + " <= 2 * " + std::to_string(r)});
      }
    }
  rep.pass = rep.violations.empty();
  return rep;
}

std::optional<std::vector<Gen>> find_cover(const CoxeterPresentation& p)
{
  const std::size_t n = p.rank();
  // Subsets by increasing size, lexicographically least first within a size.
  std::vector<Gen> subset;
  std::optional<std::vector<Gen>> found;

  auto search = [&](auto&& self, std::size_t next, std::size_t remaining) -> bool {
    if (remaining == 0) {
      if (check_reduction_hypothesis(p, subset).pass) {
        found = subset;
        return true;
      }
      return false;
    }
    if (next + remaining > n)
      return false;
    for (std::size_t g = next; g + remaining <= n; ++g) {
      subset.push_back(static_cast<Gen>(g));
      if (self(self, g + 1, remaining - 1))
        return true;
      subset.pop_back();
    }
    return false;
  };

  for (std::size_t size = 0; size <= n; ++size) {
    subset.clear();
    if (search(search, 0, size))
      return found;
  }
  return std::nullopt;
}

SeparabilityReport check_separability_condition(const CoxeterPresentation& p)
{
  SeparabilityReport rep;
  for (Gen i = 0; i < p.rank(); ++i)
    for (Gen j = i + 1; j < p.rank(); ++j) {
      if (!p.related(i, j))
        continue;
      int m = p.exponent_of(i, j);
      if (m % 2 != 0)
        rep.violations.push_back({i, j, m, true, std::nullopt,
                                  "m_" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + " = " + std::to_string(m) +
                                      " is odd"});
      if (m % 3 != 0) {
        for (Gen k = 0; k < p.rank(); ++k)
          if (k != i && k != j && p.related(i, k) && p.related(j, k)) {
            rep.violations.push_back(
                {i, j, m, false, k,
                 "edge {" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                     "} lies on triangle with a_" + std::to_string(k + 1) + " and " +
                     std::to_string(m) + " is not divisible by 3"});
            break;
          }
      }
    }
  rep.pass = rep.violations.empty();
  return rep;
}

} // namespace coxsg
