#include "coxsg/rewriting.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace coxsg {

namespace {

// ---------------------------------------------------------------------
// Dehn reduction
// ---------------------------------------------------------------------

// Removes squares with a stack pass, then rewrites the leftmost alternating
// run longer than its exponent; repeats until stable.
bool dehn_pass(const CoxeterPresentation& p, Word& w)
{
  bool changed = false;
  Word stack;
  stack.reserve(w.size());
  for (Gen a : w) {
    if (!stack.empty() && stack.back() == a)
      stack.pop_back();
    else
      stack.push_back(a);
  }
  if (stack.size() != w.size())
    changed = true;
  w = std::move(stack);

  std::size_t k = 0;
  while (k + 1 < w.size()) {
    std::size_t j = k + 1;
    while (j + 1 < w.size() && w[j + 1] == w[j - 1])
      ++j;
    std::size_t run_len = j - k + 1;
    Gen a = w[k], b = w[k + 1];
    if (p.related(a, b)) {
      int m = p.exponent_of(a, b);
      if (run_len > static_cast<std::size_t>(m)) {
        int t = static_cast<int>(std::min(run_len, static_cast<std::size_t>(2 * m))) - m;
        Gen other = b;
        Word comp;
        comp.reserve(m - t);
        for (int q = 0; q < m - t; ++q)
          comp.push_back(q % 2 == 0 ? other : a);
        Word next(w.begin(), w.begin() + static_cast<long>(k));
        next.insert(next.end(), comp.begin(), comp.end());
        next.insert(next.end(), w.begin() + static_cast<long>(k + m + t), w.end());
        w = std::move(next);
        return true;
      }
    }
    k = j;
  }
  return changed;
}

// ---------------------------------------------------------------------
// Streaming region tracker
// ---------------------------------------------------------------------

struct Region {
  Gen lo, hi;  // relator pair, lo < hi
  Gen first;   // first letter of the region's top arc
  int ulen;
  bool left, right; // interior edges on either side
};

struct Candidate {
  Gen lo, hi;  // current region's relator pair
  Gen expect;  // letter that would extend the current top arc
  Gen first;   // first letter of the current top arc
  int ulen = 0;
  bool left = false; // current region entered through an interior edge
  int diff = 0;      // top minus bottom over closed regions, in -1..1
  bool lex = false;  // bottom starts below the island's first letter
  std::size_t start = 0;
  std::vector<Region> hist;

  auto key() const { return std::tie(lo, hi, expect, ulen, left, diff, lex); }
};

// Receives the first discovered strictly shortlex-smaller equal word.
struct WitnessSink {
  const Word* w = nullptr;
  bool have = false;
  Word z;

  void offer(Word candidate)
  {
    if (have)
      return;
    assert(shortlex_less(candidate, *w));
    z = std::move(candidate);
    have = true;
  }
};

Gen pair_other(Gen lo, Gen hi, Gen g) { return g == lo ? hi : lo; }

Word island_bottom(const CoxeterPresentation& p, const std::vector<Region>& regions)
{
  Word out;
  for (const Region& r : regions) {
    int m = p.exponent_of(r.lo, r.hi);
    int vlen = 2 * m - r.ulen - (r.left ? 1 : 0) - (r.right ? 1 : 0);
    // The island head diverges with the letter opposite the top; chained
    // regions rejoin the alternation with the top's own first letter.
    Gen vfirst = r.left ? r.first : pair_other(r.lo, r.hi, r.first);
    Gen vother = pair_other(r.lo, r.hi, vfirst);
    for (int q = 0; q < vlen; ++q)
      out.push_back(q % 2 == 0 ? vfirst : vother);
  }
  return out;
}

struct TrackerState {
  bool has_prev = false;
  Gen prev = 0;
  bool has_run = false;
  Gen run_lo = 0, run_hi = 0;
  int run_len = 0; // only tracked for related run pairs
  bool doomed = false;
  std::vector<Candidate> cands;
};

// Closes the candidate's current region at a break (or end of input).
// Records a win when the completed island beats the word, and returns the
// chained continuation when one is structurally possible.
std::optional<Candidate> close_region(const CoxeterPresentation& p, TrackerState& st,
                                      const Candidate& c, bool at_end, Gen next_letter,
                                      std::size_t pos, const Word* w, WitnessSink* sink)
{
  int m = p.exponent_of(c.lo, c.hi);

  if ((!c.left && c.ulen == m) || (c.left && c.ulen >= m - 1)) {
    int v = 2 * m - c.ulen - (c.left ? 1 : 0);
    if (v <= m) {
      int total = c.diff + (c.ulen - v);
      if (total > 0 || (total == 0 && c.lex)) {
        if (sink && !sink->have) {
          std::vector<Region> regions = c.hist;
          regions.push_back({c.lo, c.hi, c.first, c.ulen, c.left, false});
          Word z(w->begin(), w->begin() + static_cast<long>(c.start));
          Word bottom = island_bottom(p, regions);
          z.insert(z.end(), bottom.begin(), bottom.end());
          z.insert(z.end(), w->begin() + static_cast<long>(pos), w->end());
          sink->offer(std::move(z));
        }
        st.doomed = true;
      }
    }
  }
  if (at_end)
    return std::nullopt;

  if (c.left ? c.ulen < m - 2 : c.ulen < m - 1)
    return std::nullopt;
  Gen x = c.expect; // interior edge label continues the alternation
  if (!p.related(x, next_letter))
    return std::nullopt;
  int v = 2 * m - c.ulen - (c.left ? 1 : 0) - 1;
  if (v > m)
    return std::nullopt;
  int d2 = c.diff + (c.ulen - v);
  if (d2 >= 2) {
    // The prefix through the interior edge is two letters shorter, so the
    // word is not geodesic.
    if (sink && !sink->have) {
      std::vector<Region> regions = c.hist;
      regions.push_back({c.lo, c.hi, c.first, c.ulen, c.left, true});
      Word z(w->begin(), w->begin() + static_cast<long>(c.start));
      Word bottom = island_bottom(p, regions);
      z.insert(z.end(), bottom.begin(), bottom.end());
      z.push_back(x);
      z.insert(z.end(), w->begin() + static_cast<long>(pos), w->end());
      sink->offer(std::move(z));
    }
    st.doomed = true;
    return std::nullopt;
  }
  if (d2 <= -2)
    return std::nullopt;

  Candidate next;
  next.lo = std::min(x, next_letter);
  next.hi = std::max(x, next_letter);
  next.expect = x;
  next.first = next_letter;
  next.ulen = 1;
  next.left = true;
  next.diff = d2;
  next.lex = c.lex;
  next.start = c.start;
  if (sink) {
    next.hist = c.hist;
    next.hist.push_back({c.lo, c.hi, c.first, c.ulen, c.left, true});
  }
  return next;
}

void dedup_candidates(std::vector<Candidate>& cands)
{
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.key() < b.key(); });
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const Candidate& a, const Candidate& b) {
                            return a.key() == b.key();
                          }),
              cands.end());
}

enum class StepResult { Live, Square, OverlongRun };

StepResult tracker_step(const CoxeterPresentation& p, TrackerState& st, Gen a,
                        std::size_t pos, const Word* w, WitnessSink* sink)
{
  if (st.has_prev && a == st.prev) {
    if (sink && !sink->have) {
      Word z(w->begin(), w->begin() + static_cast<long>(pos - 1));
      z.insert(z.end(), w->begin() + static_cast<long>(pos + 1), w->end());
      sink->offer(std::move(z));
    }
    return StepResult::Square;
  }

  std::vector<Candidate> next;
  next.reserve(st.cands.size() + 1);
  for (Candidate& c : st.cands) {
    if (a == c.expect) {
      c.expect = pair_other(c.lo, c.hi, a);
      ++c.ulen;
      next.push_back(std::move(c));
    } else if (auto surv = close_region(p, st, c, false, a, pos, w, sink)) {
      next.push_back(std::move(*surv));
    }
  }
  st.cands = std::move(next);

  if (st.has_prev) {
    Gen lo = std::min(st.prev, a), hi = std::max(st.prev, a);
    if (st.has_run && lo == st.run_lo && hi == st.run_hi) {
      if (st.run_len)
        ++st.run_len;
    } else {
      st.has_run = true;
      st.run_lo = lo;
      st.run_hi = hi;
      st.run_len = p.related(lo, hi) ? 2 : 0;
      if (p.related(lo, hi)) {
        Candidate c;
        c.lo = lo;
        c.hi = hi;
        c.expect = st.prev;
        c.first = st.prev;
        c.ulen = 2;
        c.left = false;
        c.diff = 0;
        c.lex = a < st.prev; // the bottom diverges with the other letter
        c.start = pos - 1;
        st.cands.push_back(std::move(c));
      }
    }
    if (st.run_len && st.run_len > p.exponent_of(st.run_lo, st.run_hi)) {
      if (sink && !sink->have) {
        int m = p.exponent_of(st.run_lo, st.run_hi);
        std::size_t start = pos + 1 - static_cast<std::size_t>(st.run_len);
        Gen first = (*w)[start];
        Gen other = pair_other(st.run_lo, st.run_hi, first);
        Word z(w->begin(), w->begin() + static_cast<long>(start));
        for (int q = 0; q < m - 1; ++q)
          z.push_back(q % 2 == 0 ? other : first);
        z.insert(z.end(), w->begin() + static_cast<long>(start + m + 1), w->end());
        sink->offer(std::move(z));
      }
      return StepResult::OverlongRun;
    }
  }
  st.prev = a;
  st.has_prev = true;
  dedup_candidates(st.cands);
  return StepResult::Live;
}

bool tracker_accepts_at_end(const CoxeterPresentation& p, const TrackerState& st,
                            std::size_t len, const Word* w, WitnessSink* sink)
{
  TrackerState tmp = st;
  for (const Candidate& c : st.cands)
    close_region(p, tmp, c, true, 0, len, w, sink);
  return !tmp.doomed;
}

NormalCheck run_tracker(const CoxeterPresentation& p, const Word& w, WitnessSink* sink)
{
  for (Gen g : w)
    if (g >= p.rank())
      throw std::runtime_error("word letter out of range for presentation");
  TrackerState st;
  for (std::size_t k = 0; k < w.size(); ++k) {
    switch (tracker_step(p, st, w[k], k, &w, sink)) {
    case StepResult::Square:
      return {false, NormalCheck::Reason::Square, k + 1};
    case StepResult::OverlongRun:
      return {false, NormalCheck::Reason::OverlongRun, k + 1};
    case StepResult::Live:
      break;
    }
  }
  if (!tracker_accepts_at_end(p, st, w.size(), &w, sink))
    return {false, NormalCheck::Reason::SmallerEqualWord, w.size()};
  return {true, NormalCheck::Reason::Accepted, 0};
}

} // namespace

Word dehn_reduce(const CoxeterPresentation& p, const Word& w)
{
  for (Gen g : w)
    if (g >= p.rank())
      throw std::runtime_error("word letter out of range for presentation");
  Word out = w;
  while (dehn_pass(p, out)) {
  }
  return out;
}

bool is_dehn_reduced(const CoxeterPresentation& p, const Word& w)
{
  return dehn_reduce(p, w) == w;
}

NormalCheck check_shortlex_normal(const CoxeterPresentation& p, const Word& w)
{
  return run_tracker(p, w, nullptr);
}

Word normal_form(const CoxeterPresentation& p, const Word& w)
{
  Word cur = dehn_reduce(p, w);
  for (;;) {
    WitnessSink sink;
    sink.w = &cur;
    NormalCheck r = run_tracker(p, cur, &sink);
    if (r.normal)
      return cur;
    if (!sink.have)
      throw std::logic_error("normal_form: rejection without witness");
    cur = dehn_reduce(p, sink.z);
  }
}

NormalFormRecognizer build_normal_form_recognizer(const CoxeterPresentation& p)
{
  p.require_extra_large();
  const std::size_t n = p.rank();

  // Canonical serialization of a tracker state; candidate histories are
  // not tracked here, so equal keys have equal futures.
  auto encode = [&](const TrackerState& st) {
    std::vector<int> key;
    key.push_back(st.has_prev ? st.prev + 1 : 0);
    key.push_back(st.has_run ? st.run_lo + 1 : 0);
    key.push_back(st.has_run ? st.run_hi + 1 : 0);
    key.push_back(st.run_len);
    key.push_back(st.doomed ? 1 : 0);
    for (const Candidate& c : st.cands) {
      key.push_back(c.lo + 1);
      key.push_back(c.hi + 1);
      key.push_back(c.expect + 1);
      key.push_back(c.ulen);
      key.push_back(c.left ? 1 : 0);
      key.push_back(c.diff + 1);
      key.push_back(c.lex ? 1 : 0);
    }
    return key;
  };

  NormalFormRecognizer rec;
  rec.n = n;

  std::map<std::vector<int>, std::uint32_t> ids;
  std::vector<TrackerState> states;

  TrackerState start;
  ids[encode(start)] = 0;
  states.push_back(start);
  // state 1: reject sink
  rec.start = 0;
  rec.sink = 1;
  states.push_back(TrackerState{});

  rec.transitions.assign(2 * n, rec.sink);
  rec.accepting = {true, false};

  constexpr std::size_t kStateCap = 1u << 20;

  for (std::uint32_t s = 0; s < states.size(); ++s) {
    if (s == rec.sink)
      continue;
    for (Gen g = 0; g < n; ++g) {
      TrackerState nx = states[s];
      StepResult r = tracker_step(p, nx, g, /*pos=*/0, nullptr, nullptr);
      std::uint32_t target;
      if (r != StepResult::Live) {
        target = rec.sink;
      } else {
        auto key = encode(nx);
        auto it = ids.find(key);
        if (it == ids.end()) {
          if (states.size() >= kStateCap)
            throw std::runtime_error("normal-form recognizer state cap exceeded");
          target = static_cast<std::uint32_t>(states.size());
          ids.emplace(std::move(key), target);
          states.push_back(nx);
          rec.transitions.resize(states.size() * n, rec.sink);
          rec.accepting.push_back(
              tracker_accepts_at_end(p, states[target], 0, nullptr, nullptr));
        } else {
          target = it->second;
        }
      }
      rec.transitions[static_cast<std::size_t>(s) * n + g] = target;
    }
  }
  return rec;
}

} // namespace coxsg
