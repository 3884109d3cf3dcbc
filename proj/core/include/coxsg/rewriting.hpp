#ifndef COXSG_REWRITING_HPP
#define COXSG_REWRITING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "coxsg/presentation.hpp"
#include "coxsg/word.hpp"

namespace coxsg {

// Dehn-reduced form: no square a_i a_i and no alternating (i,j)-factor of
// more than m_ij letters.  Each rewrite cancels a square or replaces an
// overlong alternating factor by the complementary short side of the
// relator; the result is equal to w in G and never longer.
Word dehn_reduce(const CoxeterPresentation& p, const Word& w);

bool is_dehn_reduced(const CoxeterPresentation& p, const Word& w);

// Shortlex-least word equal to w in G.  Dehn-reduces, then repeatedly
// replaces the top of a witnessing equality-diagram island by its bottom
// until the streaming normal-form check accepts.  Each replacement is a
// strict shortlex descent, so this terminates; correctness rests on the
// streaming check, which tests cross-validate against the Tits-move
// breadth-first oracle.
Word normal_form(const CoxeterPresentation& p, const Word& w);

struct NormalCheck {
  enum class Reason { Accepted, Square, OverlongRun, SmallerEqualWord };
  bool normal = false;
  Reason reason = Reason::Accepted;
  // 1-based letter index at which the verdict fired: squares and overlong
  // alternating runs reject at their letter, competitor-based verdicts at
  // the final letter.  0 when accepted.
  std::size_t reject_position = 0;
};

// Streaming region-tracking pass over w.  Maintains, per live candidate
// divergence, the forced alternative half of the current alternating run,
// a lexicographic comparison flag and the accumulated top/bottom length
// difference (kept within -1..1); rejects when a completed alternative is
// shortlex-smaller.
NormalCheck check_shortlex_normal(const CoxeterPresentation& p, const Word& w);

inline bool is_shortlex_normal(const CoxeterPresentation& p, const Word& w)
{
  return check_shortlex_normal(p, w).normal;
}

// Deterministic, complete automaton over the generator alphabet accepting
// exactly the streaming check's language.  States are canonicalized
// region-picture configurations; state 1 is an explicit reject sink.
struct NormalFormRecognizer {
  std::size_t n = 0;
  std::uint32_t start = 0;
  std::uint32_t sink = 1;
  std::vector<std::uint32_t> transitions; // state * n + letter -> state
  std::vector<bool> accepting;

  std::size_t state_count() const { return accepting.size(); }

  std::uint32_t step(std::uint32_t state, Gen g) const
  {
    return transitions[static_cast<std::size_t>(state) * n + g];
  }

  bool accepts(const Word& w) const
  {
    std::uint32_t s = start;
    for (Gen g : w)
      s = step(s, g);
    return accepting[s];
  }

  // First 1-based position after which no continuation can be accepted
  // (the sink is reached); 0 if the run stays live.  The streaming check,
  // not this, defines where competitor-based rejections are reported.
  std::size_t sink_entry(const Word& w) const
  {
    std::uint32_t s = start;
    for (std::size_t k = 0; k < w.size(); ++k) {
      s = step(s, w[k]);
      if (s == sink)
        return k + 1;
    }
    return 0;
  }
};

NormalFormRecognizer build_normal_form_recognizer(const CoxeterPresentation& p);

} // namespace coxsg

#endif
