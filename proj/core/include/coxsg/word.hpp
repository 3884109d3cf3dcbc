#ifndef COXSG_WORD_HPP
#define COXSG_WORD_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coxsg {

// Generator index, 0-based internally.  CLI and file formats use 1-based
// indices (or letters a, b, c, ... for small ranks).
using Gen = std::uint8_t;

constexpr std::size_t kMaxGenerators = 64;

// A word over the generators.  Generators are involutions, so there are no
// inverse letters and the inverse of a word is its reversal.
using Word = std::vector<Gen>;

// Length-then-lexicographic order induced by a_1 < a_2 < ... < a_n.
std::strong_ordering shortlex_compare(const Word& u, const Word& v);

inline bool shortlex_less(const Word& u, const Word& v)
{
  return shortlex_compare(u, v) == std::strong_ordering::less;
}

Word reversed(Word w);

// Parses "1 2 1" (1-based indices) or compact letters "aba".  Rejects
// out-of-range letters against the generator count n.
Word parse_word(const std::string& text, std::size_t n);

// Renders a word as compact letters when n <= 26, else as indices.
std::string format_word(const Word& w, std::size_t n);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (Gen g : w) {
      h ^= static_cast<std::size_t>(g) + 1;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace coxsg

#endif
