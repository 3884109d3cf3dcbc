#include "coxsg/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace coxsg {

std::strong_ordering shortlex_compare(const Word& u, const Word& v)
{
  if (u.size() != v.size())
    return u.size() <=> v.size();
  for (std::size_t k = 0; k < u.size(); ++k)
    if (u[k] != v[k])
      return u[k] <=> v[k];
  return std::strong_ordering::equal;
}

Word reversed(Word w)
{
  std::reverse(w.begin(), w.end());
  return w;
}

Word parse_word(const std::string& text, std::size_t n)
{
  Word w;
  std::size_t k = 0;
  bool numeric = false;
  for (char c : text)
    if (std::isdigit(static_cast<unsigned char>(c))) {
      numeric = true;
      break;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      break;
    }

  if (numeric) {
    std::istringstream in(text);
    long v;
    while (in >> v) {
      if (v < 1 || static_cast<std::size_t>(v) > n)
        throw std::runtime_error("word letter " + std::to_string(v) +
                                 " out of range 1.." + std::to_string(n));
      w.push_back(static_cast<Gen>(v - 1));
    }
    if (!in.eof())
      throw std::runtime_error("bad word syntax: '" + text + "'");
    return w;
  }

  for (; k < text.size(); ++k) {
    char c = text[k];
    if (std::isspace(static_cast<unsigned char>(c)))
      continue;
    if (c < 'a' || c > 'z')
      throw std::runtime_error(std::string("bad word letter '") + c + "'");
    std::size_t v = static_cast<std::size_t>(c - 'a');
    if (v >= n)
      throw std::runtime_error(std::string("word letter '") + c +
                               "' out of range for " + std::to_string(n) +
                               " generators");
    w.push_back(static_cast<Gen>(v));
  }
  return w;
}

std::string format_word(const Word& w, std::size_t n)
{
  std::string out;
  if (w.empty())
    return "(empty)";
  if (n <= 26) {
    for (Gen g : w)
      out.push_back(static_cast<char>('a' + g));
    return out;
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k)
      out.push_back(' ');
    out += std::to_string(static_cast<unsigned>(w[k]) + 1);
  }
  return out;
}

} // namespace coxsg
