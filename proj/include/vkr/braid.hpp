#pragma once

// Braid words, singular braid words and their textual form "n: l1 l2 ...",
// where a letter is +i, -i, or "i!" for a double point between strands i, i+1.

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vkr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BraidLetter {
  int index = 1;  // generator sigma_index, 1-based
  int sign = 1;   // +1 or -1
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  int n = 1;
  std::vector<BraidLetter> letters;

  int writhe() const {
    int w = 0;
    for (const auto& l : letters) w += l.sign;
    return w;
  }
  /// Twice alpha = braid index minus writhe.
  int twice_alpha() const { return n - writhe(); }

  /// Number of components of the closure (cycles of the underlying permutation).
  int components() const {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (const auto& l : letters) std::swap(perm[l.index - 1], perm[l.index]);
    std::vector<bool> seen(n, false);
    int c = 0;
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      ++c;
      for (int t = s; !seen[t]; t = perm[t]) seen[t] = true;
    }
    return c;
  }
  bool is_knot() const { return components() == 1; }

  BraidWord mirror() const {
    BraidWord m = *this;
    for (auto& l : m.letters) l.sign = -l.sign;
    return m;
  }

  std::string str() const {
    std::string s = std::to_string(n) + ":";
    for (const auto& l : letters) s += " " + std::to_string(l.sign * l.index);
    return s;
  }
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

enum class LetterType { Positive, Negative, Singular };

struct SingularLetter {
  int index = 1;
  LetterType type = LetterType::Positive;
  friend bool operator==(const SingularLetter&, const SingularLetter&) = default;
};

struct SingularBraidWord {
  int n = 1;
  std::vector<SingularLetter> letters;

  /// Positions of the singular letters, left to right.
  std::vector<int> singular_positions() const {
    std::vector<int> p;
    for (int t = 0; t < static_cast<int>(letters.size()); ++t)
      if (letters[t].type == LetterType::Singular) p.push_back(t);
    return p;
  }
  int singular_count() const { return static_cast<int>(singular_positions().size()); }

  /// The braid obtained by resolving the singular letters; signs[t] is the
  /// sign of the t-th singular letter (+1 positive crossing, -1 negative).
  BraidWord resolve(const std::vector<int>& signs) const {
    if (static_cast<int>(signs.size()) != singular_count()) throw std::invalid_argument("resolve: wrong number of signs");
    BraidWord w;
    w.n = n;
    std::size_t s = 0;
    for (const auto& l : letters) {
      int sign = l.type == LetterType::Positive ? 1 : l.type == LetterType::Negative ? -1 : signs.at(s++);
      w.letters.push_back({l.index, sign});
    }
    return w;
  }

  BraidWord as_braid() const {
    if (singular_count() != 0) throw std::invalid_argument("word has singular letters");
    return resolve({});
  }

  std::string str() const {
    std::string s = std::to_string(n) + ":";
    for (const auto& l : letters) {
      s += " ";
      if (l.type == LetterType::Negative) s += "-";
      s += std::to_string(l.index);
      if (l.type == LetterType::Singular) s += "!";
    }
    return s;
  }
  friend bool operator==(const SingularBraidWord&, const SingularBraidWord&) = default;
};

inline SingularBraidWord parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("expected \"n: letters\"");
  SingularBraidWord w;
  {
    std::string head = text.substr(0, colon);
    std::size_t used = 0;
    try {
      w.n = std::stoi(head, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed strand count '" + head + "'");
    }
    if (head.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("malformed strand count '" + head + "'");
  }
  if (w.n < 1) throw ParseError("strand count must be >= 1");
  std::istringstream is(text.substr(colon + 1));
  std::string tok;
  while (is >> tok) {
    SingularLetter l;
    std::string body = tok;
    bool singular = !body.empty() && body.back() == '!';
    if (singular) body.pop_back();
    bool neg = !body.empty() && body.front() == '-';
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.erase(0, 1);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed token '" + tok + "'");
    if (singular && neg) throw ParseError("singular letter cannot carry a sign: '" + tok + "'");
    l.index = std::stoi(body);
    if (l.index < 1 || l.index > w.n - 1)
      throw ParseError("generator index " + std::to_string(l.index) + " out of range in '" + tok + "'");
    l.type = singular ? LetterType::Singular : neg ? LetterType::Negative : LetterType::Positive;
    w.letters.push_back(l);
  }
  return w;
}

inline BraidWord parse_braid(const std::string& text) { return parse(text).as_braid(); }

}  // namespace vkr
