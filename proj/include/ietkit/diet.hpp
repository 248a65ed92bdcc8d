#pragma once

#include "iet.hpp"
#include "words.hpp"

#include <numeric>

namespace ietkit {

/// Discrete interval exchange on {1..n}: block i holds composition[i] consecutive
/// integers and blocks are rearranged in the order perm.one_line().
struct DietSpec {
  std::vector<std::size_t> composition;
  Perm perm;
};

inline OrderedAlphabet first_letters(std::size_t k) {
  if (k == 0 || k > 26) throw DomainError("alphabet size must be between 1 and 26");
  std::string s;
  for (std::size_t i = 0; i < k; ++i) s.push_back(static_cast<char>('a' + i));
  return OrderedAlphabet(s);
}

inline DietSpec make_diet(std::vector<std::size_t> composition, const std::string& perm_text) {
  auto order = first_letters(composition.size());
  for (auto n : composition)
    if (n == 0) throw DomainError("composition parts must be positive");
  return {std::move(composition), parse_perm(order, perm_text)};
}

/// The IET with integer lengths whose restriction to {0..n-1} is the DIET shifted by -1.
inline Iet diet_to_iet(const DietSpec& s) {
  std::vector<FieldValue> lengths;
  for (auto n : s.composition) lengths.emplace_back(static_cast<long>(n));
  return Iet(s.perm, lengths, 0);
}

struct DietAction {
  std::vector<std::size_t> mu;                 // mu[h-1] = image of h
  std::vector<std::vector<std::size_t>> cycles;  // sorted by minimum, each starting there
  std::vector<Word> codings;                   // coding of each cycle from its minimum
};

inline DietAction diet_action(const DietSpec& s) {
  Iet t = diet_to_iet(s);
  const std::size_t n = std::accumulate(s.composition.begin(), s.composition.end(), std::size_t{0});
  DietAction act;
  act.mu.resize(n);
  std::vector<Letter> letter(n);
  for (std::size_t h = 1; h <= n; ++h) {
    FieldValue x(static_cast<long>(h - 1));
    letter[h - 1] = t.letter_at(x);
    FieldValue y = t.apply(x) + FieldValue(1);
    act.mu[h - 1] = static_cast<std::size_t>(y.rational_part().get_num().get_ui());
  }
  std::vector<bool> seen(n, false);
  for (std::size_t h = 1; h <= n; ++h) {
    if (seen[h - 1]) continue;
    std::vector<std::size_t> cyc;
    Word code;
    for (std::size_t g = h; !seen[g - 1]; g = act.mu[g - 1]) {
      seen[g - 1] = true;
      cyc.push_back(g);
      code.push_back(letter[g - 1]);
    }
    act.cycles.push_back(std::move(cyc));
    act.codings.push_back(std::move(code));
  }
  return act;
}

/// Least conjugates of the cycle codings, sorted lexicographically.
inline std::vector<Word> diet_lyndon_multiset(const DietSpec& s) {
  auto act = diet_action(s);
  const auto order = s.perm.alphabet();
  std::vector<Word> out;
  for (const auto& c : act.codings) out.push_back(lyndon_representative(c, order));
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) { return order.word_less(a, b); });
  return out;
}

}  // namespace ietkit
