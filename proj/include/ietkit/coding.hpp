#pragma once

#include "iet.hpp"
#include "words.hpp"

#include <map>
#include <set>

namespace ietkit {

/// Nonempty cylinders I_w for all |w| <= depth, keyed by w (the empty word maps to the domain).
struct CylinderTable {
  std::size_t depth = 0;
  std::map<Word, Interval> cylinders;

  const Interval* find(const Word& w) const {
    auto it = cylinders.find(w);
    return it == cylinders.end() ? nullptr : &it->second;
  }
};

/// I_{aw} = I_a intersected with (I_w - tau_a), built level by level.
inline CylinderTable cylinders(const Iet& t, std::size_t depth) {
  CylinderTable tab;
  tab.depth = depth;
  tab.cylinders[Word()] = t.domain();
  std::vector<std::pair<Word, Interval>> level{{Word(), t.domain()}};
  for (std::size_t m = 1; m <= depth; ++m) {
    std::vector<std::pair<Word, Interval>> next;
    for (const auto& [w, iw] : level)
      for (Letter a : t.alphabet()) {
        Interval c = t.domain_interval(a).intersect(iw.shifted(-t.translation(a)));
        if (c.empty()) continue;
        next.push_back({a + w, c});
      }
    for (const auto& [w, iw] : next) tab.cylinders[w] = iw;
    level = std::move(next);
  }
  return tab;
}

/// Cylinder of a single word; throws when w is not a factor.
inline Interval cylinder_of(const Iet& t, const Word& w) {
  Interval iw = t.domain();
  for (std::size_t i = w.size(); i-- > 0;) {
    Letter a = w[i];
    iw = t.domain_interval(a).intersect(iw.shifted(-t.translation(a)));
    if (iw.empty()) throw DomainError("word '" + w + "' is not in the language");
  }
  return iw;
}

/// Finite sample of a factorial language: all its words of length <= bound.
struct LanguageSample {
  OrderedAlphabet alphabet;
  std::size_t bound = 0;
  std::set<Word> words;

  bool contains(const Word& w) const {
    if (w.size() > bound) throw DomainError("word longer than the sampled bound");
    return words.count(w) != 0;
  }

  std::vector<Word> of_length(std::size_t n) const {
    std::vector<Word> out;
    for (const auto& w : words)
      if (w.size() == n) out.push_back(w);
    return out;
  }
};

inline LanguageSample language(const Iet& t, std::size_t n) {
  LanguageSample L{t.alphabet(), n, {}};
  for (const auto& [w, iv] : cylinders(t, n).cylinders) L.words.insert(w);
  return L;
}

/// Factors of w^omega of length <= n.
inline LanguageSample language_of_periodic(const Word& w, const OrderedAlphabet& order, std::size_t n) {
  require_word(order, w);
  if (w.empty()) throw DomainError("periodic language of the empty word");
  LanguageSample L{order, n, {Word()}};
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word f;
    for (std::size_t m = 0; m < n; ++m) {
      f.push_back(w[(i + m) % w.size()]);
      L.words.insert(f);
    }
  }
  return L;
}

/// Union of the periodic languages of each word.
inline LanguageSample language_of_periodic(const std::vector<Word>& ws, const OrderedAlphabet& order,
                                           std::size_t n) {
  LanguageSample L{order, n, {Word()}};
  for (const auto& w : ws) {
    auto part = language_of_periodic(w, order, n);
    L.words.insert(part.words.begin(), part.words.end());
  }
  return L;
}

inline bool is_factorial(const LanguageSample& L) {
  for (const auto& w : L.words)
    if (!w.empty() && (!L.words.count(w.substr(1)) || !L.words.count(w.substr(0, w.size() - 1))))
      return false;
  return true;
}

/// Every word shorter than the bound extends on both sides.
inline bool is_biextendable(const LanguageSample& L) {
  for (const auto& w : L.words) {
    if (w.size() >= L.bound) continue;
    bool left = false, right = false;
    for (Letter a : L.alphabet) {
      left = left || L.words.count(a + w);
      right = right || L.words.count(w + a);
    }
    if (!left || !right) return false;
  }
  return true;
}

struct ReturnWords {
  std::set<Word> words;
  bool complete = false;  // every occurrence window of w within the bound was resolved
};

enum class ReturnSide { Left, Right };

/// Left return words u (uw in L, starts with w, no inner occurrence of w) with |u| <= max_len.
/// Right return words are the v with uw = wv.
inline ReturnWords return_words(const LanguageSample& L, const Word& w, std::size_t max_len,
                                ReturnSide side = ReturnSide::Left) {
  if (w.size() + max_len > L.bound)
    throw DomainError("language bound too small for the requested return-word length");
  ReturnWords r;
  if (!L.words.count(w)) throw DomainError("word '" + w + "' is not in the language");
  if (w.empty()) {
    for (const auto& x : L.of_length(1)) r.words.insert(x);
    r.complete = true;
    return r;
  }
  auto occurs_inside = [&](const Word& x, std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p)
      if (x.compare(p, w.size(), w) == 0) return true;
    return false;
  };
  for (std::size_t m = 1; m <= max_len; ++m)
    for (const auto& x : L.of_length(w.size() + m)) {
      if (x.compare(0, w.size(), w) != 0 || x.compare(m, w.size(), w) != 0) continue;
      if (occurs_inside(x, 1, m)) continue;
      r.words.insert(side == ReturnSide::Left ? x.substr(0, m) : x.substr(w.size()));
    }
  r.complete = true;
  for (const auto& x : L.of_length(w.size() + max_len))
    if (x.compare(0, w.size(), w) == 0 && !occurs_inside(x, 1, max_len + 1)) {
      r.complete = false;
      break;
    }
  return r;
}

}  // namespace ietkit
