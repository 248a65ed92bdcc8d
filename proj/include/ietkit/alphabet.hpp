#pragma once

#include "field.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace ietkit {

using Letter = char;
using Word = std::string;

/// A finite totally ordered set of letters, stored in increasing order.
class OrderedAlphabet {
 public:
  OrderedAlphabet() { rank_.fill(-1); }

  explicit OrderedAlphabet(std::string letters) : letters_(std::move(letters)) {
    rank_.fill(-1);
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      auto c = static_cast<unsigned char>(letters_[i]);
      if (std::isspace(c) || c == 0) throw DomainError("invalid letter in alphabet");
      if (rank_[c] >= 0) throw DomainError(std::string("repeated letter '") + letters_[i] + "'");
      rank_[c] = static_cast<int>(i);
    }
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::string& str() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  bool contains(Letter a) const { return rank_[static_cast<unsigned char>(a)] >= 0; }

  std::size_t index_of(Letter a) const {
    int r = rank_[static_cast<unsigned char>(a)];
    if (r < 0) throw DomainError(std::string("letter '") + a + "' not in alphabet " + letters_);
    return static_cast<std::size_t>(r);
  }

  bool less(Letter a, Letter b) const { return index_of(a) < index_of(b); }

  /// Lexicographic comparison of words under this order.
  bool word_less(const Word& u, const Word& v) const {
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end(),
                                        [this](Letter a, Letter b) { return less(a, b); });
  }

  bool is_word(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [this](Letter c) { return contains(c); });
  }

  friend bool operator==(const OrderedAlphabet& a, const OrderedAlphabet& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::string letters_;
  std::array<int, 256> rank_{};
};

/// Permutation of an ordered alphabet, stored one-line: images[i] = pi(a_i).
class Perm {
 public:
  Perm() = default;

  Perm(OrderedAlphabet alphabet, std::string one_line)
      : alphabet_(std::move(alphabet)), images_(std::move(one_line)) {
    if (images_.size() != alphabet_.size()) throw DomainError("permutation size mismatch");
    std::vector<bool> seen(alphabet_.size(), false);
    for (Letter c : images_) {
      std::size_t j = alphabet_.index_of(c);
      if (seen[j]) throw DomainError("one-line permutation repeats a letter");
      seen[j] = true;
    }
  }

  static Perm identity(const OrderedAlphabet& a) { return Perm(a, a.str()); }

  /// Cycles such as {"ae", "bc"}; letters not mentioned are fixed.
  static Perm from_cycles(const OrderedAlphabet& a, const std::vector<std::string>& cycles) {
    std::string img = a.str();
    std::vector<bool> used(a.size(), false);
    for (const auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        std::size_t j = a.index_of(cyc[i]);
        if (used[j]) throw DomainError("letter repeated across cycles");
        used[j] = true;
        img[j] = cyc[(i + 1) % cyc.size()];
      }
    }
    return Perm(a, img);
  }

  const OrderedAlphabet& alphabet() const { return alphabet_; }
  const std::string& one_line() const { return images_; }
  std::size_t size() const { return images_.size(); }

  Letter operator()(Letter a) const { return images_[alphabet_.index_of(a)]; }

  Letter inverse(Letter b) const {
    auto pos = images_.find(b);
    if (pos == std::string::npos) throw DomainError(std::string("letter '") + b + "' not permuted");
    return alphabet_[pos];
  }

  /// Position of b in the one-line image sequence.
  std::size_t image_position(Letter b) const {
    auto pos = images_.find(b);
    if (pos == std::string::npos) throw DomainError(std::string("letter '") + b + "' not permuted");
    return pos;
  }

  bool is_identity() const { return images_ == alphabet_.str(); }

  /// pi(a_i) = a_{k+1-i}.
  bool is_symmetric() const {
    std::string rev = alphabet_.str();
    std::reverse(rev.begin(), rev.end());
    return images_ == rev;
  }

  /// Cycles in order of their least element, each starting at that element.
  std::vector<std::string> cycles(bool include_fixed = true) const {
    std::vector<std::string> out;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::string cyc;
      std::size_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        cyc.push_back(alphabet_[j]);
        j = alphabet_.index_of(images_[j]);
      }
      if (include_fixed || cyc.size() > 1) out.push_back(cyc);
    }
    return out;
  }

  std::string cycle_string() const {
    std::string s;
    for (const auto& c : cycles(true)) s += "(" + c + ")";
    return s;
  }

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.alphabet_ == b.alphabet_ && a.images_ == b.images_;
  }

 private:
  OrderedAlphabet alphabet_;
  std::string images_;
};

/// Parses "cba" (one-line) or "(ac)(b)" (cycles) against an alphabet.
inline Perm parse_perm(const OrderedAlphabet& a, const std::string& text) {
  if (!text.empty() && text.front() == '(') {
    std::vector<std::string> cycles;
    std::string cur;
    bool open = false;
    for (char c : text) {
      if (c == '(') {
        if (open) throw DomainError("nested '(' in cycle notation");
        open = true;
        cur.clear();
      } else if (c == ')') {
        if (!open) throw DomainError("unbalanced ')' in cycle notation");
        open = false;
        cycles.push_back(cur);
      } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
        cur.push_back(c);
      }
    }
    if (open) throw DomainError("unterminated cycle");
    return Perm::from_cycles(a, cycles);
  }
  std::string one;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') one.push_back(c);
  return Perm(a, one);
}

}  // namespace ietkit
