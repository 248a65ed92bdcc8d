#pragma once

#include "alphabet.hpp"
#include "words.hpp"

#include <map>

namespace ietkit {

/// Monoid morphism source* -> target*, given letter by letter.
class LetterMorphism {
 public:
  LetterMorphism() = default;

  LetterMorphism(OrderedAlphabet source, OrderedAlphabet target, std::map<Letter, Word> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    for (Letter c : source_) {
      auto it = images_.find(c);
      if (it == images_.end()) throw DomainError(std::string("no image for letter '") + c + "'");
      if (!target_.is_word(it->second))
        throw DomainError("image of '" + std::string(1, c) + "' leaves the target alphabet");
    }
    if (images_.size() != source_.size()) throw DomainError("images given for letters outside the source");
  }

  static LetterMorphism identity(const OrderedAlphabet& a) { return inclusion(a, a); }

  /// Letters of `source` map to themselves inside the larger `target`.
  static LetterMorphism inclusion(const OrderedAlphabet& source, const OrderedAlphabet& target) {
    std::map<Letter, Word> m;
    for (Letter c : source) m[c] = Word(1, c);
    return LetterMorphism(source, target, m);
  }

  /// iota: A -> A + B for disjoint B.
  static LetterMorphism disjoint_inclusion(const OrderedAlphabet& a, const OrderedAlphabet& b) {
    return inclusion(a, OrderedAlphabet(a.str() + b.str()));
  }

  /// a -> ab, other letters fixed. A fresh b is appended to the target alphabet.
  static LetterMorphism alpha(const OrderedAlphabet& a_alph, Letter a, Letter b) {
    return elementary(a_alph, a, b, false);
  }

  /// a -> ba, other letters fixed.
  static LetterMorphism alpha_tilde(const OrderedAlphabet& a_alph, Letter a, Letter b) {
    return elementary(a_alph, a, b, true);
  }

  /// Letter-to-letter bijection.
  static LetterMorphism rename(const OrderedAlphabet& source, const std::map<Letter, Letter>& m) {
    std::string tgt;
    std::map<Letter, Word> img;
    for (Letter c : source) {
      Letter d = m.at(c);
      tgt.push_back(d);
      img[c] = Word(1, d);
    }
    return LetterMorphism(source, OrderedAlphabet(tgt), img);
  }

  const OrderedAlphabet& source() const { return source_; }
  const OrderedAlphabet& target() const { return target_; }
  const std::map<Letter, Word>& images() const { return images_; }

  const Word& image(Letter c) const {
    auto it = images_.find(c);
    if (it == images_.end()) throw DomainError(std::string("letter '") + c + "' not in morphism source");
    return it->second;
  }

  Word operator()(const Word& w) const {
    Word out;
    for (Letter c : w) out += image(c);
    return out;
  }

  bool is_identity_like() const {
    for (const auto& [c, w] : images_)
      if (w != Word(1, c)) return false;
    return true;
  }

  friend bool operator==(const LetterMorphism& x, const LetterMorphism& y) {
    return x.source_ == y.source_ && x.target_ == y.target_ && x.images_ == y.images_;
  }

 private:
  static LetterMorphism elementary(const OrderedAlphabet& alph, Letter a, Letter b, bool tilde) {
    alph.index_of(a);
    OrderedAlphabet tgt = alph.contains(b) ? alph : OrderedAlphabet(alph.str() + b);
    std::map<Letter, Word> m;
    for (Letter c : alph) m[c] = Word(1, c);
    m[a] = tilde ? Word{b, a} : Word{a, b};
    return LetterMorphism(alph, tgt, m);
  }

  OrderedAlphabet source_;
  OrderedAlphabet target_;
  std::map<Letter, Word> images_;
};

/// outer o inner; every letter produced by inner must lie in outer's source.
inline LetterMorphism compose(const LetterMorphism& outer, const LetterMorphism& inner) {
  for (Letter c : inner.target())
    if (!outer.source().contains(c))
      throw DomainError(std::string("composition mismatch at letter '") + c + "'");
  std::map<Letter, Word> m;
  for (Letter c : inner.source()) m[c] = outer(inner.image(c));
  return LetterMorphism(inner.source(), outer.target(), m);
}

/// The morphism described by a clustering transport step.
inline LetterMorphism transport_morphism(const OrderedAlphabet& order, const TransportStep& s) {
  switch (s.kind) {
    case TransportStep::Kind::Rename:
      return LetterMorphism::rename(order, s.rename);
    case TransportStep::Kind::Alpha:
      return LetterMorphism::alpha(order, s.a, s.b);
    case TransportStep::Kind::AlphaTilde:
      return LetterMorphism::alpha_tilde(order, s.a, s.b);
    case TransportStep::Kind::Inclusion:
      return LetterMorphism::disjoint_inclusion(order, OrderedAlphabet(s.added));
  }
  throw DomainError("unknown transport step");
}

}  // namespace ietkit
