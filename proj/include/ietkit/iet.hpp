#pragma once

#include "alphabet.hpp"
#include "field.hpp"

#include <optional>
#include <vector>

namespace ietkit {

/// Interval exchange T on [origin, origin + sum(lengths)).
///
/// Letters are laid out left to right in alphabet order; their images are laid
/// out left to right in `image_order`, which is the one-line form of pi.
class Iet {
 public:
  Iet() = default;

  Iet(OrderedAlphabet alphabet, std::vector<FieldValue> lengths, std::string image_order,
      FieldValue origin = 0)
      : alphabet_(std::move(alphabet)),
        lengths_(std::move(lengths)),
        image_order_(std::move(image_order)),
        origin_(std::move(origin)) {
    if (alphabet_.empty()) throw DomainError("IET needs at least one letter");
    if (lengths_.size() != alphabet_.size()) throw DomainError("one length per letter required");
    Perm check(alphabet_, image_order_);  // validates the one-line form
    (void)check;
    for (const auto& l : lengths_)
      if (l.sign() <= 0) throw DomainError("interval lengths must be positive");
    build();
  }

  Iet(const Perm& perm, std::vector<FieldValue> lengths, FieldValue origin = 0)
      : Iet(perm.alphabet(), std::move(lengths), perm.one_line(), std::move(origin)) {}

  std::size_t size() const { return alphabet_.size(); }
  const OrderedAlphabet& alphabet() const { return alphabet_; }
  const std::vector<FieldValue>& lengths() const { return lengths_; }
  const std::string& image_order() const { return image_order_; }
  Perm perm() const { return Perm(alphabet_, image_order_); }
  const FieldValue& origin() const { return origin_; }
  const FieldValue& end() const { return dom_[size()]; }
  Interval domain() const { return {origin_, end()}; }
  FieldValue total_length() const { return end() - origin_; }

  const FieldValue& length(Letter a) const { return lengths_[alphabet_.index_of(a)]; }
  const FieldValue& translation(Letter a) const { return tau_[alphabet_.index_of(a)]; }

  Interval domain_interval(Letter a) const {
    std::size_t i = alphabet_.index_of(a);
    return {dom_[i], dom_[i + 1]};
  }

  Interval image_interval(Letter a) const {
    std::size_t i = alphabet_.index_of(a);
    return {dom_[i] + tau_[i], dom_[i + 1] + tau_[i]};
  }

  /// Left endpoints of the domain intervals, plus end() as the last entry.
  const std::vector<FieldValue>& domain_cuts() const { return dom_; }
  /// Left endpoints of the image intervals in image order, plus end().
  const std::vector<FieldValue>& image_cuts() const { return img_; }

  std::size_t index_at(const FieldValue& x) const {
    if (!(origin_ <= x && x < end())) throw DomainError("point " + x.to_string() + " outside domain");
    auto it = std::upper_bound(dom_.begin(), dom_.end(), x);
    return static_cast<std::size_t>(it - dom_.begin()) - 1;
  }

  Letter letter_at(const FieldValue& x) const { return alphabet_[index_at(x)]; }

  FieldValue apply(const FieldValue& x) const { return x + tau_[index_at(x)]; }

  FieldValue apply_inverse(const FieldValue& y) const {
    if (!(origin_ <= y && y < end())) throw DomainError("point " + y.to_string() + " outside domain");
    auto it = std::upper_bound(img_.begin(), img_.end(), y);
    std::size_t pos = static_cast<std::size_t>(it - img_.begin()) - 1;
    return y - tau_[alphabet_.index_of(image_order_[pos])];
  }

  /// Letter whose image interval contains y.
  Letter image_letter_at(const FieldValue& y) const {
    if (!(origin_ <= y && y < end())) throw DomainError("point " + y.to_string() + " outside domain");
    return letter_before(y);
  }

  /// D(T): interior left endpoints of the domain intervals, increasing.
  std::vector<FieldValue> discontinuities() const { return {dom_.begin() + 1, dom_.end() - 1}; }

  /// D(T^{-1}): interior left endpoints of the image intervals, increasing.
  std::vector<FieldValue> discontinuities_inverse() const { return {img_.begin() + 1, img_.end() - 1}; }

  bool is_discontinuity(const FieldValue& x) const {
    if (!(origin_ < x && x < end())) return false;
    return std::binary_search(dom_.begin() + 1, dom_.end() - 1, x);
  }

  friend bool operator==(const Iet& a, const Iet& b) {
    return a.alphabet_ == b.alphabet_ && a.lengths_ == b.lengths_ &&
           a.image_order_ == b.image_order_ && a.origin_ == b.origin_;
  }

 private:
  Letter letter_before(const FieldValue& y) const {
    auto it = std::upper_bound(img_.begin(), img_.end(), y);
    return image_order_[static_cast<std::size_t>(it - img_.begin()) - 1];
  }

  void build() {
    const std::size_t k = size();
    dom_.assign(k + 1, origin_);
    for (std::size_t i = 0; i < k; ++i) dom_[i + 1] = dom_[i] + lengths_[i];
    img_.assign(k + 1, origin_);
    std::vector<FieldValue> img_left(k);
    for (std::size_t p = 0; p < k; ++p) {
      std::size_t i = alphabet_.index_of(image_order_[p]);
      img_left[i] = img_[p];
      img_[p + 1] = img_[p] + lengths_[i];
    }
    tau_.resize(k);
    for (std::size_t i = 0; i < k; ++i) tau_[i] = img_left[i] - dom_[i];
  }

  OrderedAlphabet alphabet_;
  std::vector<FieldValue> lengths_;
  std::string image_order_;
  FieldValue origin_;
  std::vector<FieldValue> dom_;
  std::vector<FieldValue> img_;
  std::vector<FieldValue> tau_;
};

/// Contiguous sub-alphabet a_first..a_last (0-based, inclusive).
struct Block {
  std::size_t first = 0;
  std::size_t last = 0;
  std::string letters;
  std::size_t size() const { return last - first + 1; }
  friend bool operator==(const Block&, const Block&) = default;
};

struct Connection {
  FieldValue from;  // in D(T^{-1})
  FieldValue to;    // in D(T)
  std::size_t n = 0;
  friend bool operator==(const Connection&, const Connection&) = default;
};

/// D(T) intersected with D(T^{-1}).
inline std::vector<FieldValue> zero_connections(const Iet& t) {
  std::vector<FieldValue> out;
  for (const auto& y : t.discontinuities_inverse())
    if (t.is_discontinuity(y)) out.push_back(y);
  return out;
}

/// Pieces of the domain delimited by the 0-connections.
inline std::vector<Interval> regions(const Iet& t) {
  std::vector<Interval> out;
  FieldValue left = t.origin();
  for (const auto& c : zero_connections(t)) {
    out.push_back({left, c});
    left = c;
  }
  out.push_back({left, t.end()});
  return out;
}

/// Whether the block a_first..a_last satisfies T(I_B) = I_B.
inline bool is_invariant_block(const Iet& t, std::size_t first, std::size_t last) {
  const auto& order = t.image_order();
  std::size_t lo = order.size(), hi = 0;
  for (std::size_t i = first; i <= last; ++i) {
    std::size_t pos = order.find(t.alphabet()[i]);
    lo = std::min(lo, pos);
    hi = std::max(hi, pos);
  }
  return hi - lo == last - first && t.image_cuts()[lo] == t.domain_cuts()[first];
}

/// All proper contiguous invariant blocks, ordered by (first, last).
inline std::vector<Block> invariant_subalphabets(const Iet& t) {
  std::vector<Block> out;
  const std::size_t k = t.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      if (i == 0 && j + 1 == k) continue;
      if (is_invariant_block(t, i, j)) out.push_back({i, j, t.alphabet().str().substr(i, j - i + 1)});
    }
  return out;
}

/// Triples (x, y, n) with x in D(T^{-1}), y = T^n(x) in D(T), n <= max_iter and
/// minimal for its x. Sorted by n, then x.
inline std::vector<Connection> find_connections(const Iet& t, std::size_t max_iter) {
  std::vector<Connection> out;
  for (const auto& x : t.discontinuities_inverse()) {
    FieldValue y = x;
    for (std::size_t n = 0; n <= max_iter; ++n) {
      if (t.is_discontinuity(y)) {
        out.push_back({x, y, n});
        break;
      }
      y = t.apply(y);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Connection& a, const Connection& b) { return a.n < b.n; });
  return out;
}

/// First connection within the bound, if any. Absence is not a proof of the Keane property.
inline std::optional<Connection> keane_probe(const Iet& t, std::size_t max_iter) {
  auto all = find_connections(t, max_iter);
  if (all.empty()) return std::nullopt;
  return all.front();
}

/// Orbit coding x, T(x), ... as a word of length n.
inline Word trajectory(const Iet& t, FieldValue x, std::size_t n) {
  Word w;
  w.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = t.index_at(x);
    w.push_back(t.alphabet()[j]);
    x = x + t.translation(t.alphabet()[j]);
  }
  return w;
}

}  // namespace ietkit
