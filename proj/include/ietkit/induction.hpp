#pragma once

#include "coding.hpp"
#include "iet.hpp"
#include "morphism.hpp"

#include <optional>
#include <set>

namespace ietkit {

/// Iteration bounds. max_orbit bounds applications of T per orbit query.
struct Caps {
  std::size_t max_orbit = 1000000;
  std::size_t max_steps = 10000;
};

/// Z(T) = [l, r') with r' the rightmost point of D(T) u D(T^{-1}).
inline Interval z_interval(const Iet& t) {
  if (t.size() < 2) throw DomainError("Z(T) needs at least two letters");
  return {t.origin(), max(t.discontinuities().back(), t.discontinuities_inverse().back())};
}

/// Y(T) = [l', r) with l' the leftmost point of D(T) u D(T^{-1}).
inline Interval y_interval(const Iet& t) {
  if (t.size() < 2) throw DomainError("Y(T) needs at least two letters");
  return {min(t.discontinuities().front(), t.discontinuities_inverse().front()), t.end()};
}

/// Times to reach the open interior of J; absent when the orbit is periodic and never enters.
struct ReturnTimes {
  std::optional<std::size_t> backward;  // min n >= 0 with T^{-n}(z) in (u,v)
  std::optional<std::size_t> forward;   // min n > 0 with T^n(z) in (u,v)
};

inline ReturnTimes return_times(const Iet& t, const Interval& j, const FieldValue& z, std::size_t cap) {
  ReturnTimes rt;
  FieldValue y = z;
  for (std::size_t n = 1;; ++n) {
    if (n > cap) throw CapExceeded("forward return time exceeds cap from " + z.to_string());
    y = t.apply(y);
    if (j.contains_open(y)) {
      rt.forward = n;
      break;
    }
    if (y == z) break;
  }
  if (j.contains_open(z)) {
    rt.backward = 0;
    return rt;
  }
  y = z;
  for (std::size_t n = 1;; ++n) {
    if (n > cap) throw CapExceeded("backward return time exceeds cap from " + z.to_string());
    y = t.apply_inverse(y);
    if (j.contains_open(y)) {
      rt.backward = n;
      break;
    }
    if (y == z) break;
  }
  return rt;
}

/// N_{J,T}(z) = {T^i(z) : -rho^- <= i < rho^+}; the whole orbit when it is periodic and misses int(J).
inline std::vector<FieldValue> orbit_segment(const Iet& t, const Interval& j, const FieldValue& z,
                                             std::size_t cap) {
  ReturnTimes rt = return_times(t, j, z, cap);
  std::vector<FieldValue> out{z};
  if (!rt.forward || !rt.backward) {
    for (FieldValue y = t.apply(z); !(y == z); y = t.apply(y)) out.push_back(y);
    return out;
  }
  FieldValue y = z;
  for (std::size_t i = 1; i < *rt.forward; ++i) out.push_back(y = t.apply(y));
  y = z;
  for (std::size_t i = 1; i <= *rt.backward; ++i) out.push_back(y = t.apply_inverse(y));
  return out;
}

namespace detail {

inline void sort_unique(std::vector<FieldValue>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Regions reachable from the region containing x; a T-invariant union.
inline std::vector<Interval> region_closure(const Iet& t, const FieldValue& x) {
  auto regs = regions(t);
  auto region_of = [&](const FieldValue& y) {
    for (std::size_t i = 0; i < regs.size(); ++i)
      if (regs[i].contains(y)) return i;
    throw std::logic_error("point outside every region");
  };
  std::vector<std::vector<std::size_t>> next(regs.size());
  for (Letter a : t.alphabet())
    next[region_of(t.domain_interval(a).left)].push_back(region_of(t.image_interval(a).left));
  std::vector<bool> seen(regs.size(), false);
  std::vector<std::size_t> stack{region_of(x)};
  seen[stack.back()] = true;
  while (!stack.empty()) {
    std::size_t r = stack.back();
    stack.pop_back();
    for (std::size_t s : next[r])
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
  }
  std::vector<Interval> out;
  for (std::size_t i = 0; i < regs.size(); ++i)
    if (seen[i]) out.push_back(regs[i]);
  return out;
}

}  // namespace detail

/// Div(J,T): union of N_{J,T}(gamma) over gamma in D(T), sorted.
inline std::vector<FieldValue> div_set(const Iet& t, const Interval& j, std::size_t cap) {
  std::vector<FieldValue> out;
  for (const auto& g : t.discontinuities()) {
    auto seg = orbit_segment(t, j, g, cap);
    out.insert(out.end(), seg.begin(), seg.end());
  }
  detail::sort_unique(out);
  return out;
}

/// Whether x lies in Div(J,T). Discontinuities whose region closure cannot reach
/// x are skipped; when the closure also misses int(J), N(gamma) is the whole orbit
/// and x is searched along it in both directions.
inline bool in_div(const Iet& t, const Interval& j, const FieldValue& x, std::size_t cap) {
  for (const auto& g : t.discontinuities()) {
    if (g == x) return true;
    bool reaches_x = false, meets_j = false;
    for (const auto& r : detail::region_closure(t, g)) {
      reaches_x = reaches_x || r.contains(x);
      meets_j = meets_j || max(r.left, j.left) < min(r.right, j.right);
    }
    if (!reaches_x) continue;
    if (meets_j) {
      auto seg = orbit_segment(t, j, g, cap);
      if (std::find(seg.begin(), seg.end(), x) != seg.end()) return true;
      continue;
    }
    FieldValue f = g, b = g;
    for (std::size_t n = 1;; ++n) {
      if (n > cap) throw CapExceeded("orbit search for " + x.to_string() + " exceeds cap");
      f = t.apply(f);
      b = t.apply_inverse(b);
      if (f == x || b == x) return true;
      if (f == g) break;
    }
  }
  return false;
}

/// u and v lie in Div(J,T) u {l, r}.
inline bool is_admissible(const Iet& t, const Interval& j, std::size_t cap) {
  if (j.empty() || !t.domain().contains(j)) throw DomainError("interval not inside the domain");
  for (const auto& e : {j.left, j.right})
    if (!(e == t.origin()) && !(e == t.end()) && !in_div(t, j, e, cap)) return false;
  return true;
}

struct FirstReturn {
  FieldValue point;
  std::size_t time = 0;
  Word itinerary;
};

/// Brute force: iterate T from x in J until the orbit is back in J.
inline FirstReturn first_return_point(const Iet& t, const Interval& j, const FieldValue& x, std::size_t cap) {
  if (!j.contains(x)) throw DomainError("start point outside J");
  FirstReturn fr{x, 0, {}};
  do {
    if (fr.time >= cap) throw CapExceeded("first return exceeds cap from " + x.to_string());
    Letter a = t.letter_at(fr.point);
    fr.itinerary.push_back(a);
    fr.point = fr.point + t.translation(a);
    ++fr.time;
  } while (!j.contains(fr.point));
  return fr;
}

/// Piece of the first-return partition of J: points of `domain` follow `itinerary`
/// and land at x + shift.
struct ReturnPiece {
  Interval domain;
  Word itinerary;
  FieldValue shift;
};

/// First-return partition of T on J, sorted by left endpoint.
inline std::vector<ReturnPiece> induced_pieces(const Iet& t, const Interval& j, std::size_t cap) {
  if (j.empty() || !t.domain().contains(j)) throw DomainError("interval not inside the domain");
  struct Item {
    Interval x;
    FieldValue shift;
    Word it;
  };
  std::vector<ReturnPiece> done;
  std::vector<Item> work{{j, 0, {}}};
  while (!work.empty()) {
    Item cur = std::move(work.back());
    work.pop_back();
    if (cur.it.size() >= cap) throw CapExceeded("first-return partition exceeds cap");
    Interval y = cur.x.shifted(cur.shift);
    for (Letter a : t.alphabet()) {
      Interval ya = y.intersect(t.domain_interval(a));
      if (ya.empty()) continue;
      FieldValue s = cur.shift + t.translation(a);
      Interval xa = ya.shifted(-cur.shift);
      Word it = cur.it + a;
      Interval img = xa.shifted(s);
      Interval in = img.intersect(j);
      if (!in.empty()) done.push_back({in.shifted(-s), it, s});
      Interval below{img.left, min(img.right, j.left)}, above{max(img.left, j.right), img.right};
      if (!below.empty()) work.push_back({below.shifted(-s), s, it});
      if (!above.empty()) work.push_back({above.shifted(-s), s, it});
    }
  }
  std::sort(done.begin(), done.end(),
            [](const ReturnPiece& a, const ReturnPiece& b) { return a.domain.left < b.domain.left; });
  std::vector<ReturnPiece> merged;
  for (auto& p : done) {
    if (!merged.empty() && merged.back().itinerary == p.itinerary && merged.back().domain.right == p.domain.left)
      merged.back().domain.right = p.domain.right;
    else
      merged.push_back(std::move(p));
  }
  return merged;
}

enum class StepKind {
  RightTopLonger,
  RightBottomLonger,
  RightMerge,
  LeftTopLonger,
  LeftBottomLonger,
  LeftMerge,
  Split,
  Reorder
};

enum class SplitBranch { None, KeptBlock, KeptComplement };
enum class Side { Right, Left };

inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::RightTopLonger: return "RightTopLonger";
    case StepKind::RightBottomLonger: return "RightBottomLonger";
    case StepKind::RightMerge: return "RightMerge";
    case StepKind::LeftTopLonger: return "LeftTopLonger";
    case StepKind::LeftBottomLonger: return "LeftBottomLonger";
    case StepKind::LeftMerge: return "LeftMerge";
    case StepKind::Split: return "Split";
    case StepKind::Reorder: return "Reorder";
  }
  return "?";
}

inline bool is_rauzy(StepKind k) { return k != StepKind::Split && k != StepKind::Reorder; }

/// One step T -> T'. The morphism maps the letters of T' to words over T's alphabet.
///
/// Coordinates: a point y of T's domain corresponds to before(y) = y + low_shift
/// for y < cut and y + high_shift otherwise. Both shifts are 0 except for a glued
/// complement and for a circular reorder.
struct StepRecord {
  StepKind kind = StepKind::RightTopLonger;
  std::string alphabet_before;
  Iet after;
  LetterMorphism morphism;
  std::string block;  // Split only
  SplitBranch branch = SplitBranch::None;
  std::size_t rotation = 0;  // Reorder only
  FieldValue cut;
  FieldValue low_shift;
  FieldValue high_shift;

  bool glued() const { return kind == StepKind::Split && branch == SplitBranch::KeptComplement && !high_shift.is_zero(); }

  FieldValue to_before(const FieldValue& y) const { return y + (y < cut ? low_shift : high_shift); }

  FieldValue from_before(const FieldValue& x) const {
    FieldValue y = x - low_shift;
    if (y < cut && after.domain().contains(y)) return y;
    y = x - high_shift;
    if (!(y < cut) && after.domain().contains(y)) return y;
    throw DomainError("point " + x.to_string() + " is not in the domain after the step");
  }

  /// The new domain as translated pieces: (interval in new coordinates, shift to old).
  std::vector<std::pair<Interval, FieldValue>> pieces() const {
    std::vector<std::pair<Interval, FieldValue>> out;
    Interval d = after.domain();
    Interval lo{d.left, min(d.right, max(d.left, cut))}, hi{max(d.left, min(d.right, cut)), d.right};
    if (!lo.empty()) out.push_back({lo, low_shift});
    if (!hi.empty()) out.push_back({hi, high_shift});
    return out;
  }

  friend bool operator==(const StepRecord& a, const StepRecord& b) {
    return a.kind == b.kind && a.alphabet_before == b.alphabet_before && a.after == b.after &&
           a.morphism == b.morphism && a.block == b.block && a.branch == b.branch &&
           a.rotation == b.rotation && a.to_before(a.cut) == b.to_before(a.cut) &&
           a.pieces() == b.pieces();
  }
};

/// Expected (alphabet, image order) after a Rauzy step, read off letter by letter.
struct RauzyFormula {
  StepKind kind;
  std::string alphabet;
  std::string image_order;
};

inline StepKind rauzy_kind(const Iet& t, Side side) {
  if (t.size() < 2) throw DomainError("a Rauzy step needs at least two letters");
  const auto& A = t.alphabet().str();
  const auto& img = t.image_order();
  Letter e = side == Side::Right ? A.back() : A.front();
  Letter p = side == Side::Right ? img.back() : img.front();
  if (e == p) throw DomainError(std::string("extreme letter '") + e + "' is fixed; split it off first");
  int c = (t.length(e) - t.length(p)).sign();
  if (side == Side::Right)
    return c > 0 ? StepKind::RightTopLonger : (c < 0 ? StepKind::RightBottomLonger : StepKind::RightMerge);
  return c > 0 ? StepKind::LeftTopLonger : (c < 0 ? StepKind::LeftBottomLonger : StepKind::LeftMerge);
}

inline RauzyFormula rauzy_formula(const Iet& t, Side side) {
  StepKind kind = rauzy_kind(t, side);
  std::string A = t.alphabet().str();
  std::string img = t.image_order();
  const bool right = side == Side::Right;
  Letter e = right ? A.back() : A.front();
  Letter p = right ? img.back() : img.front();
  auto erase = [](std::string& s, Letter c) { s.erase(s.find(c), 1); };
  switch (kind) {
    case StepKind::RightTopLonger:
      erase(img, p);
      img.insert(img.find(e) + 1, 1, p);
      break;
    case StepKind::LeftTopLonger:
      erase(img, p);
      img.insert(img.find(e), 1, p);
      break;
    case StepKind::RightBottomLonger:
      erase(A, e);
      A.insert(A.find(p) + 1, 1, e);
      break;
    case StepKind::LeftBottomLonger:
      erase(A, e);
      A.insert(A.find(p), 1, e);
      break;
    case StepKind::RightMerge:
    case StepKind::LeftMerge:
      erase(A, e);
      erase(img, p);
      img[img.find(e)] = p;
      break;
    default:
      break;
  }
  return {kind, A, img};
}

/// Rauzy step built from the first-return partition of Z(T) (right) or Y(T) (left).
inline StepRecord rauzy_step(const Iet& t, Side side) {
  StepKind kind = rauzy_kind(t, side);
  Interval j = side == Side::Right ? z_interval(t) : y_interval(t);
  auto pieces = induced_pieces(t, j, 3);
  std::set<Letter> single;
  for (const auto& pc : pieces) {
    if (pc.itinerary.size() > 2) throw std::logic_error("Rauzy step return time exceeds 2");
    if (pc.itinerary.size() == 1) single.insert(pc.itinerary[0]);
  }
  std::string names;
  std::vector<FieldValue> lengths;
  std::map<Letter, Word> images;
  std::vector<std::pair<FieldValue, Letter>> landing;
  for (const auto& pc : pieces) {
    Letter name = pc.itinerary[0];
    if (pc.itinerary.size() == 2 && single.count(name)) name = pc.itinerary[1];
    if (names.find(name) != std::string::npos) throw std::logic_error("Rauzy step piece names collide");
    names.push_back(name);
    lengths.push_back(pc.domain.length());
    images[name] = pc.itinerary;
    landing.push_back({pc.domain.left + pc.shift, name});
  }
  std::sort(landing.begin(), landing.end());
  std::string img;
  for (const auto& [x, c] : landing) img.push_back(c);
  OrderedAlphabet na(names);
  StepRecord rec;
  rec.kind = kind;
  rec.alphabet_before = t.alphabet().str();
  rec.after = Iet(na, lengths, img, j.left);
  rec.morphism = LetterMorphism(na, t.alphabet(), images);
  RauzyFormula f = rauzy_formula(t, side);
  if (f.alphabet != names || f.image_order != img)
    throw std::logic_error("geometric Rauzy step disagrees with the letter formula");
  return rec;
}

inline StepRecord right_step(const Iet& t) { return rauzy_step(t, Side::Right); }
inline StepRecord left_step(const Iet& t) { return rauzy_step(t, Side::Left); }

inline Interval block_interval(const Iet& t, const Block& b) {
  return {t.domain_cuts()[b.first], t.domain_cuts()[b.last + 1]};
}

/// The contiguous block spelled by `letters` (in alphabet order).
inline Block block_from_letters(const Iet& t, const std::string& letters) {
  if (letters.empty()) throw DomainError("empty block");
  std::size_t first = t.alphabet().index_of(letters.front());
  std::size_t last = first + letters.size() - 1;
  if (last >= t.size() || t.alphabet().str().substr(first, letters.size()) != letters)
    throw DomainError("block '" + letters + "' is not contiguous in the alphabet");
  return {first, last, letters};
}

struct SplitResult {
  StepRecord kept_block;       // S_B on I_B
  StepRecord kept_complement;  // S_{complement}, glued when I_B is interior
};

inline SplitResult split(const Iet& t, const Block& b) {
  const std::size_t k = t.size();
  if (b.last >= k || b.first > b.last) throw DomainError("block out of range");
  if (b.first == 0 && b.last + 1 == k) throw DomainError("block must be proper");
  if (!is_invariant_block(t, b.first, b.last)) throw DomainError("block '" + b.letters + "' is not invariant");
  const std::string& A = t.alphabet().str();
  std::string inside = A.substr(b.first, b.size());
  std::string outside = A.substr(0, b.first) + A.substr(b.last + 1);
  Interval ib = block_interval(t, b);
  auto filtered = [&](const std::string& keep) {
    std::string s;
    for (Letter c : t.image_order())
      if (keep.find(c) != std::string::npos) s.push_back(c);
    return s;
  };
  auto lengths_of = [&](const std::string& keep) {
    std::vector<FieldValue> v;
    for (Letter c : keep) v.push_back(t.length(c));
    return v;
  };

  SplitResult r;
  StepRecord& kb = r.kept_block;
  kb.kind = StepKind::Split;
  kb.alphabet_before = A;
  kb.block = inside;
  kb.branch = SplitBranch::KeptBlock;
  kb.after = Iet(OrderedAlphabet(inside), lengths_of(inside), filtered(inside), ib.left);
  kb.morphism = LetterMorphism::inclusion(kb.after.alphabet(), t.alphabet());

  StepRecord& kc = r.kept_complement;
  kc.kind = StepKind::Split;
  kc.alphabet_before = A;
  kc.block = inside;
  kc.branch = SplitBranch::KeptComplement;
  FieldValue origin = b.first == 0 ? ib.right : t.origin();
  kc.after = Iet(OrderedAlphabet(outside), lengths_of(outside), filtered(outside), origin);
  kc.morphism = LetterMorphism::inclusion(kc.after.alphabet(), t.alphabet());
  if (b.first > 0 && b.last + 1 < k) {
    kc.cut = ib.left;
    kc.high_shift = ib.length();
  }
  return r;
}

/// Same dynamics with the alphabet rotated so that a_i comes first; the cut must be a 0-connection.
inline StepRecord circular_reorder(const Iet& t, std::size_t i) {
  if (i >= t.size()) throw DomainError("rotation index out of range");
  StepRecord rec;
  rec.kind = StepKind::Reorder;
  rec.alphabet_before = t.alphabet().str();
  rec.rotation = i;
  if (i == 0) {
    rec.after = t;
    rec.morphism = LetterMorphism::identity(t.alphabet());
    return rec;
  }
  const FieldValue c = t.domain_cuts()[i];
  auto zc = zero_connections(t);
  if (std::find(zc.begin(), zc.end(), c) == zc.end())
    throw DomainError("cut point " + c.to_string() + " is not a 0-connection");
  const auto& ic = t.image_cuts();
  std::size_t q = static_cast<std::size_t>(std::find(ic.begin(), ic.end(), c) - ic.begin());
  const std::string& A = t.alphabet().str();
  const std::string& img = t.image_order();
  std::vector<FieldValue> lengths(t.lengths().begin() + static_cast<long>(i), t.lengths().end());
  lengths.insert(lengths.end(), t.lengths().begin(), t.lengths().begin() + static_cast<long>(i));
  OrderedAlphabet na(A.substr(i) + A.substr(0, i));
  rec.after = Iet(na, lengths, img.substr(q) + img.substr(0, q), t.origin());
  rec.morphism = LetterMorphism::inclusion(na, t.alphabet());
  FieldValue span = t.end() - c;
  rec.cut = t.origin() + span;
  rec.low_shift = c - t.origin();
  rec.high_shift = -span;
  return rec;
}

/// Piecewise translation from the current coordinates back to the original ones.
class CoordinateMap {
 public:
  struct Piece {
    Interval current;
    FieldValue shift;  // original = current + shift
  };

  CoordinateMap() = default;
  explicit CoordinateMap(const Interval& domain) : pieces_{{domain, 0}} {}

  void advance(const StepRecord& s) {
    std::vector<Piece> next;
    for (const auto& [iv, sh] : s.pieces())
      for (const auto& q : pieces_) {
        Interval before = iv.shifted(sh).intersect(q.current);
        if (!before.empty()) next.push_back({before.shifted(-sh), sh + q.shift});
      }
    std::sort(next.begin(), next.end(), [](const Piece& a, const Piece& b) { return a.current.left < b.current.left; });
    pieces_ = std::move(next);
  }

  FieldValue to_original(const FieldValue& y) const {
    for (const auto& p : pieces_)
      if (p.current.contains(y)) return y + p.shift;
    throw DomainError("point outside the tracked domain");
  }

  /// The current domain in original coordinates, adjacent pieces merged.
  std::vector<Interval> original_domain() const {
    std::vector<Interval> v;
    for (const auto& p : pieces_) v.push_back(p.current.shifted(p.shift));
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.left < b.left; });
    std::vector<Interval> out;
    for (const auto& iv : v) {
      if (!out.empty() && out.back().right == iv.left)
        out.back().right = iv.right;
      else
        out.push_back(iv);
    }
    return out;
  }

  const std::vector<Piece>& pieces() const { return pieces_; }

 private:
  std::vector<Piece> pieces_;
};

struct DiscardedBranch {
  std::size_t step = 0;
  Iet iet;
  friend bool operator==(const DiscardedBranch&, const DiscardedBranch&) = default;
};

struct InductionChain {
  Word word;
  Iet initial;
  Interval target;  // I_w in the initial coordinates
  std::vector<StepRecord> steps;
  Iet final_map;
  LetterMorphism composed;  // final alphabet -> initial alphabet
  std::vector<DiscardedBranch> discarded;
  FieldValue offset;  // initial coordinate = final coordinate + offset

  const Iet& before(std::size_t i) const { return i == 0 ? initial : steps[i - 1].after; }

  /// Domain of every intermediate IET (after each step) in initial coordinates.
  std::vector<std::vector<Interval>> domains_in_initial() const {
    std::vector<std::vector<Interval>> out;
    CoordinateMap m(initial.domain());
    for (const auto& s : steps) {
      m.advance(s);
      out.push_back(m.original_domain());
    }
    return out;
  }

  friend bool operator==(const InductionChain& a, const InductionChain& b) {
    return a.word == b.word && a.initial == b.initial && a.target == b.target && a.steps == b.steps &&
           a.final_map == b.final_map && a.composed == b.composed && a.discarded == b.discarded &&
           a.offset == b.offset;
  }
};

namespace detail {

inline const Block* smallest_block(const std::vector<const Block*>& v) {
  const Block* best = nullptr;
  for (const Block* b : v)
    if (!best || b->size() < best->size() || (b->size() == best->size() && b->first < best->first)) best = b;
  return best;
}

}  // namespace detail

/// Steps from T to its first-return map on I_w.
inline InductionChain induce_to_cylinder(const Iet& t, const Word& w, const Caps& caps = {}) {
  InductionChain chain;
  chain.word = w;
  chain.initial = t;
  chain.target = cylinder_of(t, w);
  Iet s = t;
  Interval j = chain.target;
  CoordinateMap coords(t.domain());
  while (!(s.domain() == j)) {
    if (chain.steps.size() >= caps.max_steps) throw CapExceeded("induction chain exceeds the step cap");
    if (s.size() < 2) throw std::logic_error("single-letter IET strictly larger than the target");
    Side side;
    if (z_interval(s).contains(j))
      side = Side::Right;
    else if (y_interval(s).contains(j))
      side = Side::Left;
    else
      throw DomainError("target interval is in neither Z(T) nor Y(T)");
    const std::string& A = s.alphabet().str();
    Letter ext = side == Side::Right ? A.back() : A.front();
    Letter p = side == Side::Right ? s.image_order().back() : s.image_order().front();

    StepRecord rec;
    std::optional<Iet> dropped;
    if (ext != p && s.length(ext) == s.length(p)) {
      rec = rauzy_step(s, side);
    } else {
      auto blocks = invariant_subalphabets(s);
      std::vector<const Block*> disjoint, keepers;
      for (const auto& b : blocks) {
        Interval ib = block_interval(s, b);
        if (ib.intersect(j).empty())
          disjoint.push_back(&b);
        else if (ib.contains(j) && b.letters.find(ext) == std::string::npos)
          keepers.push_back(&b);
      }
      if (const Block* b = detail::smallest_block(disjoint)) {
        auto sp = split(s, *b);
        rec = sp.kept_complement;
        dropped = sp.kept_block.after;
      } else if (const Block* b2 = detail::smallest_block(keepers)) {
        auto sp = split(s, *b2);
        rec = sp.kept_block;
        dropped = sp.kept_complement.after;
      } else {
        rec = rauzy_step(s, side);
      }
    }
    FieldValue len = j.length();
    j.left = rec.from_before(j.left);
    j.right = j.left + len;
    coords.advance(rec);
    if (dropped) chain.discarded.push_back({chain.steps.size(), *dropped});
    s = rec.after;
    chain.steps.push_back(std::move(rec));
  }
  chain.final_map = s;
  chain.offset = coords.to_original(j.left) - j.left;
  chain.composed = LetterMorphism::identity(t.alphabet());
  for (const auto& st : chain.steps) chain.composed = compose(chain.composed, st.morphism);
  return chain;
}

}  // namespace ietkit
