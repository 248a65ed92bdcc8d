#pragma once

#include "alphabet.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace ietkit {

using Run = std::pair<Letter, std::size_t>;

inline std::vector<Run> runs(const Word& w) {
  std::vector<Run> out;
  for (Letter c : w) {
    if (!out.empty() && out.back().first == c)
      ++out.back().second;
    else
      out.push_back({c, 1});
  }
  return out;
}

inline Word rotate_word(const Word& w, std::size_t i) {
  if (w.empty()) return w;
  i %= w.size();
  return w.substr(i) + w.substr(0, i);
}

/// Shortest u with w = u^e.
inline std::pair<Word, std::size_t> primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return {w.substr(0, p), n / p};
  }
  return {w, 1};
}

inline bool is_primitive(const Word& w) { return !w.empty() && primitive_root(w).second == 1; }

inline void require_word(const OrderedAlphabet& order, const Word& w) {
  if (!order.is_word(w)) throw DomainError("word '" + w + "' uses letters outside " + order.str());
}

/// Least conjugate of w under the lexicographic order induced by `order`.
inline Word least_rotation(const Word& w, const OrderedAlphabet& order) {
  require_word(order, w);
  Word best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word r = rotate_word(w, i);
    if (order.word_less(r, best)) best = r;
  }
  return best;
}

/// Primitive and strictly smaller than each of its proper conjugates.
inline bool is_lyndon(const Word& w, const OrderedAlphabet& order) {
  require_word(order, w);
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!order.word_less(w, rotate_word(w, i))) return false;
  return true;
}

/// Representative of the conjugacy class; a Lyndon word when w is primitive.
inline Word lyndon_representative(const Word& w, const OrderedAlphabet& order) {
  return least_rotation(w, order);
}

/// Three-way comparison of u^omega and v^omega; |u|+|v| letters decide it.
inline int omega_compare(const Word& u, const Word& v, const OrderedAlphabet& order) {
  if (u.empty() || v.empty()) throw DomainError("omega order needs nonempty words");
  const std::size_t n = u.size() + v.size();
  for (std::size_t i = 0; i < n; ++i) {
    Letter x = u[i % u.size()], y = v[i % v.size()];
    if (x != y) return order.less(x, y) ? -1 : 1;
  }
  return 0;
}

struct BwtResult {
  Word output;
  std::vector<Word> rows;  // sorted conjugates
  std::vector<Run> runs;
};

inline BwtResult bwt(const Word& w, const OrderedAlphabet& order) {
  require_word(order, w);
  if (w.empty()) throw DomainError("bwt of the empty word");
  BwtResult r;
  for (std::size_t i = 0; i < w.size(); ++i) r.rows.push_back(rotate_word(w, i));
  std::stable_sort(r.rows.begin(), r.rows.end(),
                   [&](const Word& a, const Word& b) { return order.word_less(a, b); });
  for (const auto& row : r.rows) r.output.push_back(row.back());
  r.runs = runs(r.output);
  return r;
}

/// Extended BWT: all conjugates of all words sorted by the omega order.
inline BwtResult ebwt(const std::vector<Word>& words, const OrderedAlphabet& order) {
  if (words.empty()) throw DomainError("ebwt of an empty multiset");
  BwtResult r;
  for (const auto& w : words) {
    require_word(order, w);
    if (w.empty()) throw DomainError("ebwt input contains the empty word");
    for (std::size_t i = 0; i < w.size(); ++i) r.rows.push_back(rotate_word(w, i));
  }
  std::stable_sort(r.rows.begin(), r.rows.end(),
                   [&](const Word& a, const Word& b) { return omega_compare(a, b, order) < 0; });
  for (const auto& row : r.rows) r.output.push_back(row.back());
  r.runs = runs(r.output);
  return r;
}

inline std::vector<std::size_t> parikh(const Word& w, const OrderedAlphabet& order) {
  require_word(order, w);
  std::vector<std::size_t> v(order.size(), 0);
  for (Letter c : w) ++v[order.index_of(c)];
  return v;
}

inline std::vector<std::size_t> parikh(const std::vector<Word>& ws, const OrderedAlphabet& order) {
  std::vector<std::size_t> v(order.size(), 0);
  for (const auto& w : ws) {
    auto p = parikh(w, order);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += p[i];
  }
  return v;
}

inline bool is_pangrammatic(const Word& w, const OrderedAlphabet& order) {
  auto p = parikh(w, order);
  return std::all_of(p.begin(), p.end(), [](std::size_t n) { return n > 0; });
}

namespace detail {

inline Word clustered_target(const std::vector<std::size_t>& counts, const Perm& pi) {
  Word target;
  const auto& order = pi.alphabet();
  for (std::size_t i = 0; i < order.size(); ++i) {
    Letter c = pi.one_line()[i];
    target.append(counts[order.index_of(c)], c);
  }
  return target;
}

inline void require_same_order(const OrderedAlphabet& order, const Perm& pi) {
  if (!(pi.alphabet() == order)) throw DomainError("permutation is over a different alphabet");
}

}  // namespace detail

/// bwt(w) = pi(a_1)^{|w|_{pi(a_1)}} ... pi(a_k)^{|w|_{pi(a_k)}}.
inline bool is_pi_clustering(const Word& w, const OrderedAlphabet& order, const Perm& pi) {
  detail::require_same_order(order, pi);
  return bwt(w, order).output == detail::clustered_target(parikh(w, order), pi);
}

inline bool is_pi_clustering(const std::vector<Word>& ws, const OrderedAlphabet& order, const Perm& pi) {
  detail::require_same_order(order, pi);
  return ebwt(ws, order).output == detail::clustered_target(parikh(ws, order), pi);
}

inline Perm symmetric_perm(const OrderedAlphabet& order) {
  std::string rev = order.str();
  std::reverse(rev.begin(), rev.end());
  return Perm(order, rev);
}

inline bool is_perfectly_clustering(const Word& w, const OrderedAlphabet& order) {
  return is_pi_clustering(w, order, symmetric_perm(order));
}

namespace detail {

/// Run letters of a clustered transform, or nullopt when some letter has two runs.
inline std::optional<std::string> run_sequence(const Word& out) {
  std::string seq;
  for (const auto& [c, n] : runs(out)) {
    if (seq.find(c) != std::string::npos) return std::nullopt;
    seq.push_back(c);
  }
  return seq;
}

inline Perm canonical_completion(const OrderedAlphabet& order, const std::string& seq) {
  std::string img(order.size(), '\0');
  for (std::size_t j = 0; j < order.size(); ++j)
    if (seq.find(order[j]) == std::string::npos) img[j] = order[j];
  std::size_t next = 0;
  for (auto& slot : img)
    if (slot == '\0') slot = seq[next++];
  return Perm(order, img);
}

inline std::vector<Perm> all_completions(const OrderedAlphabet& order, const std::string& seq) {
  const std::size_t k = order.size(), m = seq.size();
  std::string absent;
  for (Letter c : order)
    if (seq.find(c) == std::string::npos) absent.push_back(c);
  std::vector<Perm> out;
  std::vector<bool> mask(k, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(m), true);
  std::sort(absent.begin(), absent.end());
  do {
    std::string rest = absent;
    do {
      std::string img(k, '\0');
      std::size_t s = 0, r = 0;
      for (std::size_t j = 0; j < k; ++j) img[j] = mask[j] ? seq[s++] : rest[r++];
      out.emplace_back(order, img);
    } while (std::next_permutation(rest.begin(), rest.end()));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace detail

/// A permutation for which w is pi-clustering, if one exists. Letters absent
/// from w are fixed points; present letters fill the other slots in run order.
inline std::optional<Perm> infer_clustering_permutation(const Word& w, const OrderedAlphabet& order) {
  auto seq = detail::run_sequence(bwt(w, order).output);
  if (!seq) return std::nullopt;
  return detail::canonical_completion(order, *seq);
}

inline std::optional<Perm> infer_clustering_permutation(const std::vector<Word>& ws,
                                                        const OrderedAlphabet& order) {
  auto seq = detail::run_sequence(ebwt(ws, order).output);
  if (!seq) return std::nullopt;
  return detail::canonical_completion(order, *seq);
}

/// Every permutation for which w is pi-clustering.
inline std::vector<Perm> all_clustering_permutations(const Word& w, const OrderedAlphabet& order) {
  auto seq = detail::run_sequence(bwt(w, order).output);
  if (!seq) return {};
  return detail::all_completions(order, *seq);
}

/// Elementary morphisms whose effect on clustering is tracked by clustering_transport.
struct TransportStep {
  enum class Kind { Rename, Alpha, AlphaTilde, Inclusion };
  Kind kind = Kind::Rename;
  std::map<Letter, Letter> rename;  // Rename
  Letter a = 0;                     // Alpha / AlphaTilde: a -> ab or a -> ba
  Letter b = 0;
  bool fresh_first = false;         // Alpha with b fresh: b becomes the least letter
  std::string added;                // Inclusion: letters of the disjoint alphabet

  static TransportStep make_rename(std::map<Letter, Letter> m) {
    TransportStep s;
    s.kind = Kind::Rename;
    s.rename = std::move(m);
    return s;
  }
  static TransportStep make_alpha(Letter a, Letter b, bool fresh_first = false) {
    TransportStep s;
    s.kind = Kind::Alpha;
    s.a = a;
    s.b = b;
    s.fresh_first = fresh_first;
    return s;
  }
  static TransportStep make_alpha_tilde(Letter a, Letter b) {
    TransportStep s;
    s.kind = Kind::AlphaTilde;
    s.a = a;
    s.b = b;
    return s;
  }
  static TransportStep make_inclusion(std::string letters) {
    TransportStep s;
    s.kind = Kind::Inclusion;
    s.added = std::move(letters);
    return s;
  }
};

struct TransportResult {
  OrderedAlphabet order;
  Perm perm;
  int transport_case = 0;  // 1..7
};

/// New (order, permutation) under which phi(w) stays clustering whenever w is
/// pi-clustering. Throws when the step does not match any of the seven cases.
inline TransportResult clustering_transport(const OrderedAlphabet& order, const Perm& pi,
                                            const TransportStep& step) {
  detail::require_same_order(order, pi);
  const std::string seq = pi.one_line();
  const std::string& A = order.str();
  auto moved = [](std::string s, Letter c, bool to_front) {
    s.erase(s.find(c), 1);
    return to_front ? c + s : s + c;
  };
  switch (step.kind) {
    case TransportStep::Kind::Rename: {
      std::string A2 = A, s2 = seq;
      for (auto& c : A2) c = step.rename.at(c);
      for (auto& c : s2) c = step.rename.at(c);
      OrderedAlphabet o2(A2);
      return {o2, Perm(o2, s2), 1};
    }
    case TransportStep::Kind::Alpha: {
      const Letter a = step.a, b = step.b;
      order.index_of(a);
      if (!order.contains(b)) {
        std::string s2 = seq;
        s2[s2.find(a)] = b;
        if (step.fresh_first) {
          OrderedAlphabet o2(std::string(1, b) + A);
          return {o2, Perm(o2, a + s2), 6};
        }
        OrderedAlphabet o2(A + b);
        return {o2, Perm(o2, s2 + a), 6};
      }
      const std::size_t pa = pi.image_position(a), pb = pi.image_position(b);
      if (b == A.front() && pb == pa + 1) return {order, Perm(order, moved(seq, a, true)), 2};
      if (b == A.back() && pa == pb + 1) return {order, Perm(order, moved(seq, a, false)), 3};
      throw DomainError("alpha step matches no clustering transport case");
    }
    case TransportStep::Kind::AlphaTilde: {
      const Letter a = step.a, b = step.b;
      const std::size_t ia = order.index_of(a), ib = order.index_of(b);
      if (seq.front() == b && ib == ia + 1) {
        OrderedAlphabet o2(moved(A, a, true));
        return {o2, Perm(o2, seq), 4};
      }
      if (seq.back() == b && ia == ib + 1) {
        OrderedAlphabet o2(moved(A, a, false));
        return {o2, Perm(o2, seq), 5};
      }
      throw DomainError("alpha-tilde step matches no clustering transport case");
    }
    case TransportStep::Kind::Inclusion: {
      for (Letter c : step.added)
        if (order.contains(c)) throw DomainError("inclusion alphabet must be disjoint");
      OrderedAlphabet o2(A + step.added);
      return {o2, Perm(o2, seq + step.added), 7};
    }
  }
  throw DomainError("unknown transport step");
}

}  // namespace ietkit
