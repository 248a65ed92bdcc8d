#pragma once

#include "coding.hpp"

#include <numeric>
#include <optional>
#include <sstream>

namespace ietkit {

/// Bipartite graph of one-letter extensions of w: a -- b whenever awb is a factor.
struct ExtensionGraph {
  Word w;
  std::string left;   // L(w), alphabet order
  std::string right;  // R(w), alphabet order
  std::vector<std::pair<Letter, Letter>> edges;

  bool is_bispecial() const { return left.size() >= 2 && right.size() >= 2; }
};

inline ExtensionGraph extension_graph(const LanguageSample& L, const Word& w) {
  if (w.size() + 2 > L.bound) throw DomainError("language bound too small for the extension graph of '" + w + "'");
  ExtensionGraph g;
  g.w = w;
  for (Letter a : L.alphabet) {
    if (L.words.count(a + w)) g.left.push_back(a);
    if (L.words.count(w + a)) g.right.push_back(a);
  }
  for (Letter a : g.left)
    for (Letter b : g.right)
      if (L.words.count(a + w + b)) g.edges.push_back({a, b});
  return g;
}

namespace detail {

/// Union-find over left vertices (index < nl) and right vertices (nl + j).
struct GraphComponents {
  std::size_t components = 0;
  bool acyclic = true;
};

inline GraphComponents components(const ExtensionGraph& g) {
  const std::size_t nl = g.left.size(), n = nl + g.right.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  GraphComponents c{n, true};
  for (const auto& [a, b] : g.edges) {
    std::size_t x = find(g.left.find(a)), y = find(nl + g.right.find(b));
    if (x == y) {
      c.acyclic = false;
    } else {
      parent[x] = y;
      --c.components;
    }
  }
  return c;
}

}  // namespace detail

inline bool is_forest(const ExtensionGraph& g) { return detail::components(g).acyclic; }

inline bool is_tree(const ExtensionGraph& g) {
  auto c = detail::components(g);
  return c.acyclic && c.components == 1;
}

/// For all edges (a,b), (c,d): a <_1 c implies b <=_2 d.
inline bool compatible(const ExtensionGraph& g, const OrderedAlphabet& left_order, const OrderedAlphabet& right_order) {
  for (const auto& [a, b] : g.edges)
    for (const auto& [c, d] : g.edges)
      if (left_order.less(a, c) && right_order.less(d, b)) return false;
  return true;
}

/// a <_pi b iff pi^{-1}(a) < pi^{-1}(b): the one-line image sequence read as an order.
inline OrderedAlphabet order_from_permutation(const Perm& pi) { return OrderedAlphabet(pi.one_line()); }

inline std::string to_dot(const ExtensionGraph& g) {
  std::ostringstream os;
  os << "graph \"G(" << g.w << ")\" {\n  rankdir=LR;\n";
  for (Letter a : g.left) os << "  \"L" << a << "\" [label=\"" << a << "\"];\n";
  for (Letter b : g.right) os << "  \"R" << b << "\" [label=\"" << b << "\"];\n";
  for (const auto& [a, b] : g.edges) os << "  \"L" << a << "\" -- \"R" << b << "\";\n";
  os << "}\n";
  return os.str();
}

enum class CompatibilityMode { BispecialOnly, Full };

/// Verdicts hold only up to max_len; witnesses are the first failing words in sample order.
struct ClassificationReport {
  std::size_t max_len = 0;
  std::size_t words_checked = 0;
  bool dendric = true;
  bool alsinic = true;
  bool ordered_alsinic = true;
  std::optional<Word> dendric_witness;
  std::optional<Word> alsinic_witness;
  std::optional<Word> ordered_witness;
};

inline ClassificationReport classify_language(const LanguageSample& L, std::size_t max_len,
                                              const OrderedAlphabet& left_order, const OrderedAlphabet& right_order,
                                              CompatibilityMode mode = CompatibilityMode::BispecialOnly) {
  if (max_len + 2 > L.bound) throw DomainError("language bound too small for classification");
  ClassificationReport r;
  r.max_len = max_len;
  for (std::size_t n = 0; n <= max_len; ++n)
    for (const auto& w : L.of_length(n)) {
      auto g = extension_graph(L, w);
      ++r.words_checked;
      auto c = detail::components(g);
      if (!(c.acyclic && c.components == 1) && r.dendric) {
        r.dendric = false;
        r.dendric_witness = w;
      }
      if (!c.acyclic && r.alsinic) {
        r.alsinic = false;
        r.alsinic_witness = w;
      }
      bool ordered = c.acyclic;
      if (ordered && (mode == CompatibilityMode::Full || g.is_bispecial()))
        ordered = compatible(g, left_order, right_order);
      if (!ordered && r.ordered_alsinic) {
        r.ordered_alsinic = false;
        r.ordered_witness = w;
      }
    }
  return r;
}

}  // namespace ietkit
