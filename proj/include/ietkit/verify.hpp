#pragma once

#include "coding.hpp"
#include "induction.hpp"
#include "words.hpp"

#include <set>

namespace ietkit {

/// phi(trajectory(T', y, m)) is a prefix of the trajectory of the matching point under T.
inline bool step_trajectory_identity(const Iet& before, const StepRecord& s, const FieldValue& y, std::size_t m) {
  Word img = s.morphism(trajectory(s.after, y, m));
  return trajectory(before, s.to_before(y), img.size()) == img;
}

/// T' agrees with T through the coordinate change, and its image order is T's filtered to its letters.
inline bool split_agrees(const Iet& before, const StepRecord& s, const FieldValue& y) {
  if (!(s.to_before(s.after.apply(y)) == before.apply(s.to_before(y)))) return false;
  std::string filtered;
  for (Letter c : before.image_order())
    if (s.after.alphabet().contains(c)) filtered.push_back(c);
  return filtered == s.after.image_order();
}

struct ClusteringFailure {
  Word w;
  Word u;
};

struct ReturnClusteringReport {
  std::size_t words_checked = 0;
  std::size_t return_words_checked = 0;
  std::vector<ClusteringFailure> failures;
  std::vector<Word> incomplete;  // words whose return-word search hit the length bound
  bool ok() const { return failures.empty(); }
};

/// Every left return word (within the bounds) is pi-clustering for T's order and permutation.
inline ReturnClusteringReport verify_return_clustering(const Iet& t, std::size_t word_len_max,
                                                       std::size_t return_len_max) {
  ReturnClusteringReport r;
  auto L = language(t, word_len_max + return_len_max);
  const Perm pi = t.perm();
  for (std::size_t n = 0; n <= word_len_max; ++n)
    for (const auto& w : L.of_length(n)) {
      ++r.words_checked;
      auto rw = return_words(L, w, return_len_max);
      if (!rw.complete) r.incomplete.push_back(w);
      for (const auto& u : rw.words) {
        ++r.return_words_checked;
        if (!is_pi_clustering(u, t.alphabet(), pi)) r.failures.push_back({w, u});
      }
    }
  return r;
}

/// The symmetric specialization: return words are perfectly clustering.
inline ReturnClusteringReport verify_perfect_clustering_symmetric(const Iet& t, std::size_t word_len_max,
                                                                  std::size_t return_len_max) {
  if (!t.perm().is_symmetric()) throw DomainError("permutation is not symmetric");
  ReturnClusteringReport r = verify_return_clustering(t, word_len_max, return_len_max);
  auto L = language(t, word_len_max + return_len_max);
  for (std::size_t n = 0; n <= word_len_max; ++n)
    for (const auto& w : L.of_length(n))
      for (const auto& u : return_words(L, w, return_len_max).words)
        if (!is_perfectly_clustering(u, t.alphabet())) r.failures.push_back({w, u});
  return r;
}

struct InductionReport {
  InductionChain chain;
  bool final_matches = true;     // final map = brute-force first return on samples
  bool itineraries_match = true; // composed images = brute-force itineraries
  bool steps_sound = true;       // trajectory identity at every step
  bool returns_match = true;     // composed images = symbolic return words (when that search is complete)
  bool symbolic_complete = false;
  std::set<Word> composed_images;
  std::set<Word> itineraries;
  std::set<Word> symbolic_returns;
  std::vector<std::string> problems;
  bool ok() const { return final_matches && itineraries_match && steps_sound && returns_match; }
};

inline InductionReport verify_induction_consistency(const Iet& t, const Word& w, std::size_t samples,
                                                    const Caps& caps = {}) {
  InductionReport rep;
  rep.chain = induce_to_cylinder(t, w, caps);
  const auto& ch = rep.chain;
  const Interval iw = ch.target;
  const Iet& fin = ch.final_map;

  std::vector<FieldValue> pts;
  for (std::size_t i = 0; i < samples; ++i)
    pts.push_back(iw.left + iw.length() * FieldValue::rational(2 * i + 1, 2 * samples));
  for (Letter c : fin.alphabet()) {
    Interval d = fin.domain_interval(c);
    pts.push_back((d.left + d.right) / FieldValue(2) + ch.offset);
  }
  for (const auto& x : pts) {
    auto fr = first_return_point(t, iw, x, caps.max_orbit);
    FieldValue y = x - ch.offset;
    if (!(fin.apply(y) + ch.offset == fr.point)) {
      rep.final_matches = false;
      rep.problems.push_back("final map differs at " + x.to_string());
    }
    rep.itineraries.insert(fr.itinerary);
    if (ch.composed.image(fin.letter_at(y)) != fr.itinerary) {
      rep.itineraries_match = false;
      rep.problems.push_back("composed image differs from itinerary at " + x.to_string());
    }
  }
  std::size_t longest = 1;
  for (const auto& [c, img] : ch.composed.images()) {
    rep.composed_images.insert(img);
    longest = std::max(longest, img.size());
  }
  if (rep.composed_images != rep.itineraries) rep.itineraries_match = false;

  for (std::size_t i = 0; i < ch.steps.size(); ++i) {
    const auto& s = ch.steps[i];
    Interval d = s.after.domain();
    for (std::size_t k = 0; k < samples; ++k) {
      FieldValue y = d.left + d.length() * FieldValue::rational(2 * k + 1, 2 * samples);
      if (!step_trajectory_identity(ch.before(i), s, y, 8)) {
        rep.steps_sound = false;
        rep.problems.push_back(std::string("trajectory identity fails at step ") + std::to_string(i));
        break;
      }
    }
  }

  auto L = language(t, w.size() + longest + 1);
  auto rw = return_words(L, w, longest + 1);
  rep.symbolic_returns = rw.words;
  rep.symbolic_complete = rw.complete;
  if (rw.complete && rw.words != rep.composed_images) {
    rep.returns_match = false;
    rep.problems.push_back("symbolic return words differ from the composed images");
  }
  return rep;
}

}  // namespace ietkit
