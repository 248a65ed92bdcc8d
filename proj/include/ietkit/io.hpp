#pragma once

#include "diet.hpp"
#include "extension.hpp"
#include "induction.hpp"
#include "verify.hpp"

#include <json.hpp>

#include <fstream>

namespace ietkit {

using Json = nlohmann::ordered_json;

// Every value is written as its exact string form; reading accepts the string
// or {"p": ..., "q": ..., "d": ...} with q and d optional.

inline Json to_json(const FieldValue& x) { return x.to_string(); }

inline FieldValue field_from_json(const Json& j) {
  if (j.is_string()) return FieldValue::parse(j.get<std::string>());
  if (j.is_number_integer()) return FieldValue(j.get<long>());
  if (!j.is_object() || !j.contains("p")) throw DomainError("expected a number string or {p, q, d}");
  FieldValue p = field_from_json(j.at("p"));
  if (!j.contains("q")) return p;
  FieldValue q = field_from_json(j.at("q"));
  long d = j.value("d", 0L);
  if (!p.is_rational() || !q.is_rational()) throw DomainError("p and q must be rational");
  if (q.is_zero()) return p;
  if (d < 2) throw DomainError("radicand must be at least 2 when q is nonzero");
  return FieldValue::quadratic(p.rational_part(), q.rational_part(), Integer(d));
}

inline Json to_json(const Interval& iv) { return Json::array({to_json(iv.left), to_json(iv.right)}); }

inline Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("an interval is a two-element array");
  return {field_from_json(j[0]), field_from_json(j[1])};
}

inline Json letters_json(const std::string& s) {
  Json a = Json::array();
  for (Letter c : s) a.push_back(std::string(1, c));
  return a;
}

/// Accepts ["a","b"] or "ab".
inline std::string letters_from_json(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_array()) throw DomainError("expected a list of letters");
  std::string s;
  for (const auto& x : j) {
    auto t = x.get<std::string>();
    if (t.size() != 1) throw DomainError("letters are single characters, got '" + t + "'");
    s += t;
  }
  return s;
}

inline Json to_json(const Perm& p) { return Json{{"one_line", letters_json(p.one_line())}}; }

inline Perm perm_from_json(const OrderedAlphabet& a, const Json& j) {
  if (j.is_string()) return parse_perm(a, j.get<std::string>());
  if (j.contains("one_line")) return Perm(a, letters_from_json(j.at("one_line")));
  if (j.contains("cycles")) {
    std::vector<std::string> cycles;
    for (const auto& c : j.at("cycles")) cycles.push_back(letters_from_json(c));
    return Perm::from_cycles(a, cycles);
  }
  throw DomainError("permutation needs one_line or cycles");
}

inline Json to_json(const Iet& t) {
  Json lengths = Json::object();
  for (Letter c : t.alphabet()) lengths[std::string(1, c)] = to_json(t.length(c));
  return Json{{"alphabet", letters_json(t.alphabet().str())},
              {"lengths", lengths},
              {"permutation", to_json(t.perm())},
              {"origin", to_json(t.origin())}};
}

inline Iet iet_from_json(const Json& j) {
  OrderedAlphabet a(letters_from_json(j.at("alphabet")));
  const Json& lj = j.at("lengths");
  std::vector<FieldValue> lengths;
  if (lj.is_array()) {
    for (const auto& x : lj) lengths.push_back(field_from_json(x));
  } else {
    for (Letter c : a) {
      std::string key(1, c);
      if (!lj.contains(key)) throw DomainError(std::string("missing length for letter ") + c);
      lengths.push_back(field_from_json(lj.at(key)));
    }
  }
  FieldValue origin = j.contains("origin") ? field_from_json(j.at("origin")) : FieldValue(0);
  return Iet(perm_from_json(a, j.at("permutation")), std::move(lengths), origin);
}

inline Json to_json(const DietSpec& s) {
  return Json{{"composition", s.composition}, {"permutation", to_json(s.perm)}};
}

inline DietSpec diet_from_json(const Json& j) {
  DietSpec s;
  s.composition = j.at("composition").get<std::vector<std::size_t>>();
  for (auto n : s.composition)
    if (n == 0) throw DomainError("composition parts must be positive");
  s.perm = perm_from_json(first_letters(s.composition.size()), j.at("permutation"));
  return s;
}

/// An input spec is either an IET or a DIET (recognised by "composition").
struct LoadedSpec {
  Iet iet;
  std::optional<DietSpec> diet;
};

inline LoadedSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("spec must be a JSON object");
  if (j.contains("composition")) {
    auto d = diet_from_json(j);
    return {diet_to_iet(d), d};
  }
  return {iet_from_json(j), std::nullopt};
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

inline LoadedSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return spec_from_json(parse_json_text(text));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad spec: ") + e.what());
  }
}

inline Json to_json(const LetterMorphism& m) {
  Json j = Json::object();
  for (Letter c : m.source()) j[std::string(1, c)] = m.image(c);
  return j;
}

inline LetterMorphism morphism_from_json(const OrderedAlphabet& source, const OrderedAlphabet& target,
                                         const Json& j) {
  std::map<Letter, Word> images;
  for (Letter c : source) images[c] = j.at(std::string(1, c)).get<std::string>();
  return LetterMorphism(source, target, images);
}

inline const char* to_string(SplitBranch b) {
  switch (b) {
    case SplitBranch::None: return "none";
    case SplitBranch::KeptBlock: return "block";
    case SplitBranch::KeptComplement: return "complement";
  }
  return "?";
}

inline StepKind step_kind_from_string(const std::string& s) {
  for (StepKind k : {StepKind::RightTopLonger, StepKind::RightBottomLonger, StepKind::RightMerge,
                     StepKind::LeftTopLonger, StepKind::LeftBottomLonger, StepKind::LeftMerge, StepKind::Split,
                     StepKind::Reorder})
    if (s == to_string(k)) return k;
  throw DomainError("unknown step kind '" + s + "'");
}

inline SplitBranch branch_from_string(const std::string& s) {
  for (SplitBranch b : {SplitBranch::None, SplitBranch::KeptBlock, SplitBranch::KeptComplement})
    if (s == to_string(b)) return b;
  throw DomainError("unknown split branch '" + s + "'");
}

inline Json to_json(const StepRecord& s) {
  Json lengths = Json::array();
  for (const auto& l : s.after.lengths()) lengths.push_back(to_json(l));
  return Json{{"kind", to_string(s.kind)},
              {"alphabet_before", letters_json(s.alphabet_before)},
              {"alphabet_after", letters_json(s.after.alphabet().str())},
              {"perm_after", to_json(s.after.perm())},
              {"lengths_after", lengths},
              {"interval_after", to_json(s.after.domain())},
              {"morphism", to_json(s.morphism)},
              {"block", letters_json(s.block)},
              {"branch", to_string(s.branch)},
              {"rotation", s.rotation},
              {"cut", to_json(s.cut)},
              {"low_shift", to_json(s.low_shift)},
              {"high_shift", to_json(s.high_shift)}};
}

inline StepRecord step_from_json(const Json& j) {
  StepRecord s;
  s.kind = step_kind_from_string(j.at("kind").get<std::string>());
  s.alphabet_before = letters_from_json(j.at("alphabet_before"));
  OrderedAlphabet after(letters_from_json(j.at("alphabet_after")));
  std::vector<FieldValue> lengths;
  for (const auto& x : j.at("lengths_after")) lengths.push_back(field_from_json(x));
  s.after = Iet(perm_from_json(after, j.at("perm_after")), lengths, interval_from_json(j.at("interval_after")).left);
  s.morphism = morphism_from_json(after, OrderedAlphabet(s.alphabet_before), j.at("morphism"));
  s.block = letters_from_json(j.at("block"));
  s.branch = branch_from_string(j.at("branch").get<std::string>());
  s.rotation = j.at("rotation").get<std::size_t>();
  s.cut = field_from_json(j.at("cut"));
  s.low_shift = field_from_json(j.at("low_shift"));
  s.high_shift = field_from_json(j.at("high_shift"));
  return s;
}

inline Json to_json(const InductionChain& ch) {
  Json steps = Json::array(), discarded = Json::array();
  for (const auto& s : ch.steps) steps.push_back(to_json(s));
  for (const auto& d : ch.discarded) discarded.push_back(Json{{"step", d.step}, {"iet", to_json(d.iet)}});
  return Json{{"word", ch.word},
              {"initial", to_json(ch.initial)},
              {"target", to_json(ch.target)},
              {"steps", steps},
              {"final", to_json(ch.final_map)},
              {"offset", to_json(ch.offset)},
              {"composed_morphism", to_json(ch.composed)},
              {"discarded", discarded}};
}

inline InductionChain chain_from_json(const Json& j) {
  InductionChain ch;
  ch.word = j.at("word").get<std::string>();
  ch.initial = iet_from_json(j.at("initial"));
  ch.target = interval_from_json(j.at("target"));
  for (const auto& s : j.at("steps")) ch.steps.push_back(step_from_json(s));
  ch.final_map = iet_from_json(j.at("final"));
  ch.offset = field_from_json(j.at("offset"));
  ch.composed = morphism_from_json(ch.final_map.alphabet(), ch.initial.alphabet(), j.at("composed_morphism"));
  for (const auto& d : j.at("discarded"))
    ch.discarded.push_back({d.at("step").get<std::size_t>(), iet_from_json(d.at("iet"))});
  return ch;
}

inline Json to_json(const ExtensionGraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(Json::array({std::string(1, a), std::string(1, b)}));
  return Json{{"word", g.w},
              {"left", letters_json(g.left)},
              {"right", letters_json(g.right)},
              {"edges", edges},
              {"bispecial", g.is_bispecial()},
              {"forest", is_forest(g)},
              {"tree", is_tree(g)}};
}

inline Json optional_word(const std::optional<Word>& w) { return w ? Json(*w) : Json(nullptr); }

inline Json to_json(const ClassificationReport& r) {
  return Json{{"max_len", r.max_len},
              {"words_checked", r.words_checked},
              {"dendric", r.dendric},
              {"alsinic", r.alsinic},
              {"ordered_alsinic", r.ordered_alsinic},
              {"dendric_witness", optional_word(r.dendric_witness)},
              {"alsinic_witness", optional_word(r.alsinic_witness)},
              {"ordered_witness", optional_word(r.ordered_witness)}};
}

inline Json to_json(const ReturnClusteringReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"word", f.w}, {"return_word", f.u}});
  return Json{{"ok", r.ok()},
              {"words_checked", r.words_checked},
              {"return_words_checked", r.return_words_checked},
              {"failures", failures},
              {"incomplete", r.incomplete}};
}

inline Json to_json(const InductionReport& r) {
  return Json{{"ok", r.ok()},
              {"final_matches", r.final_matches},
              {"itineraries_match", r.itineraries_match},
              {"steps_sound", r.steps_sound},
              {"returns_match", r.returns_match},
              {"symbolic_complete", r.symbolic_complete},
              {"composed_images", r.composed_images},
              {"itineraries", r.itineraries},
              {"symbolic_returns", r.symbolic_returns},
              {"problems", r.problems}};
}

inline Json to_json(const BwtResult& r) {
  Json runs_j = Json::array();
  for (const auto& [c, n] : r.runs) runs_j.push_back(Json::array({std::string(1, c), n}));
  return Json{{"transform", r.output}, {"rows", r.rows}, {"runs", runs_j}};
}

}  // namespace ietkit
