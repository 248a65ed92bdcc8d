#pragma once

#include <ietkit/io.hpp>

#include <CLI11.hpp>

#include <functional>
#include <ostream>

namespace ietkit::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kCap = 2, kUsage = 64 };

/// Bad flag values; reported with exit code 64 before any computation starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Dot };

namespace detail {

inline FieldValue parse_flag_value(const std::string& flag, const std::string& text) {
  try {
    return FieldValue::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

inline Format parse_format(const std::string& s, bool dot_allowed) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "dot" && dot_allowed) return Format::Dot;
  throw UsageError("--format " + s + " is not supported by this command");
}

inline OrderedAlphabet order_flag(const std::string& order, const std::vector<Word>& words) {
  std::string s = order;
  if (s.empty()) {
    std::set<Letter> seen;
    for (const auto& w : words) seen.insert(w.begin(), w.end());
    s.assign(seen.begin(), seen.end());
  }
  try {
    OrderedAlphabet a(s);
    for (const auto& w : words)
      if (!a.is_word(w)) throw UsageError("word '" + w + "' uses letters outside --order " + s);
    return a;
  } catch (const DomainError& e) {
    throw UsageError(std::string("--order: ") + e.what());
  }
}

inline std::string join(const std::vector<FieldValue>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].to_string();
  return s;
}

inline std::string join_words(const std::vector<Word>& ws, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? sep : "") + ws[i];
  return s;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string cycle_notation(const std::vector<std::vector<std::size_t>>& cycles) {
  std::string s;
  for (const auto& c : cycles) {
    s += "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    s += ")";
  }
  return s;
}

inline std::string morphism_text(const LetterMorphism& m) {
  std::string s;
  for (Letter c : m.source()) s += (s.empty() ? "" : " ") + std::string(1, c) + "->" + m.image(c);
  return s;
}

}  // namespace detail

/// Runs one CLI invocation; argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app("Exact interval exchange toolkit: induction, codings, clustering and extension graphs", "ietkit");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string format = "text", spec_path, point_s, word, order, perm_s, side = "left", left_order, right_order;
  std::vector<Word> words;
  std::vector<std::size_t> composition;
  std::size_t steps = 1, depth = 0, max_len = 12, classify_len = 6, max_iter = 1000, word_len = 3, samples = 20;
  bool inverse = false, show_cycles = false, show_lyndon = false, show_iet = false, full = false,
       symmetric = false;
  std::vector<Word> induction_words;
  Caps caps;
  std::function<void()> action;

  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  };
  auto add_spec = [&](CLI::App* s) {
    s->add_option("--iet", spec_path, "IET or DIET spec (JSON)")->required()->check(CLI::ExistingFile);
    add_format(s);
  };
  auto emit = [&](const Json& j) { out << j.dump(2) << "\n"; };

  auto* info = app.add_subcommand("info", "Describe an IET: partition, permutation, discontinuities, blocks");
  add_spec(info);
  info->add_option("--max-iter", max_iter, "Iteration bound for connection search");

  auto* eval = app.add_subcommand("eval", "Apply T (or its inverse) to an exact point");
  add_spec(eval);
  eval->add_option("--point", point_s, "Point, e.g. 3/4 or 1/2 + 1/4*sqrt(5)")->required();
  eval->add_option("--steps", steps, "Number of applications");
  eval->add_flag("--inverse", inverse, "Apply the inverse map");

  auto* orbit = app.add_subcommand("orbit", "Forward orbit and coding of a point");
  add_spec(orbit);
  orbit->add_option("--point", point_s)->required();
  orbit->add_option("--steps", steps, "Orbit length (default 1)");

  auto* lang = app.add_subcommand("language", "Factors of length 1..depth of the coding language");
  add_spec(lang);
  lang->add_option("--depth", depth)->required();

  auto* cyl = app.add_subcommand("cylinders", "Cylinder intervals of all words up to a length");
  add_spec(cyl);
  cyl->add_option("--depth", depth)->required();

  auto* rets = app.add_subcommand("returns", "Return words to a factor");
  add_spec(rets);
  rets->add_option("--word", word, "Factor (empty by default)");
  rets->add_option("--max-len", max_len, "Longest return word searched");
  rets->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* ind = app.add_subcommand("induce", "Induction chain down to a cylinder");
  add_spec(ind);
  ind->add_option("--word", word)->required();
  ind->add_option("--max-steps", caps.max_steps);
  ind->add_option("--max-orbit", caps.max_orbit);

  auto* bw = app.add_subcommand("bwt", "Burrows-Wheeler transform of a word");
  bw->add_option("--order", order, "Letter order (default: sorted letters)");
  bw->add_option("word", word)->required();
  add_format(bw);

  auto* eb = app.add_subcommand("ebwt", "Extended BWT of a multiset of primitive words");
  eb->add_option("--order", order);
  eb->add_option("words", words)->required();
  add_format(eb);

  auto* cl = app.add_subcommand("cluster", "pi-clustering check, or inference when --perm is absent");
  cl->add_option("--order", order);
  cl->add_option("--perm", perm_s, "One-line or cycle notation");
  cl->add_option("words", words)->required();
  add_format(cl);

  auto* ly = app.add_subcommand("lyndon", "Lyndon conjugate and primitive root");
  ly->add_option("--order", order);
  ly->add_option("word", word)->required();
  add_format(ly);

  auto* di = app.add_subcommand("diet", "Discrete IET: cycles, Lyndon multiset, Parikh vector");
  di->add_option("--composition", composition)->required()->delimiter(',');
  di->add_option("--perm", perm_s)->required();
  di->add_flag("--cycles", show_cycles, "Print only the cycle decomposition");
  di->add_flag("--lyndon", show_lyndon, "Print only the Lyndon multiset");
  di->add_flag("--iet", show_iet, "Print the equivalent IET spec");
  add_format(di);

  auto* eg = app.add_subcommand("extgraph", "Extension graph of a factor");
  add_spec(eg);
  eg->add_option("--word", word);
  eg->add_option("--depth", depth, "Language bound (default |w| + 2)");

  auto* cf = app.add_subcommand("classify", "Dendric / alsinic / ordered alsinic up to a length");
  add_spec(cf);
  cf->add_option("--max-len", classify_len, "Longest word whose graph is checked");
  cf->add_option("--left-order", left_order, "Default: the order read off the permutation");
  cf->add_option("--right-order", right_order, "Default: the alphabet order");
  cf->add_flag("--full", full, "Check compatibility on every graph, not only bispecial ones");

  auto* vf = app.add_subcommand("verify", "Return-word clustering and induction consistency checks");
  add_spec(vf);
  vf->add_option("--word-len", word_len, "Longest factor whose return words are checked");
  vf->add_option("--return-len", max_len, "Longest return word searched");
  vf->add_flag("--symmetric", symmetric, "Also require perfect clustering (symmetric permutation)");
  vf->add_option("--induce", induction_words, "Words whose induction chains are cross-checked");
  vf->add_option("--samples", samples, "Sample points per induction check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    // Flag validation: everything below may throw UsageError before computing.
    CLI::App* sub = app.get_subcommands().front();
    const Format fmt = parse_format(format, sub == eg);
    FieldValue point;
    if (!point_s.empty()) point = parse_flag_value("--point", point_s);
    LoadedSpec spec;
    auto need_spec = [&] { spec = load_spec(spec_path); };

    if (sub == info) {
      action = [&] {
        need_spec();
        const Iet& t = spec.iet;
        auto blocks = invariant_subalphabets(t);
        auto conns = find_connections(t, max_iter);
        auto keane = keane_probe(t, max_iter);
        if (fmt == Format::Json) {
          Json j = to_json(t);
          j["cycles"] = t.perm().cycle_string();
          j["domain"] = to_json(t.domain());
          Json d = Json::array(), di = Json::array(), b = Json::array(), c = Json::array();
          for (const auto& x : t.discontinuities()) d.push_back(to_json(x));
          for (const auto& x : t.discontinuities_inverse()) di.push_back(to_json(x));
          for (const auto& blk : blocks) b.push_back(blk.letters);
          for (const auto& k : conns) c.push_back(Json{{"from", to_json(k.from)}, {"to", to_json(k.to)}, {"n", k.n}});
          j["discontinuities"] = d;
          j["inverse_discontinuities"] = di;
          j["invariant_blocks"] = b;
          j["connections"] = c;
          j["keane_violated_within_bound"] = keane.has_value();
          j["symmetric"] = t.perm().is_symmetric();
          emit(j);
          return;
        }
        out << "alphabet: " << t.alphabet().str() << "\n";
        out << "lengths:";
        for (Letter c : t.alphabet()) out << " " << c << "=" << t.length(c).to_string();
        out << "\npermutation: " << t.image_order() << " " << t.perm().cycle_string() << "\n";
        out << "domain: " << t.domain() << "\n";
        out << "discontinuities: " << join(t.discontinuities()) << "\n";
        out << "inverse discontinuities: " << join(t.discontinuities_inverse()) << "\n";
        std::vector<Word> bl;
        for (const auto& blk : blocks) bl.push_back(blk.letters);
        out << "invariant blocks: " << join_words(bl) << "\n";
        out << "connections:";
        for (const auto& k : conns) out << " " << k.from.to_string() << "->" << k.to.to_string() << "(" << k.n << ")";
        out << "\nsymmetric: " << yes_no(t.perm().is_symmetric()) << "\n";
      };
    } else if (sub == eval) {
      action = [&] {
        need_spec();
        if (!spec.iet.domain().contains(point)) throw DomainError("point " + point.to_string() + " is outside the domain");
        FieldValue y = point;
        for (std::size_t i = 0; i < steps; ++i) y = inverse ? spec.iet.apply_inverse(y) : spec.iet.apply(y);
        if (fmt == Format::Json)
          emit(Json{{"point", to_json(point)}, {"steps", steps}, {"inverse", inverse}, {"image", to_json(y)}});
        else
          out << y.to_string() << "\n";
      };
    } else if (sub == orbit) {
      action = [&] {
        need_spec();
        if (!spec.iet.domain().contains(point)) throw DomainError("point " + point.to_string() + " is outside the domain");
        std::vector<FieldValue> pts{point};
        Word coding;
        for (std::size_t i = 0; i < steps; ++i) {
          coding.push_back(spec.iet.letter_at(pts.back()));
          pts.push_back(spec.iet.apply(pts.back()));
        }
        if (fmt == Format::Json) {
          Json p = Json::array();
          for (const auto& x : pts) p.push_back(to_json(x));
          emit(Json{{"points", p}, {"coding", coding}});
          return;
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
          out << i << " " << pts[i].to_string() << (i < coding.size() ? std::string(" ") + coding[i] : "") << "\n";
      };
    } else if (sub == lang) {
      action = [&] {
        need_spec();
        auto L = language(spec.iet, depth);
        std::vector<Word> ws(L.words.begin(), L.words.end());
        ws.erase(std::remove(ws.begin(), ws.end(), Word()), ws.end());
        if (fmt == Format::Json)
          emit(Json{{"depth", depth}, {"words", ws}});
        else
          for (const auto& w : ws) out << w << "\n";
      };
    } else if (sub == cyl) {
      action = [&] {
        need_spec();
        auto tab = cylinders(spec.iet, depth);
        Json j = Json::array();
        for (const auto& [w, iv] : tab.cylinders) {
          if (w.empty()) continue;
          if (fmt == Format::Json)
            j.push_back(Json{{"word", w}, {"interval", to_json(iv)}});
          else
            out << w << " " << iv << "\n";
        }
        if (fmt == Format::Json) emit(j);
      };
    } else if (sub == rets) {
      action = [&] {
        need_spec();
        auto L = language(spec.iet, word.size() + max_len);
        auto r = return_words(L, word, max_len, side == "left" ? ReturnSide::Left : ReturnSide::Right);
        std::vector<Word> ws(r.words.begin(), r.words.end());
        if (fmt == Format::Json) {
          emit(Json{{"word", word}, {"side", side}, {"max_len", max_len}, {"return_words", ws}, {"complete", r.complete}});
          return;
        }
        for (const auto& w : ws) out << w << "\n";
        out << "complete: " << yes_no(r.complete) << "\n";
      };
    } else if (sub == ind) {
      action = [&] {
        need_spec();
        auto ch = induce_to_cylinder(spec.iet, word, caps);
        if (fmt == Format::Json) {
          emit(to_json(ch));
          return;
        }
        out << "target: " << ch.target << "\n";
        for (std::size_t i = 0; i < ch.steps.size(); ++i) {
          const auto& s = ch.steps[i];
          out << i << " " << to_string(s.kind);
          if (!s.block.empty()) out << "{" << s.block << "} kept " << to_string(s.branch);
          out << " " << morphism_text(s.morphism) << " -> " << s.after.alphabet().str() << "/" << s.after.image_order()
              << " on " << s.after.domain() << "\n";
        }
        out << "final: " << ch.final_map.alphabet().str() << "/" << ch.final_map.image_order() << " on "
            << ch.final_map.domain() << " offset " << ch.offset.to_string() << "\n";
        out << "composed: " << morphism_text(ch.composed) << "\n";
      };
    } else if (sub == bw || sub == eb) {
      if (sub == bw) words = {word};
      OrderedAlphabet a = order_flag(order, words);
      action = [&, a] {
        auto r = sub == bw ? bwt(words.front(), a) : ebwt(words, a);
        if (fmt == Format::Json) {
          Json j = to_json(r);
          j["order"] = a.str();
          j["perfectly_clustering"] = sub == bw ? is_perfectly_clustering(words.front(), a)
                                                : is_pi_clustering(words, a, symmetric_perm(a));
          emit(j);
        } else {
          out << r.output << "\n";
        }
      };
    } else if (sub == cl) {
      OrderedAlphabet a = order_flag(order, words);
      std::optional<Perm> given;
      if (!perm_s.empty()) {
        try {
          given = parse_perm(a, perm_s);
        } catch (const DomainError& e) {
          throw UsageError(std::string("--perm: ") + e.what());
        }
      }
      action = [&, a, given] {
        auto r = words.size() == 1 ? bwt(words.front(), a) : ebwt(words, a);
        std::optional<Perm> pi = given;
        bool ok;
        if (given) {
          ok = words.size() == 1 ? is_pi_clustering(words.front(), a, *given) : is_pi_clustering(words, a, *given);
        } else {
          pi = words.size() == 1 ? infer_clustering_permutation(words.front(), a)
                                 : infer_clustering_permutation(words, a);
          ok = pi.has_value();
        }
        if (fmt == Format::Json) {
          Json j = to_json(r);
          j["order"] = a.str();
          j["perm"] = pi ? Json(pi->one_line()) : Json(nullptr);
          j["perm_inferred"] = !given;
          j["clustering"] = ok;
          emit(j);
          return;
        }
        out << (ok ? "clustering" : "not clustering");
        if (!given && pi) out << " for " << pi->one_line();
        out << "\n";
      };
    } else if (sub == ly) {
      OrderedAlphabet a = order_flag(order, {word});
      if (word.empty()) throw UsageError("lyndon needs a nonempty word");
      action = [&, a] {
        auto [root, exp] = primitive_root(word);
        Word rep = lyndon_representative(word, a);
        if (fmt == Format::Json)
          emit(Json{{"word", word}, {"order", a.str()}, {"lyndon", rep}, {"is_lyndon", is_lyndon(word, a)},
                    {"primitive_root", root}, {"exponent", exp}});
        else
          out << rep << "\n";
      };
    } else if (sub == di) {
      DietSpec d;
      try {
        d = make_diet(composition, perm_s);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      action = [&, d] {
        auto act = diet_action(d);
        auto lyn = diet_lyndon_multiset(d);
        auto pk = parikh(lyn, d.perm.alphabet());
        if (fmt == Format::Json) {
          Json j = to_json(d);
          j["cycles"] = act.cycles;
          j["cycle_notation"] = cycle_notation(act.cycles);
          j["codings"] = act.codings;
          j["lyndon_multiset"] = lyn;
          j["parikh"] = pk;
          j["iet"] = to_json(diet_to_iet(d));
          emit(j);
          return;
        }
        bool all = !show_cycles && !show_lyndon && !show_iet;
        if (show_cycles) out << cycle_notation(act.cycles) << "\n";
        if (show_lyndon) out << join_words(lyn) << "\n";
        if (show_iet) out << to_json(diet_to_iet(d)).dump(2) << "\n";
        if (all) {
          out << "cycles: " << cycle_notation(act.cycles) << "\n";
          out << "lyndon: " << join_words(lyn) << "\n";
          out << "parikh:";
          for (auto n : pk) out << " " << n;
          out << "\n";
        }
      };
    } else if (sub == eg) {
      action = [&] {
        need_spec();
        std::size_t bound = std::max(depth, word.size() + 2);
        auto g = extension_graph(language(spec.iet, bound), word);
        if (fmt == Format::Dot) {
          out << to_dot(g);
        } else if (fmt == Format::Json) {
          emit(to_json(g));
        } else {
          out << "left: " << g.left << "\nright: " << g.right << "\nedges:";
          for (const auto& [a, b] : g.edges) out << " " << a << "-" << b;
          out << "\ntree: " << yes_no(is_tree(g)) << "\nforest: " << yes_no(is_forest(g)) << "\n";
        }
      };
    } else if (sub == cf) {
      action = [&] {
        need_spec();
        const Iet& t = spec.iet;
        auto as_order = [&](const std::string& s, OrderedAlphabet fallback) {
          if (s.empty()) return fallback;
          OrderedAlphabet o(s);
          if (o.size() != t.size()) throw DomainError("order '" + s + "' must list the IET's letters");
          for (Letter c : t.alphabet())
            if (!o.contains(c)) throw DomainError("order '" + s + "' must list the IET's letters");
          return o;
        };
        OrderedAlphabet lo = as_order(left_order, order_from_permutation(t.perm()));
        OrderedAlphabet ro = as_order(right_order, t.alphabet());
        auto r = classify_language(language(t, classify_len + 2), classify_len, lo, ro,
                                   full ? CompatibilityMode::Full : CompatibilityMode::BispecialOnly);
        if (fmt == Format::Json) {
          Json j = to_json(r);
          j["left_order"] = lo.str();
          j["right_order"] = ro.str();
          emit(j);
          return;
        }
        auto line = [&](const char* name, bool v, const std::optional<Word>& w) {
          out << name << ": " << yes_no(v);
          if (w) out << " (witness '" << *w << "')";
          out << "\n";
        };
        line("dendric", r.dendric, r.dendric_witness);
        line("alsinic", r.alsinic, r.alsinic_witness);
        line("ordered alsinic", r.ordered_alsinic, r.ordered_witness);
        out << "words checked: " << r.words_checked << " up to length " << r.max_len << "\n";
      };
    } else if (sub == vf) {
      action = [&] {
        need_spec();
        const Iet& t = spec.iet;
        auto rc = symmetric ? verify_perfect_clustering_symmetric(t, word_len, max_len)
                            : verify_return_clustering(t, word_len, max_len);
        std::vector<std::pair<Word, InductionReport>> inds;
        for (const auto& w : induction_words) inds.emplace_back(w, verify_induction_consistency(t, w, samples));
        bool ok = rc.ok();
        for (const auto& [w, r] : inds) ok = ok && r.ok();
        if (fmt == Format::Json) {
          Json j{{"ok", ok}, {"symmetric", symmetric}, {"return_clustering", to_json(rc)}};
          Json ij = Json::object();
          for (const auto& [w, r] : inds) ij[w] = to_json(r);
          j["induction"] = ij;
          emit(j);
          return;
        }
        out << "return clustering: " << (rc.ok() ? "ok" : "FAILED") << " (" << rc.words_checked << " words, "
            << rc.return_words_checked << " return words, " << rc.incomplete.size() << " incomplete)\n";
        for (const auto& f : rc.failures) out << "  failure: w='" << f.w << "' u='" << f.u << "'\n";
        for (const auto& [w, r] : inds) {
          out << "induction '" << w << "': " << (r.ok() ? "ok" : "FAILED") << "\n";
          for (const auto& p : r.problems) out << "  " << p << "\n";
        }
      };
    }
    action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}

}  // namespace ietkit::cli
