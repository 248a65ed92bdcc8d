// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <ietkit/diet.hpp>
#include <ietkit/extension.hpp>
#include <ietkit/morphism.hpp>
#include <ietkit/verify.hpp>

#include "instances.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace ietkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_ms;  // wall-clock bound on the whole criterion; 0 = per-call bounds checked inside
  std::function<Outcome()> run;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Word random_word(std::mt19937_64& rng, const OrderedAlphabet& a, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> len(lo, hi), letter(0, a.size() - 1);
  Word w;
  for (std::size_t n = len(rng); n > 0; --n) w.push_back(a[letter(rng)]);
  return w;
}

Word random_primitive(std::mt19937_64& rng, const OrderedAlphabet& a, std::size_t hi) {
  for (;;) {
    Word w = random_word(rng, a, 1, hi);
    if (oracle::primitive(w)) return w;
  }
}

Word power(const Word& u, std::size_t p) {
  Word w;
  for (std::size_t i = 0; i < p; ++i) w += u;
  return w;
}

Perm random_perm(std::mt19937_64& rng, const OrderedAlphabet& a) {
  std::string s = a.str();
  std::shuffle(s.begin(), s.end(), rng);
  return Perm(a, s);
}

/// A cycle coding of a random DIET, kept only when the oracle confirms it is pi-clustering.
struct DietWord {
  OrderedAlphabet order;
  Perm pi;
  Word w;
};

DietWord random_diet_word(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<std::size_t> part(1, 4);
  for (;;) {
    std::vector<std::size_t> comp(k);
    for (auto& n : comp) n = part(rng);
    OrderedAlphabet order = first_letters(k);
    Perm pi = random_perm(rng, order);
    auto act = diet_action(DietSpec{comp, pi});
    const Word& w = act.codings[std::uniform_int_distribution<std::size_t>(0, act.codings.size() - 1)(rng)];
    if (oracle::clustering(w, order, pi.one_line())) return {order, pi, w};
  }
}

std::vector<Iet> random_suite(std::uint64_t seed, std::size_t count, std::size_t kmin, std::size_t kmax) {
  std::mt19937_64 rng(seed);
  std::vector<Iet> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(inst::random_rational(rng, kmin + i % (kmax - kmin + 1)));
  return out;
}

/// Steps executed on t: both Rauzy steps when defined, every split branch, every
/// valid circular reorder, and the chains to all cylinders of words up to length 2.
std::vector<std::pair<Iet, StepRecord>> executed_steps(const Iet& t) {
  std::vector<std::pair<Iet, StepRecord>> out;
  for (auto side : {Side::Right, Side::Left}) {
    try {
      out.emplace_back(t, rauzy_step(t, side));
    } catch (const DomainError&) {
      // extreme letter fixed or a single letter
    }
  }
  for (const auto& b : invariant_subalphabets(t)) {
    auto sp = split(t, b);
    out.emplace_back(t, sp.kept_block);
    out.emplace_back(t, sp.kept_complement);
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    try {
      out.emplace_back(t, circular_reorder(t, i));
    } catch (const DomainError&) {
      // cut is not a 0-connection
    }
  }
  for (const auto& w : language(t, 2).words) {
    auto ch = induce_to_cylinder(t, w);
    for (std::size_t i = 0; i < ch.steps.size(); ++i) out.emplace_back(ch.before(i), ch.steps[i]);
  }
  return out;
}

std::vector<std::string> chain_shape(const InductionChain& ch) {
  std::vector<std::string> v;
  for (const auto& s : ch.steps) v.push_back(std::string(to_string(s.kind)) + (s.block.empty() ? "" : "{" + s.block + "}"));
  return v;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

// ---------------------------------------------------------------------------

Outcome bwt_exactness() {
  Outcome o;
  const OrderedAlphabet en("abcdefghijklmnopqrstuvwxyz");
  struct Case {
    Word w;
    OrderedAlphabet order;
    Word expected;
  };
  std::vector<Case> cases{{"levkoy", en, "lvykeo"},
                          {"peterbald", en, "brltpadee"},
                          {"bambino", en, "bombain"},
                          {"banana", OrderedAlphabet("abn"), "nnbaaa"}};
  double worst = 0;
  for (const auto& c : cases) {
    auto t0 = Clock::now();
    auto r = bwt(c.w, c.order);
    double dt = ms_since(t0);
    worst = std::max(worst, dt);
    o.require(r.output == c.expected, "bwt(" + c.w + ") = " + r.output);
    o.require(oracle::sorted_rotations_bwt(c.w, c.order) == c.expected, "oracle disagrees on " + c.w);
    o.require(dt < 1.0, "bwt(" + c.w + ") took " + std::to_string(dt) + " ms");
  }
  if (o.ok) o.detail = "4 transforms, slowest " + std::to_string(worst) + " ms";
  return o;
}

Outcome ebwt_exactness() {
  Outcome o;
  OrderedAlphabet abc("abc");
  auto t0 = Clock::now();
  auto r = ebwt({"aac", "ab", "ab"}, abc);
  double dt = ms_since(t0);
  o.require(r.output == "cbbaaaa", "ebwt = " + r.output);
  o.require(r.rows == std::vector<Word>{"aac", "ab", "ab", "aca", "ba", "ba", "caa"}, "conjugate chain differs: " + join(r.rows));
  // omega order by long prefixes of the powers
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    std::string a, b;
    while (a.size() < 42) a += r.rows[i - 1];
    while (b.size() < 42) b += r.rows[i];
    o.require(!abc.word_less(b.substr(0, 42), a.substr(0, 42)), "rows not omega-sorted at " + std::to_string(i));
  }
  o.require(dt < 1.0, "ebwt took " + std::to_string(dt) + " ms");
  if (o.ok) o.detail = "cbbaaaa, chain aac ab ab aca ba ba caa, " + std::to_string(dt) + " ms";
  return o;
}

Outcome diet_correspondence() {
  Outcome o;
  auto d = make_diet({4, 2, 1}, "cba");
  auto act = diet_action(d);
  o.require(act.cycles == std::vector<std::vector<std::size_t>>{{1, 4, 7}, {2, 5}, {3, 6}}, "cycles differ");
  o.require(act.mu == oracle::diet_mu({4, 2, 1}, "abc", "cba"), "action differs from block-rearrangement oracle");
  auto lyn = diet_lyndon_multiset(d);
  o.require(lyn == std::vector<Word>{"aac", "ab", "ab"}, "Lyndon multiset " + join(lyn));
  o.require(parikh(lyn, d.perm.alphabet()) == std::vector<std::size_t>{4, 2, 1}, "Parikh vector differs");
  Iet t = diet_to_iet(d);
  // oracle cylinders: points whose forward coding under mu starts with w (0-based)
  auto mu = oracle::diet_mu({4, 2, 1}, "abc", "cba");
  auto letter = [](std::size_t h) { return h <= 4 ? 'a' : h <= 6 ? 'b' : 'c'; };
  struct Cyl {
    Word w;
    long lo, hi;
  };
  for (const Cyl& c : {Cyl{"a", 0, 4}, Cyl{"ab", 1, 3}, Cyl{"aac", 0, 1}}) {
    Interval iv = cylinder_of(t, c.w);
    o.require(iv == Interval{FieldValue(c.lo), FieldValue(c.hi)}, "I_" + c.w + " differs");
    for (std::size_t h = 1; h <= 7; ++h) {
      Word code;
      for (std::size_t g = h; code.size() < c.w.size(); g = mu[g - 1]) code.push_back(letter(g));
      bool inside = iv.contains(FieldValue(static_cast<long>(h - 1)));
      o.require(inside == (code == c.w), "oracle cylinder mismatch for " + c.w);
    }
  }
  if (o.ok) o.detail = "(1,4,7)(2,5)(3,6); {aac, ab, ab}; (4,2,1); I_a=[0,4) I_ab=[1,3) I_aac=[0,1)";
  return o;
}

Outcome banana() {
  Outcome o;
  OrderedAlphabet abn("abn"), anb("anb"), nab("nab");
  o.require(is_perfectly_clustering("banana", abn), "not perfectly clustering under a<b<n");
  o.require(is_perfectly_clustering("banana", anb), "not perfectly clustering under a<n<b");
  o.require(!infer_clustering_permutation("banana", nab), "clustering under n<a<b");
  o.require(bwt("banana", anb).output == "bnnaaa" && oracle::sorted_rotations_bwt("banana", anb) == "bnnaaa",
            "a<n<b transform");
  o.require(bwt("banana", nab).output == "aabnna" && oracle::sorted_rotations_bwt("banana", nab) == "aabnna",
            "n<a<b transform");
  std::string pis = "abn";
  do {
    o.require(!oracle::clustering("banana", nab, pis), "oracle finds n<a<b clustering for " + pis);
  } while (std::next_permutation(pis.begin(), pis.end()));
  if (o.ok) o.detail = "abn: nnbaaa clustering; anb: bnnaaa clustering; nab: aabnna not clustering";
  return o;
}

Outcome conjugacy_power_laws() {
  Outcome o;
  std::mt19937_64 rng(501);
  OrderedAlphabet abc("abc");
  std::uniform_int_distribution<std::size_t> pw(1, 4);
  std::size_t clustered = 0;
  for (int i = 0; i < 500 && o.ok; ++i) {
    Word w = random_word(rng, abc, 1, 12);
    std::size_t r = std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng);
    o.require(bwt(w, abc).output == bwt(rotate_word(w, r), abc).output, "rotation changes bwt of " + w);
    o.require(bwt(w, abc).output == oracle::sorted_rotations_bwt(w, abc), "bwt disagrees with oracle on " + w);
  }
  for (int i = 0; i < 500 && o.ok; ++i) {
    Word u = random_primitive(rng, abc, 8);
    std::size_t p = pw(rng);
    Word expanded;
    for (Letter c : bwt(u, abc).output) expanded.append(p, c);
    o.require(bwt(power(u, p), abc).output == expanded, "run expansion fails for " + u);
  }
  for (int i = 0; i < 500 && o.ok; ++i) {
    // half DIET-generated (clustering), half uniform
    Word u;
    Perm pi;
    if (i % 2) {
      auto d = random_diet_word(rng, 3);
      u = d.w;
      pi = d.pi;
    } else {
      u = random_word(rng, abc, 1, 8);
      pi = random_perm(rng, abc);
    }
    std::size_t p = pw(rng);
    bool a = is_pi_clustering(u, abc, pi), b = is_pi_clustering(power(u, p), abc, pi);
    clustered += a;
    o.require(a == b, "clustering not power invariant for " + u);
    o.require(a == oracle::clustering(u, abc, pi.one_line()), "clustering disagrees with oracle on " + u);
  }
  if (o.ok) o.detail = "3 x 500 trials, " + std::to_string(clustered) + " clustering words in the power trial";
  return o;
}

Outcome primitivity_preservation() {
  Outcome o;
  std::mt19937_64 rng(602);
  OrderedAlphabet abc("abc");
  std::uniform_int_distribution<int> letter(0, 2);
  for (int i = 0; i < 500 && o.ok; ++i) {
    Word w = random_primitive(rng, abc, 10);
    Letter a = abc[letter(rng)], b = abc[letter(rng)];
    if (a == b) b = 'd';
    std::vector<std::pair<const char*, LetterMorphism>> ms{
        {"alpha", LetterMorphism::alpha(abc, a, b)},
        {"alpha-tilde", LetterMorphism::alpha_tilde(abc, a, b)},
        {"rename", LetterMorphism::rename(abc, {{'a', 'b'}, {'b', 'c'}, {'c', 'a'}})},
        {"inclusion", LetterMorphism::disjoint_inclusion(abc, OrderedAlphabet("xy"))}};
    for (const auto& [name, m] : ms) {
      Word img = m(w);
      o.require(oracle::primitive(img) && is_primitive(img), std::string(name) + "(" + w + ") = " + img + " not primitive");
    }
  }
  if (o.ok) o.detail = "500 words x 4 morphism classes";
  return o;
}

Outcome clustering_transport_cases() {
  Outcome o;
  std::mt19937_64 rng(703);
  std::uniform_int_distribution<std::size_t> kdist(2, 4);
  for (int transport_case = 1; transport_case <= 7; ++transport_case) {
    int done = 0;
    while (done < 100 && o.ok) {
      auto d = random_diet_word(rng, kdist(rng));
      const std::string& A = d.order.str();
      const std::string seq = d.pi.one_line();
      const std::size_t k = A.size();
      TransportStep step;
      switch (transport_case) {
        case 1: {
          std::string pool = "abcdefgh";
          std::shuffle(pool.begin(), pool.end(), rng);
          std::map<Letter, Letter> m;
          for (std::size_t i = 0; i < k; ++i) m[A[i]] = pool[i];
          step = TransportStep::make_rename(m);
          break;
        }
        case 2: {
          std::size_t pb = d.pi.image_position(A.front());
          if (pb == 0) continue;
          step = TransportStep::make_alpha(seq[pb - 1], A.front());
          break;
        }
        case 3: {
          std::size_t pb = d.pi.image_position(A.back());
          if (pb + 1 == k) continue;
          step = TransportStep::make_alpha(seq[pb + 1], A.back());
          break;
        }
        case 4: {
          std::size_t ib = d.order.index_of(seq.front());
          if (ib == 0) continue;
          step = TransportStep::make_alpha_tilde(A[ib - 1], seq.front());
          break;
        }
        case 5: {
          std::size_t ib = d.order.index_of(seq.back());
          if (ib + 1 == k) continue;
          step = TransportStep::make_alpha_tilde(A[ib + 1], seq.back());
          break;
        }
        case 6:
          step = TransportStep::make_alpha(A[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)], 'z', done % 2);
          break;
        default:
          step = TransportStep::make_inclusion("xy");
      }
      auto r = clustering_transport(d.order, d.pi, step);
      Word img = transport_morphism(d.order, step)(d.w);
      o.require(r.transport_case == transport_case, "case " + std::to_string(transport_case) + " dispatched as " + std::to_string(r.transport_case));
      o.require(is_pi_clustering(img, r.order, r.perm) && oracle::clustering(img, r.order, r.perm.one_line()),
                "case " + std::to_string(transport_case) + ": image " + img + " of " + d.w + " not clustering");
      ++done;
    }
  }
  if (o.ok) o.detail = "7 cases x 100 DIET words";
  return o;
}

Outcome step_soundness() {
  Outcome o;
  std::vector<Iet> suite{inst::e5(), inst::e5_merged(), inst::golden()};
  for (auto& t : random_suite(808, 50, 3, 5)) suite.push_back(t);
  std::size_t steps = 0;
  for (const auto& t : suite) {
    for (const auto& [before, s] : executed_steps(t)) {
      ++steps;
      for (const auto& y : inst::sample_points(s.after.domain(), 20))
        if (!step_trajectory_identity(before, s, y, 10)) {
          o.fail(std::string("trajectory identity fails for ") + to_string(s.kind) + " on " + before.image_order() + " at " +
                 y.to_string());
          break;
        }
    }
  }
  if (o.ok) o.detail = std::to_string(suite.size()) + " IETs, " + std::to_string(steps) + " steps x 20 points";
  return o;
}

std::vector<Iet> induction_suite() {
  std::vector<Iet> suite{inst::e5(), inst::e5_merged(), inst::golden(), inst::diet421_iet(), inst::symmetric3()};
  for (auto& t : random_suite(808, 50, 3, 5)) suite.push_back(t);
  return suite;
}

Outcome first_return_equivalence() {
  Outcome o;
  std::size_t chains = 0, symbolic = 0;
  for (const auto& t : induction_suite()) {
    for (const auto& w : language(t, 3).words) {
      auto rep = verify_induction_consistency(t, w, 20);
      ++chains;
      symbolic += rep.symbolic_complete;
      if (!rep.ok()) {
        o.fail("chain to '" + w + "' on " + t.image_order() + ": " + (rep.problems.empty() ? "" : rep.problems.front()));
        break;
      }
    }
    if (!o.ok) break;
  }
  if (o.ok)
    o.detail = std::to_string(chains) + " chains, |w| <= 3, 20 points each; " + std::to_string(symbolic) +
               " also matched against complete return-word sets";
  return o;
}

Outcome e5_chain_shape() {
  Outcome o;
  auto rep = verify_induction_consistency(inst::e5(), "c", 20);
  const auto& ch = rep.chain;
  auto shape = chain_shape(ch);
  o.require(shape.size() >= 4, "chain too short: " + join(shape));
  if (!o.ok) return o;
  o.require(shape[0] == "RightMerge" && ch.steps[0].morphism.image('a') == "ae", "first step " + shape[0]);
  o.require(shape[1] == "Split{a}" && shape[2] == "Split{d}", "splits " + shape[1] + " " + shape[2]);
  o.require(ch.steps[1].branch == SplitBranch::KeptComplement && ch.steps[2].branch == SplitBranch::KeptComplement,
            "split branches");
  for (std::size_t i = 3; i < ch.steps.size(); ++i)
    o.require(is_rauzy(ch.steps[i].kind) && ch.before(i).alphabet().str() == "bc", "tail step " + shape[i]);
  o.require(rep.composed_images == std::set<Word>{"cb", "cbb"}, "composed images differ");
  o.require(rep.ok() && rep.symbolic_complete, "first-return or return-word oracle disagrees");
  if (o.ok) o.detail = join(shape) + "; images {cb, cbb}";
  return o;
}

Outcome split_agreement() {
  Outcome o;
  std::size_t splits = 0;
  for (const auto& t : induction_suite())
    for (const auto& [before, s] : executed_steps(t)) {
      if (s.kind != StepKind::Split) continue;
      ++splits;
      for (const auto& y : inst::sample_points(s.after.domain(), 20))
        if (!split_agrees(before, s, y)) {
          o.fail("split of {" + s.block + "} on " + before.image_order() + " disagrees at " + y.to_string());
          break;
        }
    }
  o.require(splits > 0, "no splits executed");
  if (o.ok) o.detail = std::to_string(splits) + " split branches x 20 points";
  return o;
}

Outcome extension_graphs() {
  Outcome o;
  using Edges = std::vector<std::pair<Letter, Letter>>;
  auto L = language(inst::diet421_iet(), 8);
  OrderedAlphabet lo = order_from_permutation(inst::diet421().perm), ro("abc");
  struct Expect {
    Word w;
    std::string left, right;
    Edges edges;
  };
  for (const auto& e : {Expect{"", "abc", "abc", {{'a', 'a'}, {'a', 'b'}, {'a', 'c'}, {'b', 'a'}, {'c', 'a'}}},
                        Expect{"a", "abc", "abc", {{'a', 'c'}, {'b', 'b'}, {'c', 'a'}}},
                        Expect{"ba", "a", "b", {{'a', 'b'}}}}) {
    auto g = extension_graph(L, e.w);
    Edges got = g.edges;
    std::sort(got.begin(), got.end());
    o.require(g.left == e.left && g.right == e.right && got == e.edges, "G(" + e.w + ") differs");
    // oracle: edges straight from the factor set
    Edges brute;
    for (Letter a : std::string("abc"))
      for (Letter b : std::string("abc"))
        if (L.contains(a + e.w + b)) brute.push_back({a, b});
    o.require(brute == e.edges, "factor oracle differs for G(" + e.w + ")");
    o.require(compatible(g, lo, ro), "G(" + e.w + ") not compatible");
  }
  auto rep = classify_language(L, 6, lo, ro, CompatibilityMode::Full);
  o.require(rep.ordered_alsinic, "not ordered alsinic to depth 6");
  if (o.ok) o.detail = "G(eps), G(a), G(ba) exact and compatible; ordered alsinic to length 6";
  return o;
}

Outcome return_words_clustering() {
  Outcome o;
  struct Job {
    std::string name;
    Iet t;
    std::size_t wl, rl;
  };
  std::vector<Job> jobs{{"E5", inst::e5(), 3, 12}, {"golden", inst::golden(), 4, 20}, {"DIET", inst::diet421_iet(), 4, 12}};
  std::size_t n = 0;
  for (auto& t : random_suite(1313, 25, 3, 4)) jobs.push_back({"random " + std::to_string(++n), t, 3, 12});
  std::size_t returns = 0, incomplete = 0;
  for (const auto& j : jobs) {
    auto r = verify_return_clustering(j.t, j.wl, j.rl);
    returns += r.return_words_checked;
    incomplete += r.incomplete.size();
    if (!r.ok()) {
      o.fail(j.name + ": return word " + r.failures.front().u + " of '" + r.failures.front().w + "' not clustering");
      break;
    }
  }
  if (o.ok)
    o.detail = std::to_string(jobs.size()) + " IETs, " + std::to_string(returns) + " return words, " +
               std::to_string(incomplete) + " searches hit the length bound";
  return o;
}

Outcome symmetric_perfect_clustering() {
  Outcome o;
  std::size_t returns = 0;
  for (const auto& [name, t] : std::vector<std::pair<std::string, Iet>>{
           {"golden", inst::golden()}, {"symmetric3", inst::symmetric3()}, {"DIET", inst::diet421_iet()}}) {
    auto r = verify_perfect_clustering_symmetric(t, 4, 16);
    returns += r.return_words_checked;
    if (!r.ok()) {
      o.fail(name + ": " + r.failures.front().u + " not perfectly clustering");
      break;
    }
  }
  if (o.ok) o.detail = "golden, symmetric3, DIET: " + std::to_string(returns) + " return words";
  return o;
}

Outcome bridge() {
  Outcome o;
  std::mt19937_64 rng(1515);
  OrderedAlphabet abc("abc");
  std::size_t agree = 0, positive = 0;
  std::vector<Perm> perms;
  std::string s = "abc";
  do perms.emplace_back(abc, s);
  while (std::next_permutation(s.begin(), s.end()));
  for (int i = 0; i < 200 && o.ok; ++i) {
    Word w = random_primitive(rng, abc, 10);
    auto L = language_of_periodic(w, abc, w.size() + 2);
    for (const auto& pi : perms) {
      bool clus = is_pi_clustering(w, abc, pi);
      o.require(clus == oracle::clustering(w, abc, pi.one_line()), "clustering oracle disagrees on " + w);
      bool oa = classify_language(L, w.size(), order_from_permutation(pi), abc).ordered_alsinic;
      if (clus != oa) {
        o.fail(w + " under " + pi.one_line() + ": clustering " + std::to_string(clus) + ", ordered alsinic " +
               std::to_string(oa));
        break;
      }
      ++agree;
      positive += clus;
    }
  }
  if (o.ok) o.detail = "200 words x 6 permutations agree (" + std::to_string(positive) + " clustering pairs)";
  return o;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "BWT exactness", 0, bwt_exactness},
      {2, "eBWT exactness", 0, ebwt_exactness},
      {3, "DIET correspondence", 1000, diet_correspondence},
      {4, "banana clustering verdicts", 1000, banana},
      {5, "conjugacy and power laws", 5000, conjugacy_power_laws},
      {6, "primitivity preservation", 2000, primitivity_preservation},
      {7, "clustering transport", 5000, clustering_transport_cases},
      {8, "step soundness", 30000, step_soundness},
      {9, "first-return equivalence", 60000, first_return_equivalence},
      {10, "E5 chain shape", 5000, e5_chain_shape},
      {11, "split agreement", 30000, split_agreement},
      {12, "extension graphs", 5000, extension_graphs},
      {13, "return words are clustering", 120000, return_words_clustering},
      {14, "symmetric: perfectly clustering", 10000, symmetric_perfect_clustering},
      {15, "clustering vs ordered alsinic", 20000, bridge},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double dt = ms_since(t0);
    if (c.limit_ms > 0 && dt >= c.limit_ms) o.fail("took " + std::to_string(dt) + " ms");
    failed += !o.ok;
    char limit[32];
    if (c.limit_ms > 0)
      std::snprintf(limit, sizeof limit, "< %.0f ms", c.limit_ms);
    else
      std::snprintf(limit, sizeof limit, "< 1 ms each");
    std::printf("%s %2d %-34s %10.2f ms (%s)  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, dt, limit,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed ? 1 : 0;
}
