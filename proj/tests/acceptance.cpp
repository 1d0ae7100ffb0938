// Acceptance suite: one line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "diamond/dot_export.hpp"
#include "diamond/presentation_file.hpp"
#include "diamond/presets.hpp"

#ifndef PRESET_DIR
#define PRESET_DIR "presets"
#endif

using namespace diamond;

namespace {

int failures = 0;

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> notes;
  bool ok = true;

  Criterion(int n, std::string t) : number(n), title(std::move(t)) {}
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  ~Criterion() {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << number << "  " << title
              << "\n";
    for (const auto& n : notes) std::cout << "      - " << n << "\n";
    if (!ok) ++failures;
  }
};

std::string preset(const std::string& name) {
  return std::string(PRESET_DIR) + "/" + name;
}

Scalar k1(const Workspace* ws) { return Scalar(ws, Rational(1)); }

bool comm_equivalent_bfs(const Expression& a, const Expression& b) {
  if (a.letters.size() != b.letters.size()) return false;
  for (const auto& w : comm_class(a))
    if (w.letters == b.letters) return true;
  return false;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  do {
    out.push_back(Permutation{v});
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

void criterion_1() {
  Criterion c(1, "xyz example: normal form, verdict, irreducible count");
  PresentationFile f = parse_presentation_file(preset("xyz.pres"));
  RewriteSystem sys = f.word();
  c.require(validate_system(sys).ok, "system validates");

  auto nf = normal_form(
      sys, LinComb::monomial(parse_word(sys.alphabet, "zyx"), k1(f.ws.get())));
  std::vector<std::pair<Word, Scalar>> expect{
      {parse_word(sys.alphabet, "xyz"), Scalar(f.ws.get(), Rational(1))},
      {parse_word(sys.alphabet, "z"), Scalar(f.ws.get(), Rational(1))},
      {parse_word(sys.alphabet, "y"), Scalar(f.ws.get(), Rational(2))},
      {parse_word(sys.alphabet, "x"), Scalar(f.ws.get(), Rational(3))}};
  c.require(nf.value == LinComb::collect(sys.alphabet, std::move(expect)),
            "normal_form(zyx) = xyz + z + 2y + 3x exactly");

  c.require(bergman_check(sys).bergman_type, "bergman_check passes");

  auto irr = enumerate_irreducible(sys, 4);
  // oracle: brute-force subword scan over all words of length <= 4
  std::set<Word> oracle;
  std::function<void(Word&)> rec = [&](Word& w) {
    bool reducible = false;
    for (const auto& r : sys.rules)
      for (size_t p = 0; p + r.lhs.size() <= w.size() && !reducible; ++p)
        reducible = std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + p);
    if (!reducible) oracle.insert(w);
    if (w.size() >= 4) return;
    for (int l = 0; l < sys.alphabet.size(); ++l) {
      w.push_back(l);
      rec(w);
      w.pop_back();
    }
  };
  Word start;
  rec(start);
  c.require(oracle.size() == 35, "brute-force subword scan finds 35 words");
  c.require(std::set<Word>(irr.begin(), irr.end()) == oracle,
            "enumerate_irreducible matches the oracle");
  // and they are exactly the sorted monomials x^a y^b z^c
  for (const auto& w : irr)
    c.require(std::is_sorted(w.begin(), w.end()),
              "irreducible word is a sorted monomial: " +
                  word_str(sys.alphabet, w));
}

void criterion_2() {
  Criterion c(2, "S3 Coxeter words: the five minimal ambiguities, basis");
  PresentationFile f = parse_presentation_file(preset("coxeter-s3-words.pres"));
  RewriteSystem sys = f.word();
  c.require(validate_system(sys).ok, "system validates");
  auto ambs = enumerate_minimal_ambiguities(sys);
  std::multiset<std::string> words;
  for (const auto& a : ambs) words.insert(word_str(sys.alphabet, a.word));
  c.require(words == std::multiset<std::string>{"sss", "ttt", "ssts", "stss",
                                                "ststs"},
            "minimal ambiguities are exactly the expected five");
  auto verdict = bergman_check(sys);
  c.require(verdict.bergman_type, "all five resolvable");
  auto irr = enumerate_irreducible(sys, 3);
  std::vector<std::string> names;
  for (const auto& w : irr) names.push_back(word_str(sys.alphabet, w));
  c.require(names == std::vector<std::string>{"1", "s", "t", "st", "ts",
                                              "tst"},
            "irreducibles are 1, s, t, st, ts, tst");
}

void criterion_3() {
  Criterion c(3, "S4 failure under all 8 orientations, with witness");
  for (int mask = 0; mask < 8; ++mask) {
    WordBundle b = preset_coxeter_s4(mask & 1, mask & 2, mask & 4);
    c.require(b.system.validated,
              "orientation " + std::to_string(mask) + " validates");
    auto verdict = bergman_check(b.system);
    c.require(!verdict.bergman_type,
              "orientation " + std::to_string(mask) + " is not Bergman type");
    // the longest element keeps at least two irreducible reduced words
    auto irr6 = enumerate_irreducible(b.system, 6);
    int long6 = 0;
    for (const auto& w : irr6)
      if (w.size() == 6) ++long6;
    c.require(long6 >= 2, "orientation " + std::to_string(mask) +
                              " has >= 2 irreducible words of length 6");
  }
  WordBundle naive = preset_coxeter_s4_naive();
  auto verdict = bergman_check(naive.system);
  bool witness = false;
  for (const auto& rep : verdict.reports)
    if (!rep.resolvable &&
        word_str(naive.system.alphabet, rep.ambiguity.word) == "stsu" &&
        word_str(naive.system.alphabet,
                 naive.system.rules[rep.ambiguity.rule_r].lhs) == "sts" &&
        word_str(naive.system.alphabet,
                 naive.system.rules[rep.ambiguity.rule_s].lhs) == "su")
      witness = true;
  c.require(witness, "witness (stsu, sts, su) appears");
  auto irr = enumerate_irreducible(naive.system, 6);
  std::set<std::string> names;
  for (const auto& w : irr) names.insert(word_str(naive.system.alphabet, w));
  for (const char* w : {"utustu", "tustus", "ustust"})
    c.require(names.count(w) == 1, std::string(w) + " is irreducible");
}

void criterion_4() {
  Criterion c(4, "Manin-Schechtmann gradings on quotient graphs");
  auto check_w = [&](const Permutation& w, bool log) {
    ExpressionGraph q = expression_graph(w, true);
    int sources = 0, sinks = 0;
    std::vector<size_t> heights(q.vertices.size());
    for (size_t v = 0; v < q.vertices.size(); ++v)
      heights[v] = higher_inversion_set(q.vertices[v]).size();
    std::vector<bool> has_in(q.vertices.size()), has_out(q.vertices.size());
    for (const auto& e : q.edges) {
      has_out[e.from] = true;
      has_in[e.to] = true;
      if (heights[e.to] != heights[e.from] + 1) {
        c.require(false, "edge raises |J| by exactly 1 in w=" + w.str());
        return;
      }
    }
    size_t full = full_triples(w).size();
    for (size_t v = 0; v < q.vertices.size(); ++v) {
      if (!has_in[v]) {
        ++sources;
        c.require(heights[v] == 0, "source has J = {} in w=" + w.str());
      }
      if (!has_out[v]) {
        ++sinks;
        c.require(heights[v] == full,
                  "sink has all full triples in w=" + w.str());
      }
    }
    c.require(sources == 1 && sinks == 1,
              "unique source and sink in w=" + w.str());
    (void)log;
  };
  for (const auto& w : all_permutations(4)) check_w(w, false);

  // vertex counts for the longest element, classes certified by BFS
  Permutation w0 = Permutation::longest(4);
  ExpressionGraph g = expression_graph(w0, false);
  c.require(g.vertices.size() == 16, "Gamma_{w0(S4)} has 16 vertices");
  ExpressionGraph q = expression_graph(w0, true);
  c.require(q.vertices.size() == 8, "quotient has 8 vertices");
  // BFS commutation oracle, independent of comm_canonical
  std::vector<int> cls(g.vertices.size(), -1);
  int classes = 0;
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    if (cls[i] >= 0) continue;
    for (size_t j = i; j < g.vertices.size(); ++j)
      if (cls[j] < 0 && comm_equivalent_bfs(g.vertices[i], g.vertices[j]))
        cls[j] = classes;
    ++classes;
  }
  c.require(classes == 8, "BFS commutation oracle counts 8 classes");

  // spot-check three permutations in S5
  for (const auto& imgs : {std::vector<int>{5, 4, 3, 2, 1},
                           std::vector<int>{3, 5, 1, 4, 2},
                           std::vector<int>{2, 4, 5, 3, 1}})
    check_w(Permutation{imgs}, false);
}

void criterion_5() {
  Criterion c(5, "unique sink of non-reduced expression graphs, sink()");
  for (int n = 3; n <= 4; ++n) {
    for (const auto& w : all_permutations(n)) {
      ExpressionGraph q = expression_graph_nonreduced(w, 4, true);
      std::vector<bool> has_out(q.vertices.size());
      for (const auto& e : q.edges)
        if (e.kind != Move::Kind::commutation) has_out[e.from] = true;
      int terminals = 0;
      Expression terminal;
      for (size_t v = 0; v < q.vertices.size(); ++v) {
        // oriented edges strictly decrease, so the graph is acyclic and
        // every maximal path ends at a terminal class
        if (!has_out[v]) {
          ++terminals;
          terminal = q.vertices[v];
        }
      }
      if (terminals != 1) {
        c.require(false, "unique terminal class for w=" + w.str() + " (n=" +
                             std::to_string(n) + ")");
        continue;
      }
      c.require(is_reduced(terminal), "terminal class is reduced, w=" + w.str());
      for (const auto& v : q.vertices) {
        SinkResult res = sink(v);
        if (!(res.sink == terminal)) {
          c.require(false, "sink() reaches the terminal class from " +
                               v.str());
          break;
        }
        for (const auto& m : res.trace)
          if (m.kind != Move::Kind::commutation &&
              m.kind != Move::Kind::braid && m.kind != Move::Kind::cancel)
            c.require(false, "trace uses only the three permitted moves");
      }
    }
  }
}

void criterion_6() {
  Criterion c(6, "order laws: concatenation, embedding, DCC, antisymmetry");
  // exhaustive universe: n <= 4, length <= 6 -- grouped by (element, length)
  int n = 4;
  std::vector<Expression> words;
  {
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& w) {
      words.push_back(Expression{n, w});
      if (w.size() >= 6) return;
      for (int l = 1; l < n; ++l) {
        w.push_back(l);
        rec(w);
        w.pop_back();
      }
    };
    std::vector<int> w;
    rec(w);
  }
  // bucket by (permutation, length): other pairs compare by length alone
  std::map<std::pair<std::vector<int>, size_t>, std::vector<const Expression*>>
      buckets;
  for (const auto& e : words)
    buckets[{evaluate(e).images(), e.letters.size()}].push_back(&e);

  bool anti_ok = true, cls_ok = true, cycle_ok = true;
  for (const auto& [key, bucket] : buckets) {
    for (size_t i = 0; i < bucket.size(); ++i) {
      for (size_t j = i + 1; j < bucket.size(); ++j) {
        Cmp ab = leq(*bucket[i], *bucket[j]);
        Cmp ba = leq(*bucket[j], *bucket[i]);
        if (reverse_cmp(ab) != ba) anti_ok = false;
        bool eq_class = comm_canonical(*bucket[i]).letters ==
                        comm_canonical(*bucket[j]).letters;
        if ((ab == Cmp::EQ) != eq_class) cls_ok = false;
        if (ab == Cmp::LT && ba == Cmp::LT) cycle_ok = false;
      }
    }
  }
  c.require(anti_ok, "comparison is antisymmetric (exhaustive, n=4, len<=6)");
  c.require(cls_ok, "EQ-class iff commutation-equivalent");
  c.require(cycle_ok, "no two-cycles (DCC on the finite universe)");

  // transitivity spot-check inside the largest buckets (finite DCC needs it)
  std::mt19937 rng(2024);
  bool trans_ok = true;
  for (const auto& [key, bucket] : buckets) {
    if (bucket.size() < 3) continue;
    std::uniform_int_distribution<size_t> pick(0, bucket.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const Expression *a = bucket[pick(rng)], *b = bucket[pick(rng)],
                       *d = bucket[pick(rng)];
      if (leq(*a, *b) == Cmp::LT && leq(*b, *d) == Cmp::LT &&
          leq(*a, *d) != Cmp::LT)
        trans_ok = false;
    }
  }
  c.require(trans_ok, "strict comparisons chain transitively");

  // concatenation compatibility: bounded exhaustive
  bool concat_ok = true;
  std::vector<Expression> shorts;
  for (const auto& e : words)
    if (e.letters.size() <= 3) shorts.push_back(e);
  std::uniform_int_distribution<size_t> pick(0, shorts.size() - 1);
  for (int trial = 0; trial < 4000; ++trial) {
    const Expression &a = shorts[pick(rng)], &b = shorts[pick(rng)];
    const Expression &X = shorts[pick(rng)], &Y = shorts[pick(rng)];
    Cmp before = leq(a, b);
    Expression xa{n, {}}, xb{n, {}};
    auto glue = [&](const Expression& mid) {
      Expression out{n, X.letters};
      out.letters.insert(out.letters.end(), mid.letters.begin(),
                         mid.letters.end());
      out.letters.insert(out.letters.end(), Y.letters.begin(),
                         Y.letters.end());
      return out;
    };
    if (leq(glue(a), glue(b)) != before) concat_ok = false;
  }
  c.require(concat_ok, "A w B <= A w' B iff w <= w' (randomized contexts)");

  // embedding compatibility into S6 at offset 1
  bool embed_ok = true;
  for (int trial = 0; trial < 4000; ++trial) {
    const Expression &a = shorts[pick(rng)], &b = shorts[pick(rng)];
    Cmp before = leq(a, b);
    Cmp after = leq(parabolic_embed(a, 6, 1), parabolic_embed(b, 6, 1));
    if (before == Cmp::LT && after != Cmp::LT) embed_ok = false;
    if (before == Cmp::EQ && after != Cmp::EQ) embed_ok = false;
  }
  c.require(embed_ok, "embedding preserves the order");

  // n = 5: 1000 randomized pair trials across the same laws
  bool n5_ok = true;
  std::uniform_int_distribution<int> letter5(1, 4), len5(0, 6);
  auto random5 = [&]() {
    Expression e{5, {}};
    int l = len5(rng);
    for (int q = 0; q < l; ++q) e.letters.push_back(letter5(rng));
    return e;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    Expression a = random5(), b = random5();
    Cmp ab = leq(a, b);
    if (reverse_cmp(ab) != leq(b, a)) n5_ok = false;
    if (a.letters.size() == b.letters.size() &&
        (ab == Cmp::EQ) != (comm_canonical(a).letters ==
                            comm_canonical(b).letters))
      n5_ok = false;
    Expression X = random5();
    Expression ax{5, X.letters}, bx{5, X.letters};
    ax.letters.insert(ax.letters.end(), a.letters.begin(), a.letters.end());
    bx.letters.insert(bx.letters.end(), b.letters.begin(), b.letters.end());
    if (leq(ax, bx) != ab) n5_ok = false;
  }
  c.require(n5_ok, "n = 5 randomized trials");
}

void criterion_7() {
  Criterion c(7, "modified symmetric conditions (with the classical c*beta clause)");
  PresentationFile f =
      parse_presentation_file(preset("modified-symmetric.pres"));
  const HeckePresentation& p = f.hecke();
  const Workspace* ws = p.ws;
  ConditionSet cond = derive_conditions(p);
  auto sym = [&](const char* name) {
    return Scalar::param(ws, *ws->find_global(name));
  };
  Scalar a = sym("a"), b = sym("b"), cc = sym("c"), d = sym("d"), e = sym("e"),
         beta = sym("beta");
  Scalar two(ws, Rational(2));

  auto contains = [&](const std::vector<Scalar>& v, const Scalar& g) {
    for (const auto& h : v)
      if (h == g) return true;
    return false;
  };
  c.require(contains(cond.generators, two * a) &&
                contains(cond.generators, two * b),
            "integer generators include 2a and 2b");

  // membership in <a, b, e, c+d, c*beta> decided by substitution:
  // kill a, b, e, set d = -c, then every monomial must carry c*beta
  ParamId pa = *ws->find_global("a"), pb = *ws->find_global("b"),
          pe = *ws->find_global("e"), pd = *ws->find_global("d");
  auto in_listed_ideal = [&](const Scalar& g) {
    Scalar r = g.substitute({{pa, Scalar::zero(ws)},
                             {pb, Scalar::zero(ws)},
                             {pe, Scalar::zero(ws)},
                             {pd, -cc}});
    if (r.is_zero()) return true;
    ParamId pc = *ws->find_global("c"), pbeta = *ws->find_global("beta");
    for (const auto& t : r.terms()) {
      bool has_c = false, has_beta = false;
      for (const auto& [id, exp] : t.mono) {
        has_c |= id == pc;
        has_beta |= id == pbeta;
      }
      if (!has_c || !has_beta) return false;
    }
    return true;
  };
  for (const auto& g : cond.generators)
    if (!in_listed_ideal(g))
      c.require(false, "emitted generator outside the listed ideal: " +
                           g.str());

  // reverse membership: each listed generator inside the emitted ideal,
  // via reduction by the emitted linear span plus divisibility
  auto in_emitted = [&](const Scalar& g) {
    std::vector<Scalar> pool = cond.generators;
    pool.push_back(g);
    std::vector<Scalar> before = reduce_conditions(cond.generators);
    std::vector<Scalar> after = reduce_conditions(pool);
    return before == after;  // adding g changes nothing iff g is redundant
  };
  for (const Scalar& listed : {a, b, e, cc + d})
    c.require(in_emitted(listed),
              "listed generator in the emitted ideal: " + listed.str());
  c.require(in_emitted(cc * beta),
            "listed generator in the emitted ideal: c*beta. Expected "
            "failure: the c*beta condition is not actually forced. Three "
            "independent checks agree -- the exact symbolic residuals, a "
            "rank oracle on the quotient algebra, and the representation "
            "T_i = 2 s_i + 1 in Q[S_n], which satisfies the relations with "
            "c*beta = 3 while keeping the irreducible diagrams independent "
            "(see test_hecke.cpp).");

  // substituting a solution of the listed set re-checks as resolvable
  // alpha = 2, beta = 0, c = -d = 5: a solution of the listed set
  HeckeBundle solved = preset_coxeter();
  HeckePresentation& sp = solved.presentation;
  sp.quad_same[0] = {Scalar(sp.ws, Rational(2)), Scalar::zero(sp.ws)};
  sp.braid[{0, 0, 0}] =
      BraidRel{Rational(1), Scalar::zero(sp.ws), Scalar::zero(sp.ws),
               Scalar(sp.ws, Rational(5)), Scalar(sp.ws, Rational(-5)),
               Scalar::zero(sp.ws)};
  c.require(hecke_check(sp).all_resolvable,
            "solution of the listed set re-checks as resolvable");
}

void criterion_8() {
  Criterion c(8, "nilHecke certification and basis ranks");
  PresentationFile f = parse_presentation_file(preset("nilhecke.pres"));
  const HeckePresentation& p = f.hecke();
  HeckeVerdict v = hecke_check(p);
  c.require(v.all_resolvable, "every word and dotted instance resolvable");
  c.require(v.reports.size() == 8, "five word + three dotted instances");

  long long fact = 1;
  for (int n = 2; n <= 4; ++n) {
    fact *= n;
    ColorSeq obj(n, 0);
    auto basis = enumerate_basis(p, obj, obj, &v);
    c.require(static_cast<long long>(basis.size()) == fact,
              "rank over dots = " + std::to_string(fact) + " for n = " +
                  std::to_string(n));
  }

  // the s.f.g instance against the divided-difference oracle
  bool sfg_checked = false;
  for (const auto& rep : v.reports)
    if (rep.instance.template_id == "s.f.g")
      sfg_checked = rep.resolvable;
  c.require(sfg_checked, "s.f.g instance resolvable");
  // oracle: del = (f - phi(f)) / (x1 - x2) on all monomials of degree <= 6
  ParamId x = p.ws->add_generator("x", 0);
  ParamId x1 = p.ws->positioned(x, 1), x2 = p.ws->positioned(x, 2);
  Scalar X1 = Scalar::param(p.ws, x1), X2 = Scalar::param(p.ws, x2);
  const RingMapSpec& phi = p.phi.at(0);
  const RingMapSpec& del = p.del.at(0);
  bool oracle_ok = true;
  for (int ea = 0; ea <= 6; ++ea) {
    for (int eb = 0; ea + eb <= 6; ++eb) {
      Scalar mono = X1.pow(ea) * X2.pow(eb);
      Scalar num = mono - apply_ring_map(phi, mono);
      Scalar den = X1 - X2;
      // exact division
      Scalar q = Scalar::zero(p.ws), r = num;
      while (!r.is_zero()) {
        const auto& rt = r.terms().front();
        const auto& dt = den.terms().front();
        std::map<ParamId, int> exps;
        for (auto& [id, eexp] : rt.mono) exps[id] += eexp;
        for (auto& [id, eexp] : dt.mono) exps[id] -= eexp;
        Monomial qm;
        bool divides = true;
        for (auto& [id, eexp] : exps) {
          if (eexp < 0) divides = false;
          if (eexp > 0) qm.push_back({id, eexp});
        }
        if (!divides) {
          oracle_ok = false;
          break;
        }
        Scalar qt =
            Scalar::from_terms(p.ws, {Scalar::Term{qm, rt.coeff / dt.coeff}});
        q += qt;
        r = r - qt * den;
      }
      if (!(apply_ring_map(del, mono) == q)) oracle_ok = false;
    }
  }
  c.require(oracle_ok, "Leibniz-extended del equals the divided difference "
                       "on monomials of degree <= 6");
  // phi multiplicativity on random pairs
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> expo(0, 3);
  bool mult_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    Scalar f = X1.pow(expo(rng)) * X2.pow(expo(rng)) +
               Scalar(p.ws, Rational(expo(rng)));
    Scalar g = X1.pow(expo(rng)) * X2.pow(expo(rng)) -
               Scalar(p.ws, Rational(expo(rng)));
    if (!(apply_ring_map(phi, f * g) ==
          apply_ring_map(phi, f) * apply_ring_map(phi, g)))
      mult_ok = false;
    if (!(apply_ring_map(del, f * g) ==
          apply_ring_map(del, f) * g +
              apply_ring_map(phi, f) * apply_ring_map(del, g)))
      mult_ok = false;
  }
  c.require(mult_ok, "phi multiplicative, del twisted-Leibniz");
}

void criterion_9() {
  Criterion c(9, "cross-module confluence: hecke vs completed word systems");
  HeckeBundle cox = preset_coxeter();
  const HeckePresentation& hp = cox.presentation;

  for (int n = 2; n <= 4; ++n) {
    // word system: S_n Coxeter, deglex with reversed letter precedence,
    // completed to confluence
    WordBundle wb;
    wb.ws = std::make_shared<Workspace>();
    std::vector<std::string> names;
    for (int l = 0; l < n - 1; ++l) names.push_back(std::string(1, "stu"[l]));
    wb.system.alphabet = Alphabet::of(names);
    std::vector<int> prec(n - 1);
    for (int l = 0; l < n - 1; ++l) prec[l] = n - 2 - l;
    wb.system.order = OrderSpec::deglex(prec);
    for (int l = 0; l < n - 1; ++l) {
      RewriteRule r;
      r.lhs = {l, l};
      r.rhs = LinComb::monomial({}, k1(wb.ws.get()));
      r.label = "qq" + std::to_string(l);
      wb.system.rules.push_back(r);
      if (l + 1 < n - 1) {
        RewriteRule braid;
        braid.lhs = {l, l + 1, l};
        braid.rhs = LinComb::monomial({l + 1, l, l + 1}, k1(wb.ws.get()));
        braid.label = "braid" + std::to_string(l);
        wb.system.rules.push_back(braid);
      }
      for (int m = l + 2; m < n - 1; ++m) {
        RewriteRule comm;
        comm.lhs = {l, m};
        comm.rhs = LinComb::monomial({m, l}, k1(wb.ws.get()));
        comm.label = "comm";
        wb.system.rules.push_back(comm);
      }
    }
    if (!validate_system(wb.system).ok) {
      c.require(false, "S" + std::to_string(n) + " word system validates");
      continue;
    }
    CompletionResult comp = complete(wb.system, 30);
    c.require(comp.confluent,
              "completion reaches confluence for n = " + std::to_string(n));

    // all words of length <= 6
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& w) {
      LinComb t = LinComb::monomial(Word(w.begin(), w.end()),
                                    k1(wb.ws.get()));
      LinComb nf = normal_form(comp.system, t).value;
      if (nf.terms().size() != 1) {
        c.require(false, "single-word normal form");
        return;
      }
      Expression word_side{n, nf.terms()[0].first};
      for (auto& l : word_side.letters) ++l;  // alphabet index -> s_i
      Expression e{n, std::vector<int>(w.begin(), w.end())};
      for (auto& l : e.letters) ++l;
      HeckeTerm ht;
      ht.bottom.assign(n, 0);
      ht.coeffs[hword_of(comm_canonical(e))] = Scalar::one(hp.ws);
      HeckeTerm hnf = hecke_reduce(hp, ht);
      bool match = hnf.coeffs.size() == 1 &&
                   hnf.coeffs.begin()->second == Scalar::one(hp.ws) &&
                   hnf.coeffs.begin()->first ==
                       hword_of(comm_canonical(word_side));
      if (!match)
        c.require(false, "hecke and word normal forms agree on " + e.str());
      if (w.size() >= 6) return;
      for (int l = 0; l < n - 1; ++l) {
        w.push_back(l);
        rec(w);
        w.pop_back();
      }
    };
    std::vector<int> w;
    rec(w);
  }

  // 500 randomized nilHecke decorated words under randomized strategies
  PresentationFile nf = parse_presentation_file(preset("nilhecke.pres"));
  const HeckePresentation& np = nf.hecke();
  Scalar x = Scalar::param(np.ws, np.ws->add_generator("x", 0));
  std::mt19937 rng(99);
  bool all_match = true;
  for (int trial = 0; trial < 500; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 4)(rng);
    int len = std::uniform_int_distribution<int>(0, 5)(rng);
    DecoratedWord d;
    d.bottom.assign(n, 0);
    for (int q = 0; q < len; ++q) {
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0)
        d.items.push_back(DecItem::dot(
            std::uniform_int_distribution<int>(1, n)(rng),
            x.pow(std::uniform_int_distribution<int>(1, 2)(rng))));
      else
        d.items.push_back(DecItem::cross(
            std::uniform_int_distribution<int>(1, n - 1)(rng)));
    }
    HeckeTerm collected = push_dots_left(np, d);
    HeckeTerm base = hecke_reduce(np, collected);
    if (!(hecke_reduce_random(np, collected, trial) == base))
      all_match = false;
  }
  c.require(all_match, "500 randomized decorated words reduce identically");
}

void criterion_10() {
  Criterion c(10, "completion of the bad S3 presentation");
  PresentationFile f = parse_presentation_file(preset("example-2-7.pres"));
  RewriteSystem sys = f.word();
  CompletionResult res = complete(sys, 50, f.budget);
  c.require(res.confluent, "completion terminates within budget");
  auto irr = enumerate_irreducible(res.system, -1);
  c.require(irr.size() == 6,
            "exactly 6 irreducible words (|S3|), got " +
                std::to_string(irr.size()));
  c.require(bergman_check(res.system).bergman_type,
            "completed system is Bergman type");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures)
    std::cout << failures << " criterion(s) failed\n";
  else
    std::cout << "all acceptance criteria passed\n";
  return failures == 0 ? 0 : 1;
}
