#include "diamond/rewrite.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace diamond {

int Alphabet::find(const std::string& name) const {
  for (int k = 0; k < size(); ++k)
    if (names[k] == name) return k;
  return -1;
}

Alphabet Alphabet::of(std::vector<std::string> names) {
  Alphabet a;
  a.names = std::move(names);
  a.precedence.resize(a.names.size());
  for (int k = 0; k < a.size(); ++k) a.precedence[k] = k;
  return a;
}

std::string word_str(const Alphabet& a, const Word& w) {
  if (w.empty()) return "1";
  bool compact = true;
  for (const auto& n : a.names) compact = compact && n.size() == 1;
  std::string out;
  for (size_t q = 0; q < w.size(); ++q) {
    if (!compact && q) out += " ";
    out += a.names.at(w[q]);
  }
  return out;
}

Word parse_word(const Alphabet& a, const std::string& text) {
  Word w;
  if (text == "1") return w;
  bool compact = true;
  for (const auto& n : a.names) compact = compact && n.size() == 1;
  if (compact && text.find(' ') == std::string::npos) {
    for (char c : text) {
      int k = a.find(std::string(1, c));
      if (k < 0)
        throw usage_error(std::string("unknown letter '") + c + "'");
      w.push_back(k);
    }
  } else {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      int k = a.find(tok);
      if (k < 0) throw usage_error("unknown letter '" + tok + "'");
      w.push_back(k);
    }
  }
  return w;
}

bool word_shortlex_less(const Alphabet& a, const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (size_t q = 0; q < x.size(); ++q)
    if (x[q] != y[q]) return a.precedence[x[q]] < a.precedence[y[q]];
  return false;
}

LinComb LinComb::monomial(const Word& w, const Scalar& c) {
  LinComb t;
  if (!c.is_zero()) t.terms_.push_back({w, c});
  return t;
}

LinComb LinComb::collect(const Alphabet& a,
                         std::vector<std::pair<Word, Scalar>> terms) {
  std::sort(terms.begin(), terms.end(),
            [&](const auto& x, const auto& y) {
              return word_shortlex_less(a, y.first, x.first);  // descending
            });
  LinComb out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
      if (out.terms_.back().second.is_zero()) out.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

OrderSpec OrderSpec::deglex(std::vector<int> precedence) {
  OrderSpec o;
  o.kind = Kind::deglex;
  o.precedence = std::move(precedence);
  return o;
}

OrderSpec OrderSpec::length() {
  OrderSpec o;
  o.kind = Kind::length_then_incomparable;
  return o;
}

OrderSpec OrderSpec::weighted(std::vector<WeightComponent> components) {
  OrderSpec o;
  o.kind = Kind::weighted;
  o.components = std::move(components);
  return o;
}

OrderSpec OrderSpec::plugin(std::string name,
                            std::function<Cmp(const Word&, const Word&)> cmp) {
  OrderSpec o;
  o.kind = Kind::plugin;
  o.plugin_name = std::move(name);
  o.plugin_cmp = std::move(cmp);
  return o;
}

OrderSpec OrderSpec::coxeter(int strands) {
  auto cmp = [strands](const Word& x, const Word& y) -> Cmp {
    Expression a{strands, {}}, b{strands, {}};
    for (int l : x) a.letters.push_back(l + 1);
    for (int l : y) b.letters.push_back(l + 1);
    Cmp c = leq(a, b);
    if (c != Cmp::EQ) return c;
    if (x == y) return Cmp::EQ;
    // commutation-equivalent words: orient by plain lex so that every
    // commutation move is strictly decreasing in one fixed direction
    return x < y ? Cmp::LT : Cmp::GT;
  };
  return plugin("coxeter " + std::to_string(strands), cmp);
}

namespace {

long long count_letter(const Word& w, int letter) {
  return std::count(w.begin(), w.end(), letter);
}

long long count_inversions(const Word& w, int a, int b) {
  // pairs (p, q), p < q, with w[p] = a and w[q] = b
  long long out = 0, seen_a = 0;
  for (int l : w) {
    if (l == a) ++seen_a;
    if (l == b) out += seen_a;
  }
  return out;
}

}  // namespace

Cmp OrderSpec::compare(const Word& x, const Word& y) const {
  switch (kind) {
    case Kind::deglex: {
      if (x.size() != y.size())
        return x.size() < y.size() ? Cmp::LT : Cmp::GT;
      for (size_t q = 0; q < x.size(); ++q) {
        if (x[q] == y[q]) continue;
        int px = x[q] < static_cast<int>(precedence.size()) ? precedence[x[q]]
                                                            : x[q];
        int py = y[q] < static_cast<int>(precedence.size()) ? precedence[y[q]]
                                                            : y[q];
        return px < py ? Cmp::LT : Cmp::GT;
      }
      return Cmp::EQ;
    }
    case Kind::length_then_incomparable: {
      if (x.size() != y.size())
        return x.size() < y.size() ? Cmp::LT : Cmp::GT;
      return x == y ? Cmp::EQ : Cmp::INCOMPARABLE;
    }
    case Kind::weighted: {
      if (x.size() != y.size())
        return x.size() < y.size() ? Cmp::LT : Cmp::GT;
      for (const auto& comp : components) {
        long long vx, vy;
        if (comp.what == WeightComponent::What::letter_count) {
          vx = count_letter(x, comp.a);
          vy = count_letter(y, comp.a);
        } else {
          vx = count_inversions(x, comp.a, comp.b);
          vy = count_inversions(y, comp.a, comp.b);
        }
        if (vx != vy) return vx < vy ? Cmp::LT : Cmp::GT;
      }
      return x == y ? Cmp::EQ : Cmp::INCOMPARABLE;
    }
    case Kind::plugin:
      return plugin_cmp(x, y);
  }
  return Cmp::INCOMPARABLE;
}

std::string OrderSpec::describe(const Alphabet& a) const {
  switch (kind) {
    case Kind::deglex: {
      std::string out = "deglex";
      std::vector<int> by_rank(a.size());
      for (int k = 0; k < a.size(); ++k)
        by_rank[k < static_cast<int>(precedence.size()) ? precedence[k] : k] = k;
      for (int k : by_rank) out += " " + a.names[k];
      return out;
    }
    case Kind::length_then_incomparable:
      return "length";
    case Kind::weighted: {
      std::string out = "weighted";
      for (const auto& c : components) {
        if (c.what == WeightComponent::What::letter_count)
          out += " count:" + a.names[c.a];
        else
          out += " inv:" + a.names[c.a] + "," + a.names[c.b];
      }
      return out;
    }
    case Kind::plugin:
      return plugin_name;
  }
  return "?";
}

ValidationReport validate_system(RewriteSystem& system) {
  ValidationReport rep;
  for (size_t r = 0; r < system.rules.size(); ++r) {
    const RewriteRule& rule = system.rules[r];
    if (rule.lhs.empty()) {
      rep.issues.push_back(
          {static_cast<int>(r), "rule has an empty left-hand side"});
      continue;
    }
    for (int l : rule.lhs)
      if (l < 0 || l >= system.alphabet.size())
        rep.issues.push_back({static_cast<int>(r), "letter out of range"});
    for (const auto& [w, c] : rule.rhs.terms()) {
      Cmp cmp = system.order.compare(w, rule.lhs);
      if (cmp != Cmp::LT) {
        std::string rel = cmp == Cmp::GT           ? "above"
                          : cmp == Cmp::EQ         ? "equal to"
                                                   : "incomparable with";
        rep.issues.push_back(
            {static_cast<int>(r),
             "rhs word " + word_str(system.alphabet, w) + " is " + rel +
                 " the lhs " + word_str(system.alphabet, rule.lhs)});
      }
    }
  }
  rep.ok = rep.issues.empty();
  system.validated = rep.ok;
  return rep;
}

namespace {

bool matches_at(const Word& w, const Word& lhs, int pos) {
  if (pos < 0 || pos + lhs.size() > w.size()) return false;
  return std::equal(lhs.begin(), lhs.end(), w.begin() + pos);
}

// Words of the rule applied inside `word` at pos: X f_r Y.
std::vector<std::pair<Word, Scalar>> substitute_rule(
    const Word& word, const RewriteRule& rule, int pos, const Scalar& coeff) {
  std::vector<std::pair<Word, Scalar>> out;
  for (const auto& [v, d] : rule.rhs.terms()) {
    Word w;
    w.reserve(word.size() - rule.lhs.size() + v.size());
    w.insert(w.end(), word.begin(), word.begin() + pos);
    w.insert(w.end(), v.begin(), v.end());
    w.insert(w.end(), word.begin() + pos + rule.lhs.size(), word.end());
    out.push_back({std::move(w), coeff * d});
  }
  return out;
}

}  // namespace

LinComb reduce_once(const RewriteSystem& system, const LinComb& t,
                    const Word& word, int rule, int position) {
  const RewriteRule& r = system.rules.at(rule);
  if (!matches_at(word, r.lhs, position))
    throw no_match_error("rule " + r.label + " does not match " +
                         word_str(system.alphabet, word) + " at position " +
                         std::to_string(position));
  std::vector<std::pair<Word, Scalar>> terms;
  for (const auto& [w, c] : t.terms()) {
    if (w == word) {
      auto sub = substitute_rule(w, r, position, c);
      terms.insert(terms.end(), sub.begin(), sub.end());
    } else {
      terms.push_back({w, c});
    }
  }
  return LinComb::collect(system.alphabet, std::move(terms));
}

namespace {

struct Match {
  int position = -1;
  int rule = -1;
};

Match first_match(const RewriteSystem& system, const Word& w) {
  for (int pos = 0; pos < static_cast<int>(w.size()); ++pos)
    for (size_t r = 0; r < system.rules.size(); ++r)
      if (matches_at(w, system.rules[r].lhs, pos))
        return {pos, static_cast<int>(r)};
  return {};
}

}  // namespace

NormalFormResult normal_form(const RewriteSystem& system, const LinComb& t,
                             long long budget) {
  NormalFormResult res;
  res.value = t;
  while (true) {
    // terms are sorted descending, so the first reducible term is the
    // shortlex-largest one
    const Word* word = nullptr;
    Match m;
    for (const auto& [w, c] : res.value.terms()) {
      m = first_match(system, w);
      if (m.rule >= 0) {
        word = &w;
        break;
      }
    }
    if (!word) return res;
    if (++res.steps > budget)
      throw divergence_error(
          "normal form exceeded its step budget of " +
          std::to_string(budget) + " starting from " +
          (t.terms().empty() ? std::string("0")
                             : word_str(system.alphabet, t.terms()[0].first)));
    Word from = *word;
    const RewriteRule& rule = system.rules[m.rule];
    for (const auto& [v, d] : rule.rhs.terms()) {
      Word produced;
      produced.insert(produced.end(), from.begin(), from.begin() + m.position);
      produced.insert(produced.end(), v.begin(), v.end());
      produced.insert(produced.end(),
                      from.begin() + m.position + rule.lhs.size(), from.end());
      if (system.order.compare(produced, from) != Cmp::LT)
        throw order_violation_error(
            "step does not decrease the order: " +
            word_str(system.alphabet, from) + " -> " +
            word_str(system.alphabet, produced));
    }
    res.trace.push_back({from, m.rule, m.position});
    res.value = reduce_once(system, res.value, from, m.rule, m.position);
  }
}

LinComb normal_form_random(const RewriteSystem& system, const LinComb& t,
                           unsigned seed, long long budget) {
  std::mt19937 rng(seed);
  LinComb cur = t;
  long long steps = 0;
  while (true) {
    std::vector<std::tuple<Word, int, int>> options;
    for (const auto& [w, c] : cur.terms())
      for (int pos = 0; pos < static_cast<int>(w.size()); ++pos)
        for (size_t r = 0; r < system.rules.size(); ++r)
          if (matches_at(w, system.rules[r].lhs, pos))
            options.push_back({w, static_cast<int>(r), pos});
    if (options.empty()) return cur;
    if (++steps > budget)
      throw divergence_error("randomized normal form exceeded its budget");
    auto& [w, r, pos] =
        options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(
            rng)];
    cur = reduce_once(system, cur, w, r, pos);
  }
}

std::string Ambiguity::str(const Alphabet& a) const {
  const char* k = kind == Kind::overlap     ? "overlap"
                  : kind == Kind::inclusion ? "inclusion"
                                            : "disjoint";
  return std::string(k) + "(" + word_str(a, word) + ", r" +
         std::to_string(rule_r) + "@" + std::to_string(pos_r) + ", r" +
         std::to_string(rule_s) + "@" + std::to_string(pos_s) + ")";
}

std::vector<Ambiguity> enumerate_minimal_ambiguities(
    const RewriteSystem& system) {
  std::vector<Ambiguity> out;
  const auto& rules = system.rules;
  for (size_t r = 0; r < rules.size(); ++r) {
    for (size_t s = 0; s < rules.size(); ++s) {
      const Word& wr = rules[r].lhs;
      const Word& ws = rules[s].lhs;
      // overlaps: a proper suffix of W_r equals a proper prefix of W_s
      for (int k = 1; k < static_cast<int>(wr.size()) &&
                      k < static_cast<int>(ws.size());
           ++k) {
        if (!std::equal(ws.begin(), ws.begin() + k, wr.end() - k)) continue;
        Ambiguity a;
        a.kind = Ambiguity::Kind::overlap;
        a.word = wr;
        a.word.insert(a.word.end(), ws.begin() + k, ws.end());
        a.rule_r = static_cast<int>(r);
        a.rule_s = static_cast<int>(s);
        a.pos_r = 0;
        a.pos_s = static_cast<int>(wr.size()) - k;
        out.push_back(std::move(a));
      }
      // inclusions: W_r a subword of W_s for distinct rules
      if (r == s) continue;
      if (wr.size() > ws.size()) continue;
      if (wr.size() == ws.size() && r > s) continue;  // count each pair once
      for (int pos = 0; pos + wr.size() <= ws.size(); ++pos) {
        if (!matches_at(ws, wr, pos)) continue;
        Ambiguity a;
        a.kind = Ambiguity::Kind::inclusion;
        a.word = ws;
        a.rule_r = static_cast<int>(r);
        a.rule_s = static_cast<int>(s);
        a.pos_r = pos;
        a.pos_s = 0;
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

namespace {

// Bounded bidirectional search for membership of `residual` in the span of
// rule instances placed at words strictly below `bound`. Rules may be used
// in both directions; this is the practical form of relative resolvability.
bool relative_membership(const RewriteSystem& system, const LinComb& residual,
                         const Word& bound, int depth_limit, size_t node_cap) {
  // Representation: LinComb compared structurally. All coefficients must be
  // rational constants for the cancellation arithmetic to close.
  for (const auto& [w, c] : residual.terms())
    if (!c.is_constant()) return false;
  for (const auto& rule : system.rules)
    for (const auto& [w, c] : rule.rhs.terms())
      if (!c.is_constant()) return false;

  auto key_of = [&](const LinComb& t) {
    std::string key;
    for (const auto& [w, c] : t.terms()) {
      key += word_str(system.alphabet, w) + ":" + c.constant().str() + ";";
    }
    return key;
  };

  std::set<std::string> seen{key_of(residual)};
  std::deque<std::pair<LinComb, int>> queue{{residual, 0}};
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (cur.is_zero()) return true;
    if (depth >= depth_limit) continue;
    // instances sharing a word with the current state
    for (const auto& [w, c] : cur.terms()) {
      for (size_t r = 0; r < system.rules.size(); ++r) {
        const RewriteRule& rule = system.rules[r];
        // forward: w contains the lhs (instance X(W_r - f_r)Y, X W_r Y = w)
        for (int pos = 0; pos + rule.lhs.size() <= w.size(); ++pos) {
          if (!matches_at(w, rule.lhs, pos)) continue;
          if (system.order.compare(w, bound) != Cmp::LT) continue;
          LinComb next = reduce_once(system, cur, w, static_cast<int>(r), pos);
          if (seen.insert(key_of(next)).second) {
            if (seen.size() > node_cap) return false;
            queue.push_back({next, depth + 1});
          }
        }
        // backward: w contains some rhs word of the rule; lift it back
        for (const auto& [v, d] : rule.rhs.terms()) {
          if (v.empty() || d.is_zero()) continue;
          for (int pos = 0; pos + v.size() <= w.size(); ++pos) {
            if (!std::equal(v.begin(), v.end(), w.begin() + pos)) continue;
            // candidate instance: X(W_r - f_r)Y with X v Y = w
            Word xwy;
            xwy.insert(xwy.end(), w.begin(), w.begin() + pos);
            xwy.insert(xwy.end(), rule.lhs.begin(), rule.lhs.end());
            xwy.insert(xwy.end(), w.begin() + pos + v.size(), w.end());
            if (system.order.compare(xwy, bound) != Cmp::LT) continue;
            Scalar scale = c * Scalar(c.workspace(), Rational(1) /
                                                          d.constant());
            std::vector<std::pair<Word, Scalar>> terms(cur.terms().begin(),
                                                       cur.terms().end());
            terms.push_back({xwy, scale});
            for (const auto& [v2, d2] : rule.rhs.terms()) {
              Word xv2y;
              xv2y.insert(xv2y.end(), w.begin(), w.begin() + pos);
              xv2y.insert(xv2y.end(), v2.begin(), v2.end());
              xv2y.insert(xv2y.end(), w.begin() + pos + v.size(), w.end());
              terms.push_back({std::move(xv2y), -(scale * d2)});
            }
            LinComb next = LinComb::collect(system.alphabet, std::move(terms));
            if (seen.insert(key_of(next)).second) {
              if (seen.size() > node_cap) return false;
              queue.push_back({next, depth + 1});
            }
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

AmbiguityReport check_ambiguity(const RewriteSystem& system,
                                const Ambiguity& a, long long budget,
                                bool try_relative) {
  AmbiguityReport rep;
  rep.ambiguity = a;
  const Workspace* ws = nullptr;
  for (const auto& rule : system.rules)
    for (const auto& [w, c] : rule.rhs.terms())
      if (c.workspace()) ws = c.workspace();
  LinComb start = LinComb::monomial(a.word, Scalar(ws, Rational(1)));
  LinComb via_r = reduce_once(system, start, a.word, a.rule_r, a.pos_r);
  LinComb via_s = reduce_once(system, start, a.word, a.rule_s, a.pos_s);
  NormalFormResult nr = normal_form(system, via_r, budget);
  NormalFormResult ns = normal_form(system, via_s, budget);
  rep.resolution_r = nr.value;
  rep.resolution_s = ns.value;
  rep.trace_r = std::move(nr.trace);
  rep.trace_s = std::move(ns.trace);
  std::vector<std::pair<Word, Scalar>> diff(rep.resolution_r.terms().begin(),
                                            rep.resolution_r.terms().end());
  for (const auto& [w, c] : rep.resolution_s.terms()) diff.push_back({w, -c});
  rep.residual = LinComb::collect(system.alphabet, std::move(diff));
  if (rep.residual.is_zero()) {
    rep.resolvable = true;
    rep.check = "joint";
  } else if (try_relative &&
             relative_membership(system, rep.residual, a.word, 4, 4000)) {
    rep.resolvable = true;
    rep.check = "relative";
  } else {
    rep.resolvable = false;
    rep.check = "failed";
  }
  return rep;
}

BergmanVerdict bergman_check(const RewriteSystem& system, long long budget,
                             int jobs) {
  if (!system.validated)
    throw config_error("bergman_check requires a validated system");
  std::vector<Ambiguity> ambiguities = enumerate_minimal_ambiguities(system);
  BergmanVerdict verdict;
  verdict.reports.resize(ambiguities.size());
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || ambiguities.size() < 2) {
    for (size_t i = 0; i < ambiguities.size(); ++i)
      verdict.reports[i] = check_ambiguity(system, ambiguities[i], budget);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto worker = [&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= ambiguities.size()) return;
        try {
          verdict.reports[i] = check_ambiguity(system, ambiguities[i], budget);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  verdict.bergman_type = true;
  for (size_t i = 0; i < verdict.reports.size(); ++i) {
    if (!verdict.reports[i].resolvable) {
      verdict.bergman_type = false;
      if (!verdict.witness) verdict.witness = ambiguities[i];
    }
  }
  return verdict;
}

std::vector<Word> enumerate_irreducible(const RewriteSystem& system,
                                        int max_length, size_t cap) {
  std::vector<int> letters(system.alphabet.size());
  for (int k = 0; k < system.alphabet.size(); ++k) letters[k] = k;
  std::sort(letters.begin(), letters.end(), [&](int x, int y) {
    return system.alphabet.precedence[x] < system.alphabet.precedence[y];
  });

  auto reducible_suffix = [&](const Word& w) {
    for (const auto& rule : system.rules) {
      if (rule.lhs.size() > w.size()) continue;
      if (std::equal(rule.lhs.begin(), rule.lhs.end(),
                     w.end() - rule.lhs.size()))
        return true;
    }
    return false;
  };

  std::vector<Word> out;
  std::vector<Word> level{Word{}};
  if (reducible_suffix(Word{})) return out;  // an empty lhs kills everything
  out.push_back(Word{});
  for (int len = 1; max_length < 0 || len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : level) {
      for (int k : letters) {
        Word v = w;
        v.push_back(k);
        if (!reducible_suffix(v)) next.push_back(std::move(v));
      }
    }
    if (next.empty()) break;
    out.insert(out.end(), next.begin(), next.end());
    if (out.size() > cap)
      throw resource_error("irreducible word enumeration exceeded cap of " +
                           std::to_string(cap));
    level = std::move(next);
  }
  return out;
}

CompletionResult complete(const RewriteSystem& system, int round_budget,
                          long long step_budget) {
  CompletionResult res;
  res.system = system;
  auto vr = validate_system(res.system);
  if (!vr.ok) throw config_error("completion requires a valid system");
  const Workspace* ws = nullptr;
  for (const auto& rule : res.system.rules)
    for (const auto& [w, c] : rule.rhs.terms())
      if (c.workspace()) ws = c.workspace();

  for (int round = 0; round < round_budget; ++round) {
    std::vector<Ambiguity> ambiguities =
        enumerate_minimal_ambiguities(res.system);
    std::set<std::string> pending;  // dedup of new rules this round
    std::vector<RewriteRule> additions;
    for (const auto& amb : ambiguities) {
      AmbiguityReport rep =
          check_ambiguity(res.system, amb, step_budget, false);
      if (rep.resolvable) continue;
      // orient: the unique maximal word becomes the new lhs
      const auto& terms = rep.residual.terms();
      int max_idx = -1;
      for (size_t i = 0; i < terms.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < terms.size() && maximal; ++j)
          if (i != j &&
              res.system.order.compare(terms[j].first, terms[i].first) !=
                  Cmp::LT)
            maximal = false;
        if (maximal) {
          max_idx = static_cast<int>(i);
          break;
        }
      }
      if (max_idx < 0)
        throw completion_stuck_error(
            "residual of " + amb.str(res.system.alphabet) +
            " has no unique maximal word");
      if (!terms[max_idx].second.is_constant())
        throw completion_stuck_error(
            "residual of " + amb.str(res.system.alphabet) +
            " has a non-invertible leading coefficient " +
            terms[max_idx].second.str());
      Rational lead = terms[max_idx].second.constant();
      RewriteRule rule;
      rule.lhs = terms[max_idx].first;
      std::vector<std::pair<Word, Scalar>> rhs;
      for (size_t i = 0; i < terms.size(); ++i) {
        if (static_cast<int>(i) == max_idx) continue;
        rhs.push_back({terms[i].first,
                       terms[i].second * Scalar(ws, Rational(-1) / lead)});
      }
      rule.rhs = LinComb::collect(res.system.alphabet, std::move(rhs));
      rule.label =
          "c" + std::to_string(round) + "." + std::to_string(additions.size());
      std::string key = word_str(res.system.alphabet, rule.lhs);
      bool known = false;
      for (const auto& r : res.system.rules) known = known || r.lhs == rule.lhs;
      if (!known && pending.insert(key).second)
        additions.push_back(std::move(rule));
    }
    if (additions.empty()) {
      res.confluent = true;
      res.rounds = round;
      return res;
    }
    for (auto& rule : additions) {
      res.added.push_back(rule.label);
      res.system.rules.push_back(std::move(rule));
    }
    auto v = validate_system(res.system);
    if (!v.ok)
      throw completion_stuck_error("completion produced an invalid system: " +
                                   v.issues[0].message);
  }
  res.rounds = round_budget;
  res.confluent = false;
  return res;
}

}  // namespace diamond
