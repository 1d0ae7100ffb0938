#ifndef DIAMOND_REWRITE_HPP
#define DIAMOND_REWRITE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diamond/manin.hpp"
#include "diamond/scalar.hpp"

namespace diamond {

// ---- words over a finite alphabet ----

struct Alphabet {
  std::vector<std::string> names;
  // precedence[k] ranks letter k; defaults to list order. Lower is smaller.
  std::vector<int> precedence;

  int size() const { return static_cast<int>(names.size()); }
  int find(const std::string& name) const;  // -1 if absent
  static Alphabet of(std::vector<std::string> names);
};

using Word = std::vector<int>;  // letter indices into the alphabet

std::string word_str(const Alphabet& a, const Word& w);
Word parse_word(const Alphabet& a, const std::string& text);

// (length, precedence-lex) comparison; the canonical iteration order.
bool word_shortlex_less(const Alphabet& a, const Word& x, const Word& y);

// A finite k-linear combination of words with Scalar coefficients, kept
// sorted descending in shortlex, no zero coefficients.
class LinComb {
 public:
  LinComb() = default;
  static LinComb zero() { return LinComb(); }
  static LinComb monomial(const Word& w, const Scalar& c);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<std::pair<Word, Scalar>>& terms() const { return terms_; }

  static LinComb collect(const Alphabet& a,
                         std::vector<std::pair<Word, Scalar>> terms);
  friend bool operator==(const LinComb& x, const LinComb& y) {
    return x.terms_ == y.terms_;
  }

 private:
  std::vector<std::pair<Word, Scalar>> terms_;
};

// ---- orders ----

// A semigroup partial order on words. deglex and length_then_incomparable
// are built in; `weighted` compares the vector (length, stat_1, stat_2, ...)
// lexicographically where each statistic is a letter count or an ordered
// inversion count -- all semigroup-compatible with the DCC. `plugin` wraps an
// arbitrary comparator supplied by the caller, taken on trust.
struct OrderSpec {
  enum class Kind { deglex, length_then_incomparable, weighted, plugin };

  struct WeightComponent {
    enum class What { letter_count, inversion_count };
    What what;
    int a = 0, b = 0;  // letter, or ordered pair (a before b)
  };

  Kind kind = Kind::deglex;
  std::vector<int> precedence;  // deglex only; defaults to alphabet order
  std::vector<WeightComponent> components;  // weighted only
  std::function<Cmp(const Word&, const Word&)> plugin_cmp;
  std::string plugin_name;

  static OrderSpec deglex(std::vector<int> precedence = {});
  static OrderSpec length();
  static OrderSpec weighted(std::vector<WeightComponent> components);
  static OrderSpec plugin(std::string name,
                          std::function<Cmp(const Word&, const Word&)> cmp);
  // The Def-3.14 order on Coxeter words (letter k read as s_k), refined
  // inside commutation classes by precedence-lex so commutations orient.
  static OrderSpec coxeter(int strands);

  Cmp compare(const Word& x, const Word& y) const;
  bool less(const Word& x, const Word& y) const {
    return compare(x, y) == Cmp::LT;
  }
  std::string describe(const Alphabet& a) const;
};

// ---- rules and systems ----

struct RewriteRule {
  Word lhs;      // W_r, unit leading coefficient
  LinComb rhs;   // f_r
  std::string label;
};

struct RewriteSystem {
  Alphabet alphabet;
  std::vector<RewriteRule> rules;
  OrderSpec order;
  bool validated = false;
};

struct ValidationIssue {
  int rule = -1;
  std::string message;
};

struct ValidationReport {
  bool ok = false;
  std::vector<ValidationIssue> issues;
};

// Checks each rule: nonempty lhs, rhs words strictly below the lhs under
// the order. Marks the system validated on success.
ValidationReport validate_system(RewriteSystem& system);

// ---- reduction ----

struct ReductionStep {
  Word from;
  int rule = 0;
  int position = 0;
};

struct NormalFormResult {
  LinComb value;
  std::vector<ReductionStep> trace;
  long long steps = 0;
};

// Replaces one occurrence of rules[rule].lhs at `position` inside `word`,
// leaving the other terms of t untouched.
LinComb reduce_once(const RewriteSystem& system, const LinComb& t,
                    const Word& word, int rule, int position);

// Deterministic normal form: always rewrites the shortlex-largest reducible
// word at its leftmost match with the lowest rule index. Asserts each step
// decreases the order.
NormalFormResult normal_form(const RewriteSystem& system, const LinComb& t,
                             long long budget = 1000000);

// Randomized-strategy normal form for confluence experiments.
LinComb normal_form_random(const RewriteSystem& system, const LinComb& t,
                           unsigned seed, long long budget = 1000000);

// ---- ambiguities ----

struct Ambiguity {
  enum class Kind { overlap, inclusion, disjoint };
  Kind kind = Kind::overlap;
  Word word;       // the minimal word A
  int rule_r = 0;  // W_r occurs at pos_r
  int rule_s = 0;  // W_s occurs at pos_s
  int pos_r = 0;
  int pos_s = 0;
  std::string str(const Alphabet& a) const;
};

// All minimal overlap and inclusion ambiguities, duplicate-free.
std::vector<Ambiguity> enumerate_minimal_ambiguities(
    const RewriteSystem& system);

struct AmbiguityReport {
  Ambiguity ambiguity;
  LinComb resolution_r;  // normal form after resolving via rule_r first
  LinComb resolution_s;
  LinComb residual;      // resolution_r - resolution_s
  bool resolvable = false;
  // which check certified resolvability: "joint" = residual normal form is
  // zero; "relative" = residual lies in the span of smaller rule instances
  std::string check;
  std::vector<ReductionStep> trace_r, trace_s;
};

AmbiguityReport check_ambiguity(const RewriteSystem& system,
                                const Ambiguity& a,
                                long long budget = 1000000,
                                bool try_relative = true);

struct BergmanVerdict {
  bool bergman_type = false;
  std::vector<AmbiguityReport> reports;
  std::optional<Ambiguity> witness;  // first unresolvable, if any
};

BergmanVerdict bergman_check(const RewriteSystem& system,
                             long long budget = 1000000, int jobs = 1);

// All irreducible words of length <= max_length in shortlex order. With
// max_length < 0, enumerates until some length has none (irreducible words
// are subword-closed); throws resource_error past `cap` words.
std::vector<Word> enumerate_irreducible(const RewriteSystem& system,
                                        int max_length, size_t cap = 1000000);

// ---- completion ----

struct CompletionResult {
  RewriteSystem system;
  bool confluent = false;
  int rounds = 0;
  std::vector<std::string> added;  // labels of the added rules
};

CompletionResult complete(const RewriteSystem& system, int round_budget = 50,
                          long long step_budget = 1000000);

}  // namespace diamond

#endif
