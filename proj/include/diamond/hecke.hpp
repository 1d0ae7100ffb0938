#ifndef DIAMOND_HECKE_HPP
#define DIAMOND_HECKE_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diamond/manin.hpp"
#include "diamond/scalar.hpp"

namespace diamond {

using ColorSeq = std::vector<ColorId>;

// Words inside the Hecke engine are stored bottom-first: hword[0] is the
// lowest crossing. The written Expression convention is top-first, so the
// two are reverses of each other.
using HWord = std::vector<int>;

HWord hword_of(const Expression& e);
Expression expr_of(int strands, const HWord& w);

struct DotRingSpec {
  std::vector<std::string> generators;
};

// sigma sigma = alpha sigma + beta, in End(ii).
struct QuadSameRel {
  Scalar alpha, beta;
};

// sts = lambda tst + st_coeff st + ts_coeff ts + s_coeff s + t_coeff t +
// id_coeff, read on a fixed bottom color triple. Families restrict which
// lower coefficients may be nonzero.
struct BraidRel {
  Rational lambda = 1;
  Scalar st_coeff, ts_coeff, s_coeff, t_coeff, id_coeff;
};

// A Hecke-type presentation: colors, permitted crossings, dot rings, and
// the relation tables keyed by bottom colors.
struct HeckePresentation {
  const Workspace* ws = nullptr;
  std::vector<std::string> color_names;
  std::vector<DotRingSpec> rings;               // per color
  std::set<std::pair<ColorId, ColorId>> permitted;

  std::map<ColorId, QuadSameRel> quad_same;                     // 5.8a
  std::map<std::pair<ColorId, ColorId>, Scalar> quad_mixed;     // 5.8b
  std::map<std::array<ColorId, 3>, BraidRel> braid;             // 5.8c-5.8g
  std::map<ColorId, RingMapSpec> phi, del;                      // 5.8h
  std::map<std::pair<ColorId, ColorId>, RingMapSpec> phi_mixed; // 5.8i

  int colors() const { return static_cast<int>(color_names.size()); }
  bool permits(ColorId a, ColorId b) const {
    return permitted.count({a, b}) > 0;
  }
  ColorId color(const std::string& name) const;
};

struct HeckeValidation {
  bool ok = false;
  std::vector<std::string> issues;
};

HeckeValidation validate_presentation(const HeckePresentation& p);

// Colors along the top of a word, or nullopt if some crossing is not
// permitted.
ColorSeq top_colors(const ColorSeq& bottom, const HWord& w);
bool word_permissible(const HeckePresentation& p, const ColorSeq& bottom,
                      const HWord& w);

// Permissibility of a permutation depends only on its inversion set.
bool permutation_permissible(const HeckePresentation& p, const ColorSeq& bottom,
                             const Permutation& w);
std::vector<Permutation> permissible_permutations(const HeckePresentation& p,
                                                  const ColorSeq& source,
                                                  const ColorSeq& target);

// A crossing word with dots: items listed bottom to top. Dot payloads are
// polynomials in the untagged generators of the strand's color at that
// point.
struct DecItem {
  int position = 1;
  bool is_dot = false;
  Scalar payload;  // dots only

  static DecItem cross(int position) { return {position, false, Scalar()}; }
  static DecItem dot(int position, Scalar payload) {
    return {position, true, std::move(payload)};
  }
};

struct DecoratedWord {
  ColorSeq bottom;
  std::vector<DecItem> items;
};

// A left-R_top-linear combination of permissible crossing words sharing one
// source color sequence; keys are commutation-canonical.
struct HeckeTerm {
  ColorSeq bottom;
  std::map<HWord, Scalar> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const HeckeTerm& a, const HeckeTerm& b) {
    return a.bottom == b.bottom && a.coeffs == b.coeffs;
  }
};

HeckeTerm hecke_sub(const HeckeTerm& a, const HeckeTerm& b);
std::string hecke_term_str(const HeckePresentation& p, const HeckeTerm& t);

// Collects every dot into the coefficient ring acting at the top, spawning
// the lower terms the del-maps produce. Crossings are not rewritten.
HeckeTerm push_dots_left(const HeckePresentation& p, const DecoratedWord& d);

// Full normal form: dots collected, every key the commutation-class sink of
// a reduced permissible expression. Each step strictly decreases
// (length, triple order); violations raise order_violation_error.
HeckeTerm hecke_reduce(const HeckePresentation& p, const HeckeTerm& t,
                       long long budget = 1000000);
HeckeTerm hecke_reduce(const HeckePresentation& p, const DecoratedWord& d,
                       long long budget = 1000000);
// Randomized redex selection, for confluence experiments.
HeckeTerm hecke_reduce_random(const HeckePresentation& p, const HeckeTerm& t,
                              unsigned seed, long long budget = 1000000);

// ---- minimal ambiguity templates ----

enum class DotMode { generators, symbolic };

struct AmbiguityInstance {
  std::string template_id;  // sss ssts stss ststs stsuts ss.f sts.f s.f.g
  ColorSeq coloring;        // bottom colors of the template strands
  std::vector<Scalar> dot_args;  // untagged payloads, bottom to top
  std::string str(const HeckePresentation& p) const;
};

struct InstanceSet {
  std::vector<AmbiguityInstance> instances;
  int skipped_guard_unmet = 0;  // colorings rejected by permissibility
};

InstanceSet instantiate_ambiguities(const HeckePresentation& p,
                                    DotMode mode = DotMode::generators);

// Copy of the presentation with a fresh symbolic generator (plus symbolic
// phi/del images) adjoined to every nontrivial dot ring, for fully symbolic
// dotted-ambiguity instances.
HeckePresentation with_symbolic_dots(const HeckePresentation& p);

struct HeckeAmbiguityReport {
  AmbiguityInstance instance;
  HeckeTerm resolution_a, resolution_b;
  HeckeTerm residual;
  bool resolvable = false;
};

HeckeAmbiguityReport check_ambiguity_instance(const HeckePresentation& p,
                                              const AmbiguityInstance& inst,
                                              long long budget = 1000000);

struct HeckeVerdict {
  bool all_resolvable = false;
  std::vector<HeckeAmbiguityReport> reports;
  int skipped_guard_unmet = 0;
};

HeckeVerdict hecke_check(const HeckePresentation& p,
                         long long budget = 1000000, int jobs = 1,
                         DotMode mode = DotMode::generators);

// ---- coefficient conditions ----

struct ConditionSet {
  std::vector<Scalar> generators;  // integer-scaled, deduplicated
  std::vector<Scalar> reduced;     // after elimination over Q
};

ConditionSet derive_conditions(const HeckePresentation& p,
                               long long budget = 1000000, int jobs = 1,
                               DotMode mode = DotMode::generators);

// Integer scaling, linear elimination, and divisibility pruning of a raw
// generator list; exposed for reuse by reports and tests.
std::vector<Scalar> scale_to_integer(const std::vector<Scalar>& gens);
std::vector<Scalar> reduce_conditions(const std::vector<Scalar>& gens);

// ---- bases ----

struct BasisEntry {
  Permutation w;
  Expression sink_expression;  // canonical representative, colored by source
};

// One sink reduced expression per permissible permutation. Requires a
// passing verdict unless force is set.
std::vector<BasisEntry> enumerate_basis(const HeckePresentation& p,
                                        const ColorSeq& source,
                                        const ColorSeq& target,
                                        const HeckeVerdict* certificate,
                                        bool force = false);

}  // namespace diamond

#endif
