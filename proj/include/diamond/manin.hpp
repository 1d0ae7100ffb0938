#ifndef DIAMOND_MANIN_HPP
#define DIAMOND_MANIN_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diamond/permutation.hpp"

namespace diamond {

// How a triple's packet meets a pair set. A full triple is both prefix and
// suffix; the empty intersection is too.
struct TripleClass {
  bool prefix = false;
  bool suffix = false;
  bool full = false;
  bool neither() const { return !prefix && !suffix; }
};

TripleClass classify_triple(const std::set<StrandPair>& I, const Triple& t);

// True iff every triple is prefix or suffix for I; on failure returns the
// violating triple.
struct InversionSetCheck {
  bool ok = false;
  std::optional<Triple> witness;
};
InversionSetCheck is_inversion_set(const std::set<StrandPair>& I, int n);

// Checks that an order on an inversion set (given as the bottom-to-top
// crossing list) comes from a reduced expression: non-full prefix triples
// induce lex order, non-full suffix triples antilex, full triples either.
// Throws typing_error if the entries are not an inversion set or repeat.
InversionSetCheck validate_crossing_order(const CrossingSequence& c, int n);

using HigherInversionSet = std::set<Triple>;

// Full triples whose packet appears in antilexicographic order. Requires a
// reduced expression.
HigherInversionSet higher_inversion_set(const Expression& e);

std::set<Triple> full_triples(const Permutation& w);

// Replaces letters[position..position+2] matching s_i s_{i+1} s_i or
// s_{i+1} s_i s_{i+1} by the braid partner.
Expression apply_packet_flip(const Expression& e, int position);

// Commutation-equivalence machinery. Two adjacent letters commute when
// their indices differ by at least 2.
bool letters_commute(int a, int b);

// Greedy normal form of the commutation class: repeatedly emits the
// smallest-index letter that can commute to the front.
Expression comm_canonical(const Expression& e);

// Breadth-first enumeration of the commutation class (oracle-grade; sizes
// are small at desk scale).
std::vector<Expression> comm_class(const Expression& e, size_t cap = 2000000);

// Forward flip found for a reduced expression: a commutation-equivalent
// word, the flip position within it, and the triple the flip adds to J.
// comm_swaps lists the written positions of the adjacent swaps that turn
// the input into `equivalent`, in application order.
struct FlippablePacket {
  Expression equivalent;
  int position = 0;
  Triple triple;
  std::vector<int> comm_swaps;
};
// nullopt iff J(e) is already the set of all full triples (the sink class).
std::optional<FlippablePacket> find_flippable_packet(const Expression& e);

// The word in S_3 traced out by three chosen strands.
Expression triple_projection(const Expression& e, const Triple& t);

enum class Cmp { LT, GT, EQ, INCOMPARABLE };
Cmp reverse_cmp(Cmp c);

// The order <=_3 on words in {s,t}: shorter first; equal length comparable
// only for the same S_3 element connected by braid moves alone, and then
// later-in-lex is smaller. EQ means identical words.
Cmp leq3(const Expression& a, const Expression& b);

// The order on expressions built from triple projections. Words for
// different elements, or of different lengths, compare by length alone.
// EQ means commutation-equivalent (all projections equal).
Cmp leq(const Expression& a, const Expression& b);

// One oriented move applied to an expression, for traces.
struct Move {
  enum class Kind { commutation, braid, cancel };
  Kind kind;
  int position;  // leftmost letter index the move touches
  std::string str() const;
};

struct SinkResult {
  Expression sink;          // canonical representative of the sink class
  std::vector<Move> trace;  // moves applied, in order
};

// Drives an arbitrary expression to the unique sink class of its element
// using only commutations, forward braid flips, and square cancellations.
SinkResult sink(const Expression& e, long long budget = 1000000);

// Expression graphs. Vertices are expressions (or commutation classes in
// the quotient); edges are single relation applications.
struct GraphEdge {
  int from = 0, to = 0;       // vertex indices; oriented for braid/cancel
  Move::Kind kind;
  int label_i = 0, label_j = 0;  // the {i,j} letter pair of the relation
};

struct ExpressionGraph {
  std::vector<Expression> vertices;
  std::vector<GraphEdge> edges;
  bool quotient = false;  // vertices are class representatives
};

// Reduced expression graph Gamma_w, or its commutation quotient.
ExpressionGraph expression_graph(const Permutation& w, bool quotient,
                                 size_t vertex_cap = 200000);

// Graph on all expressions of w with length <= l(w) + extra_length
// (extra_length even), or its commutation quotient.
ExpressionGraph expression_graph_nonreduced(const Permutation& w,
                                            int extra_length, bool quotient,
                                            size_t vertex_cap = 200000);

// All expressions for w of exactly the given length.
std::vector<Expression> expressions_of(const Permutation& w, int length,
                                       size_t cap = 2000000);

// Index shift into a larger symmetric group: s_i -> s_{i+k}, ambient S_m.
Expression parabolic_embed(const Expression& e, int m, int k);

}  // namespace diamond

#endif
