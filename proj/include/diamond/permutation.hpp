#ifndef DIAMOND_PERMUTATION_HPP
#define DIAMOND_PERMUTATION_HPP

#include <array>
#include <set>
#include <string>
#include <vector>

#include "diamond/errors.hpp"

namespace diamond {

// Permutation of {1..n} in one-line notation: images[k] = w(k+1).
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  explicit Permutation(std::vector<int> images);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(i - 1); }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return !(a == b);
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

  int length() const;  // inversion count
  static Permutation longest(int n);
  std::string str() const;

 private:
  std::vector<int> images_;
};

// A word in the simple transpositions s_1..s_{n-1}. Stored in written order:
// letters[0] is the leftmost letter, which sits at the TOP of the crossing
// diagram; the rightmost letter acts first (bottom).
struct Expression {
  int n = 0;
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  friend bool operator==(const Expression& a, const Expression& b) {
    return a.n == b.n && a.letters == b.letters;
  }
  friend bool operator!=(const Expression& a, const Expression& b) {
    return !(a == b);
  }
  friend bool operator<(const Expression& a, const Expression& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.letters.size() != b.letters.size())
      return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  }
  std::string str() const;  // letters as s,t,u,... when n <= 8, else indices
};

Expression make_expression(int n, const std::vector<int>& letters);
// Parses "sts", "s t s", or "1 2 1".
Expression parse_expression(int n, const std::string& text);

// Pair of strands (i|j), i < j.
struct StrandPair {
  int i = 0, j = 0;
  friend bool operator==(const StrandPair& a, const StrandPair& b) {
    return a.i == b.i && a.j == b.j;
  }
  friend bool operator<(const StrandPair& a, const StrandPair& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  }
  std::string str() const;
};

// Triple of strands (i|j|k), i < j < k. Its packet is the pair list
// ((i|j), (i|k), (j|k)) in this (lexicographic) order.
struct Triple {
  int i = 0, j = 0, k = 0;
  std::array<StrandPair, 3> packet() const {
    return {StrandPair{i, j}, StrandPair{i, k}, StrandPair{j, k}};
  }
  friend bool operator==(const Triple& a, const Triple& b) {
    return a.i == b.i && a.j == b.j && a.k == b.k;
  }
  friend bool operator<(const Triple& a, const Triple& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
  }
  std::string str() const;
};

std::vector<Triple> all_triples(int n);

// Bottom-to-top list of crossed strand pairs, one per letter.
using CrossingSequence = std::vector<StrandPair>;

// Composes the word's transpositions bottom-to-top (rightmost letter first).
Permutation evaluate(const Expression& e);

// Tracks strands bottom-to-top; entry t is the pair crossed by the t-th
// letter from the bottom, i.e. by letters[length-1-t].
CrossingSequence crossing_sequence(const Expression& e);

// Pairs (i|j), i < j, with w(i) > w(j).
std::set<StrandPair> inversion_set(const Permutation& w);

bool is_reduced(const Expression& e);

// Any reduced expression for w (positions of descents, bubble-sort style).
Expression reduced_word(const Permutation& w);

}  // namespace diamond

#endif
