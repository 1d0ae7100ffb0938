#ifndef DIAMOND_SCALAR_HPP
#define DIAMOND_SCALAR_HPP

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diamond/rational.hpp"

namespace diamond {

using ParamId = int;
using ColorId = int;

// A named parameter of the coefficient ring. Dot-ring generators carry a
// color and a strand position tag; workspace-level symbols carry neither.
struct Param {
  std::string name;     // base name, e.g. "alpha" or "x"
  ColorId color = -1;   // -1 for workspace-level parameters
  int position = 0;     // 0 = untagged, >= 1 = strand position

  bool tagged() const { return color >= 0; }

  std::string display() const {
    if (position > 0) return name + "@" + std::to_string(position);
    return name;
  }
};

// Interning table for parameters. Scalars refer to parameters by id, so all
// scalars combined in one computation must come from the same workspace.
// Interning is observationally const and guarded by a mutex, so concurrent
// workers may share one workspace.
class Workspace {
 public:
  ParamId add_global(const std::string& name) const;
  // Registers a dot-ring generator for a color (untagged base form).
  ParamId add_generator(const std::string& name, ColorId color) const;
  // Position-tagged instance of a dot generator; created on demand.
  ParamId positioned(ParamId base, int position) const;

  std::optional<ParamId> find_global(const std::string& name) const;
  std::optional<ParamId> find(const std::string& name, ColorId color,
                              int position) const;

  Param param(ParamId id) const;
  int size() const;

 private:
  ParamId intern(Param p) const;

  mutable std::mutex mu_;
  mutable std::deque<Param> params_;
  mutable std::map<std::pair<std::string, std::pair<ColorId, int>>, ParamId>
      index_;
};

// Exponent vector, sorted by ParamId, no zero exponents.
using Monomial = std::vector<std::pair<ParamId, int>>;

int monomial_degree(const Monomial& m);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
// Fixed canonical sort: graded, then lex on the exponent vectors.
bool monomial_less(const Monomial& a, const Monomial& b);

// Exact multivariate polynomial over the rationals in workspace parameters.
// Always in canonical form: terms sorted descending by monomial_less, no
// zero coefficients, no duplicate monomials. Equality is representational.
class Scalar {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Scalar() = default;
  Scalar(const Workspace* ws, Rational c);
  static Scalar param(const Workspace* ws, ParamId id);
  static Scalar zero(const Workspace* ws) { return Scalar(ws, Rational(0)); }
  static Scalar one(const Workspace* ws) { return Scalar(ws, Rational(1)); }

  const Workspace* workspace() const { return ws_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The constant value; throws unless is_constant().
  Rational constant() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar pow(int e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  // Total order for use as a map key; compares term lists.
  friend bool scalar_less(const Scalar& a, const Scalar& b);

  // Simultaneous substitution. Bindings must be acyclic as a dependency
  // graph (images referring back to bound parameters), else config_error.
  Scalar substitute(const std::map<ParamId, Scalar>& bindings) const;

  // All parameter ids occurring in this polynomial.
  std::vector<ParamId> support() const;

  std::string str() const;

  // Used internally and by ring maps: assumes `terms` canonical.
  static Scalar from_terms(const Workspace* ws, std::vector<Term> terms);
  static Scalar collect(const Workspace* ws, std::vector<Term> terms);

 private:
  const Workspace* ws_ = nullptr;
  std::vector<Term> terms_;
};

bool scalar_less(const Scalar& a, const Scalar& b);

// Generator-image specification of a ring endomorphism or twisted
// derivation. Endomorphisms extend multiplicatively; derivations extend by
// the twisted Leibniz rule d(fg) = d(f)g + phi(f)d(g), with monomial factors
// processed in a fixed (ascending ParamId) order. Untagged parameters are
// treated as scalars of the ground ring: endomorphisms fix them, derivations
// kill them. Tagged parameters without an image raise config_error.
struct RingMapSpec {
  enum class Kind { endomorphism, twisted_derivation };

  Kind kind = Kind::endomorphism;
  std::map<ParamId, Scalar> images;
  std::shared_ptr<const RingMapSpec> twist;  // derivations only

  static RingMapSpec endo(std::map<ParamId, Scalar> images);
  static RingMapSpec derivation(std::map<ParamId, Scalar> images,
                                RingMapSpec twist);
};

Scalar apply_ring_map(const RingMapSpec& m, const Scalar& f);

// Relabels every position-tagged generator of `f` (which must all sit at
// position `from`, or be untagged generators of `color`) to position `to`.
// Used to transport relation data between strand windows.
Scalar retag(const Scalar& f, int from, int to);

// Embeds a scalar over the single-strand ring of `color` (untagged
// generator parameters) at strand `position` of an ambient object whose
// color there is `ambient_color`; throws typing_error on color mismatch.
Scalar tensor_embed(const Scalar& f, int position, ColorId ambient_color);

}  // namespace diamond

#endif
