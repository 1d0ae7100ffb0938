#include "diamond/scalar.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "diamond/errors.hpp"

namespace diamond {

ParamId Workspace::intern(Param p) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(p.name, std::make_pair(p.color, p.position));
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  ParamId id = static_cast<ParamId>(params_.size());
  params_.push_back(std::move(p));
  index_.emplace(key, id);
  return id;
}

ParamId Workspace::add_global(const std::string& name) const {
  return intern(Param{name, -1, 0});
}

ParamId Workspace::add_generator(const std::string& name,
                                 ColorId color) const {
  if (color < 0) throw config_error("dot generator needs a color: " + name);
  return intern(Param{name, color, 0});
}

ParamId Workspace::positioned(ParamId base, int position) const {
  Param p = param(base);
  if (!p.tagged())
    throw config_error("cannot position-tag workspace parameter " + p.name);
  if (position <= 0) throw config_error("position tags must be positive");
  return intern(Param{p.name, p.color, position});
}

Param Workspace::param(ParamId id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return params_.at(id);
}

int Workspace::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(params_.size());
}

std::optional<ParamId> Workspace::find_global(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find({name, {-1, 0}});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ParamId> Workspace::find(const std::string& name, ColorId color,
                                       int position) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find({name, {color, position}});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (auto& [id, e] : m) d += e;
  return d;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
  int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  // Same degree: lex on (id, exponent) pairs; lower id with a higher power
  // counts as the larger monomial.
  size_t i = 0;
  while (i < a.size() && i < b.size()) {
    if (a[i].first != b[i].first) return a[i].first > b[i].first;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
    ++i;
  }
  return false;  // equal degree with a shared prefix means equal monomials
}

Scalar::Scalar(const Workspace* ws, Rational c) : ws_(ws) {
  if (!c.is_zero()) terms_.push_back(Term{{}, c});
}

Scalar Scalar::param(const Workspace* ws, ParamId id) {
  Scalar s;
  s.ws_ = ws;
  s.terms_.push_back(Term{Monomial{{id, 1}}, Rational(1)});
  return s;
}

bool Scalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

Rational Scalar::constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].mono.empty()) return terms_[0].coeff;
  throw error("scalar is not a constant: " + str());
}

Scalar Scalar::from_terms(const Workspace* ws, std::vector<Term> terms) {
  Scalar s;
  s.ws_ = ws;
  s.terms_ = std::move(terms);
  return s;
}

Scalar Scalar::collect(const Workspace* ws, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return monomial_less(b.mono, a.mono);  // descending: leading term first
  });
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
      if (out.back().coeff.is_zero()) out.pop_back();
    } else if (!t.coeff.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return from_terms(ws, std::move(out));
}

static const Workspace* join_ws(const Scalar& a, const Scalar& b) {
  const Workspace* wa = a.workspace();
  const Workspace* wb = b.workspace();
  if (wa && wb && wa != wb)
    throw config_error("scalars belong to different workspaces");
  return wa ? wa : wb;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  std::vector<Scalar::Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return Scalar::collect(join_ws(a, b), std::move(terms));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar Scalar::operator-() const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.coeff = -t.coeff;
  return from_terms(ws_, std::move(terms));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  std::vector<Scalar::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_)
      terms.push_back(
          {monomial_mul(ta.mono, tb.mono), ta.coeff * tb.coeff});
  return Scalar::collect(join_ws(a, b), std::move(terms));
}

Scalar Scalar::pow(int e) const {
  if (e < 0) throw error("negative power of a polynomial");
  Scalar r = Scalar(ws_, Rational(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono ||
        a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

bool scalar_less(const Scalar& a, const Scalar& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    const auto& ta = a.terms_[i];
    const auto& tb = b.terms_[i];
    if (ta.mono != tb.mono) return monomial_less(ta.mono, tb.mono);
    if (ta.coeff != tb.coeff) return ta.coeff < tb.coeff;
  }
  return a.terms_.size() < b.terms_.size();
}

std::vector<ParamId> Scalar::support() const {
  std::set<ParamId> ids;
  for (const auto& t : terms_)
    for (const auto& [id, e] : t.mono) ids.insert(id);
  return {ids.begin(), ids.end()};
}

Scalar Scalar::substitute(const std::map<ParamId, Scalar>& bindings) const {
  // Cycle check on the dependency graph: bound param -> bound params in its
  // image. A binding of a parameter to exactly itself is inert and fine.
  std::map<ParamId, std::vector<ParamId>> deps;
  for (const auto& [id, img] : bindings) {
    if (img.terms_.size() == 1 && img.terms_[0].coeff.is_one() &&
        img.terms_[0].mono == Monomial{{id, 1}})
      continue;  // identity binding
    for (ParamId d : img.support())
      if (bindings.count(d)) deps[id].push_back(d);
  }
  std::map<ParamId, int> state;  // 0 unseen, 1 active, 2 done
  std::function<void(ParamId)> visit = [&](ParamId v) {
    int& st = state[v];
    if (st == 1) {
      const Workspace* w = ws_;
      throw config_error("cyclic binding through parameter " +
                         (w ? w->param(v).display() : std::to_string(v)));
    }
    if (st == 2) return;
    st = 1;
    auto it = deps.find(v);
    if (it != deps.end())
      for (ParamId d : it->second) visit(d);
    st = 2;
  };
  for (const auto& [id, img] : bindings) visit(id);

  Scalar out = Scalar::zero(ws_);
  for (const auto& t : terms_) {
    Scalar prod(ws_, t.coeff);
    for (const auto& [id, e] : t.mono) {
      auto it = bindings.find(id);
      Scalar base =
          it != bindings.end() ? it->second : Scalar::param(ws_, id);
      prod = prod * base.pow(e);
    }
    out += prod;
  }
  return out;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < Rational(0);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    Rational a = neg ? -c : c;
    bool wrote_coeff = false;
    if (!a.is_one() || t.mono.empty()) {
      out += a.str();
      wrote_coeff = true;
    }
    for (size_t i = 0; i < t.mono.size(); ++i) {
      if (wrote_coeff || i > 0) out += "*";
      out += ws_->param(t.mono[i].first).display();
      if (t.mono[i].second > 1)
        out += "^" + std::to_string(t.mono[i].second);
    }
  }
  return out;
}

RingMapSpec RingMapSpec::endo(std::map<ParamId, Scalar> images) {
  RingMapSpec m;
  m.kind = Kind::endomorphism;
  m.images = std::move(images);
  return m;
}

RingMapSpec RingMapSpec::derivation(std::map<ParamId, Scalar> images,
                                    RingMapSpec twist) {
  RingMapSpec m;
  m.kind = Kind::twisted_derivation;
  m.images = std::move(images);
  m.twist = std::make_shared<RingMapSpec>(std::move(twist));
  return m;
}

static Scalar endo_image(const RingMapSpec& m, const Workspace* ws,
                         ParamId id) {
  auto it = m.images.find(id);
  if (it != m.images.end()) return it->second;
  if (ws->param(id).tagged())
    throw config_error("ring map has no image for generator " +
                       ws->param(id).display());
  return Scalar::param(ws, id);  // ground-ring symbol, fixed
}

static Scalar apply_endo(const RingMapSpec& m, const Scalar& f) {
  const Workspace* ws = f.workspace();
  Scalar out = Scalar::zero(ws);
  for (const auto& t : f.terms()) {
    Scalar prod(ws, t.coeff);
    for (const auto& [id, e] : t.mono)
      prod = prod * endo_image(m, ws, id).pow(e);
    out += prod;
  }
  return out;
}

static Scalar apply_derivation(const RingMapSpec& m, const Scalar& f) {
  const Workspace* ws = f.workspace();
  if (!m.twist) throw config_error("twisted derivation lacks its twist");
  const RingMapSpec& phi = *m.twist;
  Scalar out = Scalar::zero(ws);
  for (const auto& t : f.terms()) {
    // d(c * g1*g2*...*gk) with the factor list in ascending ParamId order:
    // sum over i of phi(g1..g_{i-1}) * d(g_i) * g_{i+1}..gk.
    std::vector<ParamId> factors;
    for (const auto& [id, e] : t.mono)
      for (int k = 0; k < e; ++k) factors.push_back(id);
    Scalar prefix_phi(ws, t.coeff);
    for (size_t i = 0; i < factors.size(); ++i) {
      ParamId g = factors[i];
      Scalar dg;
      auto it = m.images.find(g);
      if (it != m.images.end()) {
        dg = it->second;
      } else if (ws->param(g).tagged()) {
        throw config_error("derivation has no image for generator " +
                           ws->param(g).display());
      } else {
        dg = Scalar::zero(ws);  // ground-ring symbol
      }
      if (!dg.is_zero()) {
        Scalar rest = Scalar::one(ws);
        for (size_t j = i + 1; j < factors.size(); ++j)
          rest = rest * Scalar::param(ws, factors[j]);
        out += prefix_phi * dg * rest;
      }
      prefix_phi = prefix_phi * endo_image(phi, ws, g);
    }
  }
  return out;
}

Scalar apply_ring_map(const RingMapSpec& m, const Scalar& f) {
  if (m.kind == RingMapSpec::Kind::endomorphism) return apply_endo(m, f);
  return apply_derivation(m, f);
}

Scalar retag(const Scalar& f, int from, int to) {
  const Workspace* ws = f.workspace();
  if (!ws || from == to) return f;
  std::map<ParamId, Scalar> bindings;
  for (ParamId id : f.support()) {
    Param p = ws->param(id);
    if (p.tagged() && p.position == from) {
      ParamId base = ws->add_generator(p.name, p.color);
      bindings.emplace(id, Scalar::param(ws, ws->positioned(base, to)));
    }
  }
  return f.substitute(bindings);
}

Scalar tensor_embed(const Scalar& f, int position, ColorId ambient_color) {
  const Workspace* ws = f.workspace();
  if (!ws) return f;
  std::map<ParamId, Scalar> bindings;
  for (ParamId id : f.support()) {
    Param p = ws->param(id);
    if (!p.tagged()) continue;
    if (p.position != 0)
      throw typing_error("tensor_embed expects an unembedded scalar, found " +
                         p.display());
    if (p.color != ambient_color)
      throw typing_error("color mismatch embedding generator " + p.name +
                         " at strand " + std::to_string(position));
    bindings.emplace(id, Scalar::param(ws, ws->positioned(id, position)));
  }
  return f.substitute(bindings);
}

}  // namespace diamond
