#include "diamond/hecke.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace diamond {

HWord hword_of(const Expression& e) {
  return HWord(e.letters.rbegin(), e.letters.rend());
}

Expression expr_of(int strands, const HWord& w) {
  return Expression{strands, std::vector<int>(w.rbegin(), w.rend())};
}

ColorId HeckePresentation::color(const std::string& name) const {
  for (int c = 0; c < colors(); ++c)
    if (color_names[c] == name) return c;
  throw usage_error("unknown color " + name);
}

ColorSeq top_colors(const ColorSeq& bottom, const HWord& w) {
  ColorSeq col = bottom;
  for (int p : w) std::swap(col[p - 1], col[p]);
  return col;
}

bool word_permissible(const HeckePresentation& p, const ColorSeq& bottom,
                      const HWord& w) {
  ColorSeq col = bottom;
  for (int q : w) {
    if (q < 1 || q >= static_cast<int>(bottom.size())) return false;
    if (!p.permits(col[q - 1], col[q])) return false;
    std::swap(col[q - 1], col[q]);
  }
  return true;
}

bool permutation_permissible(const HeckePresentation& p,
                             const ColorSeq& bottom, const Permutation& w) {
  for (const auto& pr : inversion_set(w))
    if (!p.permits(bottom[pr.i - 1], bottom[pr.j - 1])) return false;
  return true;
}

std::vector<Permutation> permissible_permutations(const HeckePresentation& p,
                                                  const ColorSeq& source,
                                                  const ColorSeq& target) {
  std::vector<Permutation> out;
  if (source.size() != target.size())
    throw typing_error("color sequences differ in length");
  int n = static_cast<int>(source.size());
  std::vector<int> imgs(n);
  for (int i = 0; i < n; ++i) imgs[i] = i + 1;
  do {
    bool matches = true;
    for (int i = 1; i <= n && matches; ++i)
      matches = target[imgs[i - 1] - 1] == source[i - 1];
    if (!matches) continue;
    Permutation w{imgs};
    if (permutation_permissible(p, source, w)) out.push_back(w);
  } while (std::next_permutation(imgs.begin(), imgs.end()));
  return out;
}

// ---- validation ----

namespace {

// Crossings used by the braid relation on a given bottom triple.
std::set<std::pair<ColorId, ColorId>> braid_needs(ColorId x, ColorId y,
                                                  ColorId z) {
  return {{x, y}, {x, z}, {y, z}};
}

// Checks that every tagged parameter of f is a generator of `ring_colors`
// at its position (1-based), with positions within range.
bool coeff_in_ring(const Workspace* ws, const Scalar& f,
                   const ColorSeq& ring_colors, std::string* bad) {
  for (ParamId id : f.support()) {
    Param par = ws->param(id);
    if (!par.tagged()) continue;
    if (par.position < 1 ||
        par.position > static_cast<int>(ring_colors.size()) ||
        par.color != ring_colors[par.position - 1]) {
      if (bad) *bad = par.display();
      return false;
    }
  }
  return true;
}

}  // namespace

HeckeValidation validate_presentation(const HeckePresentation& p) {
  HeckeValidation v;
  auto issue = [&](const std::string& msg) { v.issues.push_back(msg); };
  auto cname = [&](ColorId c) { return p.color_names[c]; };

  if (!p.ws) {
    issue("presentation has no workspace");
    v.ok = false;
    return v;
  }
  if (static_cast<int>(p.rings.size()) != p.colors()) {
    issue("dot ring list does not match the color list");
    v.ok = false;
    return v;
  }
  for (const auto& [a, b] : p.permitted)
    if (a < 0 || a >= p.colors() || b < 0 || b >= p.colors())
      issue("permitted pair out of color range");

  // 5.8a
  for (int i = 0; i < p.colors(); ++i) {
    bool need = p.permits(i, i);
    bool have = p.quad_same.count(i) > 0;
    if (need && !have)
      issue("missing quadratic relation (5.8a) for color " + cname(i));
    if (!need && have)
      issue("spurious quadratic relation (5.8a) for color " + cname(i));
    if (have) {
      std::string bad;
      const auto& rel = p.quad_same.at(i);
      if (!coeff_in_ring(p.ws, rel.alpha, {i, i}, &bad) ||
          !coeff_in_ring(p.ws, rel.beta, {i, i}, &bad))
        issue("coefficient of (5.8a) for " + cname(i) +
              " outside its ring: " + bad);
    }
  }
  // 5.8b
  for (int a = 0; a < p.colors(); ++a) {
    for (int b = 0; b < p.colors(); ++b) {
      if (a == b) continue;
      bool need = p.permits(a, b) && p.permits(b, a);
      bool have = p.quad_mixed.count({a, b}) > 0;
      if (need && !have)
        issue("missing square relation (5.8b) on bottom " + cname(a) + " " +
              cname(b));
      if (!need && have)
        issue("spurious square relation (5.8b) on bottom " + cname(a) + " " +
              cname(b));
      if (have) {
        std::string bad;
        if (!coeff_in_ring(p.ws, p.quad_mixed.at({a, b}), {a, b}, &bad))
          issue("Q on bottom " + cname(a) + " " + cname(b) +
                " outside its ring: " + bad);
      }
    }
  }
  // 5.8c-5.8g
  for (int x = 0; x < p.colors(); ++x) {
    for (int y = 0; y < p.colors(); ++y) {
      for (int z = 0; z < p.colors(); ++z) {
        bool need = true;
        for (auto [a, b] : braid_needs(x, y, z)) need = need && p.permits(a, b);
        std::array<ColorId, 3> key{x, y, z};
        bool have = p.braid.count(key) > 0;
        std::string where =
            cname(x) + " " + cname(y) + " " + cname(z);
        if (need && !have) issue("missing braid relation on bottom " + where);
        if (!need && have) issue("spurious braid relation on bottom " + where);
        if (!have) continue;
        const BraidRel& rel = p.braid.at(key);
        if (rel.lambda.is_zero())
          issue("lambda on bottom " + where + " must be invertible");
        // family restrictions on the lower terms
        bool iii = x == y && y == z;
        bool iij = x == y && y != z;
        bool jii = x != y && y == z;
        bool iji = x == z && x != y;
        auto forbid = [&](const Scalar& c, const char* which, bool allowed) {
          if (!allowed && !c.is_zero())
            issue(std::string("coefficient of ") + which + " on bottom " +
                  where + " is not allowed for this color pattern");
        };
        forbid(rel.st_coeff, "st", iii || iij);
        forbid(rel.ts_coeff, "ts", iii || jii);
        forbid(rel.s_coeff, "s", iii);
        forbid(rel.t_coeff, "t", iii);
        forbid(rel.id_coeff, "id", iii || iji);
        ColorSeq target = top_colors({x, y, z}, {1, 2, 1});
        std::string bad;
        for (const Scalar* c : {&rel.st_coeff, &rel.ts_coeff, &rel.s_coeff,
                                &rel.t_coeff, &rel.id_coeff})
          if (!coeff_in_ring(p.ws, *c, target, &bad))
            issue("braid coefficient on bottom " + where +
                  " outside the target ring: " + bad);
      }
    }
  }
  // 5.8h / 5.8i: maps must cover both window generators of their domain
  auto check_map = [&](const RingMapSpec& m, const ColorSeq& domain,
                       const ColorSeq& target, const std::string& name) {
    for (int pos = 1; pos <= 2; ++pos) {
      ColorId c = domain[pos - 1];
      for (const auto& g : p.rings[c].generators) {
        auto id = p.ws->find(g, c, pos);
        if (!id || !m.images.count(*id)) {
          issue("map " + name + " lacks an image for generator " + g + "@" +
                std::to_string(pos));
          continue;
        }
        std::string bad;
        if (!coeff_in_ring(p.ws, m.images.at(*id), target, &bad))
          issue("map " + name + " image of " + g + "@" + std::to_string(pos) +
                " leaves the target ring: " + bad);
      }
    }
  };
  for (int i = 0; i < p.colors(); ++i) {
    bool need = p.permits(i, i) && !p.rings[i].generators.empty();
    bool have = p.phi.count(i) > 0 && p.del.count(i) > 0;
    if (need && !have)
      issue("missing phi/del maps (5.8h) for color " + cname(i));
    if (p.phi.count(i))
      check_map(p.phi.at(i), {i, i}, {i, i}, "phi_" + cname(i));
    if (p.del.count(i))
      check_map(p.del.at(i), {i, i}, {i, i}, "del_" + cname(i));
  }
  for (int i = 0; i < p.colors(); ++i) {
    for (int j = 0; j < p.colors(); ++j) {
      if (i == j) continue;
      bool need = p.permits(i, j) &&
                  !(p.rings[i].generators.empty() &&
                    p.rings[j].generators.empty());
      bool have = p.phi_mixed.count({i, j}) > 0;
      if (need && !have)
        issue("missing dot-slide map (5.8i) for crossing " + cname(i) + " " +
              cname(j));
      if (!need && have && !p.permits(i, j))
        issue("spurious dot-slide map (5.8i) for crossing " + cname(i) + " " +
              cname(j));
      if (have)
        check_map(p.phi_mixed.at({i, j}), {i, j}, {j, i},
                  "phi_" + cname(i) + cname(j));
    }
  }
  v.ok = v.issues.empty();
  return v;
}

// ---- dot transport ----

namespace {

// Retags every position-tagged parameter p@w to p@(w+delta).
Scalar shift_tags(const Scalar& f, int delta) {
  if (delta == 0) return f;
  const Workspace* ws = f.workspace();
  if (!ws) return f;
  std::map<ParamId, Scalar> bind;
  for (ParamId id : f.support()) {
    Param par = ws->param(id);
    if (!par.tagged() || par.position == 0) continue;
    ParamId base = ws->add_generator(par.name, par.color);
    bind.emplace(id, Scalar::param(
                         ws, ws->positioned(base, par.position + delta)));
  }
  return f.substitute(bind);
}

// The window map (5.8h)/(5.8i) for a crossing whose lower colors are
// (cx, cy), transported to ambient strand positions (p, p+1).
struct SiteMaps {
  RingMapSpec phi;
  std::optional<RingMapSpec> del;
};

RingMapSpec transport_map(const Workspace* ws, const RingMapSpec& m, int p) {
  RingMapSpec out;
  out.kind = m.kind;
  for (const auto& [id, img] : m.images) {
    Param par = ws->param(id);
    ParamId base = ws->add_generator(par.name, par.color);
    out.images.emplace(ws->positioned(base, p + par.position - 1),
                       shift_tags(img, p - 1));
  }
  if (m.twist)
    out.twist = std::make_shared<RingMapSpec>(
        transport_map(ws, *m.twist, p));
  return out;
}

SiteMaps site_maps(const HeckePresentation& pres, ColorId cx, ColorId cy,
                   int p) {
  SiteMaps sm;
  if (cx == cy) {
    auto it_phi = pres.phi.find(cx);
    auto it_del = pres.del.find(cx);
    sm.phi = it_phi != pres.phi.end()
                 ? transport_map(pres.ws, it_phi->second, p)
                 : RingMapSpec::endo({});
    sm.del = it_del != pres.del.end()
                 ? transport_map(pres.ws, it_del->second, p)
                 : RingMapSpec::derivation({}, sm.phi);
    if (!sm.del->twist)
      sm.del->twist = std::make_shared<RingMapSpec>(sm.phi);
  } else {
    auto it = pres.phi_mixed.find({cx, cy});
    sm.phi = it != pres.phi_mixed.end()
                 ? transport_map(pres.ws, it->second, p)
                 : RingMapSpec::endo({});
  }
  return sm;
}

// Splits each monomial into the factors at strand positions p, p+1 and the
// rest, applies `local_map` to the local part, and keeps the rest.
Scalar apply_local(const Workspace* ws, const RingMapSpec& local_map,
                   const Scalar& f, int p) {
  Scalar out = Scalar::zero(ws);
  for (const auto& t : f.terms()) {
    Monomial local, rest;
    for (const auto& [id, e] : t.mono) {
      Param par = ws->param(id);
      if (par.tagged() && (par.position == p || par.position == p + 1))
        local.push_back({id, e});
      else
        rest.push_back({id, e});
    }
    Scalar lf = Scalar::from_terms(ws, {Scalar::Term{local, t.coeff}});
    Scalar mapped = apply_ring_map(local_map, lf);
    out += mapped * Scalar::from_terms(ws, {Scalar::Term{rest, Rational(1)}});
  }
  return out;
}

struct LiftOut {
  std::vector<std::pair<HWord, Scalar>> terms;
};

// Moves a coefficient f sitting at slot k of `word` (k letters below it) up
// to the top, applying (5.8h)/(5.8i) per crossing. Produces pairs
// (word', coefficient at top); the del-branches delete crossings.
void lift_up(const HeckePresentation& pres, const HWord& word, int k,
             Scalar f, ColorSeq col, LiftOut& out) {
  const Workspace* ws = pres.ws;
  while (true) {
    if (f.is_zero()) return;
    if (k == static_cast<int>(word.size())) {
      out.terms.push_back({word, std::move(f)});
      return;
    }
    int p = word[k];
    ColorId cx = col[p - 1], cy = col[p];
    SiteMaps sm = site_maps(pres, cx, cy, p);
    if (cx == cy) {
      Scalar df = apply_local(ws, *sm.del, f, p);
      if (!df.is_zero()) {
        HWord shorter = word;
        shorter.erase(shorter.begin() + k);
        lift_up(pres, shorter, k, std::move(df), col, out);
      }
    }
    f = apply_local(ws, sm.phi, f, p);
    std::swap(col[p - 1], col[p]);
    ++k;
  }
}

ColorSeq colors_at_slot(const ColorSeq& bottom, const HWord& w, int k) {
  ColorSeq col = bottom;
  for (int q = 0; q < k; ++q) std::swap(col[w[q] - 1], col[w[q]]);
  return col;
}

HWord canonical_key(int strands, const HWord& w) {
  return hword_of(comm_canonical(expr_of(strands, w)));
}

void accumulate(const HeckePresentation& pres, HeckeTerm& t, const HWord& w,
                const Scalar& c) {
  if (c.is_zero()) return;
  HWord key = canonical_key(static_cast<int>(t.bottom.size()), w);
  auto [it, fresh] = t.coeffs.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t.coeffs.erase(it);
  }
  (void)pres;
}

}  // namespace

HeckeTerm hecke_sub(const HeckeTerm& a, const HeckeTerm& b) {
  if (a.bottom != b.bottom)
    throw typing_error("terms have different source colors");
  HeckeTerm out = a;
  for (const auto& [w, c] : b.coeffs) {
    auto [it, fresh] = out.coeffs.emplace(w, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second.is_zero()) out.coeffs.erase(it);
    }
  }
  return out;
}

std::string hecke_term_str(const HeckePresentation& p, const HeckeTerm& t) {
  if (t.coeffs.empty()) return "0";
  std::string out;
  int n = static_cast<int>(t.bottom.size());
  for (const auto& [w, c] : t.coeffs) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + expr_of(n, w).str();
  }
  (void)p;
  return out;
}

HeckeTerm push_dots_left(const HeckePresentation& p, const DecoratedWord& d) {
  int n = static_cast<int>(d.bottom.size());
  // colors below each item
  std::vector<ColorSeq> level(d.items.size() + 1);
  level[0] = d.bottom;
  for (size_t q = 0; q < d.items.size(); ++q) {
    level[q + 1] = level[q];
    const DecItem& item = d.items[q];
    if (item.position < 1 || item.position > (item.is_dot ? n : n - 1))
      throw typing_error("decorated word item out of strand range");
    if (!item.is_dot) {
      ColorId a = level[q][item.position - 1], b = level[q][item.position];
      if (!p.permits(a, b))
        throw typing_error("decorated word uses a crossing that is not "
                           "permitted");
      std::swap(level[q + 1][item.position - 1], level[q + 1][item.position]);
    } else {
      // payload must live in the single-strand ring of the strand's color
      ColorId c = level[q][item.position - 1];
      for (ParamId id : item.payload.support()) {
        Param par = p.ws->param(id);
        if (par.tagged() && (par.position != 0 || par.color != c))
          throw typing_error("dot payload " + par.display() +
                             " is not in the strand's ring");
      }
    }
  }

  std::vector<std::pair<HWord, Scalar>> partial{{HWord{}, Scalar::one(p.ws)}};
  for (int q = static_cast<int>(d.items.size()) - 1; q >= 0; --q) {
    const DecItem& item = d.items[q];
    if (!item.is_dot) {
      for (auto& [w, c] : partial) w.insert(w.begin(), item.position);
      continue;
    }
    ColorId c = level[q][item.position - 1];
    Scalar f = tensor_embed(item.payload, item.position, c);
    std::vector<std::pair<HWord, Scalar>> next;
    for (const auto& [w, coeff] : partial) {
      LiftOut lifted;
      lift_up(p, w, 0, f, level[q], lifted);
      for (auto& [w2, h] : lifted.terms) next.push_back({w2, coeff * h});
    }
    partial = std::move(next);
  }

  HeckeTerm out;
  out.bottom = d.bottom;
  for (const auto& [w, c] : partial) accumulate(p, out, w, c);
  return out;
}

// ---- rewriting ----

namespace {

struct WordRedex {
  bool quad = false;
  int k = 0, l = 0, m = 0;  // letter indices, bottom-first
};

std::vector<WordRedex> find_redexes(const HWord& b) {
  std::vector<WordRedex> out;
  int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      if (b[l] == b[k]) {
        bool clear = true;
        for (int x = k + 1; x < l && clear; ++x)
          clear = std::abs(b[x] - b[k]) >= 2;
        if (clear) out.push_back({true, k, l, -1});
      }
      if (b[l] == b[k] + 1) {
        for (int m = l + 1; m < n; ++m) {
          if (b[m] != b[k]) continue;
          bool clear = true;
          for (int x = k + 1; x < m && clear; ++x) {
            if (x == l) continue;
            clear = b[x] <= b[k] - 2 || b[x] >= b[k] + 2;
          }
          if (clear) out.push_back({false, k, l, m});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const WordRedex& a, const WordRedex& b2) {
    if (a.k != b2.k) return a.k < b2.k;
    if (a.quad != b2.quad) return a.quad;
    if (a.l != b2.l) return a.l < b2.l;
    return a.m < b2.m;
  });
  return out;
}

// One elementary application of the quadratic or braid relation at a redex
// of `word`, coefficients lifted to the top. The result multiplies whatever
// coefficient the caller holds for `word`.
HeckeTerm apply_redex(const HeckePresentation& pres, const ColorSeq& bottom,
                      const HWord& word, const WordRedex& rx) {
  const Workspace* ws = pres.ws;
  int n = static_cast<int>(bottom.size());
  int p = word[rx.k];
  HWord prefix(word.begin(), word.begin() + rx.k);
  HWord above;
  if (rx.quad) {
    for (int x = rx.k + 1; x < rx.l; ++x) prefix.push_back(word[x]);
    above.assign(word.begin() + rx.l + 1, word.end());
  } else {
    for (int x = rx.k + 1; x < rx.l; ++x) prefix.push_back(word[x]);
    for (int x = rx.l + 1; x < rx.m; ++x) above.push_back(word[x]);
    above.insert(above.end(), word.begin() + rx.m + 1, word.end());
  }
  ColorSeq col = colors_at_slot(bottom, prefix, static_cast<int>(prefix.size()));

  struct RhsTerm {
    HWord window;  // bottom-first, letters 1/2 relative to p
    Scalar coeff;  // window-tagged
    Rational scale;
  };
  std::vector<RhsTerm> rhs;
  if (rx.quad) {
    ColorId cx = col[p - 1], cy = col[p];
    if (cx == cy) {
      auto it = pres.quad_same.find(cx);
      if (it == pres.quad_same.end())
        throw internal_consistency_error("missing (5.8a) data mid-rewrite");
      rhs.push_back({{1}, it->second.alpha, Rational(1)});
      rhs.push_back({{}, it->second.beta, Rational(1)});
    } else {
      auto it = pres.quad_mixed.find({cx, cy});
      if (it == pres.quad_mixed.end())
        throw internal_consistency_error("missing (5.8b) data mid-rewrite");
      rhs.push_back({{}, it->second, Rational(1)});
    }
  } else {
    ColorId cx = col[p - 1], cy = col[p], cz = col[p + 1];
    auto it = pres.braid.find({cx, cy, cz});
    if (it == pres.braid.end())
      throw internal_consistency_error("missing braid data mid-rewrite");
    const BraidRel& rel = it->second;
    rhs.push_back({{2, 1, 2}, Scalar::one(ws), rel.lambda});
    if (!rel.st_coeff.is_zero())
      rhs.push_back({{2, 1}, rel.st_coeff, Rational(1)});
    if (!rel.ts_coeff.is_zero())
      rhs.push_back({{1, 2}, rel.ts_coeff, Rational(1)});
    if (!rel.s_coeff.is_zero()) rhs.push_back({{1}, rel.s_coeff, Rational(1)});
    if (!rel.t_coeff.is_zero()) rhs.push_back({{2}, rel.t_coeff, Rational(1)});
    if (!rel.id_coeff.is_zero())
      rhs.push_back({{}, rel.id_coeff, Rational(1)});
  }

  HeckeTerm out;
  out.bottom = bottom;
  for (const auto& term : rhs) {
    HWord w = prefix;
    for (int rel_letter : term.window) w.push_back(p + rel_letter - 1);
    int slot = static_cast<int>(w.size());
    w.insert(w.end(), above.begin(), above.end());
    if (!word_permissible(pres, bottom, w))
      throw internal_consistency_error(
          "rewrite produced a non-permissible word " +
          expr_of(n, w).str());
    // per-step order check against the original word
    if (w.size() == word.size()) {
      if (leq(expr_of(n, w), expr_of(n, word)) != Cmp::LT)
        throw order_violation_error("rewrite step failed to decrease: " +
                                    expr_of(n, word).str() + " -> " +
                                    expr_of(n, w).str());
    } else if (w.size() > word.size()) {
      throw order_violation_error("rewrite step grew the word");
    }
    Scalar coeff = shift_tags(term.coeff, p - 1) *
                   Scalar(ws, term.scale);
    LiftOut lifted;
    lift_up(pres, w, slot, coeff, colors_at_slot(bottom, w, slot), lifted);
    for (auto& [w2, h] : lifted.terms) accumulate(pres, out, w2, h);
  }
  return out;
}

}  // namespace

HeckeTerm hecke_reduce(const HeckePresentation& p, const HeckeTerm& t,
                       long long budget) {
  HeckeTerm cur = t;
  long long steps = 0;
  while (true) {
    const HWord* word = nullptr;
    WordRedex rx;
    for (const auto& [w, c] : cur.coeffs) {
      auto redexes = find_redexes(w);
      if (!redexes.empty()) {
        word = &w;
        rx = redexes.front();
        break;
      }
    }
    if (!word) return cur;
    if (++steps > budget)
      throw divergence_error("hecke_reduce exceeded its step budget");
    HWord w = *word;
    Scalar c = cur.coeffs.at(w);
    cur.coeffs.erase(w);
    HeckeTerm applied = apply_redex(p, cur.bottom, w, rx);
    for (const auto& [w2, h] : applied.coeffs)
      accumulate(p, cur, w2, c * h);
  }
}

HeckeTerm hecke_reduce(const HeckePresentation& p, const DecoratedWord& d,
                       long long budget) {
  return hecke_reduce(p, push_dots_left(p, d), budget);
}

HeckeTerm hecke_reduce_random(const HeckePresentation& p, const HeckeTerm& t,
                              unsigned seed, long long budget) {
  std::mt19937 rng(seed);
  HeckeTerm cur = t;
  long long steps = 0;
  while (true) {
    std::vector<std::pair<HWord, WordRedex>> options;
    for (const auto& [w, c] : cur.coeffs)
      for (const auto& rx : find_redexes(w)) options.push_back({w, rx});
    if (options.empty()) return cur;
    if (++steps > budget)
      throw divergence_error("hecke_reduce_random exceeded its budget");
    auto& [w, rx] =
        options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(
            rng)];
    Scalar c = cur.coeffs.at(w);
    cur.coeffs.erase(w);
    HeckeTerm applied = apply_redex(p, cur.bottom, w, rx);
    for (const auto& [w2, h] : applied.coeffs)
      accumulate(p, cur, w2, c * h);
  }
}

// ---- templates ----

namespace {

struct TemplateDef {
  const char* id;
  int strands;
  HWord word;  // bottom-first
  int dots;    // trailing dot arguments on strand 1, below the word
};

const std::vector<TemplateDef>& templates() {
  static const std::vector<TemplateDef> defs = {
      {"sss", 2, {1, 1, 1}, 0},        {"ssts", 3, {1, 2, 1, 1}, 0},
      {"stss", 3, {1, 1, 2, 1}, 0},    {"ststs", 3, {1, 2, 1, 2, 1}, 0},
      {"stsuts", 4, {1, 2, 3, 1, 2, 1}, 0},
      {"ss.f", 2, {1, 1}, 1},          {"sts.f", 3, {1, 2, 1}, 1},
      {"s.f.g", 2, {1}, 2},
  };
  return defs;
}

const TemplateDef& template_by_id(const std::string& id) {
  for (const auto& t : templates())
    if (id == t.id) return t;
  throw usage_error("unknown ambiguity template " + id);
}

}  // namespace

std::string AmbiguityInstance::str(const HeckePresentation& p) const {
  std::string out = template_id + "[";
  for (size_t q = 0; q < coloring.size(); ++q) {
    if (q) out += ",";
    out += p.color_names[coloring[q]];
  }
  out += "]";
  for (const auto& f : dot_args) out += "(" + f.str() + ")";
  return out;
}

InstanceSet instantiate_ambiguities(const HeckePresentation& p, DotMode mode) {
  InstanceSet out;
  if (p.colors() == 0) return out;
  for (const auto& def : templates()) {
    std::vector<ColorSeq> colorings;
    ColorSeq cur(def.strands, 0);
    while (true) {
      if (word_permissible(p, cur, def.word))
        colorings.push_back(cur);
      else
        ++out.skipped_guard_unmet;
      int q = 0;
      for (; q < def.strands; ++q) {
        if (++cur[q] < p.colors()) break;
        cur[q] = 0;
      }
      if (q == def.strands) break;
    }
    for (const auto& coloring : colorings) {
      if (def.dots == 0) {
        out.instances.push_back({def.id, coloring, {}});
        continue;
      }
      ColorId c = coloring[0];  // dots sit on strand 1, below the word
      std::vector<std::string> names = p.rings[c].generators;
      if (mode == DotMode::symbolic) names = {"f_sym", "g_sym"};
      std::vector<Scalar> args;
      for (const auto& g : names)
        args.push_back(Scalar::param(p.ws, p.ws->add_generator(g, c)));
      if (mode == DotMode::symbolic) {
        if (p.rings[c].generators.empty()) continue;
        if (def.dots == 1)
          out.instances.push_back({def.id, coloring, {args[0]}});
        else
          out.instances.push_back({def.id, coloring, {args[0], args[1]}});
        continue;
      }
      if (args.empty()) continue;  // trivial dot ring: no dotted instances
      if (def.dots == 1) {
        for (const auto& f : args)
          out.instances.push_back({def.id, coloring, {f}});
      } else {
        for (const auto& f : args)
          for (const auto& g : args)
            out.instances.push_back({def.id, coloring, {f, g}});
      }
    }
  }
  return out;
}

HeckePresentation with_symbolic_dots(const HeckePresentation& p) {
  HeckePresentation out = p;
  const Workspace* ws = p.ws;
  for (int c = 0; c < p.colors(); ++c) {
    if (p.rings[c].generators.empty()) continue;
    for (const std::string& name : {std::string("f_sym"), std::string("g_sym")}) {
      out.rings[c].generators.push_back(name);
      ParamId base = ws->add_generator(name, c);
      auto fresh = [&](const std::string& map_name, int pos) {
        return Scalar::param(
            ws, ws->add_global(map_name + "_" + p.color_names[c] + "_" + name +
                               "_" + std::to_string(pos)));
      };
      for (int pos = 1; pos <= 2; ++pos) {
        ParamId id = ws->positioned(base, pos);
        if (out.phi.count(c)) out.phi[c].images.emplace(id, fresh("phi", pos));
        if (out.del.count(c)) out.del[c].images.emplace(id, fresh("del", pos));
      }
      for (auto& [key, m] : out.phi_mixed) {
        for (int pos = 1; pos <= 2; ++pos) {
          ColorId dom = pos == 1 ? key.first : key.second;
          if (dom != c) continue;
          ParamId id = ws->positioned(base, pos);
          m.images.emplace(
              id, fresh("phi_" + p.color_names[key.first] +
                            p.color_names[key.second],
                        pos));
        }
      }
    }
    if (out.del.count(c) && out.phi.count(c))
      out.del[c].twist = std::make_shared<RingMapSpec>(out.phi[c]);
  }
  return out;
}

namespace {

// Scales a HeckeTerm by a top polynomial.
void add_scaled(const HeckePresentation& p, HeckeTerm& acc,
                const std::vector<std::pair<HWord, Scalar>>& terms,
                const Scalar& scale) {
  for (const auto& [w, c] : terms) accumulate(p, acc, w, scale * c);
}

HeckeTerm lift_term(const HeckePresentation& p, const ColorSeq& bottom,
                    const HWord& w, int slot, const Scalar& f) {
  HeckeTerm out;
  out.bottom = bottom;
  LiftOut lifted;
  lift_up(p, w, slot, f, colors_at_slot(bottom, w, slot), lifted);
  for (auto& [w2, h] : lifted.terms) accumulate(p, out, w2, h);
  return out;
}

}  // namespace

HeckeAmbiguityReport check_ambiguity_instance(const HeckePresentation& p,
                                              const AmbiguityInstance& inst,
                                              long long budget) {
  const TemplateDef& def = template_by_id(inst.template_id);
  const ColorSeq& bottom = inst.coloring;
  const Workspace* ws = p.ws;
  HeckeAmbiguityReport rep;
  rep.instance = inst;

  HeckeTerm a, b;
  if (def.dots == 0) {
    auto redexes = find_redexes(def.word);
    if (redexes.size() != 2)
      throw internal_consistency_error("template " + inst.template_id +
                                       " does not have exactly two redexes");
    a = apply_redex(p, bottom, def.word, redexes[0]);
    b = apply_redex(p, bottom, def.word, redexes[1]);
  } else {
    ColorId c0 = bottom[0];
    ColorId c1 = bottom.size() > 1 ? bottom[1] : c0;
    Scalar f = tensor_embed(inst.dot_args[0], 1, c0);
    SiteMaps sm = site_maps(p, c0, c1, 1);
    Scalar phi_f = apply_local(ws, sm.phi, f, 1);
    Scalar del_f = c0 == c1 ? apply_local(ws, *sm.del, f, 1)
                            : Scalar::zero(ws);
    if (def.dots == 1) {
      // resolution A: slide the dot past the bottom crossing
      a = lift_term(p, bottom, def.word, 1, phi_f);
      if (!del_f.is_zero()) {
        HWord shorter(def.word.begin() + 1, def.word.end());
        HeckeTerm extra = lift_term(p, bottom, shorter, 0, del_f);
        for (const auto& [w, h] : extra.coeffs) accumulate(p, a, w, h);
      }
      // resolution B: rewrite the crossings first, dot still below
      auto redexes = find_redexes(def.word);
      if (redexes.size() != 1)
        throw internal_consistency_error("dotted template word should carry "
                                         "exactly one crossing redex");
      HeckeTerm rewritten = apply_redex(p, bottom, def.word, redexes[0]);
      b.bottom = bottom;
      for (const auto& [w, c] : rewritten.coeffs) {
        HeckeTerm lifted = lift_term(p, bottom, w, 0, f);
        add_scaled(p, b, {lifted.coeffs.begin(), lifted.coeffs.end()}, c);
      }
    } else {
      // s.f.g: word = single crossing; f adjacent to it, g below f
      Scalar g = tensor_embed(inst.dot_args[1], 1, c0);
      // A: slide f, then collect normally
      a.bottom = bottom;
      HeckeTerm ga = lift_term(p, bottom, def.word, 0, g);
      add_scaled(p, a, {ga.coeffs.begin(), ga.coeffs.end()}, phi_f);
      if (!del_f.is_zero()) accumulate(p, a, HWord{}, del_f * g);
      // B: multiply the dots first
      b = lift_term(p, bottom, def.word, 0, f * g);
    }
  }
  rep.resolution_a = hecke_reduce(p, a, budget);
  rep.resolution_b = hecke_reduce(p, b, budget);
  rep.residual = hecke_sub(rep.resolution_a, rep.resolution_b);
  rep.resolvable = rep.residual.is_zero();
  return rep;
}

HeckeVerdict hecke_check(const HeckePresentation& p, long long budget,
                         int jobs, DotMode mode) {
  InstanceSet set = instantiate_ambiguities(p, mode);
  HeckeVerdict verdict;
  verdict.skipped_guard_unmet = set.skipped_guard_unmet;
  verdict.reports.resize(set.instances.size());
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || set.instances.size() < 2) {
    for (size_t i = 0; i < set.instances.size(); ++i)
      verdict.reports[i] =
          check_ambiguity_instance(p, set.instances[i], budget);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto worker = [&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= set.instances.size()) return;
        try {
          verdict.reports[i] =
              check_ambiguity_instance(p, set.instances[i], budget);
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
  verdict.all_resolvable = true;
  for (const auto& r : verdict.reports)
    verdict.all_resolvable = verdict.all_resolvable && r.resolvable;
  return verdict;
}

// ---- conditions ----

std::vector<Scalar> scale_to_integer(const std::vector<Scalar>& gens) {
  std::vector<Scalar> out;
  for (const Scalar& g : gens) {
    if (g.is_zero()) continue;
    long long lcm = 1;
    for (const auto& t : g.terms()) {
      long long d = t.coeff.den();
      lcm = lcm / std::gcd(lcm, d) * d;
    }
    Scalar scaled = g * Scalar(g.workspace(), Rational(lcm));
    if (scaled.terms().front().coeff < Rational(0)) scaled = -scaled;
    bool seen = false;
    for (const auto& h : out) seen = seen || h == scaled;
    if (!seen) out.push_back(scaled);
  }
  std::sort(out.begin(), out.end(), scalar_less);
  return out;
}

namespace {

Scalar primitive(const Scalar& g) {
  if (g.is_zero()) return g;
  long long lcm = 1;
  for (const auto& t : g.terms()) {
    long long d = t.coeff.den();
    lcm = lcm / std::gcd(lcm, d) * d;
  }
  Scalar scaled = g * Scalar(g.workspace(), Rational(lcm));
  long long content = 0;
  for (const auto& t : scaled.terms())
    content = std::gcd(content, std::abs(t.coeff.num()));
  if (content > 1)
    scaled = scaled * Scalar(g.workspace(), Rational(1, content));
  if (scaled.terms().front().coeff < Rational(0)) scaled = -scaled;
  return scaled;
}

bool monomial_divides(const Monomial& d, const Monomial& m) {
  size_t i = 0;
  for (const auto& [id, e] : d) {
    while (i < m.size() && m[i].first < id) ++i;
    if (i >= m.size() || m[i].first != id || m[i].second < e) return false;
  }
  return true;
}

Monomial monomial_div(const Monomial& m, const Monomial& d) {
  Monomial out;
  size_t i = 0;
  for (const auto& [id, e] : m) {
    int sub = 0;
    while (i < d.size() && d[i].first < id) ++i;
    if (i < d.size() && d[i].first == id) sub = d[i].second;
    if (e - sub > 0) out.push_back({id, e - sub});
  }
  return out;
}

// True when h is a polynomial multiple of d (single-divisor division).
bool divisible_by(const Scalar& h, const Scalar& d) {
  if (d.is_zero()) return h.is_zero();
  Scalar r = h;
  const Workspace* ws = h.workspace();
  while (!r.is_zero()) {
    const auto& rl = r.terms().front();
    const auto& dl = d.terms().front();
    if (!monomial_divides(dl.mono, rl.mono)) return false;
    Scalar q = Scalar::from_terms(
        ws, {Scalar::Term{monomial_div(rl.mono, dl.mono), rl.coeff / dl.coeff}});
    r = r - q * d;
  }
  return true;
}

}  // namespace

std::vector<Scalar> reduce_conditions(const std::vector<Scalar>& gens) {
  std::vector<Scalar> pool;
  for (const auto& g : gens) {
    Scalar pg = primitive(g);
    if (!pg.is_zero()) pool.push_back(pg);
  }
  std::vector<Scalar> kept;
  // Gaussian elimination with the linear generators
  while (true) {
    int pick = -1;
    for (size_t i = 0; i < pool.size(); ++i) {
      bool linear = !pool[i].is_zero() &&
                    monomial_degree(pool[i].terms().front().mono) == 1;
      if (linear && (pick < 0 || scalar_less(pool[i], pool[pick])))
        pick = static_cast<int>(i);
    }
    if (pick < 0) break;
    Scalar g = pool[pick];
    pool.erase(pool.begin() + pick);
    // solve the leading variable
    ParamId v = g.terms().front().mono[0].first;
    Rational c = g.terms().front().coeff;
    Scalar rest = g - Scalar::from_terms(g.workspace(), {g.terms().front()});
    Scalar image = rest * Scalar(g.workspace(), Rational(-1) / c);
    std::map<ParamId, Scalar> bind{{v, image}};
    for (auto& h : pool) h = primitive(h.substitute(bind));
    kept.push_back(primitive(g));
  }
  // prune zero entries, duplicates, and polynomial multiples
  std::vector<Scalar> out = kept;
  for (size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].is_zero()) continue;
    bool redundant = false;
    for (size_t j = 0; j < pool.size() && !redundant; ++j) {
      if (i == j || pool[j].is_zero()) continue;
      if (pool[i] == pool[j])
        redundant = j < i;  // keep the first duplicate
      else
        redundant = divisible_by(pool[i], pool[j]);
    }
    for (const auto& k : kept)
      redundant = redundant || divisible_by(pool[i], k);
    if (!redundant) out.push_back(pool[i]);
  }
  std::sort(out.begin(), out.end(), scalar_less);
  return out;
}

ConditionSet derive_conditions(const HeckePresentation& p, long long budget,
                               int jobs, DotMode mode) {
  HeckeVerdict verdict = hecke_check(p, budget, jobs, mode);
  std::vector<Scalar> raw;
  for (const auto& rep : verdict.reports)
    for (const auto& [w, c] : rep.residual.coeffs) raw.push_back(c);
  ConditionSet out;
  out.generators = scale_to_integer(raw);
  out.reduced = reduce_conditions(out.generators);
  return out;
}

// ---- bases ----

std::vector<BasisEntry> enumerate_basis(const HeckePresentation& p,
                                        const ColorSeq& source,
                                        const ColorSeq& target,
                                        const HeckeVerdict* certificate,
                                        bool force) {
  if (!force) {
    if (!certificate)
      throw usage_error("enumerate_basis needs a passing ambiguity check "
                        "(or force)");
    if (!certificate->all_resolvable)
      throw usage_error("presentation failed its ambiguity checks; basis "
                        "not certified");
  }
  std::vector<BasisEntry> out;
  for (const Permutation& w : permissible_permutations(p, source, target)) {
    Expression e = reduced_word(w);
    out.push_back({w, sink(e).sink});
  }
  return out;
}

}  // namespace diamond
