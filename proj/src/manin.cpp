#include "diamond/manin.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <tuple>

namespace diamond {

TripleClass classify_triple(const std::set<StrandPair>& I, const Triple& t) {
  auto packet = t.packet();
  bool b0 = I.count(packet[0]) > 0;
  bool b1 = I.count(packet[1]) > 0;
  bool b2 = I.count(packet[2]) > 0;
  TripleClass c;
  c.full = b0 && b1 && b2;
  c.prefix = c.full || (!b0 && !b1 && !b2) || (b0 && !b1 && !b2) ||
             (b0 && b1 && !b2);
  c.suffix = c.full || (!b0 && !b1 && !b2) || (!b0 && !b1 && b2) ||
             (!b0 && b1 && b2);
  return c;
}

InversionSetCheck is_inversion_set(const std::set<StrandPair>& I, int n) {
  for (const auto& p : I)
    if (p.i < 1 || p.i >= p.j || p.j > n)
      throw typing_error("strand pair " + p.str() + " out of range");
  for (const Triple& t : all_triples(n)) {
    TripleClass c = classify_triple(I, t);
    if (c.neither()) return {false, t};
  }
  return {true, std::nullopt};
}

InversionSetCheck validate_crossing_order(const CrossingSequence& c, int n) {
  std::map<StrandPair, int> pos;
  for (size_t t = 0; t < c.size(); ++t) {
    if (pos.count(c[t]))
      throw typing_error("pair " + c[t].str() + " crossed twice");
    pos[c[t]] = static_cast<int>(t);
  }
  std::set<StrandPair> I;
  for (auto& [p, _] : pos) I.insert(p);
  auto inv = is_inversion_set(I, n);
  if (!inv.ok)
    throw typing_error("entries are not an inversion set; triple " +
                       inv.witness->str() + " is neither prefix nor suffix");
  for (const Triple& t : all_triples(n)) {
    TripleClass cls = classify_triple(I, t);
    auto packet = t.packet();
    if (cls.full) {
      int a = pos[packet[0]], b = pos[packet[1]], d = pos[packet[2]];
      bool lex = a < b && b < d;
      bool antilex = d < b && b < a;
      if (!lex && !antilex) return {false, t};
    } else if (cls.prefix) {
      // nonempty proper prefix {ij} or {ij, ik}: lex means (ij) before (ik)
      if (I.count(packet[0]) && I.count(packet[1]) &&
          !(pos[packet[0]] < pos[packet[1]]))
        return {false, t};
    } else if (cls.suffix) {
      // proper suffix {jk} or {ik, jk}: antilex means (jk) before (ik)
      if (I.count(packet[1]) && I.count(packet[2]) &&
          !(pos[packet[2]] < pos[packet[1]]))
        return {false, t};
    }
  }
  return {true, std::nullopt};
}

std::set<Triple> full_triples(const Permutation& w) {
  std::set<Triple> out;
  for (const Triple& t : all_triples(w.n()))
    if (w(t.k) < w(t.j) && w(t.j) < w(t.i)) out.insert(t);
  return out;
}

HigherInversionSet higher_inversion_set(const Expression& e) {
  if (!is_reduced(e))
    throw typing_error("higher inversion set needs a reduced expression: " +
                       e.str());
  CrossingSequence cs = crossing_sequence(e);
  std::map<StrandPair, int> pos;
  for (size_t t = 0; t < cs.size(); ++t) pos[cs[t]] = static_cast<int>(t);
  Permutation w = evaluate(e);
  HigherInversionSet J;
  for (const Triple& t : full_triples(w)) {
    auto packet = t.packet();
    int a = pos.at(packet[0]), b = pos.at(packet[1]), d = pos.at(packet[2]);
    if (d < b && b < a) {
      J.insert(t);
    } else if (!(a < b && b < d)) {
      throw error("reduced expression with non-lex non-antilex packet " +
                  t.str() + " in " + e.str());
    }
  }
  return J;
}

Expression apply_packet_flip(const Expression& e, int position) {
  if (position < 0 || position + 3 > e.length())
    throw no_match_error("flip position out of range");
  int a = e.letters[position], b = e.letters[position + 1],
      c = e.letters[position + 2];
  if (a != c || (b != a + 1 && b != a - 1))
    throw no_match_error("no braid pattern at position " +
                         std::to_string(position) + " of " + e.str());
  Expression out = e;
  out.letters[position] = b;
  out.letters[position + 1] = a;
  out.letters[position + 2] = b;
  return out;
}

bool letters_commute(int a, int b) { return std::abs(a - b) >= 2; }

Expression comm_canonical(const Expression& e) {
  std::vector<int> rest = e.letters;
  std::vector<int> out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    // smallest letter value that commutes with everything before it
    int best = -1;
    size_t best_q = 0;
    for (size_t q = 0; q < rest.size(); ++q) {
      bool movable = true;
      for (size_t r = 0; r < q && movable; ++r)
        movable = letters_commute(rest[r], rest[q]);
      if (movable && (best < 0 || rest[q] < best)) {
        best = rest[q];
        best_q = q;
      }
    }
    out.push_back(best);
    rest.erase(rest.begin() + static_cast<long>(best_q));
  }
  return Expression{e.n, std::move(out)};
}

std::vector<Expression> comm_class(const Expression& e, size_t cap) {
  std::set<std::vector<int>> seen{e.letters};
  std::deque<std::vector<int>> queue{e.letters};
  std::vector<Expression> out;
  while (!queue.empty()) {
    std::vector<int> w = queue.front();
    queue.pop_front();
    out.push_back(Expression{e.n, w});
    for (size_t q = 0; q + 1 < w.size(); ++q) {
      if (!letters_commute(w[q], w[q + 1])) continue;
      std::vector<int> v = w;
      std::swap(v[q], v[q + 1]);
      if (seen.insert(v).second) {
        if (seen.size() > cap)
          throw resource_error("commutation class exceeds cap");
        queue.push_back(v);
      }
    }
  }
  return out;
}

namespace {

// Positions in the crossing sequence of each packet pair of t.
struct PacketPositions {
  int a, b, c;  // positions of (i|j), (i|k), (j|k)
};

PacketPositions packet_positions(const CrossingSequence& cs, const Triple& t) {
  auto packet = t.packet();
  PacketPositions pp{-1, -1, -1};
  for (size_t q = 0; q < cs.size(); ++q) {
    if (cs[q] == packet[0]) pp.a = static_cast<int>(q);
    if (cs[q] == packet[1]) pp.b = static_cast<int>(q);
    if (cs[q] == packet[2]) pp.c = static_cast<int>(q);
  }
  return pp;
}

bool pairs_disjoint(const StrandPair& p, const StrandPair& q) {
  return p.i != q.i && p.i != q.j && p.j != q.i && p.j != q.j;
}

}  // namespace

std::optional<FlippablePacket> find_flippable_packet(const Expression& e) {
  if (!is_reduced(e))
    throw typing_error("find_flippable_packet needs a reduced expression");
  Permutation w = evaluate(e);
  Expression cur = e;
  std::vector<int> swaps;  // written positions of commutation swaps applied

  auto lex_full_triples = [&](const CrossingSequence& cs) {
    std::vector<std::pair<int, Triple>> spans;  // (span, triple), lex order
    for (const Triple& t : full_triples(w)) {
      PacketPositions pp = packet_positions(cs, t);
      if (pp.a < pp.b && pp.b < pp.c) spans.push_back({pp.c - pp.a, t});
    }
    std::sort(spans.begin(), spans.end(),
              [](const auto& x, const auto& y) {
                return x.first != y.first ? x.first < y.first
                                          : x.second < y.second;
              });
    return spans;
  };

  for (int guard = 0; guard <= e.length() * e.length() + 4; ++guard) {
    CrossingSequence cs = crossing_sequence(cur);
    auto spans = lex_full_triples(cs);
    if (spans.empty()) return std::nullopt;  // J already all full triples
    Triple t = spans.front().second;
    PacketPositions pp = packet_positions(cs, t);
    if (pp.c - pp.a == 2) {
      // consecutive packet: the three letters form s_i s_{i+1} s_i
      int wpos = cur.length() - 1 - pp.c;
      int x = cur.letters[wpos], y = cur.letters[wpos + 1],
          z = cur.letters[wpos + 2];
      if (!(x == z && y == x + 1))
        throw error("consecutive lex packet without braid pattern in " +
                    cur.str());
      return FlippablePacket{cur, wpos, t, swaps};
    }
    // commute an intervening crossing out of the packet span
    int cs_low, cs_high;  // swap crossing-sequence slots (cs_low, cs_low+1)
    if (pp.b > pp.a + 1) {
      cs_low = pp.a;  // the pair right above (i|j)
    } else {
      cs_low = pp.c - 1;  // the pair right below (j|k)
    }
    cs_high = cs_low + 1;
    const StrandPair& lower = cs[cs_low];
    const StrandPair& upper = cs[cs_high];
    if (!pairs_disjoint(lower, upper))
      throw error("minimal-span packet blocked by entangled crossing in " +
                  cur.str());
    int wpos = cur.length() - 1 - cs_high;  // written index of upper letter
    if (!letters_commute(cur.letters[wpos], cur.letters[wpos + 1]))
      throw error("disjoint crossings on non-commuting letters in " +
                  cur.str());
    std::swap(cur.letters[wpos], cur.letters[wpos + 1]);
    swaps.push_back(wpos);
  }
  throw error("find_flippable_packet failed to terminate");
}

Expression triple_projection(const Expression& e, const Triple& t) {
  std::vector<int> pos(e.n);
  for (int p = 0; p < e.n; ++p) pos[p] = p + 1;
  std::vector<int> proj;  // bottom-to-top letters of the projected word
  for (auto it = e.letters.rbegin(); it != e.letters.rend(); ++it) {
    int a = pos[*it - 1], b = pos[*it];
    bool a_in = a == t.i || a == t.j || a == t.k;
    bool b_in = b == t.i || b == t.j || b == t.k;
    if (a_in && b_in) {
      // which of the three strands' current positions are crossed?
      int other = t.i + t.j + t.k - a - b;
      int other_pos = -1;
      for (int p = 0; p < e.n; ++p)
        if (pos[p] == other) other_pos = p;
      // crossing happens at board slots (*it-1, *it); s if the remaining
      // strand sits above both, t if below both
      proj.push_back(other_pos > *it ? 1 : 2);
    }
    std::swap(pos[*it - 1], pos[*it]);
  }
  std::reverse(proj.begin(), proj.end());
  return Expression{3, std::move(proj)};
}

Cmp reverse_cmp(Cmp c) {
  if (c == Cmp::LT) return Cmp::GT;
  if (c == Cmp::GT) return Cmp::LT;
  return c;
}

namespace {

// Braid-connectivity classes of equal-length S_3 words, memoized by the
// minimal word of the class.
std::vector<int> braid_class_rep(const std::vector<int>& word) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::vector<int>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(word);
    if (it != cache.end()) return it->second;
  }
  std::set<std::vector<int>> seen{word};
  std::deque<std::vector<int>> queue{word};
  while (!queue.empty()) {
    std::vector<int> w = queue.front();
    queue.pop_front();
    for (size_t q = 0; q + 2 < w.size(); ++q) {
      bool sts = w[q] == 1 && w[q + 1] == 2 && w[q + 2] == 1;
      bool tst = w[q] == 2 && w[q + 1] == 1 && w[q + 2] == 2;
      if (!sts && !tst) continue;
      std::vector<int> v = w;
      v[q] = 3 - v[q];
      v[q + 1] = 3 - v[q + 1];
      v[q + 2] = 3 - v[q + 2];
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  std::vector<int> rep = *seen.begin();
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& w : seen) cache[w] = rep;
  return rep;
}

}  // namespace

Cmp leq3(const Expression& a, const Expression& b) {
  if (a.length() != b.length())
    return a.length() < b.length() ? Cmp::LT : Cmp::GT;
  if (a.letters == b.letters) return Cmp::EQ;
  if (evaluate(Expression{3, a.letters}) != evaluate(Expression{3, b.letters}))
    return Cmp::INCOMPARABLE;
  if (braid_class_rep(a.letters) != braid_class_rep(b.letters))
    return Cmp::INCOMPARABLE;
  // comparable: the word later in lexicographic order (s < t) is smaller
  return a.letters > b.letters ? Cmp::LT : Cmp::GT;
}

Cmp leq(const Expression& a, const Expression& b) {
  if (a.n != b.n) throw typing_error("strand count mismatch in comparison");
  if (a.length() != b.length())
    return a.length() < b.length() ? Cmp::LT : Cmp::GT;
  if (a.letters == b.letters) return Cmp::EQ;
  if (evaluate(a) != evaluate(b)) return Cmp::INCOMPARABLE;
  bool some_lt = false, some_gt = false;
  for (const Triple& t : all_triples(a.n)) {
    Cmp c = leq3(triple_projection(a, t), triple_projection(b, t));
    if (c == Cmp::INCOMPARABLE) return Cmp::INCOMPARABLE;
    if (c == Cmp::LT) some_lt = true;
    if (c == Cmp::GT) some_gt = true;
    if (some_lt && some_gt) return Cmp::INCOMPARABLE;
  }
  if (some_lt) return Cmp::LT;
  if (some_gt) return Cmp::GT;
  return Cmp::EQ;  // commutation-equivalent
}

std::string Move::str() const {
  const char* k = kind == Kind::commutation ? "commutation"
                  : kind == Kind::braid     ? "braid"
                                            : "cancel";
  return std::string(k) + "@" + std::to_string(position);
}

namespace {

// Written-index window [a, b] of a shortest non-reduced contiguous subword.
std::optional<std::pair<int, int>> minimal_nonreduced_window(
    const Expression& e) {
  for (int len = 2; len <= e.length(); ++len) {
    for (int a = 0; a + len <= e.length(); ++a) {
      Expression sub{e.n, {e.letters.begin() + a, e.letters.begin() + a + len}};
      if (!is_reduced(sub)) return std::make_pair(a, a + len - 1);
    }
  }
  return std::nullopt;
}

}  // namespace

SinkResult sink(const Expression& e, long long budget) {
  Expression cur = e;
  std::vector<Move> trace;
  auto spend = [&](long long n) {
    budget -= n;
    if (budget < 0)
      throw divergence_error("sink exceeded its move budget on " + e.str());
  };

  auto replay_swaps = [&](const std::vector<int>& swaps, int offset) {
    for (int p : swaps) {
      int q = offset + p;
      if (!letters_commute(cur.letters[q], cur.letters[q + 1]))
        throw error("recorded swap does not commute in " + cur.str());
      std::swap(cur.letters[q], cur.letters[q + 1]);
      trace.push_back({Move::Kind::commutation, q});
      spend(1);
    }
  };

  while (true) {
    if (is_reduced(cur)) {
      auto f = find_flippable_packet(cur);
      if (!f) break;
      replay_swaps(f->comm_swaps, 0);
      if (cur.letters != f->equivalent.letters)
        throw error("swap replay diverged from " + f->equivalent.str());
      cur = apply_packet_flip(cur, f->position);
      trace.push_back({Move::Kind::braid, f->position});
      spend(1);
      continue;
    }

    auto window = minimal_nonreduced_window(cur);
    if (!window) throw error("non-reduced word without non-reduced window");
    int a = window->first, b = window->second;

    // shrink: commute letters of the interior out through either edge
    bool shrunk = true;
    while (shrunk && b - a >= 2) {
      shrunk = false;
      if (letters_commute(cur.letters[a], cur.letters[a + 1])) {
        std::swap(cur.letters[a], cur.letters[a + 1]);
        trace.push_back({Move::Kind::commutation, a});
        spend(1);
        ++a;
        shrunk = true;
        continue;
      }
      if (letters_commute(cur.letters[b - 1], cur.letters[b])) {
        std::swap(cur.letters[b - 1], cur.letters[b]);
        trace.push_back({Move::Kind::commutation, b - 1});
        spend(1);
        --b;
        shrunk = true;
        continue;
      }
    }

    if (b - a == 1) {
      if (cur.letters[a] != cur.letters[b])
        throw error("shrunken window is not a square: " + cur.str());
      cur.letters.erase(cur.letters.begin() + a, cur.letters.begin() + b + 1);
      trace.push_back({Move::Kind::cancel, a});
      spend(1);
      continue;
    }

    // window is s_i y s_j with y nonempty and unshrinkable: flip a packet
    // in one of the reduced flanks
    Expression right{cur.n, {cur.letters.begin() + a + 1,
                             cur.letters.begin() + b + 1}};  // y s_j
    Expression left{cur.n,
                    {cur.letters.begin() + a, cur.letters.begin() + b}};  // s_i y
    std::optional<FlippablePacket> f;
    int offset = 0;
    if ((f = find_flippable_packet(right))) {
      offset = a + 1;
    } else if ((f = find_flippable_packet(left))) {
      offset = a;
    } else {
      throw error("stuck window with no flippable flank in " + cur.str());
    }
    replay_swaps(f->comm_swaps, offset);
    int p = offset + f->position;
    cur = apply_packet_flip(cur, p);
    trace.push_back({Move::Kind::braid, p});
    spend(1);
  }

  return SinkResult{comm_canonical(cur), std::move(trace)};
}

std::vector<Expression> expressions_of(const Permutation& w, int length,
                                       size_t cap) {
  std::vector<Expression> out;
  std::vector<int> prefix;
  // DFS over the written word (top letter first); the remaining suffix must
  // evaluate to eval(prefix)^{-1} * w, so prune by length and parity.
  std::vector<Permutation> stack{w};  // remaining target
  std::function<void()> rec = [&]() {
    const Permutation& rest = stack.back();
    int need = rest.length();
    int slots = length - static_cast<int>(prefix.size());
    if (need > slots || (slots - need) % 2 != 0) return;
    if (slots == 0) {
      out.push_back(Expression{w.n(), prefix});
      if (out.size() > cap) throw resource_error("expression cap exceeded");
      return;
    }
    for (int l = 1; l < w.n(); ++l) {
      // next letter from the top: remaining = s_l * rest
      std::vector<int> imgs = stack.back().images();
      for (auto& x : imgs) {
        if (x == l)
          x = l + 1;
        else if (x == l + 1)
          x = l;
      }
      prefix.push_back(l);
      stack.push_back(Permutation(std::move(imgs)));
      rec();
      stack.pop_back();
      prefix.pop_back();
    }
  };
  rec();
  return out;
}

namespace {

ExpressionGraph build_graph(std::vector<Expression> vertices, bool quotient,
                            bool with_cancel) {
  ExpressionGraph g;
  g.quotient = quotient;
  std::map<std::vector<int>, int> index;
  if (quotient) {
    std::set<Expression> reps;
    for (const auto& v : vertices) reps.insert(comm_canonical(v));
    g.vertices.assign(reps.begin(), reps.end());
  } else {
    std::sort(vertices.begin(), vertices.end());
    g.vertices = std::move(vertices);
  }
  for (size_t i = 0; i < g.vertices.size(); ++i)
    index[g.vertices[i].letters] = static_cast<int>(i);

  auto vertex_of = [&](const Expression& e) -> int {
    auto key = quotient ? comm_canonical(e).letters : e.letters;
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
  };

  std::set<std::tuple<int, int, int, int, int>> seen;
  auto add_edge = [&](int from, int to, Move::Kind kind, int li, int lj) {
    if (from < 0 || to < 0) return;
    auto key = std::make_tuple(from, to, static_cast<int>(kind), li, lj);
    if (seen.insert(key).second)
      g.edges.push_back(GraphEdge{from, to, kind, li, lj});
  };

  for (const auto& v : g.vertices) {
    int from = index[v.letters];
    // In the quotient, a pattern may only be visible in a non-canonical
    // representative, so scan the whole commutation class.
    std::vector<Expression> reps =
        quotient ? comm_class(v) : std::vector<Expression>{v};
    for (const auto& rep : reps) {
      const auto& L = rep.letters;
      for (size_t q = 0; q + 2 < L.size(); ++q) {
        if (L[q + 2] == L[q] && L[q + 1] == L[q] + 1) {
          // s_i s_{i+1} s_i: oriented edge toward the antilex side
          Expression f = apply_packet_flip(rep, static_cast<int>(q));
          add_edge(from, vertex_of(f), Move::Kind::braid, L[q], L[q] + 1);
        }
      }
      if (!quotient) {
        for (size_t q = 0; q + 1 < L.size(); ++q) {
          if (letters_commute(L[q], L[q + 1])) {
            Expression f = rep;
            std::swap(f.letters[q], f.letters[q + 1]);
            int to = vertex_of(f);
            if (from < to)
              add_edge(from, to, Move::Kind::commutation,
                       std::min(L[q], L[q + 1]), std::max(L[q], L[q + 1]));
          }
        }
      }
      if (with_cancel) {
        for (size_t q = 0; q + 1 < L.size(); ++q) {
          if (L[q] == L[q + 1]) {
            Expression f = rep;
            f.letters.erase(f.letters.begin() + q, f.letters.begin() + q + 2);
            add_edge(from, vertex_of(f), Move::Kind::cancel, L[q], L[q]);
          }
        }
      }
    }
  }
  return g;
}

}  // namespace

ExpressionGraph expression_graph(const Permutation& w, bool quotient,
                                 size_t vertex_cap) {
  auto vertices = expressions_of(w, w.length(), vertex_cap);
  return build_graph(std::move(vertices), quotient, false);
}

ExpressionGraph expression_graph_nonreduced(const Permutation& w,
                                            int extra_length, bool quotient,
                                            size_t vertex_cap) {
  if (extra_length % 2 != 0)
    throw typing_error("extra length must be even");
  std::vector<Expression> vertices;
  for (int len = w.length(); len <= w.length() + extra_length; len += 2) {
    auto batch = expressions_of(w, len, vertex_cap);
    vertices.insert(vertices.end(), batch.begin(), batch.end());
    if (vertices.size() > vertex_cap)
      throw resource_error("expression graph vertex cap exceeded");
  }
  return build_graph(std::move(vertices), quotient, true);
}

Expression parabolic_embed(const Expression& e, int m, int k) {
  if (k < 0 || k + e.n > m)
    throw typing_error("parabolic embedding out of range");
  Expression out{m, e.letters};
  for (auto& l : out.letters) l += k;
  return out;
}

}  // namespace diamond
