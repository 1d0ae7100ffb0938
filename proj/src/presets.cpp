#include "diamond/presets.hpp"

namespace diamond {

namespace {

RewriteRule mk_rule(const Alphabet& a, const Workspace* ws,
                    const std::string& lhs,
                    const std::vector<std::pair<std::string, Rational>>& rhs,
                    const std::string& label) {
  RewriteRule r;
  r.lhs = parse_word(a, lhs);
  std::vector<std::pair<Word, Scalar>> terms;
  for (const auto& [w, c] : rhs)
    terms.push_back({parse_word(a, w), Scalar(ws, c)});
  r.rhs = LinComb::collect(a, std::move(terms));
  r.label = label;
  return r;
}

}  // namespace

HeckeBundle preset_coxeter() {
  HeckeBundle b;
  b.ws = std::make_shared<Workspace>();
  HeckePresentation& p = b.presentation;
  p.ws = b.ws.get();
  p.color_names = {"i"};
  p.rings = {DotRingSpec{}};
  p.permitted = {{0, 0}};
  p.quad_same[0] = {Scalar::zero(p.ws), Scalar::one(p.ws)};
  p.braid[{0, 0, 0}] = BraidRel{Rational(1),
                                Scalar::zero(p.ws), Scalar::zero(p.ws),
                                Scalar::zero(p.ws), Scalar::zero(p.ws),
                                Scalar::zero(p.ws)};
  return b;
}

HeckeBundle preset_modified_symmetric() {
  HeckeBundle b;
  b.ws = std::make_shared<Workspace>();
  HeckePresentation& p = b.presentation;
  p.ws = b.ws.get();
  p.color_names = {"i"};
  p.rings = {DotRingSpec{}};
  p.permitted = {{0, 0}};
  auto sym = [&](const char* n) {
    return Scalar::param(p.ws, p.ws->add_global(n));
  };
  p.quad_same[0] = {sym("alpha"), sym("beta")};
  p.braid[{0, 0, 0}] =
      BraidRel{Rational(1), sym("a"), sym("b"), sym("c"), sym("d"), sym("e")};
  return b;
}

HeckeBundle preset_nilhecke() {
  HeckeBundle b;
  b.ws = std::make_shared<Workspace>();
  HeckePresentation& p = b.presentation;
  p.ws = b.ws.get();
  p.color_names = {"i"};
  p.rings = {DotRingSpec{{"x"}}};
  p.permitted = {{0, 0}};
  p.quad_same[0] = {Scalar::zero(p.ws), Scalar::zero(p.ws)};
  p.braid[{0, 0, 0}] = BraidRel{Rational(1),
                                Scalar::zero(p.ws), Scalar::zero(p.ws),
                                Scalar::zero(p.ws), Scalar::zero(p.ws),
                                Scalar::zero(p.ws)};
  ParamId x = p.ws->add_generator("x", 0);
  ParamId x1 = p.ws->positioned(x, 1);
  ParamId x2 = p.ws->positioned(x, 2);
  RingMapSpec phi = RingMapSpec::endo(
      {{x1, Scalar::param(p.ws, x2)}, {x2, Scalar::param(p.ws, x1)}});
  p.del[0] = RingMapSpec::derivation(
      {{x1, Scalar::one(p.ws)}, {x2, -Scalar::one(p.ws)}}, phi);
  p.phi[0] = std::move(phi);
  return b;
}

HeckeBundle preset_webster_sl2_skeleton() {
  HeckeBundle b;
  b.ws = std::make_shared<Workspace>();
  HeckePresentation& p = b.presentation;
  p.ws = b.ws.get();
  p.color_names = {"black", "red1", "red2"};
  p.rings = {DotRingSpec{{"x"}}, DotRingSpec{}, DotRingSpec{}};
  // red strands may not cross each other
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      if (a == 0 || c == 0) p.permitted.insert({a, c});

  ParamId x = p.ws->add_generator("x", 0);
  ParamId x1 = p.ws->positioned(x, 1);
  ParamId x2 = p.ws->positioned(x, 2);
  Scalar zero = Scalar::zero(p.ws);

  p.quad_same[0] = {zero, zero};  // black is nilHecke-like
  // crossing a red strand twice accumulates a dot on the black strand,
  // once per level of the red color
  for (int r = 1; r <= 2; ++r) {
    p.quad_mixed[{0, r}] = Scalar::param(p.ws, x1).pow(r);
    p.quad_mixed[{r, 0}] = Scalar::param(p.ws, x2).pow(r);
  }
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      for (int e = 0; e < 3; ++e) {
        bool ok = true;
        for (auto [u, v] : std::initializer_list<std::pair<int, int>>{
                 {a, c}, {a, e}, {c, e}})
          ok = ok && p.permits(u, v);
        if (!ok) continue;
        BraidRel rel{Rational(1), zero, zero, zero, zero, zero};
        if (a == 0 && e == 0 && c >= 1) {
          // black-red-black braid picks up the dumbbell correction
          // sum over p+q = level-1 of x^p (x) x^q on the black strands
          Scalar corr = Scalar::zero(p.ws);
          for (int pw = 0; pw <= c - 1; ++pw)
            corr += Scalar::param(p.ws, x1).pow(pw) *
                    Scalar::param(p.ws, p.ws->positioned(x, 3)).pow(c - 1 - pw);
          rel.id_coeff = corr;
        }
        p.braid[{a, c, e}] = rel;
      }
  RingMapSpec phi = RingMapSpec::endo(
      {{x1, Scalar::param(p.ws, x2)}, {x2, Scalar::param(p.ws, x1)}});
  p.del[0] = RingMapSpec::derivation(
      {{x1, Scalar::one(p.ws)}, {x2, -Scalar::one(p.ws)}}, phi);
  p.phi[0] = std::move(phi);
  for (int r = 1; r <= 2; ++r) {
    p.phi_mixed[{0, r}] =
        RingMapSpec::endo({{x1, Scalar::param(p.ws, x2)}});
    p.phi_mixed[{r, 0}] =
        RingMapSpec::endo({{x2, Scalar::param(p.ws, x1)}});
  }
  return b;
}

WordBundle preset_xyz() {
  WordBundle b;
  b.ws = std::make_shared<Workspace>();
  b.system.alphabet = Alphabet::of({"x", "y", "z"});
  b.system.order = OrderSpec::deglex();
  const Workspace* ws = b.ws.get();
  b.system.rules = {
      mk_rule(b.system.alphabet, ws, "yx", {{"xy", 1}, {"1", 1}}, "yx"),
      mk_rule(b.system.alphabet, ws, "zx", {{"xz", 1}, {"1", 2}}, "zx"),
      mk_rule(b.system.alphabet, ws, "zy", {{"yz", 1}, {"1", 3}}, "zy")};
  validate_system(b.system);
  return b;
}

WordBundle preset_coxeter_s3_words() {
  WordBundle b;
  b.ws = std::make_shared<Workspace>();
  b.system.alphabet = Alphabet::of({"s", "t"});
  b.system.order = OrderSpec::coxeter(3);
  const Workspace* ws = b.ws.get();
  b.system.rules = {
      mk_rule(b.system.alphabet, ws, "ss", {{"1", 1}}, "ss"),
      mk_rule(b.system.alphabet, ws, "tt", {{"1", 1}}, "tt"),
      mk_rule(b.system.alphabet, ws, "sts", {{"tst", 1}}, "sts")};
  validate_system(b.system);
  return b;
}

WordBundle preset_example_2_7() {
  WordBundle b;
  b.ws = std::make_shared<Workspace>();
  b.system.alphabet = Alphabet::of({"s", "t"});
  b.system.order = OrderSpec::deglex();
  const Workspace* ws = b.ws.get();
  b.system.rules = {
      mk_rule(b.system.alphabet, ws, "ss", {{"1", 1}}, "ss"),
      mk_rule(b.system.alphabet, ws, "tt", {{"1", 1}}, "tt"),
      mk_rule(b.system.alphabet, ws, "ststst", {{"1", 1}}, "ststst")};
  validate_system(b.system);
  return b;
}

WordBundle preset_coxeter_s4(bool flip_st, bool flip_tu, bool flip_su) {
  WordBundle b;
  b.ws = std::make_shared<Workspace>();
  b.system.alphabet = Alphabet::of({"s", "t", "u"});
  const Workspace* ws = b.ws.get();

  // count components in a significance order consistent with both braid
  // orientations, then the commutation inversion statistic
  using WC = OrderSpec::WeightComponent;
  std::vector<int> significance;
  if (!flip_st && !flip_tu)
    significance = {0, 1, 2};  // s, t, u
  else if (!flip_st && flip_tu)
    significance = {0, 2, 1};
  else if (flip_st && !flip_tu)
    significance = {1, 0, 2};
  else
    significance = {2, 1, 0};
  std::vector<WC> comps;
  for (int letter : significance)
    comps.push_back({WC::What::letter_count, letter, 0});
  comps.push_back(flip_su ? WC{WC::What::inversion_count, 2, 0}
                          : WC{WC::What::inversion_count, 0, 2});
  b.system.order = OrderSpec::weighted(comps);

  auto one = [&](const std::string& l, const std::string& r) {
    return mk_rule(b.system.alphabet, ws, l, {{r, 1}}, l);
  };
  b.system.rules = {one("ss", "1"), one("tt", "1"), one("uu", "1"),
                    flip_st ? one("tst", "sts") : one("sts", "tst"),
                    flip_tu ? one("utu", "tut") : one("tut", "utu"),
                    flip_su ? one("us", "su") : one("su", "us")};
  validate_system(b.system);
  return b;
}

}  // namespace diamond
