#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "diamond/dot_export.hpp"
#include "diamond/presentation_file.hpp"
#include "diamond/report.hpp"

using namespace diamond;

namespace {

int default_jobs() {
  const char* env = std::getenv("DIAMOND_JOBS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  ~Timer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cerr << "elapsed: " << ms << " ms\n";
  }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Files may be named preset:<name> to load a built-in presentation.
PresentationFile load_presentation(const std::string& path) {
  if (path.rfind("preset:", 0) != 0) return parse_presentation_file(path);
  std::string name = path.substr(7);
  PresentationFile out;
  if (name == "coxeter") {
    HeckeBundle b = preset_coxeter();
    out.ws = b.ws;
    out.system = b.presentation;
  } else if (name == "modified-symmetric") {
    HeckeBundle b = preset_modified_symmetric();
    out.ws = b.ws;
    out.system = b.presentation;
  } else if (name == "nilhecke") {
    HeckeBundle b = preset_nilhecke();
    out.ws = b.ws;
    out.system = b.presentation;
  } else if (name == "webster-sl2-skeleton") {
    HeckeBundle b = preset_webster_sl2_skeleton();
    out.ws = b.ws;
    out.system = b.presentation;
  } else if (name == "xyz") {
    WordBundle b = preset_xyz();
    out.ws = b.ws;
    out.system = b.system;
  } else if (name == "coxeter-s3-words") {
    WordBundle b = preset_coxeter_s3_words();
    out.ws = b.ws;
    out.system = b.system;
  } else if (name == "coxeter-s4-naive") {
    WordBundle b = preset_coxeter_s4_naive();
    out.ws = b.ws;
    out.system = b.system;
  } else if (name == "example-2-7") {
    WordBundle b = preset_example_2_7();
    out.ws = b.ws;
    out.system = b.system;
  } else {
    throw usage_error("unknown built-in preset " + name);
  }
  return out;
}

int run_check(const std::string& path, bool trace, long long budget,
              int jobs) {
  PresentationFile file = load_presentation(path);
  if (budget <= 0) budget = file.budget;
  if (file.is_word()) {
    RewriteSystem sys = file.word();
    auto vr = validate_system(sys);
    if (!vr.ok) {
      Json issues = Json::array();
      for (const auto& i : vr.issues)
        issues.push_back({{"rule", i.rule}, {"message", i.message}});
      emit({{"kind", "word"}, {"verdict", "invalid"}, {"issues", issues}});
      return 2;
    }
    BergmanVerdict v = bergman_check(sys, budget, jobs);
    emit(json_word_report(sys, v, trace));
    return v.bergman_type ? 0 : 1;
  }
  const HeckePresentation& p = file.hecke();
  auto vr = validate_presentation(p);
  if (!vr.ok) {
    Json issues = Json::array();
    for (const auto& i : vr.issues) issues.push_back(i);
    emit({{"kind", "hecke"}, {"verdict", "invalid"}, {"issues", issues}});
    return 2;
  }
  HeckeVerdict v = hecke_check(p, budget, jobs);
  emit(json_hecke_report(p, v, trace));
  return v.all_resolvable ? 0 : 1;
}

int run_conditions(const std::string& path, long long budget, int jobs) {
  PresentationFile file = load_presentation(path);
  if (budget <= 0) budget = file.budget;
  if (file.is_word())
    throw usage_error("conditions needs a hecke presentation; word-rewrite "
                      "systems have no coefficient tables to solve");
  const HeckePresentation& p = file.hecke();
  auto vr = validate_presentation(p);
  if (!vr.ok) throw usage_error("invalid presentation: " + vr.issues[0]);
  emit(json_conditions(derive_conditions(p, budget, jobs)));
  return 0;
}

ColorSeq parse_colors(const HeckePresentation& p, const std::string& text) {
  ColorSeq out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(p.color(tok));
  return out;
}

int run_basis(const std::string& path, const std::string& source,
              const std::string& target, int max_len, bool force,
              long long budget, int jobs) {
  PresentationFile file = load_presentation(path);
  if (budget <= 0) budget = file.budget;
  if (file.is_word()) {
    RewriteSystem sys = file.word();
    auto vr = validate_system(sys);
    if (!vr.ok) throw usage_error("invalid system: " + vr.issues[0].message);
    BergmanVerdict v = bergman_check(sys, budget, jobs);
    if (!v.bergman_type && !force)
      throw usage_error(
          "system is not Bergman type (witness " +
          v.witness->str(sys.alphabet) +
          "); pass --force to list irreducible words anyway");
    if (max_len < 0) max_len = file.max_length;
    auto words = enumerate_irreducible(sys, max_len);
    Json out = {{"kind", "word"},
                {"certified", v.bergman_type},
                {"count", words.size()}};
    Json list = Json::array();
    for (const auto& w : words) list.push_back(word_str(sys.alphabet, w));
    out["irreducible"] = std::move(list);
    emit(out);
    return 0;
  }
  const HeckePresentation& p = file.hecke();
  auto vr = validate_presentation(p);
  if (!vr.ok) throw usage_error("invalid presentation: " + vr.issues[0]);
  if (source.empty() || target.empty())
    throw usage_error("hecke basis needs --source and --target color lists");
  HeckeVerdict v = hecke_check(p, budget, jobs);
  if (!v.all_resolvable && !force)
    throw usage_error("presentation fails its ambiguity checks; pass "
                      "--force to list expressions anyway");
  auto basis = enumerate_basis(p, parse_colors(p, source),
                               parse_colors(p, target), &v, force);
  Json out = {{"kind", "hecke"},
              {"certified", v.all_resolvable},
              {"rank_over_dots", basis.size()}};
  Json list = Json::array();
  for (const auto& entry : basis)
    list.push_back({{"permutation", entry.w.str()},
                    {"sink_expression", entry.sink_expression.str()}});
  out["basis"] = std::move(list);
  emit(out);
  return 0;
}

int run_normal_form(const std::string& path, const std::string& word,
                    const std::string& source, bool trace, long long budget) {
  PresentationFile file = load_presentation(path);
  if (file.is_word()) {
    RewriteSystem sys = file.word();
    auto vr = validate_system(sys);
    if (!vr.ok) throw usage_error("invalid system: " + vr.issues[0].message);
    LinComb t = LinComb::monomial(parse_word(sys.alphabet, word),
                                  Scalar(file.ws.get(), Rational(1)));
    NormalFormResult nf = normal_form(sys, t, budget);
    Json out = {{"input", word},
                {"normal_form", json_lincomb(sys.alphabet, nf.value)},
                {"steps", nf.steps}};
    if (trace) {
      Json steps = Json::array();
      for (const auto& s : nf.trace)
        steps.push_back({{"word", word_str(sys.alphabet, s.from)},
                         {"rule", sys.rules[s.rule].label},
                         {"position", s.position}});
      out["trace"] = std::move(steps);
    }
    emit(out);
    return 0;
  }
  const HeckePresentation& p = file.hecke();
  auto vr = validate_presentation(p);
  if (!vr.ok) throw usage_error("invalid presentation: " + vr.issues[0]);
  if (source.empty())
    throw usage_error("hecke normal-form needs --source colors");
  ColorSeq bottom = parse_colors(p, source);
  Expression e = parse_expression(static_cast<int>(bottom.size()), word);
  DecoratedWord d;
  d.bottom = bottom;
  for (auto it = e.letters.rbegin(); it != e.letters.rend(); ++it)
    d.items.push_back(DecItem::cross(*it));
  HeckeTerm nf = hecke_reduce(p, d, budget);
  emit({{"input", word}, {"normal_form", json_hecke_term(p, nf)}});
  return 0;
}

int run_complete(const std::string& path, int rounds, long long budget,
                 const std::string& out_path) {
  PresentationFile file = load_presentation(path);
  if (!file.is_word())
    throw usage_error("complete works on word-rewrite systems");
  CompletionResult res = complete(file.word(), rounds, budget);
  Json rules = Json::array();
  for (const auto& r : res.system.rules)
    rules.push_back({{"lhs", word_str(res.system.alphabet, r.lhs)},
                     {"rhs", json_lincomb(res.system.alphabet, r.rhs)},
                     {"label", r.label}});
  emit({{"confluent", res.confluent},
        {"rounds", res.rounds},
        {"added", res.added},
        {"rules", std::move(rules)}});
  if (!out_path.empty()) {
    PresentationFile out = file;
    out.system = res.system;
    std::ofstream os(out_path);
    os << serialize_presentation(out);
  }
  return res.confluent ? 0 : 1;
}

int run_ms_graph(const std::string& w_text, const std::string& expr_text,
                 int extra, bool quotient, bool orient, bool as_json) {
  ExpressionGraph g;
  std::string name;
  Permutation w;
  if (!w_text.empty()) {
    std::vector<int> imgs;
    for (char c : w_text) {
      if (c == ',' || c == ' ') continue;
      imgs.push_back(c - '0');
    }
    w = Permutation{imgs};
    name = "expressions-" + w.str();
  } else if (!expr_text.empty()) {
    Expression e = parse_expression(0, expr_text);
    w = evaluate(e);
    name = "expressions-" + e.str();
  } else {
    throw usage_error("ms graph needs --w or --expr");
  }
  g = extra > 0 ? expression_graph_nonreduced(w, extra, quotient)
                : expression_graph(w, quotient);
  if (quotient) name = "quotient-" + name;
  if (as_json) {
    Json vertices = Json::array();
    for (const auto& v : g.vertices) {
      Json entry = {{"word", v.str()}};
      if (is_reduced(v)) {
        Json J = Json::array();
        for (const auto& t : higher_inversion_set(v)) J.push_back(t.str());
        entry["J"] = std::move(J);
        entry["height"] = higher_inversion_set(v).size();
      }
      vertices.push_back(std::move(entry));
    }
    Json edges = Json::array();
    for (const auto& e : g.edges)
      edges.push_back({{"from", e.from},
                       {"to", e.to},
                       {"kind", e.kind == Move::Kind::braid        ? "braid"
                                : e.kind == Move::Kind::commutation ? "commutation"
                                                                    : "cancel"},
                       {"label", std::to_string(e.label_i) + "," +
                                     std::to_string(e.label_j)}});
    emit({{"name", name},
          {"quotient", g.quotient},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)}});
    return 0;
  }
  write_dot(std::cout, g, name, orient);
  return 0;
}

int run_ms_sink(const std::string& expr_text, int n, long long budget) {
  Expression e = parse_expression(n, expr_text);
  SinkResult res = sink(e, budget);
  Json trace = Json::array();
  for (const auto& m : res.trace) trace.push_back(m.str());
  emit({{"input", e.str()},
        {"sink", res.sink.str()},
        {"moves", res.trace.size()},
        {"trace", std::move(trace)}});
  return 0;
}

int run_ms_order(const std::string& a_text, const std::string& b_text, int n) {
  Expression a = parse_expression(n, a_text);
  Expression b = parse_expression(n, b_text);
  int m = std::max(a.n, b.n);
  a.n = m;
  b.n = m;
  Cmp c = leq(a, b);
  const char* verdict = c == Cmp::LT   ? "LT"
                        : c == Cmp::GT ? "GT"
                        : c == Cmp::EQ ? "EQ-class"
                                       : "INCOMPARABLE";
  emit({{"a", a.str()}, {"b", b.str()}, {"order", verdict}});
  return 0;
}

int run_ms_flip(const std::string& expr_text, int position, int n) {
  Expression e = parse_expression(n, expr_text);
  auto J_before = higher_inversion_set(e);
  Expression f = apply_packet_flip(e, position);
  auto J_after = higher_inversion_set(f);
  Json gained = Json::array(), lost = Json::array();
  for (const auto& t : J_after)
    if (!J_before.count(t)) gained.push_back(t.str());
  for (const auto& t : J_before)
    if (!J_after.count(t)) lost.push_back(t.str());
  emit({{"input", e.str()},
        {"flipped", f.str()},
        {"J_gained", std::move(gained)},
        {"J_lost", std::move(lost)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diamond: a confluence workbench for presented algebras and "
               "Hecke-type strand categories"};
  app.require_subcommand(1);

  std::string path, source, target, word_text, out_path;
  std::string w_text, expr_text, a_text, b_text;
  bool trace = false, force = false, quotient = false, orient = false;
  bool timings = false, as_json = false;
  long long budget = 0;
  int jobs = default_jobs();
  int max_len = -1, rounds = 50, extra = 0, strands = 0, position = 0;

  auto* check = app.add_subcommand("check", "run the diamond-lemma checks");
  check->add_option("file", path)->required();
  check->add_flag("--trace", trace, "include resolution chains");
  check->add_option("--budget", budget, "step budget per normal form");
  check->add_option("--jobs", jobs, "concurrent ambiguity checks");
  check->add_flag("--timings", timings, "print elapsed time to stderr");

  auto* conditions =
      app.add_subcommand("conditions", "derive coefficient conditions");
  conditions->add_option("file", path)->required();
  conditions->add_option("--budget", budget);
  conditions->add_option("--jobs", jobs);
  conditions->add_flag("--timings", timings);

  auto* basis = app.add_subcommand("basis", "list the certified basis");
  basis->add_option("file", path)->required();
  basis->add_option("--source", source, "bottom colors, space separated");
  basis->add_option("--target", target, "top colors, space separated");
  basis->add_option("--max-len", max_len, "length bound for word systems");
  basis->add_flag("--force", force, "list without certification");
  basis->add_option("--budget", budget);
  basis->add_option("--jobs", jobs);

  auto* nf = app.add_subcommand("normal-form", "reduce one word");
  nf->add_option("file", path)->required();
  nf->add_option("--word", word_text)->required();
  nf->add_option("--source", source, "bottom colors (hecke)");
  nf->add_flag("--trace", trace);
  nf->add_option("--budget", budget);

  auto* comp = app.add_subcommand("complete", "Buchberger-style completion");
  comp->add_option("file", path)->required();
  comp->add_option("--rounds", rounds);
  comp->add_option("--budget", budget);
  comp->add_option("--out", out_path, "write the completed system here");

  auto* ms = app.add_subcommand("ms", "symmetric-group expression tools");
  ms->require_subcommand(1);
  auto* graph = ms->add_subcommand("graph", "expression graph as dot");
  graph->add_option("--w", w_text, "permutation, one-line notation");
  graph->add_option("--expr", expr_text, "expression word");
  graph->add_option("--extra", extra, "extra length (even) for non-reduced");
  graph->add_flag("--quotient", quotient, "commutation classes");
  graph->add_flag("--orient", orient, "oriented edges");
  graph->add_flag("--json", as_json, "emit JSON instead of dot");
  auto* sinkcmd = ms->add_subcommand("sink", "drive a word to its sink");
  sinkcmd->add_option("expr", expr_text)->required();
  sinkcmd->add_option("--n", strands, "strand count");
  sinkcmd->add_option("--budget", budget);
  auto* order = ms->add_subcommand("order", "compare two expressions");
  order->add_option("a", a_text)->required();
  order->add_option("b", b_text)->required();
  order->add_option("--n", strands);
  auto* flip = ms->add_subcommand("flip", "apply a packet flip");
  flip->add_option("expr", expr_text)->required();
  flip->add_option("pos", position)->required();
  flip->add_option("--n", strands);

  CLI11_PARSE(app, argc, argv);

  std::optional<Timer> timer;
  if (timings) timer.emplace();
  if (budget < 0) budget = 0;

  try {
    if (*check) return run_check(path, trace, budget, jobs);
    if (*conditions) return run_conditions(path, budget, jobs);
    if (*basis)
      return run_basis(path, source, target, max_len, force, budget, jobs);
    if (*nf)
      return run_normal_form(path, word_text, source, trace,
                             budget > 0 ? budget : 1000000);
    if (*comp)
      return run_complete(path, rounds, budget > 0 ? budget : 1000000,
                          out_path);
    if (*graph)
      return run_ms_graph(w_text, expr_text, extra, quotient, orient,
                          as_json);
    if (*sinkcmd)
      return run_ms_sink(expr_text, strands, budget > 0 ? budget : 1000000);
    if (*order) return run_ms_order(a_text, b_text, strands);
    if (*flip) return run_ms_flip(expr_text, position, strands);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
