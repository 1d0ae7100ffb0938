#include "diamond/report.hpp"

namespace diamond {

Json json_lincomb(const Alphabet& a, const LinComb& t) {
  Json out = Json::array();
  for (const auto& [w, c] : t.terms())
    out.push_back({{"word", word_str(a, w)}, {"coeff", c.str()}});
  return out;
}

Json json_hecke_term(const HeckePresentation& p, const HeckeTerm& t) {
  (void)p;
  Json out = Json::array();
  int n = static_cast<int>(t.bottom.size());
  for (const auto& [w, c] : t.coeffs)
    out.push_back({{"word", expr_of(n, w).str()}, {"coeff", c.str()}});
  return out;
}

namespace {

Json json_trace(const Alphabet& a, const std::vector<ReductionStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps)
    out.push_back({{"word", word_str(a, s.from)},
                   {"rule", s.rule},
                   {"position", s.position}});
  return out;
}

}  // namespace

Json json_word_report(const RewriteSystem& sys, const BergmanVerdict& v,
                      bool with_traces) {
  Json ambs = Json::array();
  for (const auto& rep : v.reports) {
    Json entry = {
        {"ambiguity", rep.ambiguity.str(sys.alphabet)},
        {"word", word_str(sys.alphabet, rep.ambiguity.word)},
        {"resolvable", rep.resolvable},
        {"check", rep.check},
        {"residual", json_lincomb(sys.alphabet, rep.residual)},
    };
    if (with_traces) {
      entry["resolution_r"] = json_lincomb(sys.alphabet, rep.resolution_r);
      entry["resolution_s"] = json_lincomb(sys.alphabet, rep.resolution_s);
      entry["trace_r"] = json_trace(sys.alphabet, rep.trace_r);
      entry["trace_s"] = json_trace(sys.alphabet, rep.trace_s);
    }
    ambs.push_back(std::move(entry));
  }
  Json out = {
      {"kind", "word"},
      {"verdict", v.bergman_type ? "bergman-type" : "not-bergman-type"},
      {"ambiguity_count", v.reports.size()},
      {"ambiguities", std::move(ambs)},
  };
  if (v.witness) out["witness"] = v.witness->str(sys.alphabet);
  return out;
}

Json json_hecke_report(const HeckePresentation& p, const HeckeVerdict& v,
                       bool with_traces) {
  Json ambs = Json::array();
  for (const auto& rep : v.reports) {
    Json entry = {
        {"instance", rep.instance.str(p)},
        {"template", rep.instance.template_id},
        {"resolvable", rep.resolvable},
        {"residual", json_hecke_term(p, rep.residual)},
    };
    Json coloring = Json::array();
    for (ColorId c : rep.instance.coloring)
      coloring.push_back(p.color_names[c]);
    entry["coloring"] = std::move(coloring);
    if (!rep.instance.dot_args.empty()) {
      Json dots = Json::array();
      for (const auto& f : rep.instance.dot_args) dots.push_back(f.str());
      entry["dots"] = std::move(dots);
    }
    if (with_traces) {
      entry["resolution_a"] = json_hecke_term(p, rep.resolution_a);
      entry["resolution_b"] = json_hecke_term(p, rep.resolution_b);
    }
    ambs.push_back(std::move(entry));
  }
  return {
      {"kind", "hecke"},
      {"verdict",
       v.all_resolvable ? "monoidal-bergman-type" : "not-bergman-type"},
      {"instance_count", v.reports.size()},
      {"skipped_guard_unmet", v.skipped_guard_unmet},
      {"instances", std::move(ambs)},
  };
}

Json json_conditions(const ConditionSet& c) {
  Json gens = Json::array();
  for (const auto& g : c.generators) gens.push_back(g.str());
  Json reduced = Json::array();
  for (const auto& g : c.reduced) reduced.push_back(g.str());
  return {{"generators", std::move(gens)}, {"reduced", std::move(reduced)}};
}

}  // namespace diamond
