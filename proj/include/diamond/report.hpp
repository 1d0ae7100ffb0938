#ifndef DIAMOND_REPORT_HPP
#define DIAMOND_REPORT_HPP

#include <string>

#include "json.hpp"

#include "diamond/hecke.hpp"
#include "diamond/rewrite.hpp"

namespace diamond {

using Json = nlohmann::ordered_json;

Json json_lincomb(const Alphabet& a, const LinComb& t);
Json json_word_report(const RewriteSystem& sys, const BergmanVerdict& v,
                      bool with_traces);
Json json_hecke_report(const HeckePresentation& p, const HeckeVerdict& v,
                       bool with_traces);
Json json_conditions(const ConditionSet& c);
Json json_hecke_term(const HeckePresentation& p, const HeckeTerm& t);

}  // namespace diamond

#endif
