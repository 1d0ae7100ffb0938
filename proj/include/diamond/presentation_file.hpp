#ifndef DIAMOND_PRESENTATION_FILE_HPP
#define DIAMOND_PRESENTATION_FILE_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <variant>

#include "diamond/presets.hpp"

namespace diamond {

// A parsed presentation file: exactly one system kind plus options.
struct PresentationFile {
  int version = 1;
  std::shared_ptr<Workspace> ws;
  std::variant<RewriteSystem, HeckePresentation> system;
  long long budget = 1000000;
  int max_length = -1;

  bool is_word() const {
    return std::holds_alternative<RewriteSystem>(system);
  }
  RewriteSystem& word() { return std::get<RewriteSystem>(system); }
  const RewriteSystem& word() const {
    return std::get<RewriteSystem>(system);
  }
  HeckePresentation& hecke() { return std::get<HeckePresentation>(system); }
  const HeckePresentation& hecke() const {
    return std::get<HeckePresentation>(system);
  }
};

// Parses the text format; throws usage_error with line diagnostics.
PresentationFile parse_presentation(std::istream& in,
                                    const std::string& filename = "<input>");
PresentationFile parse_presentation_file(const std::string& path);
PresentationFile parse_presentation_string(const std::string& text);

std::string serialize_presentation(const PresentationFile& f);

// Polynomial literals: identifiers, integer/rational coefficients, ^ powers,
// * products, +/- sums, parentheses. Tagged generators are written x@2; the
// color of each position comes from `position_colors` (empty for pure
// workspace-parameter polynomials). Unknown names raise usage_error.
Scalar parse_scalar(const Workspace* ws, const std::string& text,
                    const std::vector<DotRingSpec>& rings,
                    const ColorSeq& position_colors);

}  // namespace diamond

#endif
