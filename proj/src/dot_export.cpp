#include "diamond/dot_export.hpp"

namespace diamond {

void write_dot(std::ostream& os, const ExpressionGraph& g,
               const std::string& name, bool orient) {
  os << (orient ? "digraph " : "graph ") << "\"" << name << "\" {\n";
  os << "  node [shape=box];\n";
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    const Expression& e = g.vertices[v];
    std::string label = e.str();
    if (g.quotient) label = "[" + label + "]";
    if (orient && is_reduced(e))
      label += "\\nJ=" + std::to_string(higher_inversion_set(e).size());
    os << "  v" << v << " [label=\"" << label << "\"];\n";
  }
  const char* undirected_link = orient ? " -> " : " -- ";
  for (const auto& edge : g.edges) {
    const char* kind = edge.kind == Move::Kind::braid        ? "braid"
                       : edge.kind == Move::Kind::commutation ? "comm"
                                                              : "cancel";
    os << "  v" << edge.from << undirected_link << "v" << edge.to
       << " [label=\"" << kind << "{" << edge.label_i << "," << edge.label_j
       << "}\"";
    if (orient && edge.kind == Move::Kind::commutation)
      os << " dir=none style=dashed";
    else if (!orient && edge.kind != Move::Kind::commutation)
      os << " style=bold";
    os << "];\n";
  }
  os << "}\n";
}

}  // namespace diamond
