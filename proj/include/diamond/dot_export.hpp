#ifndef DIAMOND_DOT_EXPORT_HPP
#define DIAMOND_DOT_EXPORT_HPP

#include <ostream>
#include <string>

#include "diamond/manin.hpp"

namespace diamond {

// Writes an expression graph as GraphViz dot. With `orient`, braid and
// cancel edges become arrows (commutation edges stay undirected) and each
// vertex is annotated with |J| when its word is reduced.
void write_dot(std::ostream& os, const ExpressionGraph& g,
               const std::string& name, bool orient);

}  // namespace diamond

#endif
