#ifndef DIAMOND_ERRORS_HPP
#define DIAMOND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diamond {

// Base class for all engine errors.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration data: unmapped generators, cyclic bindings, invalid
// presentation tables.
struct config_error : error {
  using error::error;
};

// Type-level misuse: color mismatch, strand-count mismatch, range violations.
struct typing_error : error {
  using error::error;
};

// A rewrite ran out of its step budget.
struct divergence_error : error {
  using error::error;
};

// A rewrite step failed to decrease the active order.
struct order_violation_error : error {
  using error::error;
};

// Requested rule/pattern not present at the given position.
struct no_match_error : error {
  using error::error;
};

// Configured size cap exceeded (graph vertex caps and the like).
struct resource_error : error {
  using error::error;
};

// Completion cannot orient a residual.
struct completion_stuck_error : error {
  using error::error;
};

// A relation produced a state the presentation's invariants forbid;
// indicates a bug or inconsistent relation data.
struct internal_consistency_error : error {
  using error::error;
};

// CLI-level misuse.
struct usage_error : error {
  using error::error;
};

}  // namespace diamond

#endif
