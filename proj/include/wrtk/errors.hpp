#pragma once

#include <stdexcept>
#include <string>

namespace wrtk {

/**
 * Raised when an exact check that a proven identity guarantees comes out
 * false: a division that must be exact leaves a remainder, two routes to
 * the same value disagree, or a claimed integral element is not integral.
 *
 * Kept separate from ordinary errors so drivers can report a theorem
 * counterexample distinctly from bad input.
 */
class Falsification : public std::runtime_error {
 public:
  explicit Falsification(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid root-of-unity data, including the degenerate SU(2) case.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

/// Presentation or file content that does not match the expected schema.
class SchemaError : public std::invalid_argument {
 public:
  explicit SchemaError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace wrtk
