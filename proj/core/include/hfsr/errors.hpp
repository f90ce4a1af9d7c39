#pragma once

#include <stdexcept>

namespace hfsr {

/// Numerical failure (degenerate dictionary, non-finite values) as opposed
/// to usage or I/O problems; the CLI maps this to its own exit code.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hfsr
