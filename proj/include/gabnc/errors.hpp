#pragma once

#include <stdexcept>
#include <string>

namespace gabnc {

/// A mathematical precondition failed: not a frame, not invertible, an
/// incompatible function. Usage errors (size or lattice mismatches, bad
/// specs) are reported as std::invalid_argument instead.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gabnc
