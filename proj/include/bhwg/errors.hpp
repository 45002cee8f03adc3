// errors.hpp — exception types separating physics-domain failures from malformed input.
#pragma once

#include <stdexcept>

namespace bhwg {

// Raised when parameters leave the domain where a quantity is defined: a probe
// frequency off its band, a momentum inversion requested outside the band, a
// regime gate such as the Mott case table. Malformed containers (negative
// rates, unsorted positions) throw std::invalid_argument instead.
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bhwg
