#pragma once

#include <stdexcept>
#include <string>

namespace burnlab {

// Malformed input: bad words, parameters out of range, broken files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation requested in a state that cannot serve it (rank not built, cap exceeded).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace burnlab
