#pragma once

#include <stdexcept>
#include <string>

namespace treecover {

// Bad input to an operation (precondition violated).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A checker found a structure that breaks a stated invariant.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A randomized or budgeted construction gave up.
class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPlanarEmbedding : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace treecover
